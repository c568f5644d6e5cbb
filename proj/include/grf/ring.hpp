#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "grf/group.hpp"

namespace grf {

using cd = std::complex<double>;

enum class FieldMode { Real, Complex };

const char* field_mode_name(FieldMode mode);
FieldMode parse_field_mode(const std::string& text);

/// Thrown when two elements live in different groups or field modes.
struct IncompatibleOperands : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An element of the group ring: one scalar coefficient per group
/// element.  Real mode keeps every imaginary part exactly zero.
struct GroupRingElement {
  GroupPtr group;
  FieldMode mode = FieldMode::Real;
  std::vector<cd> coeffs;

  GroupRingElement() = default;
  GroupRingElement(GroupPtr g, FieldMode m);

  /// The basis element 1*g.
  static GroupRingElement basis(GroupPtr g, int element, FieldMode m);
};

GroupRingElement add(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement sub(const GroupRingElement& x, const GroupRingElement& y);

/// lambda * x.  In real mode a scalar with a nonzero imaginary part is
/// rejected, since it would leave the real subring.
GroupRingElement scale(cd lambda, const GroupRingElement& x);

/// Ring product by convolution over the multiplication table:
/// (x*y)[a*b] += x[a]*y[b].
GroupRingElement mul(const GroupRingElement& x, const GroupRingElement& y);

/// Conjugate-transpose: coefficient at g goes to conj(coeff) at g^-1.
GroupRingElement adjoint(const GroupRingElement& x);

/// Coefficient of the identity element.
cd trace(const GroupRingElement& x);

/// Frobenius pairing sum(conj(x[g]) * y[g]); equals trace(adjoint(x)*y).
cd inner_product(const GroupRingElement& x, const GroupRingElement& y);

double norm(const GroupRingElement& x);

GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement operator*(cd lambda, const GroupRingElement& x);

/// Low-level convolution kernel shared by mul() and the integrator:
/// out[table[i][j]] += x[i]*y[j].  out must not alias x or y and must
/// hold order() accumulators.
void convolve_add(const FiniteGroup& g, const cd* x, const cd* y, cd* out);

/// out[inverse[i]] = conj(x[i]).  out must not alias x.
void adjoint_into(const FiniteGroup& g, const cd* x, cd* out);

/// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(size_t(r) * c, 0) {}
  int at(int r, int c) const { return data[size_t(r) * cols + c]; }
  int& at(int r, int c) { return data[size_t(r) * cols + c]; }
};

/// Permutation matrix of the element g: entry (a, b) is 1 iff a*b^-1 = g.
/// Acting on row vectors it shifts coefficients: (x M)[b] = x[g*b].
IntMatrix translation_matrix(const FiniteGroup& group, int g);

/// translation_matrix(g) - translation_matrix(g^-1).  Antisymmetric with
/// entries in {-1, 0, 1}; identically zero iff g*g = identity.
struct SkewMatrix {
  GroupPtr group;
  int g = 0;
  IntMatrix mat;
};

SkewMatrix skew_matrix(const GroupPtr& group, int g);

/// Row vector times integer matrix: result[c] = sum_r x[r] * m(r, c).
GroupRingElement row_action(const GroupRingElement& x, const IntMatrix& m);

/// Coefficient permutation induced by a group automorphism:
/// result[perm[g]] = x[g].  Multiplicative and adjoint-compatible when
/// perm really is an automorphism.
GroupRingElement apply_automorphism(const Automorphism& phi,
                                    const GroupRingElement& x);

}  // namespace grf
