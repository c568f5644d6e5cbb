#include "grf/ring.hpp"

#include <cmath>

namespace grf {

const char* field_mode_name(FieldMode mode) {
  return mode == FieldMode::Real ? "real" : "complex";
}

FieldMode parse_field_mode(const std::string& text) {
  if (text == "real") return FieldMode::Real;
  if (text == "complex") return FieldMode::Complex;
  throw std::invalid_argument("field mode must be 'real' or 'complex', got '" +
                              text + "'");
}

GroupRingElement::GroupRingElement(GroupPtr g, FieldMode m)
    : group(std::move(g)), mode(m) {
  if (!group) throw std::invalid_argument("null group");
  coeffs.assign(group->order(), cd(0.0, 0.0));
}

GroupRingElement GroupRingElement::basis(GroupPtr g, int element, FieldMode m) {
  GroupRingElement x(std::move(g), m);
  if (element < 0 || element >= x.group->order())
    throw std::invalid_argument("basis element out of range");
  x.coeffs[element] = cd(1.0, 0.0);
  return x;
}

namespace {

void require_compatible(const GroupRingElement& x, const GroupRingElement& y) {
  if (x.mode != y.mode)
    throw IncompatibleOperands("operands have different field modes");
  if (x.group.get() == y.group.get()) return;
  if (x.group && y.group && same_structure(*x.group, *y.group)) return;
  throw IncompatibleOperands("operands live in different groups");
}

}  // namespace

GroupRingElement add(const GroupRingElement& x, const GroupRingElement& y) {
  require_compatible(x, y);
  GroupRingElement out = x;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += y.coeffs[i];
  return out;
}

GroupRingElement sub(const GroupRingElement& x, const GroupRingElement& y) {
  require_compatible(x, y);
  GroupRingElement out = x;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= y.coeffs[i];
  return out;
}

GroupRingElement scale(cd lambda, const GroupRingElement& x) {
  if (x.mode == FieldMode::Real && lambda.imag() != 0.0)
    throw IncompatibleOperands(
        "complex scalar applied to a real-mode element");
  GroupRingElement out = x;
  for (auto& c : out.coeffs) c *= lambda;
  return out;
}

void convolve_add(const FiniteGroup& g, const cd* x, const cd* y, cd* out) {
  const int n = g.order();
  for (int i = 0; i < n; ++i) {
    const cd xi = x[i];
    if (xi == cd(0.0, 0.0)) continue;
    const auto& row = g.table()[i];
    for (int j = 0; j < n; ++j) out[row[j]] += xi * y[j];
  }
}

void adjoint_into(const FiniteGroup& g, const cd* x, cd* out) {
  const int n = g.order();
  for (int i = 0; i < n; ++i) out[g.inverse(i)] = std::conj(x[i]);
}

GroupRingElement mul(const GroupRingElement& x, const GroupRingElement& y) {
  require_compatible(x, y);
  GroupRingElement out(x.group, x.mode);
  convolve_add(*x.group, x.coeffs.data(), y.coeffs.data(), out.coeffs.data());
  return out;
}

GroupRingElement adjoint(const GroupRingElement& x) {
  GroupRingElement out(x.group, x.mode);
  adjoint_into(*x.group, x.coeffs.data(), out.coeffs.data());
  return out;
}

cd trace(const GroupRingElement& x) { return x.coeffs[0]; }

cd inner_product(const GroupRingElement& x, const GroupRingElement& y) {
  require_compatible(x, y);
  cd acc(0.0, 0.0);
  for (size_t i = 0; i < x.coeffs.size(); ++i)
    acc += std::conj(x.coeffs[i]) * y.coeffs[i];
  return acc;
}

double norm(const GroupRingElement& x) {
  double acc = 0.0;
  for (const cd& c : x.coeffs) acc += std::norm(c);
  return std::sqrt(acc);
}

GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) {
  return add(x, y);
}
GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y) {
  return sub(x, y);
}
GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
  return mul(x, y);
}
GroupRingElement operator*(cd lambda, const GroupRingElement& x) {
  return scale(lambda, x);
}

IntMatrix translation_matrix(const FiniteGroup& group, int g) {
  const int n = group.order();
  if (g < 0 || g >= n) throw std::invalid_argument("element out of range");
  IntMatrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (group.mul(a, group.inverse(b)) == g) m.at(a, b) = 1;
  return m;
}

SkewMatrix skew_matrix(const GroupPtr& group, int g) {
  if (!group) throw std::invalid_argument("null group");
  IntMatrix pos = translation_matrix(*group, g);
  IntMatrix neg = translation_matrix(*group, group->inverse(g));
  for (size_t i = 0; i < pos.data.size(); ++i) pos.data[i] -= neg.data[i];
  return SkewMatrix{group, g, std::move(pos)};
}

GroupRingElement row_action(const GroupRingElement& x, const IntMatrix& m) {
  const int n = static_cast<int>(x.coeffs.size());
  if (m.rows != n || m.cols != n)
    throw std::invalid_argument("matrix shape does not match element length");
  GroupRingElement out(x.group, x.mode);
  for (int r = 0; r < n; ++r) {
    const cd xr = x.coeffs[r];
    if (xr == cd(0.0, 0.0)) continue;
    for (int c = 0; c < n; ++c) {
      int mrc = m.at(r, c);
      if (mrc) out.coeffs[c] += static_cast<double>(mrc) * xr;
    }
  }
  return out;
}

GroupRingElement apply_automorphism(const Automorphism& phi,
                                    const GroupRingElement& x) {
  const int n = static_cast<int>(x.coeffs.size());
  if (static_cast<int>(phi.perm.size()) != n)
    throw std::invalid_argument("permutation length does not match element");
  GroupRingElement out(x.group, x.mode);
  for (int i = 0; i < n; ++i) out.coeffs[phi.perm[i]] = x.coeffs[i];
  return out;
}

}  // namespace grf
