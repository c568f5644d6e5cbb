#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "grf/dynamics.hpp"

namespace grf {

/// Worst per-agent commutator defect
///   max_i || xc*adj(x_i) - x_i*adj(xc) ||.
/// Zero exactly on equilibria of the aggregation flow.
double residual(const Ensemble& ens);

/// Null space of skew_matrix(g), described exactly: a coefficient vector
/// is annihilated iff it is constant on each right coset of the cyclic
/// subgroup generated by g*g.  The basis vectors are the coset indicator
/// vectors, ordered by smallest coset member.
struct NullSpaceBasis {
  GroupPtr group;
  int g = 0;
  std::vector<std::vector<int>> basis;  // indicator vectors, length order()
  std::vector<std::vector<int>> cosets;
  int nullity = 0;                      // = order / |<g*g>|
};

NullSpaceBasis coset_null_space(const GroupPtr& group, int g);

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
/// Exact; throws overflow_error if intermediate minors leave the guarded
/// range (does not happen at this problem scale).
int integer_rank(const IntMatrix& m);

/// order - rank(skew_matrix(g)), with the rank from integer elimination.
/// Independent route to NullSpaceBasis::nullity.
int nullity_by_elimination(const FiniteGroup& group, int g);

/// True iff every basis vector of the null space at g is annihilated by
/// skew_matrix(g^n).  Exact integer arithmetic.
bool null_space_power_inclusion(const GroupPtr& group, int g, int n);

enum class GLabel { One, Two, None };

const char* g_label_name(GLabel label);

struct PerGClassification {
  int g = 0;
  std::string g_name;
  GLabel label = GLabel::None;
  double null_check_value = 0;         // || xc * skew(g) ||
  double max_orthogonality_defect = 0; // max_i | v . x_i |
  std::vector<double> witness;         // v = xc * skew(g), kept when label Two
};

struct EquilibriumReport {
  double residual = 0;
  double tol = 0;
  bool is_equilibrium = false;
  bool global_zero = false;  // centroid vanishes; every agent is stationary
  std::vector<PerGClassification> per_g;
};

struct UnsupportedMode : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WitnessUndefined : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Tolerance-based membership test against the exact equilibrium
/// decomposition of the real group ring.  Per group element, label One
/// means the centroid lies in the null space of skew(g); label Two means
/// every agent is orthogonal to the witness row v = xc*skew(g).  The
/// ensemble is an equilibrium iff the centroid vanishes (global zero) or
/// every g earns One or Two.  Real mode only; complex input throws
/// UnsupportedMode.
EquilibriumReport classify_equilibrium(const Ensemble& ens, double tol);

/// Default tolerances: analytically constructed states vs. simulation
/// endpoints.
inline constexpr double kAnalyticTol = 1e-8;
inline constexpr double kSimulatedTol = 1e-6;

enum class Z3Class {
  ZeroCentroid,       // centroid vanishes
  CommonGreatCircle,  // agents share the great circle normal to (1,1,1) x c
  DiagonalCentroid,   // centroid parallel to (1,1,1)
  NotEquilibrium,
};

const char* z3_class_name(Z3Class c);

/// Taxonomy special to the real group ring over the 3-element cyclic
/// group, using the coordinate embedding (coeff at e, coeff at a, coeff
/// at a^2).  Checks zero centroid, then diagonal centroid, then the
/// common-circle condition.  Throws invalid_argument for any other group
/// and UnsupportedMode for complex input.
Z3Class classify_z3(const Ensemble& ens, double tol);

struct HyperplaneWitness {
  std::vector<double> direction;  // v = xc * skew(g)
  std::vector<double> defects;    // |v . x_i| per agent
  int hyperplane_dim = 0;         // order - 1
  int sphere_dim = 0;             // order - 2 for unit-norm agents
  bool unit_norm_agents = false;
};

/// The supporting hyperplane through the origin that carries a label-Two
/// ensemble at g.  Throws WitnessUndefined unless classification at g
/// yields label Two.
HyperplaneWitness hyperplane_witness(const Ensemble& ens, int g,
                                     double tol = kAnalyticTol);

}  // namespace grf
