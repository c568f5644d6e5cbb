#include "grf/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace grf {

NullSpaceBasis coset_null_space(const GroupPtr& group, int g) {
  if (!group) throw std::invalid_argument("null group");
  if (g < 0 || g >= group->order())
    throw std::invalid_argument("element out of range");
  Subgroup h = square_generated_subgroup(group, g);
  NullSpaceBasis out;
  out.group = group;
  out.g = g;
  out.cosets = right_cosets(h);
  out.nullity = static_cast<int>(out.cosets.size());
  for (const auto& block : out.cosets) {
    std::vector<int> indicator(group->order(), 0);
    for (int member : block) indicator[member] = 1;
    out.basis.push_back(std::move(indicator));
  }
  return out;
}

int integer_rank(const IntMatrix& m) {
  using int128 = __int128;
  const int rows = m.rows, cols = m.cols;
  std::vector<int128> a(m.data.begin(), m.data.end());
  auto at = [&](int r, int c) -> int128& { return a[size_t(r) * cols + c]; };
  // Magnitudes stay below the Hadamard bound of the processed minors;
  // the guard keeps products of two entries inside __int128.
  const int128 limit = int128(1) << 62;
  int rank = 0;
  int128 prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int c = 0; c < cols; ++c) std::swap(at(pivot, c), at(rank, c));
    const int128 piv = at(rank, col);
    for (int r = rank + 1; r < rows; ++r) {
      const int128 factor = at(r, col);
      for (int c = col + 1; c < cols; ++c) {
        if (piv > limit || piv < -limit || at(r, c) > limit ||
            at(r, c) < -limit)
          throw std::overflow_error("integer elimination overflow");
        int128 num = piv * at(r, c) - factor * at(rank, c);
        at(r, c) = num / prev;  // exact by the fraction-free recurrence
      }
      at(r, col) = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

int nullity_by_elimination(const FiniteGroup& group, int g) {
  IntMatrix pos = translation_matrix(group, g);
  IntMatrix neg = translation_matrix(group, group.inverse(g));
  for (size_t i = 0; i < pos.data.size(); ++i) pos.data[i] -= neg.data[i];
  return group.order() - integer_rank(pos);
}

bool null_space_power_inclusion(const GroupPtr& group, int g, int n) {
  NullSpaceBasis basis = coset_null_space(group, g);
  int gn = group->power(g, n);
  IntMatrix pos = translation_matrix(*group, gn);
  IntMatrix neg = translation_matrix(*group, group->inverse(gn));
  for (size_t i = 0; i < pos.data.size(); ++i) pos.data[i] -= neg.data[i];
  const int order = group->order();
  for (const auto& vec : basis.basis)
    for (int c = 0; c < order; ++c) {
      long long acc = 0;
      for (int r = 0; r < order; ++r) acc += 1LL * vec[r] * pos.at(r, c);
      if (acc != 0) return false;
    }
  return true;
}

const char* g_label_name(GLabel label) {
  switch (label) {
    case GLabel::One:
      return "1";
    case GLabel::Two:
      return "2";
    default:
      return "none";
  }
}

namespace {

std::vector<double> real_coeffs(const GroupRingElement& x) {
  std::vector<double> out(x.coeffs.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = x.coeffs[i].real();
  return out;
}

std::vector<double> skew_row_action(const std::vector<double>& x,
                                    const IntMatrix& m) {
  std::vector<double> out(m.cols, 0.0);
  for (int r = 0; r < m.rows; ++r) {
    if (x[r] == 0.0) continue;
    for (int c = 0; c < m.cols; ++c) {
      int e = m.at(r, c);
      if (e) out[c] += e * x[r];
    }
  }
  return out;
}

double euclid_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

EquilibriumReport classify_equilibrium(const Ensemble& ens, double tol) {
  if (ens.mode != FieldMode::Real)
    throw UnsupportedMode(
        "classification is defined for real-mode states; use residual() for "
        "complex states");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  EquilibriumReport report;
  report.tol = tol;
  report.residual = residual(ens);

  const GroupRingElement xc = centroid(ens);
  const std::vector<double> c = real_coeffs(xc);
  if (euclid_norm(c) <= tol) {
    report.global_zero = true;
    report.is_equilibrium = true;
    return report;
  }

  std::vector<std::vector<double>> agents;
  agents.reserve(ens.agents.size());
  for (const auto& a : ens.agents) agents.push_back(real_coeffs(a));

  const int order = ens.group->order();
  bool all_labeled = true;
  for (int g = 0; g < order; ++g) {
    SkewMatrix sk = skew_matrix(ens.group, g);
    std::vector<double> v = skew_row_action(c, sk.mat);

    PerGClassification rec;
    rec.g = g;
    rec.g_name = ens.group->name(g);
    rec.null_check_value = euclid_norm(v);
    double worst = 0.0;
    for (const auto& agent : agents)
      worst = std::max(worst, std::abs(dot(v, agent)));
    rec.max_orthogonality_defect = worst;

    if (rec.null_check_value <= tol) {
      rec.label = GLabel::One;
    } else if (worst <= tol) {
      rec.label = GLabel::Two;
      rec.witness = std::move(v);
    } else {
      rec.label = GLabel::None;
      all_labeled = false;
    }
    report.per_g.push_back(std::move(rec));
  }
  report.is_equilibrium = all_labeled;
  return report;
}

const char* z3_class_name(Z3Class c) {
  switch (c) {
    case Z3Class::ZeroCentroid:
      return "zero-centroid";
    case Z3Class::CommonGreatCircle:
      return "common-great-circle";
    case Z3Class::DiagonalCentroid:
      return "diagonal-centroid";
    default:
      return "not-equilibrium";
  }
}

namespace {

std::vector<double> cross3(const std::vector<double>& a,
                           const std::vector<double>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

Z3Class classify_z3(const Ensemble& ens, double tol) {
  if (ens.mode != FieldMode::Real)
    throw UnsupportedMode("the three-element taxonomy needs real-mode states");
  GroupPtr z3 = make_cyclic(3);
  if (!same_structure(*ens.group, *z3))
    throw std::invalid_argument(
        "taxonomy applies to the 3-element cyclic group only");

  const std::vector<double> c = real_coeffs(centroid(ens));
  if (euclid_norm(c) <= tol) return Z3Class::ZeroCentroid;

  const std::vector<double> diagonal{1.0, 1.0, 1.0};
  const std::vector<double> y = cross3(diagonal, c);
  if (euclid_norm(y) <= tol) return Z3Class::DiagonalCentroid;

  double worst = 0.0;
  for (const auto& a : ens.agents)
    worst = std::max(worst, std::abs(dot(real_coeffs(a), y)));
  if (worst <= tol) return Z3Class::CommonGreatCircle;
  return Z3Class::NotEquilibrium;
}

HyperplaneWitness hyperplane_witness(const Ensemble& ens, int g, double tol) {
  if (ens.mode != FieldMode::Real)
    throw UnsupportedMode("witness extraction needs real-mode states");
  if (g < 0 || g >= ens.group->order())
    throw std::invalid_argument("element out of range");

  const std::vector<double> c = real_coeffs(centroid(ens));
  if (euclid_norm(c) <= tol)
    throw WitnessUndefined(
        "zero-centroid states have no supporting hyperplane");

  SkewMatrix sk = skew_matrix(ens.group, g);
  std::vector<double> v = skew_row_action(c, sk.mat);
  if (euclid_norm(v) <= tol)
    throw WitnessUndefined(
        "centroid lies in the null space at this element; no hyperplane "
        "constraint applies");

  HyperplaneWitness out;
  out.defects.reserve(ens.agents.size());
  bool unit = true;
  for (const auto& a : ens.agents) {
    out.defects.push_back(std::abs(dot(v, real_coeffs(a))));
    if (std::abs(norm(a) - 1.0) > tol) unit = false;
  }
  double worst = *std::max_element(out.defects.begin(), out.defects.end());
  if (worst > tol)
    throw WitnessUndefined(
        "agents do not share the hyperplane at this element (defect " +
        std::to_string(worst) + ")");
  out.direction = std::move(v);
  out.hyperplane_dim = ens.group->order() - 1;
  out.sphere_dim = ens.group->order() - 2;
  out.unit_norm_agents = unit;
  return out;
}

}  // namespace grf
