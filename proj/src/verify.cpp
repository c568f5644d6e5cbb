#include "grf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace grf {

namespace {

GroupRingElement random_unit_element(const GroupPtr& group, FieldMode mode,
                                     std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GroupRingElement x(group, mode);
  for (auto& c : x.coeffs)
    c = cd(gauss(rng), mode == FieldMode::Complex ? gauss(rng) : 0.0);
  double nrm = norm(x);
  for (auto& c : x.coeffs) c /= nrm;
  return x;
}

double max_coeff_dist(const GroupRingElement& x, const GroupRingElement& y) {
  double worst = 0.0;
  for (size_t i = 0; i < x.coeffs.size(); ++i)
    worst = std::max(worst, std::abs(x.coeffs[i] - y.coeffs[i]));
  return worst;
}

/// Some automorphism to exercise coefficient transport: inversion when the
/// group is abelian and inversion moves something, else a nontrivial inner
/// automorphism, else the identity.
std::pair<Automorphism, std::string> pick_automorphism(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> perm(n);
  if (g.is_abelian()) {
    bool moves = false;
    for (int i = 0; i < n; ++i) {
      perm[i] = g.inverse(i);
      if (perm[i] != i) moves = true;
    }
    if (moves) return {Automorphism{perm}, "inversion"};
  } else {
    for (int a = 1; a < n; ++a) {
      bool moves = false;
      for (int i = 0; i < n; ++i) {
        perm[i] = g.mul(g.mul(a, i), g.inverse(a));
        if (perm[i] != i) moves = true;
      }
      if (moves) return {Automorphism{perm}, "conjugation by " + g.name(a)};
    }
  }
  std::iota(perm.begin(), perm.end(), 0);
  return {Automorphism{perm}, "identity (no nontrivial choice available)"};
}

struct Worst {
  double value = 0.0;
  void track(double d) { value = std::max(value, std::abs(d)); }
};

CheckResult make_result(const std::string& name, double worst, double tol,
                        const std::string& note = "") {
  return CheckResult{name, worst <= tol, worst, tol, note};
}

}  // namespace

std::vector<CheckResult> verify_ring(const GroupPtr& group, std::uint64_t seed,
                                     int trials) {
  if (!group) throw std::invalid_argument("null group");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const FiniteGroup& g = *group;
  const int n = g.order();
  const double tol = 1e-12;
  std::mt19937_64 rng(seed);

  Worst assoc, distrib, unit_law, involution, product_rule, cyclicity,
      pairing, schwarz, isometry, reconstruction, morphism;

  auto [phi, phi_note] = pick_automorphism(g);

  std::vector<IntMatrix> tmats;
  tmats.reserve(n);
  for (int e = 0; e < n; ++e) tmats.push_back(translation_matrix(g, e));

  for (int trial = 0; trial < trials; ++trial) {
    FieldMode mode = trial % 2 ? FieldMode::Real : FieldMode::Complex;
    GroupRingElement x = random_unit_element(group, mode, rng);
    GroupRingElement y = random_unit_element(group, mode, rng);
    GroupRingElement z = random_unit_element(group, mode, rng);
    GroupRingElement e1 = GroupRingElement::basis(group, 0, mode);

    assoc.track(norm(sub(mul(mul(x, y), z), mul(x, mul(y, z)))));
    distrib.track(norm(sub(mul(x, add(y, z)), add(mul(x, y), mul(x, z)))));
    unit_law.track(norm(sub(mul(e1, x), x)));
    unit_law.track(norm(sub(mul(x, e1), x)));
    involution.track(norm(sub(adjoint(adjoint(x)), x)));
    product_rule.track(norm(sub(adjoint(mul(x, y)), mul(adjoint(y), adjoint(x)))));
    cyclicity.track(std::abs(trace(mul(x, y)) - trace(mul(y, x))));
    pairing.track(std::abs(inner_product(x, y) - trace(mul(adjoint(x), y))));
    schwarz.track(std::max(0.0, std::abs(inner_product(x, y)) -
                                    norm(x) * norm(y)));
    isometry.track(std::abs(norm(adjoint(x)) - norm(x)));

    // Coefficients of x * adj(y) recovered through the translation matrices.
    GroupRingElement xy = mul(x, adjoint(y));
    for (int e = 0; e < n; ++e) {
      cd acc(0.0, 0.0);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (tmats[e].at(r, c))
            acc += x.coeffs[r] * std::conj(y.coeffs[c]);
      reconstruction.track(std::abs(xy.coeffs[e] - acc));
    }

    morphism.track(norm(sub(apply_automorphism(phi, mul(x, y)),
                            mul(apply_automorphism(phi, x),
                                apply_automorphism(phi, y)))));
    morphism.track(norm(sub(apply_automorphism(phi, adjoint(x)),
                            adjoint(apply_automorphism(phi, x)))));
  }

  // Exact structural identities of the translation matrices.
  double tmat_defect = 0.0;
  for (int e = 0; e < n; ++e) {
    for (int r = 0; r < n; ++r) {
      int rowsum = 0, colsum = 0;
      for (int c = 0; c < n; ++c) {
        rowsum += tmats[e].at(r, c);
        colsum += tmats[e].at(c, r);
        if (tmats[e].at(r, c) != tmats[g.inverse(e)].at(c, r))
          tmat_defect += 1;  // transpose identity
      }
      if (rowsum != 1 || colsum != 1) tmat_defect += 1;  // permutation matrix
    }
    for (int f = 0; f < n; ++f) {
      if (f != e && tmats[e].data == tmats[f].data) tmat_defect += 1;
      // Product identity: exhaustive for small orders, sampled rows above.
      const IntMatrix& a = tmats[e];
      const IntMatrix& b = tmats[f];
      const IntMatrix& c = tmats[g.mul(e, f)];
      const int row_step = n <= 32 ? 1 : (n / 8);
      for (int r = 0; r < n; r += row_step)
        for (int col = 0; col < n; ++col) {
          int acc = 0;
          for (int k = 0; k < n; ++k) acc += a.at(r, k) * b.at(k, col);
          if (acc != c.at(r, col)) tmat_defect += 1;
        }
    }
  }

  bool aut = check_automorphism(g, phi.perm);

  std::vector<CheckResult> out;
  out.push_back(make_result("ring.mul_associative", assoc.value, tol));
  out.push_back(make_result("ring.mul_distributive", distrib.value, tol));
  out.push_back(make_result("ring.unit_law", unit_law.value, tol));
  out.push_back(make_result("ring.adjoint_involution", involution.value, tol));
  out.push_back(
      make_result("ring.adjoint_product_rule", product_rule.value, tol));
  out.push_back(make_result("ring.trace_cyclic", cyclicity.value, tol));
  out.push_back(make_result("ring.pairing_via_trace", pairing.value, tol));
  out.push_back(make_result("ring.cauchy_schwarz", schwarz.value, tol));
  out.push_back(make_result("ring.adjoint_isometry", isometry.value, tol));
  out.push_back(make_result("ring.translation_matrices", tmat_defect, 0.0,
                            "permutation/transpose/product, exact"));
  out.push_back(make_result("ring.coeff_reconstruction", reconstruction.value,
                            tol));
  out.push_back(make_result("ring.automorphism_extension",
                            aut ? morphism.value : 1.0, tol, phi_note));
  return out;
}

std::vector<CheckResult> verify_dynamics(const GroupPtr& group,
                                         std::uint64_t seed, int trials) {
  if (!group) throw std::invalid_argument("null group");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<CheckResult> out;
  const int n_agents = 5;

  // Derivative assembled two independent ways.
  Worst deriv_defect;
  for (int trial = 0; trial < std::min(trials, 25); ++trial) {
    FieldMode mode = trial % 2 ? FieldMode::Real : FieldMode::Complex;
    Ensemble ens =
        random_unit_ensemble(group, 4, 1.0, mode, seed + 1000 + trial);
    auto direct = flow_field(ens);
    auto by_comp = flow_field_by_components(ens);
    for (size_t i = 0; i < direct.size(); ++i)
      deriv_defect.track(max_coeff_dist(direct[i], by_comp[i]));
  }
  out.push_back(
      make_result("dynamics.derivative_cross_check", deriv_defect.value, 1e-12));

  // One seeded complex run, diagnostics every step.
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 5.0;
  cfg.record_every = 1;
  Ensemble init =
      random_unit_ensemble(group, n_agents, 1.0, FieldMode::Complex, seed);
  SimResult run = simulate(init, cfg);

  Worst drift, v_identity;
  double v_slack = 0.0;
  for (const Diagnostics& d : run.records) {
    drift.track(d.min_norm - 1.0);
    drift.track(d.max_norm - 1.0);
    v_identity.track(d.v - (2.0 - 2.0 * d.r2));
  }
  for (size_t k = 1; k < run.records.size(); ++k)
    v_slack = std::max(v_slack, run.records[k].v - run.records[k - 1].v);
  out.push_back(make_result("dynamics.norm_conservation", drift.value, 1e-8));
  out.push_back(make_result("dynamics.variance_monotone", v_slack, 1e-9,
                            "worst per-step increase"));
  out.push_back(
      make_result("dynamics.variance_identity", v_identity.value, 1e-10));

  Worst balance, growth_balance;
  double r2_slack = 0.0;
  for (size_t k = 1; k + 1 < run.records.size(); ++k) {
    double fd_v = (run.records[k + 1].v - run.records[k - 1].v) / (2.0 * cfg.dt);
    double fd_r2 =
        (run.records[k + 1].r2 - run.records[k - 1].r2) / (2.0 * cfg.dt);
    double diss = run.records[k].dissipation;
    if (diss > 1e-6) {
      balance.track((fd_v + diss) / diss);
      growth_balance.track((fd_r2 - 0.5 * diss) / (0.5 * diss));
    }
  }
  for (size_t k = 1; k < run.records.size(); ++k)
    r2_slack = std::max(r2_slack, run.records[k - 1].r2 - run.records[k].r2);
  out.push_back(make_result("dynamics.dissipation_balance", balance.value,
                            1e-4, "dV/dt vs -dissipation, relative"));
  out.push_back(make_result("dynamics.order_parameter_growth",
                            std::max(r2_slack, growth_balance.value), 1e-4,
                            "monotone R2, dR2/dt = dissipation/2"));

  // Equivariance under an automorphism: transport commutes with the flow.
  auto [phi, phi_note] = pick_automorphism(*group);
  if (check_automorphism(*group, phi.perm)) {
    SimConfig ecfg;
    ecfg.dt = 1e-3;
    ecfg.t_final = 5.0;
    ecfg.record_every = 1000000;
    Ensemble mapped = init;
    for (auto& a : mapped.agents) a = apply_automorphism(phi, a);
    SimResult straight = simulate(init, ecfg);
    SimResult transported = simulate(mapped, ecfg);
    Worst equiv;
    for (size_t i = 0; i < straight.final_state.agents.size(); ++i)
      equiv.track(max_coeff_dist(
          apply_automorphism(phi, straight.final_state.agents[i]),
          transported.final_state.agents[i]));
    out.push_back(make_result("dynamics.automorphism_equivariance",
                              equiv.value, 1e-8, phi_note));
  }

  // Groups where every element squares to the identity freeze the real flow.
  bool self_inverse_family = group->is_abelian();
  for (int e = 0; e < group->order() && self_inverse_family; ++e)
    if (group->mul(e, e) != 0) self_inverse_family = false;
  if (self_inverse_family) {
    std::mt19937_64 rng(seed + 7);
    Worst field_norm, state_drift;
    for (int trial = 0; trial < std::min(trials, 20); ++trial) {
      std::vector<GroupRingElement> agents;
      for (int i = 0; i < 4; ++i)
        agents.push_back(random_unit_element(group, FieldMode::Real, rng));
      Ensemble ens = make_ensemble(std::move(agents), 1.0);
      for (const auto& dx : flow_field(ens)) field_norm.track(norm(dx));
      SimConfig scfg;
      scfg.dt = 1e-3;
      scfg.t_final = 10.0;
      scfg.record_every = 1000000;
      SimResult frozen = simulate(ens, scfg);
      for (size_t i = 0; i < ens.agents.size(); ++i)
        state_drift.track(
            max_coeff_dist(frozen.final_state.agents[i], ens.agents[i]));
    }
    double field_tol = group->order() == 2 ? 1e-15 : 1e-13;
    double drift_tol = group->order() == 2 ? 1e-14 : 1e-12;
    out.push_back(make_result("dynamics.self_inverse_stationary_field",
                              field_norm.value, field_tol));
    out.push_back(make_result("dynamics.self_inverse_stationary_run",
                              state_drift.value, drift_tol, "t = 10"));
  }

  // Zero coupling freezes everything.
  Ensemble still = random_unit_ensemble(group, 3, 0.0, FieldMode::Complex,
                                        seed + 99);
  SimConfig zcfg;
  zcfg.dt = 1e-2;
  zcfg.t_final = 1.0;
  zcfg.record_every = 1000000;
  SimResult frozen = simulate(still, zcfg);
  Worst frozen_defect;
  for (size_t i = 0; i < still.agents.size(); ++i)
    frozen_defect.track(
        max_coeff_dist(frozen.final_state.agents[i], still.agents[i]));
  out.push_back(
      make_result("dynamics.zero_coupling_frozen", frozen_defect.value, 0.0));

  return out;
}

std::vector<CheckResult> verify_equilibria(const GroupPtr& group,
                                           std::uint64_t seed, int trials) {
  if (!group) throw std::invalid_argument("null group");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const FiniteGroup& g = *group;
  const int n = g.order();
  std::vector<CheckResult> out;

  double nullity_defect = 0.0, lagrange_defect = 0.0, basis_defect = 0.0,
         inclusion_defect = 0.0;
  for (int e = 0; e < n; ++e) {
    NullSpaceBasis basis = coset_null_space(group, e);
    if (basis.nullity != nullity_by_elimination(g, e)) nullity_defect += 1;
    Subgroup h = square_generated_subgroup(group, e);
    if (basis.nullity * static_cast<int>(h.members.size()) != n)
      lagrange_defect += 1;
    SkewMatrix sk = skew_matrix(group, e);
    for (const auto& vec : basis.basis)
      for (int c = 0; c < n; ++c) {
        long long acc = 0;
        for (int r = 0; r < n; ++r) acc += 1LL * vec[r] * sk.mat.at(r, c);
        basis_defect += std::abs(static_cast<double>(acc));
      }
    for (int p = -6; p <= 6; ++p)
      if (!null_space_power_inclusion(group, e, p)) inclusion_defect += 1;
  }
  out.push_back(make_result("equilibria.nullity_two_routes", nullity_defect,
                            0.0, "coset count vs integer elimination"));
  out.push_back(make_result("equilibria.nullity_lagrange", lagrange_defect, 0.0));
  out.push_back(
      make_result("equilibria.basis_annihilation", basis_defect, 0.0));
  out.push_back(make_result("equilibria.power_inclusion", inclusion_defect,
                            0.0, "exponents -6..6"));

  // Cyclic groups: nullity at the m-th power of a generator is gcd(2m, n).
  int generator = -1;
  for (int e = 0; e < n && generator < 0; ++e)
    if (g.element_order(e) == n) generator = e;
  if (generator >= 0) {
    double gcd_defect = 0.0;
    for (int m = 0; m < n; ++m) {
      int elem = g.power(generator, m);
      int expect = static_cast<int>(std::gcd(2LL * m, static_cast<long long>(n)));
      if (coset_null_space(group, elem).nullity != expect) gcd_defect += 1;
    }
    out.push_back(make_result("equilibria.cyclic_gcd_formula", gcd_defect, 0.0,
                              "generator " + g.name(generator)));
    if (n >= 3) {
      bool prime = true;
      for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) prime = false;
      if (prime) {
        double coincide_defect = 0.0;
        auto reference = coset_null_space(group, 1).cosets;
        for (int e = 1; e < n; ++e)
          if (coset_null_space(group, e).cosets != reference)
            coincide_defect += 1;
        out.push_back(make_result("equilibria.prime_null_spaces_coincide",
                                  coincide_defect, 0.0));
      }
    }
  }

  // Classifier vs residual on rejected random states and accepted members.
  std::mt19937_64 rng(seed);
  double agree_defect = 0.0;
  Worst member_residual;
  for (int trial = 0; trial < trials; ++trial) {
    Ensemble random_state =
        random_unit_ensemble(group, 5, 1.0, FieldMode::Real, seed + trial);
    EquilibriumReport rep = classify_equilibrium(random_state, kAnalyticTol);
    if (rep.is_equilibrium != (rep.residual <= kAnalyticTol))
      agree_defect += 1;
  }
  {
    GroupRingElement shared = random_unit_element(group, FieldMode::Real, rng);
    Ensemble aggregated =
        make_ensemble(std::vector<GroupRingElement>(4, shared), 1.0);
    EquilibriumReport rep = classify_equilibrium(aggregated, kAnalyticTol);
    if (!rep.is_equilibrium) agree_defect += 1;
    member_residual.track(residual(aggregated));

    GroupRingElement flip = scale(-1.0, shared);
    Ensemble cancelled = make_ensemble({shared, flip}, 1.0);
    rep = classify_equilibrium(cancelled, kAnalyticTol);
    if (!rep.is_equilibrium || !rep.global_zero) agree_defect += 1;
    member_residual.track(residual(cancelled));

    GroupRingElement ones(group, FieldMode::Real);
    for (auto& c : ones.coeffs) c = 1.0 / std::sqrt(static_cast<double>(n));
    Ensemble constant =
        make_ensemble(std::vector<GroupRingElement>(3, ones), 1.0);
    rep = classify_equilibrium(constant, kAnalyticTol);
    if (!rep.is_equilibrium || rep.global_zero) agree_defect += 1;
    for (const auto& pg : rep.per_g)
      if (pg.label != GLabel::One) agree_defect += 1;
    member_residual.track(residual(constant));
  }
  out.push_back(make_result("equilibria.classifier_residual_agreement",
                            agree_defect, 0.0,
                            "random rejects, constructed accepts"));
  out.push_back(make_result("equilibria.member_residuals",
                            member_residual.value, 1e-12));

  // A seeded trajectory must land on the classified manifold.
  {
    Ensemble init =
        random_unit_ensemble(group, 6, 1.0, FieldMode::Real, seed + 555);
    SimConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_final = 150.0;
    cfg.record_every = 10;
    SimResult run = simulate(init, cfg);
    EquilibriumReport rep =
        classify_equilibrium(run.final_state, kSimulatedTol);
    double defect = rep.is_equilibrium ? 0.0 : 1.0;
    out.push_back(make_result("equilibria.trajectory_endpoint_classified",
                              defect, 0.0,
                              "residual " + std::to_string(rep.residual)));
  }

  return out;
}

}  // namespace grf
