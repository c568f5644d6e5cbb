#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "grf/ring.hpp"

namespace grf {

/// N interacting agents with a common coupling strength.  All agents
/// share one group and one field mode; kappa must be >= 0.
struct Ensemble {
  GroupPtr group;
  FieldMode mode = FieldMode::Real;
  double kappa = 1.0;
  std::vector<GroupRingElement> agents;
};

Ensemble make_ensemble(std::vector<GroupRingElement> agents, double kappa);

/// Agents drawn coefficient-wise from a seeded Gaussian and normalized
/// to unit Frobenius norm.
Ensemble random_unit_ensemble(const GroupPtr& group, int n_agents,
                              double kappa, FieldMode mode,
                              std::uint64_t seed);

GroupRingElement centroid(const Ensemble& ens);

/// Time derivative of each agent under the mean-field aggregation flow:
///   dx_i/dt = kappa * (xc * adj(x_i) * x_i  -  x_i * adj(xc) * x_i)
/// with xc the centroid.
std::vector<GroupRingElement> flow_field(const Ensemble& ens);

/// Same derivative assembled coefficient-by-coefficient from the
/// expanded triple sum, as an independent cross-check of flow_field.
std::vector<GroupRingElement> flow_field_by_components(const Ensemble& ens);

/// Squared norm of the centroid.  1 means full aggregation of unit-norm
/// agents, 0 means complete cancellation.
double order_parameter(const Ensemble& ens);

/// Mean squared pairwise distance (1/N^2) sum_ij ||x_i - x_j||^2,
/// computed from the pairwise sum, not from the order parameter.
double variance(const Ensemble& ens);

/// (2 kappa / N) sum_i || xc*adj(x_i) - x_i*adj(xc) ||^2, the decay rate
/// of the variance along the flow.
double dissipation(const Ensemble& ens);

struct SimConfig {
  double dt = 1e-3;
  double t_final = 10.0;
  bool renormalize = false;    // project agents back to unit norm each step
  int record_every = 1;        // diagnostics cadence in steps
  std::uint64_t seed = 0;      // carried into output metadata only
  double convergence_residual = 1e-6;
  int convergence_records = 100;
};

struct Diagnostics {
  double t = 0;
  double r2 = 0;           // order parameter
  double v = 0;            // variance
  double dissipation = 0;
  double residual = 0;     // worst per-agent equilibrium defect
  double min_norm = 0;     // pre-projection when renormalizing
  double max_norm = 0;
};

struct DivergenceError : std::runtime_error {
  long long step;
  explicit DivergenceError(long long s);
};

struct SimResult {
  std::vector<Diagnostics> records;
  Ensemble final_state;
  /// Time of the first record opening a run of convergence_records
  /// consecutive records with residual below convergence_residual.
  std::optional<double> converged_at;
  long long steps = 0;
};

/// One classical RK4 step of the aggregation flow.
Ensemble step_rk4(const Ensemble& ens, double dt);

/// Fixed-step RK4 integration over round(t_final/dt) steps.  Throws
/// DivergenceError with the offending step index if the state stops
/// being finite.
SimResult simulate(const Ensemble& initial, const SimConfig& cfg);

struct PhaseTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> phases;  // one row per time, N entries
};

/// For the one-element group with unit-modulus complex agents the flow
/// closes on the phases:  dtheta_i/dt = (2 kappa / N) sum_k
/// sin(theta_k - theta_i).  Integrates that reduced system with RK4 at
/// the same step size and records every step.
PhaseTrajectory kuramoto_phase_trajectory(const Ensemble& ens,
                                          double t_final, double dt);

}  // namespace grf
