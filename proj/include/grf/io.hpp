#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "grf/dynamics.hpp"

namespace grf {

/// Portable snapshot of an ensemble.  JSON layout:
///   {
///     "group_spec": "Z3",
///     "field_mode": "real" | "complex",
///     "kappa": 1.0,
///     "agents": [[c0, c1, ...], ...],
///     "meta": { "seed": 42, ... }
///   }
/// Complex coefficients are [re, im] pairs; real-mode files may use bare
/// numbers.  Numbers round-trip bit-exactly.
struct StateEnvelope {
  std::string group_spec;
  FieldMode field_mode = FieldMode::Real;
  double kappa = 1.0;
  std::vector<std::vector<cd>> agents;
  std::string meta_json = "{}";  // free-form metadata object, JSON text
};

std::string envelope_to_json(const StateEnvelope& env);
StateEnvelope envelope_from_json(const std::string& text);

void write_state_file(const std::string& path, const StateEnvelope& env);
StateEnvelope read_state_file(const std::string& path);

/// Builds the ensemble (parses group_spec, validates coefficient counts
/// and the real-mode invariant).
Ensemble ensemble_from_envelope(const StateEnvelope& env);
StateEnvelope envelope_from_ensemble(const Ensemble& ens,
                                     const std::string& group_spec,
                                     const std::string& meta_json = "{}");

/// Shortest text form that parses back to exactly the same double.
std::string format_double(double x);

/// Trajectory CSV: header
///   t,R2,V,dissipation,residual,min_norm,max_norm
/// then one row per diagnostics record.
void write_trajectory_csv(std::ostream& out,
                          const std::vector<Diagnostics>& records);
void write_trajectory_csv_file(const std::string& path,
                               const std::vector<Diagnostics>& records);

/// Log levels come from the GRF_LOG environment variable ("info" or
/// "debug"); messages go to stderr.
bool log_enabled_info();
bool log_enabled_debug();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace grf
