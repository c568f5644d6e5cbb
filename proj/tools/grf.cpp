#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grf/equilibria.hpp"
#include "grf/io.hpp"
#include "grf/verify.hpp"

namespace {

using nlohmann::json;

struct SimulateArgs {
  std::string group = "Z3";
  int n_agents = 4;
  double kappa = 1.0;
  double dt = 1e-3;
  double t_final = 10.0;
  std::uint64_t seed = 1;
  std::string field = "real";
  bool renormalize = false;
  int record_every = 1;
  std::string init;
  std::string out;
  std::string snapshot_out;
};

struct ClassifyArgs {
  std::string state;
  double tol = grf::kAnalyticTol;
  std::string format = "json";
};

struct GroupInfoArgs {
  std::string group;
};

struct VerifyArgs {
  std::string group;
  std::string suite = "all";
  std::uint64_t seed = 1;
  int trials = 100;
};

struct SweepArgs {
  std::string group;
  std::string kappa_range;
  int n_agents = 4;
  int trials = 3;
  double dt = 1e-2;
  double t_final = 100.0;
  std::uint64_t seed = 1;
  std::string field = "real";
  bool renormalize = false;
  int record_every = 10;
  std::string out;
};

std::string run_meta(const SimulateArgs& a, double kappa, std::uint64_t seed) {
  json meta;
  meta["command"] = "simulate";
  meta["seed"] = seed;
  meta["n_agents"] = a.n_agents;
  meta["kappa"] = kappa;
  meta["dt"] = a.dt;
  meta["t_final"] = a.t_final;
  meta["field"] = a.field;
  meta["renormalize"] = a.renormalize;
  meta["record_every"] = a.record_every;
  if (!a.init.empty()) meta["init"] = a.init;
  return meta.dump();
}

int cmd_simulate(const SimulateArgs& a, bool field_given, bool group_given,
                 bool n_agents_given, bool kappa_given) {
  grf::Ensemble initial;
  std::string group_spec = a.group;
  if (!a.init.empty()) {
    grf::StateEnvelope env = grf::read_state_file(a.init);
    if (group_given && env.group_spec != a.group)
      throw std::invalid_argument(
          "--group conflicts with the group of the init state file");
    if (field_given &&
        grf::parse_field_mode(a.field) != env.field_mode)
      throw std::invalid_argument(
          "--field conflicts with the field mode of the init state file");
    if (n_agents_given &&
        a.n_agents != static_cast<int>(env.agents.size()))
      throw std::invalid_argument(
          "--n-agents conflicts with the init state file");
    if (kappa_given) env.kappa = a.kappa;
    group_spec = env.group_spec;
    initial = grf::ensemble_from_envelope(env);
  } else {
    grf::GroupPtr group = grf::parse_group_spec(a.group);
    initial = grf::random_unit_ensemble(group, a.n_agents, a.kappa,
                                        grf::parse_field_mode(a.field),
                                        a.seed);
  }

  grf::SimConfig cfg;
  cfg.dt = a.dt;
  cfg.t_final = a.t_final;
  cfg.renormalize = a.renormalize;
  cfg.record_every = a.record_every;
  cfg.seed = a.seed;

  grf::log_info("simulate: group " + group_spec + ", " +
                std::to_string(initial.agents.size()) + " agents, kappa " +
                grf::format_double(initial.kappa) + ", t_final " +
                grf::format_double(cfg.t_final));
  grf::SimResult result = grf::simulate(initial, cfg);
  grf::log_info("simulate: " + std::to_string(result.steps) + " steps, " +
                std::to_string(result.records.size()) + " records, final "
                "residual " +
                grf::format_double(result.records.back().residual));

  if (a.out.empty()) {
    grf::write_trajectory_csv(std::cout, result.records);
  } else {
    grf::write_trajectory_csv_file(a.out, result.records);
  }
  if (!a.snapshot_out.empty()) {
    grf::StateEnvelope snap = grf::envelope_from_ensemble(
        result.final_state, group_spec, run_meta(a, initial.kappa, a.seed));
    grf::write_state_file(a.snapshot_out, snap);
  }
  return 0;
}

json report_to_json(const grf::EquilibriumReport& rep) {
  json doc;
  doc["residual"] = rep.residual;
  doc["tol"] = rep.tol;
  doc["is_equilibrium"] = rep.is_equilibrium;
  doc["global_zero"] = rep.global_zero;
  json per_g = json::array();
  for (const auto& pg : rep.per_g) {
    json rec;
    rec["g_name"] = pg.g_name;
    if (pg.label == grf::GLabel::None)
      rec["label"] = "none";
    else
      rec["label"] = pg.label == grf::GLabel::One ? 1 : 2;
    rec["null_check_value"] = pg.null_check_value;
    rec["max_orthogonality_defect"] = pg.max_orthogonality_defect;
    per_g.push_back(std::move(rec));
  }
  doc["per_g"] = std::move(per_g);
  return doc;
}

int cmd_classify(const ClassifyArgs& a) {
  grf::StateEnvelope env = grf::read_state_file(a.state);
  grf::Ensemble ens = grf::ensemble_from_envelope(env);
  const bool text = a.format == "text";

  if (ens.mode == grf::FieldMode::Complex) {
    double res = grf::residual(ens);
    bool ok = res <= a.tol;
    if (text) {
      std::cout << "residual " << grf::format_double(res) << " (tol "
                << grf::format_double(a.tol) << ")\n"
                << "classification needs a real-mode state; residual-only "
                   "report\n"
                << (ok ? "equilibrium: yes\n" : "equilibrium: no\n");
    } else {
      json doc;
      doc["residual"] = res;
      doc["tol"] = a.tol;
      doc["is_equilibrium"] = ok;
      doc["note"] =
          "classification needs a real-mode state; residual-only report";
      std::cout << doc.dump(2) << "\n";
    }
    return ok ? 0 : 3;
  }

  grf::EquilibriumReport rep = grf::classify_equilibrium(ens, a.tol);
  std::optional<grf::Z3Class> taxonomy;
  if (grf::same_structure(*ens.group, *grf::make_cyclic(3)))
    taxonomy = grf::classify_z3(ens, a.tol);

  if (text) {
    std::cout << "residual " << grf::format_double(rep.residual) << " (tol "
              << grf::format_double(rep.tol) << ")\n";
    std::cout << "equilibrium: " << (rep.is_equilibrium ? "yes" : "no")
              << (rep.global_zero ? " (zero centroid)" : "") << "\n";
    for (const auto& pg : rep.per_g)
      std::cout << "  g=" << pg.g_name << " label=" << g_label_name(pg.label)
                << " null_check=" << grf::format_double(pg.null_check_value)
                << " defect="
                << grf::format_double(pg.max_orthogonality_defect) << "\n";
    if (taxonomy)
      std::cout << "taxonomy: " << grf::z3_class_name(*taxonomy) << "\n";
  } else {
    json doc = report_to_json(rep);
    if (taxonomy) doc["z3_taxonomy"] = grf::z3_class_name(*taxonomy);
    std::cout << doc.dump(2) << "\n";
  }
  return rep.is_equilibrium ? 0 : 3;
}

int cmd_group_info(const GroupInfoArgs& a) {
  grf::GroupPtr group = grf::parse_group_spec(a.group);
  const grf::FiniteGroup& g = *group;
  const int n = g.order();
  std::cout << "group " << a.group << "\n";
  std::cout << "order " << n << (g.is_abelian() ? ", abelian" : "") << "\n";
  if (n <= 24) {
    std::cout << "cayley table:\n";
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) std::cout << (c ? " " : "  ") << g.mul(r, c);
      std::cout << "\n";
    }
  }
  bool mismatch = false;
  for (int e = 0; e < n; ++e) {
    grf::Subgroup h = grf::square_generated_subgroup(group, e);
    grf::NullSpaceBasis basis = grf::coset_null_space(group, e);
    int elim = grf::nullity_by_elimination(g, e);
    std::cout << "g=" << g.name(e) << " inverse=" << g.name(g.inverse(e))
              << " order=" << g.element_order(e) << " |H|=" << h.members.size()
              << " cosets=";
    for (size_t b = 0; b < basis.cosets.size(); ++b) {
      std::cout << (b ? "," : "") << "{";
      for (size_t m = 0; m < basis.cosets[b].size(); ++m)
        std::cout << (m ? " " : "") << basis.cosets[b][m];
      std::cout << "}";
    }
    std::cout << " nullity=" << basis.nullity << " elimination=" << elim;
    if (basis.nullity != elim) {
      std::cout << " MISMATCH";
      mismatch = true;
    }
    std::cout << "\n";
  }
  if (mismatch) {
    std::cerr << "error: null-space routes disagree\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const VerifyArgs& a) {
  grf::GroupPtr group = grf::parse_group_spec(a.group);
  std::vector<grf::CheckResult> results;
  auto extend = [&](std::vector<grf::CheckResult> r) {
    results.insert(results.end(), r.begin(), r.end());
  };
  if (a.suite == "ring" || a.suite == "all")
    extend(grf::verify_ring(group, a.seed, a.trials));
  if (a.suite == "dynamics" || a.suite == "all")
    extend(grf::verify_dynamics(group, a.seed, a.trials));
  if (a.suite == "equilibria" || a.suite == "all")
    extend(grf::verify_equilibria(group, a.seed, a.trials));
  if (results.empty())
    throw std::invalid_argument(
        "suite must be ring, dynamics, equilibria, or all");
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
              << "  worst=" << grf::format_double(r.worst)
              << " tol=" << grf::format_double(r.tol);
    if (!r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
  return all_pass ? 0 : 1;
}

std::vector<double> parse_kappa_range(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() != 3) throw std::invalid_argument("");
    double lo = std::stod(parts[0]), hi = std::stod(parts[1]),
           step = std::stod(parts[2]);
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
      double v = lo + k * step;
      if (v > hi + 1e-12 * std::max(1.0, std::abs(hi))) break;
      grid.push_back(v);
    }
    return grid;
  } catch (const std::exception&) {
    throw std::invalid_argument(
        "kappa range must be 'lo:hi:step' with step > 0, got '" + text + "'");
  }
}

int cmd_sweep(const SweepArgs& a) {
  namespace fs = std::filesystem;
  grf::GroupPtr group = grf::parse_group_spec(a.group);
  std::vector<double> grid = parse_kappa_range(a.kappa_range);
  if (a.out.empty()) throw std::invalid_argument("sweep needs --out directory");
  fs::create_directories(a.out);
  grf::FieldMode mode = grf::parse_field_mode(a.field);

  std::ofstream summary(fs::path(a.out) / "summary.csv", std::ios::binary);
  if (!summary)
    throw std::runtime_error("cannot write summary.csv in " + a.out);
  summary << "kappa,trial,final_R2,final_V,final_residual,converged_at_t\n";

  for (double kappa : grid) {
    for (int trial = 0; trial < a.trials; ++trial) {
      std::uint64_t seed = a.seed + static_cast<std::uint64_t>(trial);
      grf::Ensemble init =
          grf::random_unit_ensemble(group, a.n_agents, kappa, mode, seed);
      grf::SimConfig cfg;
      cfg.dt = a.dt;
      cfg.t_final = a.t_final;
      cfg.renormalize = a.renormalize;
      cfg.record_every = a.record_every;
      cfg.seed = seed;
      grf::log_info("sweep: kappa " + grf::format_double(kappa) + " trial " +
                    std::to_string(trial));
      grf::SimResult run = grf::simulate(init, cfg);
      std::ostringstream name;
      name << "traj_kappa" << grf::format_double(kappa) << "_trial" << trial
           << ".csv";
      grf::write_trajectory_csv_file((fs::path(a.out) / name.str()).string(),
                                     run.records);
      const grf::Diagnostics& last = run.records.back();
      summary << grf::format_double(kappa) << ',' << trial << ','
              << grf::format_double(last.r2) << ','
              << grf::format_double(last.v) << ','
              << grf::format_double(last.residual) << ','
              << (run.converged_at ? grf::format_double(*run.converged_at)
                                   : "nan")
              << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and equilibrium analysis of aggregation flows on "
               "finite group rings"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* c_sim = app.add_subcommand(
      "simulate", "integrate the aggregation flow and write a trajectory CSV");
  auto* sim_group = c_sim->add_option("--group", sim.group, "group spec");
  auto* sim_agents =
      c_sim->add_option("--n-agents", sim.n_agents, "number of agents");
  auto* sim_kappa =
      c_sim->add_option("--kappa", sim.kappa, "coupling strength (>= 0)");
  c_sim->add_option("--dt", sim.dt, "step size");
  c_sim->add_option("--t-final", sim.t_final, "end time");
  c_sim->add_option("--seed", sim.seed, "random seed for the initial state");
  auto* sim_field =
      c_sim->add_option("--field", sim.field, "scalar field: real|complex");
  c_sim->add_flag("--renormalize", sim.renormalize,
                  "project agents back to the unit sphere after each step");
  c_sim->add_option("--record-every", sim.record_every,
                    "record diagnostics every k steps");
  c_sim->add_option("--init", sim.init, "start from a state JSON file");
  c_sim->add_option("--out", sim.out, "trajectory CSV path (default stdout)");
  c_sim->add_option("--snapshot-out", sim.snapshot_out,
                    "write the final state as JSON");

  ClassifyArgs cls;
  CLI::App* c_cls = app.add_subcommand(
      "classify", "test a saved state against the equilibrium manifold");
  c_cls->add_option("--state", cls.state, "state JSON file")->required();
  c_cls->add_option("--tol", cls.tol, "acceptance tolerance");
  c_cls->add_option("--format", cls.format, "output format: json|text");

  GroupInfoArgs ginfo;
  CLI::App* c_info = app.add_subcommand(
      "group-info", "print structure and null-space data for a group");
  c_info->add_option("--group", ginfo.group, "group spec")->required();

  VerifyArgs ver;
  CLI::App* c_ver = app.add_subcommand(
      "verify", "run property suites and report worst defects");
  c_ver->add_option("--group", ver.group, "group spec")->required();
  c_ver->add_option("--suite", ver.suite,
                    "ring|dynamics|equilibria|all (default all)");
  c_ver->add_option("--seed", ver.seed, "random seed");
  c_ver->add_option("--trials", ver.trials, "random trials per identity");

  SweepArgs swp;
  CLI::App* c_swp = app.add_subcommand(
      "sweep", "grid of runs over coupling strengths; per-run CSVs + summary");
  c_swp->add_option("--group", swp.group, "group spec")->required();
  c_swp->add_option("--kappa", swp.kappa_range, "grid lo:hi:step")->required();
  c_swp->add_option("--n-agents", swp.n_agents, "number of agents");
  c_swp->add_option("--trials", swp.trials, "trials per grid point");
  c_swp->add_option("--dt", swp.dt, "step size");
  c_swp->add_option("--t-final", swp.t_final, "end time");
  c_swp->add_option("--seed", swp.seed, "base seed; trial t uses seed+t");
  c_swp->add_option("--field", swp.field, "scalar field: real|complex");
  c_swp->add_flag("--renormalize", swp.renormalize,
                  "project agents back to the unit sphere after each step");
  c_swp->add_option("--record-every", swp.record_every,
                    "record diagnostics every k steps");
  c_swp->add_option("--out", swp.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(c_sim))
      return cmd_simulate(sim, sim_field->count() > 0, sim_group->count() > 0,
                          sim_agents->count() > 0, sim_kappa->count() > 0);
    if (app.got_subcommand(c_cls)) return cmd_classify(cls);
    if (app.got_subcommand(c_info)) return cmd_group_info(ginfo);
    if (app.got_subcommand(c_ver)) return cmd_verify(ver);
    if (app.got_subcommand(c_swp)) return cmd_sweep(swp);
  } catch (const grf::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
