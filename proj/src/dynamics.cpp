#include "grf/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "grf/equilibria.hpp"

namespace grf {

DivergenceError::DivergenceError(long long s)
    : std::runtime_error("state became non-finite at step " +
                         std::to_string(s)),
      step(s) {}

Ensemble make_ensemble(std::vector<GroupRingElement> agents, double kappa) {
  if (agents.empty()) throw std::invalid_argument("ensemble needs >= 1 agent");
  if (!(kappa >= 0.0))
    throw std::invalid_argument("coupling must be nonnegative");
  Ensemble ens;
  ens.group = agents[0].group;
  ens.mode = agents[0].mode;
  ens.kappa = kappa;
  for (const auto& a : agents) {
    if (a.mode != ens.mode)
      throw IncompatibleOperands("agents have mixed field modes");
    if (a.group.get() != ens.group.get() &&
        !(a.group && same_structure(*a.group, *ens.group)))
      throw IncompatibleOperands("agents live in different groups");
  }
  ens.agents = std::move(agents);
  return ens;
}

Ensemble random_unit_ensemble(const GroupPtr& group, int n_agents,
                              double kappa, FieldMode mode,
                              std::uint64_t seed) {
  if (!group) throw std::invalid_argument("null group");
  if (n_agents < 1) throw std::invalid_argument("ensemble needs >= 1 agent");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<GroupRingElement> agents;
  agents.reserve(n_agents);
  for (int i = 0; i < n_agents; ++i) {
    GroupRingElement x(group, mode);
    for (auto& c : x.coeffs) {
      double re = gauss(rng);
      double im = mode == FieldMode::Complex ? gauss(rng) : 0.0;
      c = cd(re, im);
    }
    double nrm = norm(x);
    for (auto& c : x.coeffs) c /= nrm;
    agents.push_back(std::move(x));
  }
  return make_ensemble(std::move(agents), kappa);
}

GroupRingElement centroid(const Ensemble& ens) {
  GroupRingElement acc(ens.group, ens.mode);
  for (const auto& a : ens.agents)
    for (size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += a.coeffs[i];
  double inv = 1.0 / static_cast<double>(ens.agents.size());
  for (auto& c : acc.coeffs) c *= inv;
  return acc;
}

namespace {

/// Derivative evaluation on a flat state of n_agents * order coefficients,
/// reusing preallocated scratch.  deriv must not alias state.
struct FlowEval {
  const FiniteGroup& g;
  int n_agents;
  double kappa;
  std::vector<cd> cent, adj_cent, adj_agent, p, q, forward, backward;

  FlowEval(const FiniteGroup& group, int n, double k)
      : g(group),
        n_agents(n),
        kappa(k),
        cent(group.order()),
        adj_cent(group.order()),
        adj_agent(group.order()),
        p(group.order()),
        q(group.order()),
        forward(group.order()),
        backward(group.order()) {}

  void operator()(const cd* state, cd* deriv) {
    const int n = g.order();
    std::fill(cent.begin(), cent.end(), cd(0.0, 0.0));
    for (int a = 0; a < n_agents; ++a)
      for (int i = 0; i < n; ++i) cent[i] += state[size_t(a) * n + i];
    const double inv = 1.0 / n_agents;
    for (int i = 0; i < n; ++i) cent[i] *= inv;
    adjoint_into(g, cent.data(), adj_cent.data());
    for (int a = 0; a < n_agents; ++a) {
      const cd* x = state + size_t(a) * n;
      cd* dx = deriv + size_t(a) * n;
      adjoint_into(g, x, adj_agent.data());
      std::fill(p.begin(), p.end(), cd(0.0, 0.0));
      std::fill(q.begin(), q.end(), cd(0.0, 0.0));
      std::fill(forward.begin(), forward.end(), cd(0.0, 0.0));
      std::fill(backward.begin(), backward.end(), cd(0.0, 0.0));
      convolve_add(g, cent.data(), adj_agent.data(), p.data());  // xc x^dag
      convolve_add(g, x, adj_cent.data(), q.data());             // x xc^dag
      convolve_add(g, p.data(), x, forward.data());
      convolve_add(g, q.data(), x, backward.data());
      for (int i = 0; i < n; ++i) dx[i] = kappa * (forward[i] - backward[i]);
    }
  }
};

std::vector<cd> flatten(const Ensemble& ens) {
  const int n = ens.group->order();
  std::vector<cd> state(ens.agents.size() * n);
  for (size_t a = 0; a < ens.agents.size(); ++a)
    std::copy(ens.agents[a].coeffs.begin(), ens.agents[a].coeffs.end(),
              state.begin() + a * n);
  return state;
}

Ensemble unflatten(const Ensemble& proto, const std::vector<cd>& state) {
  Ensemble out = proto;
  const int n = proto.group->order();
  for (size_t a = 0; a < out.agents.size(); ++a)
    std::copy(state.begin() + a * n, state.begin() + (a + 1) * n,
              out.agents[a].coeffs.begin());
  return out;
}

/// Classical RK4 update of y in place; k1..k4, tmp are scratch.
void rk4_step(FlowEval& f, std::vector<cd>& y, double dt, std::vector<cd>& k1,
              std::vector<cd>& k2, std::vector<cd>& k3, std::vector<cd>& k4,
              std::vector<cd>& tmp) {
  const size_t m = y.size();
  f(y.data(), k1.data());
  for (size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  f(tmp.data(), k2.data());
  for (size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  f(tmp.data(), k3.data());
  for (size_t i = 0; i < m; ++i) tmp[i] = y[i] + dt * k3[i];
  f(tmp.data(), k4.data());
  const double w = dt / 6.0;
  for (size_t i = 0; i < m; ++i)
    y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

bool all_finite(const std::vector<cd>& v) {
  for (const cd& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

std::vector<GroupRingElement> flow_field(const Ensemble& ens) {
  const int n = ens.group->order();
  FlowEval f(*ens.group, static_cast<int>(ens.agents.size()), ens.kappa);
  std::vector<cd> state = flatten(ens);
  std::vector<cd> deriv(state.size());
  f(state.data(), deriv.data());
  std::vector<GroupRingElement> out(ens.agents.size(),
                                    GroupRingElement(ens.group, ens.mode));
  for (size_t a = 0; a < out.size(); ++a)
    std::copy(deriv.begin() + a * n, deriv.begin() + (a + 1) * n,
              out[a].coeffs.begin());
  return out;
}

std::vector<GroupRingElement> flow_field_by_components(const Ensemble& ens) {
  const FiniteGroup& g = *ens.group;
  const int n = g.order();
  const GroupRingElement xc = centroid(ens);
  std::vector<GroupRingElement> out;
  out.reserve(ens.agents.size());
  for (const auto& x : ens.agents) {
    GroupRingElement dx(ens.group, ens.mode);
    for (int target = 0; target < n; ++target) {
      cd acc(0.0, 0.0);
      for (int g1 = 0; g1 < n; ++g1)
        for (int g2 = 0; g2 < n; ++g2) {
          // Third factor index solving g1 * g2^-1 * h = target.
          int h = g.mul(g.mul(g2, g.inverse(g1)), target);
          acc += xc.coeffs[g1] * std::conj(x.coeffs[g2]) * x.coeffs[h] -
                 x.coeffs[g1] * std::conj(xc.coeffs[g2]) * x.coeffs[h];
        }
      dx.coeffs[target] = ens.kappa * acc;
    }
    out.push_back(std::move(dx));
  }
  return out;
}

double order_parameter(const Ensemble& ens) {
  GroupRingElement xc = centroid(ens);
  double n = norm(xc);
  return n * n;
}

double variance(const Ensemble& ens) {
  const size_t n_agents = ens.agents.size();
  double acc = 0.0;
  for (size_t i = 0; i < n_agents; ++i)
    for (size_t j = 0; j < n_agents; ++j) {
      double d2 = 0.0;
      for (size_t k = 0; k < ens.agents[i].coeffs.size(); ++k)
        d2 += std::norm(ens.agents[i].coeffs[k] - ens.agents[j].coeffs[k]);
      acc += d2;
    }
  return acc / (static_cast<double>(n_agents) * static_cast<double>(n_agents));
}

namespace {

/// Squared mismatch norms || xc*adj(x_i) - x_i*adj(xc) ||^2 per agent.
std::vector<double> mismatch_sq(const Ensemble& ens) {
  const FiniteGroup& g = *ens.group;
  const int n = g.order();
  GroupRingElement xc = centroid(ens);
  std::vector<cd> adj_cent(n), adj_agent(n), p(n), q(n);
  adjoint_into(g, xc.coeffs.data(), adj_cent.data());
  std::vector<double> out;
  out.reserve(ens.agents.size());
  for (const auto& x : ens.agents) {
    adjoint_into(g, x.coeffs.data(), adj_agent.data());
    std::fill(p.begin(), p.end(), cd(0.0, 0.0));
    std::fill(q.begin(), q.end(), cd(0.0, 0.0));
    convolve_add(g, xc.coeffs.data(), adj_agent.data(), p.data());
    convolve_add(g, x.coeffs.data(), adj_cent.data(), q.data());
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::norm(p[i] - q[i]);
    out.push_back(acc);
  }
  return out;
}

}  // namespace

double dissipation(const Ensemble& ens) {
  std::vector<double> sq = mismatch_sq(ens);
  double acc = 0.0;
  for (double s : sq) acc += s;
  return 2.0 * ens.kappa * acc / static_cast<double>(ens.agents.size());
}

double residual(const Ensemble& ens) {
  std::vector<double> sq = mismatch_sq(ens);
  double worst = 0.0;
  for (double s : sq) worst = std::max(worst, s);
  return std::sqrt(worst);
}

Ensemble step_rk4(const Ensemble& ens, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  FlowEval f(*ens.group, static_cast<int>(ens.agents.size()), ens.kappa);
  std::vector<cd> y = flatten(ens);
  std::vector<cd> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()),
      tmp(y.size());
  rk4_step(f, y, dt, k1, k2, k3, k4, tmp);
  return unflatten(ens, y);
}

SimResult simulate(const Ensemble& initial, const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.t_final > 0.0))
    throw std::invalid_argument("t_final must be positive");
  if (!(cfg.dt < cfg.t_final))
    throw std::invalid_argument("dt must be smaller than t_final");
  if (cfg.record_every < 1)
    throw std::invalid_argument("record_every must be >= 1");

  const int n = initial.group->order();
  const int n_agents = static_cast<int>(initial.agents.size());
  const long long steps = std::llround(cfg.t_final / cfg.dt);

  FlowEval f(*initial.group, n_agents, initial.kappa);
  std::vector<cd> y = flatten(initial);
  std::vector<cd> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()),
      tmp(y.size());

  SimResult result;
  result.final_state = initial;

  std::vector<double> norms(n_agents);
  int streak = 0;
  long long streak_start_record = -1;

  auto agent_norms = [&](const std::vector<cd>& state) {
    for (int a = 0; a < n_agents; ++a) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += std::norm(state[size_t(a) * n + i]);
      norms[a] = std::sqrt(acc);
    }
  };

  auto record = [&](long long step, const std::vector<double>& agent_nrm) {
    Ensemble snapshot = unflatten(initial, y);
    Diagnostics d;
    d.t = static_cast<double>(step) * cfg.dt;
    d.r2 = order_parameter(snapshot);
    d.v = variance(snapshot);
    d.dissipation = dissipation(snapshot);
    d.residual = residual(snapshot);
    d.min_norm = *std::min_element(agent_nrm.begin(), agent_nrm.end());
    d.max_norm = *std::max_element(agent_nrm.begin(), agent_nrm.end());
    if (d.residual < cfg.convergence_residual) {
      if (streak == 0)
        streak_start_record = static_cast<long long>(result.records.size());
      ++streak;
      if (streak >= cfg.convergence_records && !result.converged_at)
        result.converged_at = result.records[streak_start_record].t;
    } else {
      streak = 0;
    }
    result.records.push_back(d);
  };

  if (!all_finite(y)) throw DivergenceError(0);
  agent_norms(y);
  record(0, norms);

  for (long long step = 1; step <= steps; ++step) {
    rk4_step(f, y, cfg.dt, k1, k2, k3, k4, tmp);
    if (!all_finite(y)) throw DivergenceError(step);
    agent_norms(y);  // pre-projection drift diagnostics
    if (cfg.renormalize) {
      for (int a = 0; a < n_agents; ++a) {
        if (norms[a] == 0.0) continue;
        double inv = 1.0 / norms[a];
        for (int i = 0; i < n; ++i) y[size_t(a) * n + i] *= inv;
      }
    }
    if (step % cfg.record_every == 0) record(step, norms);
  }

  result.steps = steps;
  result.final_state = unflatten(initial, y);
  return result;
}

PhaseTrajectory kuramoto_phase_trajectory(const Ensemble& ens, double t_final,
                                          double dt) {
  if (ens.group->order() != 1)
    throw std::invalid_argument(
        "phase reduction is defined over the one-element group");
  if (ens.mode != FieldMode::Complex)
    throw std::invalid_argument("phase reduction needs complex agents");
  if (!(dt > 0.0) || !(t_final > 0.0))
    throw std::invalid_argument("dt and t_final must be positive");
  const int n = static_cast<int>(ens.agents.size());
  std::vector<double> theta(n);
  for (int i = 0; i < n; ++i) {
    cd c = ens.agents[i].coeffs[0];
    if (std::abs(std::abs(c) - 1.0) > 1e-9)
      throw std::invalid_argument(
          "phase reduction needs unit-modulus agents");
    theta[i] = std::arg(c);
  }
  const double gain = 2.0 * ens.kappa / n;
  auto deriv = [&](const std::vector<double>& th, std::vector<double>& out) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += std::sin(th[k] - th[i]);
      out[i] = gain * acc;
    }
  };
  const long long steps = std::llround(t_final / dt);
  PhaseTrajectory traj;
  traj.times.reserve(steps + 1);
  traj.phases.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.phases.push_back(theta);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (long long step = 1; step <= steps; ++step) {
    deriv(theta, k1);
    for (int i = 0; i < n; ++i) tmp[i] = theta[i] + 0.5 * dt * k1[i];
    deriv(tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = theta[i] + 0.5 * dt * k2[i];
    deriv(tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = theta[i] + dt * k3[i];
    deriv(tmp, k4);
    for (int i = 0; i < n; ++i)
      theta[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    traj.times.push_back(static_cast<double>(step) * dt);
    traj.phases.push_back(theta);
  }
  return traj;
}

}  // namespace grf
