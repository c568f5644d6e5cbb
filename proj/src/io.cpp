#include "grf/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace grf {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

json agents_to_json(const StateEnvelope& env) {
  json agents = json::array();
  for (const auto& coeffs : env.agents) {
    json arr = json::array();
    for (const cd& c : coeffs) {
      if (env.field_mode == FieldMode::Real)
        arr.push_back(c.real());
      else
        arr.push_back(json::array({c.real(), c.imag()}));
    }
    agents.push_back(std::move(arr));
  }
  return agents;
}

cd coeff_from_json(const json& v, FieldMode mode) {
  if (v.is_number()) return cd(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    cd c(v[0].get<double>(), v[1].get<double>());
    if (mode == FieldMode::Real && c.imag() != 0.0)
      throw std::invalid_argument(
          "real-mode state carries a nonzero imaginary part");
    return c;
  }
  throw std::invalid_argument(
      "coefficient must be a number or an [re, im] pair");
}

}  // namespace

std::string envelope_to_json(const StateEnvelope& env) {
  json doc;
  doc["group_spec"] = env.group_spec;
  doc["field_mode"] = field_mode_name(env.field_mode);
  doc["kappa"] = env.kappa;
  doc["agents"] = agents_to_json(env);
  doc["meta"] = json::parse(env.meta_json.empty() ? "{}" : env.meta_json);
  return doc.dump(2) + "\n";
}

StateEnvelope envelope_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("state file is not valid JSON: ") +
                                e.what());
  }
  for (const char* key : {"group_spec", "field_mode", "kappa", "agents"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("state file misses '") + key +
                                  "'");
  StateEnvelope env;
  env.group_spec = doc["group_spec"].get<std::string>();
  env.field_mode = parse_field_mode(doc["field_mode"].get<std::string>());
  env.kappa = doc["kappa"].get<double>();
  if (!doc["agents"].is_array() || doc["agents"].empty())
    throw std::invalid_argument("state file needs a nonempty agents array");
  for (const json& row : doc["agents"]) {
    if (!row.is_array())
      throw std::invalid_argument("each agent must be a coefficient array");
    std::vector<cd> coeffs;
    coeffs.reserve(row.size());
    for (const json& v : row) coeffs.push_back(coeff_from_json(v, env.field_mode));
    env.agents.push_back(std::move(coeffs));
  }
  env.meta_json = doc.value("meta", json::object()).dump();
  return env;
}

void write_state_file(const std::string& path, const StateEnvelope& env) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << envelope_to_json(env);
}

StateEnvelope read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return envelope_from_json(buf.str());
}

Ensemble ensemble_from_envelope(const StateEnvelope& env) {
  GroupPtr group = parse_group_spec(env.group_spec);
  const size_t order = static_cast<size_t>(group->order());
  std::vector<GroupRingElement> agents;
  agents.reserve(env.agents.size());
  for (const auto& coeffs : env.agents) {
    if (coeffs.size() != order)
      throw std::invalid_argument(
          "agent coefficient count does not match the group order");
    GroupRingElement x(group, env.field_mode);
    x.coeffs = coeffs;
    agents.push_back(std::move(x));
  }
  return make_ensemble(std::move(agents), env.kappa);
}

StateEnvelope envelope_from_ensemble(const Ensemble& ens,
                                     const std::string& group_spec,
                                     const std::string& meta_json) {
  StateEnvelope env;
  env.group_spec = group_spec;
  env.field_mode = ens.mode;
  env.kappa = ens.kappa;
  for (const auto& a : ens.agents) env.agents.push_back(a.coeffs);
  env.meta_json = meta_json;
  return env;
}

void write_trajectory_csv(std::ostream& out,
                          const std::vector<Diagnostics>& records) {
  out << "t,R2,V,dissipation,residual,min_norm,max_norm\n";
  for (const Diagnostics& d : records) {
    out << format_double(d.t) << ',' << format_double(d.r2) << ','
        << format_double(d.v) << ',' << format_double(d.dissipation) << ','
        << format_double(d.residual) << ',' << format_double(d.min_norm)
        << ',' << format_double(d.max_norm) << '\n';
  }
}

void write_trajectory_csv_file(const std::string& path,
                               const std::vector<Diagnostics>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trajectory file: " + path);
  write_trajectory_csv(out, records);
}

namespace {

int log_level() {
  static int level = [] {
    const char* env = std::getenv("GRF_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

}  // namespace

bool log_enabled_info() { return log_level() >= 1; }
bool log_enabled_debug() { return log_level() >= 2; }

void log_info(const std::string& msg) {
  if (log_enabled_info()) std::cerr << "[grf] " << msg << std::endl;
}

void log_debug(const std::string& msg) {
  if (log_enabled_debug()) std::cerr << "[grf:debug] " << msg << std::endl;
}

}  // namespace grf
