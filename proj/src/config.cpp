#include "relaynet/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "relaynet/units.hpp"
#include "yaml_util.hpp"

namespace relaynet {

CellLayout LayoutSpec::build() const { return CellLayout(d_b, relays, grid_step > 0.0 ? grid_step : d_b / 30.0); }

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string default_link_file() { return std::string(RELAYNET_DATA_DIR) + "/winner2_links.yaml"; }

ScenarioConfig default_scenario() {
  ScenarioConfig s;
  s.rate = 3.0;
  s.noise = dbm_to_watts(-93.0);
  s.f_c = 2.6;
  s.p_out = 0.02;
  s.links = load_link_parameters(default_link_file());
  return s;
}

RunConfig default_run_config() {
  RunConfig c;
  c.ctx.scenario = default_scenario();
  c.ctx.profile.e_dsp_2hop = 0.050;
  c.link_version = c.ctx.scenario.links.version;
  c.layout.relays = {{100.0, 0.0}};
  return c;
}

namespace {

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void read_scenario(const YAML::Node& n, ScenarioConfig& s, const std::filesystem::path& base, RunConfig& cfg) {
  yaml::allow_keys(n, "scenario", {"rate", "noise", "carrier", "p_out", "link_parameters", "min_distance", "antenna"});
  if (n["rate"]) s.rate = yaml::number(n["rate"], "scenario.rate");
  if (n["noise"]) s.noise = yaml::quantity(n["noise"], "scenario.noise", Dimension::Power);
  if (n["carrier"]) s.f_c = yaml::quantity(n["carrier"], "scenario.carrier", Dimension::Frequency);
  if (n["p_out"]) s.p_out = yaml::number(n["p_out"], "scenario.p_out");
  if (n["min_distance"]) s.min_distance = yaml::quantity(n["min_distance"], "scenario.min_distance", Dimension::Length);
  if (n["link_parameters"]) {
    std::filesystem::path p = yaml::text(n["link_parameters"], "scenario.link_parameters");
    if (p.is_relative()) p = base / p;
    s.links = load_link_parameters(p.string());
    cfg.fingerprint += read_bytes(p.string());
  }
  if (YAML::Node a = n["antenna"]) {
    yaml::allow_keys(a, "scenario.antenna", {"pattern", "g_max", "theta_3db", "a_max", "on_backhaul"});
    if (a["pattern"]) {
      std::string kind = yaml::text(a["pattern"], "scenario.antenna.pattern");
      if (kind != "sectored" && kind != "omni") {
        throw ConfigError("antenna pattern must be 'sectored' or 'omni'", yaml::line_of(a["pattern"]));
      }
      s.antenna.omni = kind == "omni";
    }
    if (a["g_max"]) s.antenna.g_max_db = yaml::quantity(a["g_max"], "scenario.antenna.g_max", Dimension::Decibel);
    if (a["theta_3db"]) s.antenna.theta_3db_deg = yaml::quantity(a["theta_3db"], "scenario.antenna.theta_3db", Dimension::Angle);
    if (a["a_max"]) s.antenna.a_max_db = yaml::quantity(a["a_max"], "scenario.antenna.a_max", Dimension::Decibel);
    if (a["on_backhaul"]) s.antenna.on_backhaul = yaml::boolean(a["on_backhaul"], "scenario.antenna.on_backhaul");
  }
  try {
    s.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("scenario: ") + e.what(), yaml::line_of(n));
  }
}

void read_profile(const YAML::Node& n, EnergyProfile& p) {
  yaml::allow_keys(n, "profile", {"e_b_max", "e_r_max", "eta_b", "eta_r", "e_b_tx_plus_u_rx", "e_b_idle", "e_r_idle",
                                  "e_dsp_2hop", "e_dsp_plus_pdf"});
  auto energy = [&](const char* key, double& out) {
    if (n[key]) out = yaml::quantity(n[key], std::string("profile.") + key, Dimension::Energy);
  };
  energy("e_b_max", p.e_b_max);
  energy("e_r_max", p.e_r_max);
  energy("e_b_tx_plus_u_rx", p.e_b_tx_plus_u_rx);
  energy("e_b_idle", p.e_b_idle);
  energy("e_r_idle", p.e_r_idle);
  energy("e_dsp_2hop", p.e_dsp_2hop);
  energy("e_dsp_plus_pdf", p.e_dsp_plus_pdf);
  if (n["eta_b"]) p.eta_b = yaml::number(n["eta_b"], "profile.eta_b");
  if (n["eta_r"]) p.eta_r = yaml::number(n["eta_r"], "profile.eta_r");
  try {
    p.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("profile: ") + e.what(), yaml::line_of(n));
  }
}

Point read_relay(const YAML::Node& n, double d_b) {
  if (n["x"] || n["y"]) {
    yaml::allow_keys(n, "layout.relays[]", {"x", "y"});
    return {yaml::quantity(yaml::child(n, "layout.relays[]", "x"), "x", Dimension::Length),
            yaml::quantity(yaml::child(n, "layout.relays[]", "y"), "y", Dimension::Length)};
  }
  yaml::allow_keys(n, "layout.relays[]", {"d_r", "angle"});
  double d_r = yaml::quantity(yaml::child(n, "layout.relays[]", "d_r"), "d_r", Dimension::Length);
  double angle = n["angle"] ? yaml::quantity(n["angle"], "angle", Dimension::Angle) : 0.0;
  double a = angle * 3.14159265358979323846 / 180.0;
  return {d_b - d_r * std::cos(a), d_r * std::sin(a)};
}

void read_layout(const YAML::Node& n, LayoutSpec& l) {
  yaml::allow_keys(n, "layout", {"d_b", "relays", "grid_step"});
  if (n["d_b"]) l.d_b = yaml::quantity(n["d_b"], "layout.d_b", Dimension::Length);
  if (n["grid_step"]) l.grid_step = yaml::quantity(n["grid_step"], "layout.grid_step", Dimension::Length);
  if (YAML::Node r = n["relays"]) {
    if (!r.IsSequence()) throw ConfigError("'layout.relays' must be a list", yaml::line_of(r));
    l.relays.clear();
    for (const auto& item : r) l.relays.push_back(read_relay(item, l.d_b));
  }
  try {
    (void)l.build();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("layout: ") + e.what(), yaml::line_of(n));
  }
}

std::vector<double> read_list(const YAML::Node& n, const std::string& key, bool energy) {
  if (!n.IsSequence()) throw ConfigError("'" + key + "' must be a list", yaml::line_of(n));
  std::vector<double> out;
  for (const auto& item : n) {
    out.push_back(energy ? yaml::quantity(item, key, Dimension::Energy) : yaml::number(item, key));
  }
  return out;
}

SchemeKind read_scheme(const YAML::Node& n, const std::string& key) {
  try {
    return scheme_from_string(yaml::text(n, key));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), yaml::line_of(n));
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  RunConfig cfg = default_run_config();
  cfg.fingerprint = read_bytes(path);
  YAML::Node root = yaml::load_file(path);
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  yaml::allow_keys(root, "config",
                   {"scenario", "profile", "layout", "model", "thresholds", "oracle", "optimize", "scheme_map"});
  if (root["scenario"]) read_scenario(root["scenario"], cfg.ctx.scenario, base, cfg);
  cfg.link_version = cfg.ctx.scenario.links.version;
  if (root["profile"]) read_profile(root["profile"], cfg.ctx.profile);
  if (root["layout"]) read_layout(root["layout"], cfg.layout);
  if (YAML::Node m = root["model"]) {
    yaml::allow_keys(m, "model", {"scheme", "circuitry", "covered_only"});
    if (m["scheme"]) cfg.scheme = read_scheme(m["scheme"], "model.scheme");
    if (m["circuitry"]) cfg.ctx.circuitry = yaml::boolean(m["circuitry"], "model.circuitry");
    if (m["covered_only"]) cfg.ctx.covered_only = yaml::boolean(m["covered_only"], "model.covered_only");
  }
  if (YAML::Node t = root["thresholds"]) {
    yaml::allow_keys(t, "thresholds", {"p_t", "e_t", "e_t_r"});
    if (t["p_t"]) cfg.thresholds.p_t = read_list(t["p_t"], "thresholds.p_t", false);
    if (t["e_t"]) cfg.thresholds.e_t = read_list(t["e_t"], "thresholds.e_t", true);
    if (t["e_t_r"]) cfg.thresholds.e_t_r = read_list(t["e_t_r"], "thresholds.e_t_r", true);
    for (double p : cfg.thresholds.p_t) {
      if (!(p > 0.0 && p <= 1.0)) throw ConfigError("probability thresholds must lie in (0, 1]", yaml::line_of(t["p_t"]));
    }
  }
  if (YAML::Node o = root["oracle"]) {
    yaml::allow_keys(o, "oracle", {"samples", "seed"});
    if (o["samples"]) {
      long n = yaml::integer(o["samples"], "oracle.samples");
      if (n < 1) throw ConfigError("'oracle.samples' must be >= 1", yaml::line_of(o["samples"]));
      cfg.oracle.samples = static_cast<std::size_t>(n);
    }
    if (o["seed"]) cfg.oracle.seed = static_cast<std::uint64_t>(yaml::integer(o["seed"], "oracle.seed"));
  }
  if (YAML::Node o = root["optimize"]) {
    yaml::allow_keys(o, "optimize", {"objective", "n_r", "d_b", "search_step", "symmetric"});
    if (o["objective"]) {
      std::string obj = yaml::text(o["objective"], "optimize.objective");
      if (obj != "psi" && obj != "gamma") throw ConfigError("objective must be 'psi' or 'gamma'", yaml::line_of(o["objective"]));
      cfg.optimize.objective = obj == "psi" ? Objective::Psi : Objective::Gamma;
    }
    if (o["n_r"]) {
      cfg.optimize.n_r.clear();
      for (double v : read_list(o["n_r"], "optimize.n_r", false)) {
        if (v < 1 || v != static_cast<int>(v)) throw ConfigError("relay counts must be positive integers", yaml::line_of(o["n_r"]));
        cfg.optimize.n_r.push_back(static_cast<int>(v));
      }
    }
    if (o["d_b"]) {
      cfg.optimize.d_b.clear();
      if (!o["d_b"].IsSequence()) throw ConfigError("'optimize.d_b' must be a list", yaml::line_of(o["d_b"]));
      for (const auto& item : o["d_b"]) cfg.optimize.d_b.push_back(yaml::quantity(item, "optimize.d_b", Dimension::Length));
    }
    if (o["search_step"]) {
      cfg.optimize.search_step = yaml::quantity(o["search_step"], "optimize.search_step", Dimension::Length);
      if (!(cfg.optimize.search_step > 0.0)) throw ConfigError("search step must be positive", yaml::line_of(o["search_step"]));
    }
    if (o["symmetric"]) cfg.optimize.symmetric = yaml::boolean(o["symmetric"], "optimize.symmetric");
  }
  if (YAML::Node s = root["scheme_map"]) {
    yaml::allow_keys(s, "scheme_map", {"candidates"});
    if (YAML::Node c = s["candidates"]) {
      if (!c.IsSequence() || c.size() == 0) throw ConfigError("'scheme_map.candidates' must be a nonempty list", yaml::line_of(c));
      cfg.scheme_map.candidates.clear();
      for (const auto& item : c) cfg.scheme_map.candidates.push_back(read_scheme(item, "scheme_map.candidates"));
    }
  }
  return cfg;
}

}  // namespace relaynet
