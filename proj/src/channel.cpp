#include "relaynet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "relaynet/errors.hpp"
#include "yaml_util.hpp"

namespace relaynet {

const char* to_string(LinkLabel label) {
  switch (label) {
    case LinkLabel::Direct: return "direct";
    case LinkLabel::Backhaul: return "backhaul";
    case LinkLabel::Access: return "access";
    case LinkLabel::Interference: return "interference";
  }
  return "?";
}

void LinkModel::validate() const {
  if (!(a > 0.0)) throw std::domain_error(std::string(to_string(label)) + ": path-loss exponent must be positive");
  if (!(sigma_db >= 0.0)) throw std::domain_error(std::string(to_string(label)) + ": shadowing sigma must be >= 0");
  if (!(h_tx > 1.0) || !(h_rx > 1.0)) {
    throw std::domain_error(std::string(to_string(label)) + ": antenna heights must exceed 1 m");
  }
}

namespace {

LinkModel read_link(const YAML::Node& links, const char* key, LinkLabel label) {
  std::string where = std::string("links.") + key;
  YAML::Node n = yaml::child(links, "links", key);
  yaml::allow_keys(n, where, {"scenario", "a", "b", "c", "d", "sigma", "h_tx", "h_rx"});
  LinkModel m;
  m.label = label;
  m.a = yaml::number(yaml::child(n, where, "a"), where + ".a");
  m.b = yaml::number(yaml::child(n, where, "b"), where + ".b");
  m.c = yaml::number(yaml::child(n, where, "c"), where + ".c");
  m.d = yaml::number(yaml::child(n, where, "d"), where + ".d");
  m.sigma_db = yaml::quantity(yaml::child(n, where, "sigma"), where + ".sigma", Dimension::Decibel);
  m.h_tx = yaml::quantity(yaml::child(n, where, "h_tx"), where + ".h_tx", Dimension::Length);
  m.h_rx = yaml::quantity(yaml::child(n, where, "h_rx"), where + ".h_rx", Dimension::Length);
  try {
    m.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what(), yaml::line_of(n));
  }
  return m;
}

}  // namespace

LinkSet load_link_parameters(const std::string& path) {
  YAML::Node root = yaml::load_file(path);
  yaml::allow_keys(root, "link parameters", {"version", "links"});
  LinkSet s;
  s.version = yaml::text(yaml::child(root, "link parameters", "version"), "version");
  YAML::Node links = yaml::child(root, "link parameters", "links");
  yaml::allow_keys(links, "links", {"direct", "backhaul", "access", "interference"});
  s.direct = read_link(links, "direct", LinkLabel::Direct);
  s.backhaul = read_link(links, "backhaul", LinkLabel::Backhaul);
  s.access = read_link(links, "access", LinkLabel::Access);
  s.interference = read_link(links, "interference", LinkLabel::Interference);
  return s;
}

double path_loss_db(const LinkModel& link, double dist, double f_c_ghz) {
  if (!(dist > 0.0)) throw std::domain_error("link distance must be positive");
  if (!(f_c_ghz > 0.0)) throw std::domain_error("carrier frequency must be positive");
  link.validate();
  return link.a * std::log10(dist) + link.b + link.c * std::log10(f_c_ghz / 5.0) +
         link.d * std::log10((link.h_tx - 1.0) * (link.h_rx - 1.0));
}

double path_loss(const LinkModel& link, double dist, double f_c_ghz) {
  return db_to_linear(path_loss_db(link, dist, f_c_ghz));
}

double AntennaPattern::gain_db(double off_boresight_rad) const {
  if (omni) return 0.0;
  double theta = std::abs(off_boresight_rad) * 180.0 / std::numbers::pi;
  double ratio = theta / theta_3db_deg;
  return g_max_db - std::min(12.0 * ratio * ratio, a_max_db);
}

double AntennaPattern::gain(double off_boresight_rad) const { return db_to_linear(gain_db(off_boresight_rad)); }

void ScenarioConfig::validate() const {
  if (!(rate > 0.0)) throw std::domain_error("rate must be positive");
  if (!(noise > 0.0)) throw std::domain_error("noise power must be positive");
  if (!(f_c > 0.0)) throw std::domain_error("carrier frequency must be positive");
  if (!(p_out > 0.0 && p_out < 1.0)) throw std::domain_error("outage probability must lie in (0, 1)");
  links.direct.validate();
  links.backhaul.validate();
  links.access.validate();
  links.interference.validate();
}

double bs_antenna_gain(const Point& target, const BaseStation& bs, const AntennaPattern& pattern) {
  double dx = target.x - bs.position.x;
  double dy = target.y - bs.position.y;
  if (dx == 0.0 && dy == 0.0) return pattern.gain(0.0);
  double off = std::remainder(std::atan2(dy, dx) - bs.boresight, 2.0 * std::numbers::pi);
  return pattern.gain(off);
}

namespace {

double clamp_distance(double dist, const ScenarioConfig& cfg) { return std::max(dist, cfg.min_distance); }

BaseStation bs1(const CellLayout& layout) { return {layout.bs_position(), std::numbers::pi}; }

}  // namespace

double direct_energy0_from(const Point& target, const BaseStation& bs, const ScenarioConfig& cfg) {
  double dist = clamp_distance(distance(target, bs.position), cfg);
  double gamma = path_loss(cfg.links.direct, dist, cfg.f_c);
  return std::expm1(cfg.rate * std::numbers::ln2) * cfg.noise * gamma / bs_antenna_gain(target, bs, cfg.antenna);
}

double direct_energy0(const UserPos& u, const ScenarioConfig& cfg, const CellLayout& layout) {
  return direct_energy0_from(u, bs1(layout), cfg);
}

double backhaul_energy0(const Point& relay, const ScenarioConfig& cfg, const CellLayout& layout) {
  BaseStation bs = bs1(layout);
  double dist = clamp_distance(distance(relay, bs.position), cfg);
  double gamma = path_loss(cfg.links.backhaul, dist, cfg.f_c);
  return std::expm1(2.0 * cfg.rate * std::numbers::ln2) * cfg.noise * gamma /
         (2.0 * (cfg.antenna.on_backhaul ? bs_antenna_gain(relay, bs, cfg.antenna) : 1.0));
}

double access_energy0(const UserPos& u, const Point& relay, const ScenarioConfig& cfg) {
  double dist = clamp_distance(distance(u, relay), cfg);
  double gamma = path_loss(cfg.links.access, dist, cfg.f_c);
  return std::expm1(2.0 * cfg.rate * std::numbers::ln2) * cfg.noise * gamma / 2.0;
}

RfEnergies rf_energies(const UserPos& u, const Point& relay, const ScenarioConfig& cfg, const CellLayout& layout) {
  if (!(cfg.rate >= 0.0)) throw std::domain_error("rate must be nonnegative");
  RfEnergies e;
  e.degenerate = cfg.rate == 0.0;
  e.d = LogNormal::from_median(direct_energy0(u, cfg, layout), cfg.links.direct.sigma());
  e.b = LogNormal::from_median(backhaul_energy0(relay, cfg, layout), cfg.links.backhaul.sigma());
  e.r = LogNormal::from_median(access_energy0(u, relay, cfg), cfg.links.access.sigma());
  return e;
}

}  // namespace relaynet
