#include "relaynet/ici.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace relaynet {

double expected_relay_rf(const ModelInputs& in) {
  double cb = in.cap_bs;
  double cr = in.cap_relay;
  double forced = (1.0 - cdf(cb, in.d)) * cdf(cb, in.b) * partial_expectation(in.r, cr);
  auto [l1, l2] = p_low(in, Tilt::Relay);
  return (forced + in.r.mean() * (l1 + l2)) / in.eta_r;
}

double interference_at(double relay_energy, double dist, const ScenarioConfig& cfg) {
  if (!(dist > 0.0)) throw std::domain_error("interference distance must be positive");
  if (relay_energy == 0.0) return 0.0;
  double s = cfg.links.interference.sigma();
  return relay_energy * std::exp(0.5 * s * s) / path_loss(cfg.links.interference, std::max(dist, cfg.min_distance), cfg.f_c);
}

double interference_at(double relay_energy, const UserPos& victim, const Point& relay, const ScenarioConfig& cfg) {
  return interference_at(relay_energy, distance(victim, relay), cfg);
}

std::string GammaReport::regime() const {
  if (gamma > 1.0) return "efficient";
  if (gamma > 0.0) return "interference-limited";
  return "no-gain";
}

VictimField::VictimField(const CellLayout& layout, const ModelContext& ctx)
    : cfg_(ctx.scenario), centers_(neighbor_centers(layout.d_b())) {
  double eta = ctx.circuitry ? ctx.profile.eta_b : 1.0;
  double offset = ctx.circuitry ? ctx.profile.e_b_tx_plus_u_rx + ctx.profile.e_b_idle : 0.0;
  double sd = cfg_.links.direct.sigma();
  double cells = static_cast<double>(centers_.size());
  relative_ = hexagon_grid(layout.d_b(), layout.grid_step());
  coeff_.reserve(relative_.size());
  for (const auto& p : relative_) {
    double e = direct_energy0_from(p, serving_base_station(p, layout.d_b()), cfg_) * std::exp(0.5 * sd * sd);
    coeff_.push_back(eta * e * 2.0 / cfg_.noise / (cells * (eta * e + offset)));
  }
}

double VictimField::weight(const Point& relay) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < relative_.size(); ++j) {
    double inner = 0.0;
    for (const auto& c : centers_) {
      Point q{c.x + relative_[j].x, c.y + relative_[j].y};
      inner += interference_at(1.0, q, relay, cfg_);
    }
    acc += coeff_[j] * inner;
  }
  return acc / static_cast<double>(relative_.size());
}

GammaPoint gamma_point(const UserPos& u, const CellLayout& layout, int relay, SchemeKind scheme,
                       const ModelContext& ctx) {
  const EnergyProfile& p = ctx.profile;
  double eta = ctx.circuitry ? p.eta_b : 1.0;
  double offset = ctx.circuitry ? p.e_b_tx_plus_u_rx + p.e_b_idle : 0.0;
  double relay_idle = ctx.circuitry ? layout.n_r() * p.e_r_idle : 0.0;
  double e0 = eta * dtx_mean_energy(u, layout, ctx.scenario) + offset;
  GammaPoint g;
  if (relay == kNoRelay || scheme == SchemeKind::DTx) {
    g.gain = -relay_idle / e0;
    return g;
  }
  PointModel m = evaluate_with_relay(u, layout, relay, scheme, ctx);
  double en = m.energy.total + offset + relay_idle;
  g.gain = (e0 - en) / e0;
  g.relay_rf = m.relay_rf;
  g.relay = relay;
  g.covered = m.probs.outage_ok;
  return g;
}

GammaReport gamma_from_points(const std::vector<GammaPoint>& pts, const std::vector<double>& relay_weights,
                              bool covered_only, std::size_t victims) {
  GammaReport r;
  r.points = pts.size();
  r.victims = victims;
  double gain = 0.0;
  std::size_t counted = 0;
  std::vector<double> relay_sum(relay_weights.size(), 0.0);
  for (const auto& g : pts) {
    if (!covered_only || g.covered) {
      gain += g.gain;
      ++counted;
    }
    if (g.relay != kNoRelay) relay_sum.at(static_cast<std::size_t>(g.relay)) += g.relay_rf;
  }
  r.upsilon_gain = counted > 0 ? gain / static_cast<double>(counted) : 0.0;
  double loss = 0.0;
  for (std::size_t k = 0; k < relay_sum.size(); ++k) {
    loss += relay_weights[k] * relay_sum[k] / static_cast<double>(pts.size());
  }
  r.upsilon_loss = loss;
  r.gamma = loss > 0.0 ? r.upsilon_gain / loss : std::numeric_limits<double>::infinity();
  return r;
}

GammaReport gamma(const CellLayout& layout, const std::vector<SchemeKind>& assignment, const ModelContext& ctx) {
  auto grid = sector_grid(layout);
  if (assignment.size() != grid.size()) throw std::invalid_argument("scheme assignment does not match the grid");
  VictimField victims(layout, ctx);
  std::vector<double> weights;
  for (const auto& c : layout.relays()) weights.push_back(victims.weight(c));
  std::vector<GammaPoint> pts;
  pts.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int k = assignment[i] == SchemeKind::DTx ? kNoRelay : serving_relay(grid[i], layout, ctx.scenario);
    pts.push_back(gamma_point(grid[i], layout, k, assignment[i], ctx));
  }
  return gamma_from_points(pts, weights, ctx.covered_only, victims.size());
}

GammaReport gamma(const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx) {
  return gamma(layout, std::vector<SchemeKind>(sector_grid(layout).size(), scheme), ctx);
}

}  // namespace relaynet
