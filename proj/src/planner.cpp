#include "relaynet/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "relaynet/parallel.hpp"

namespace relaynet {

double psi_idle_energy(int n_r, const ModelContext& ctx) {
  if (!ctx.circuitry) return 0.0;
  return ctx.profile.e_b_tx_plus_u_rx + ctx.profile.e_b_idle + n_r * ctx.profile.e_r_idle;
}

PsiReport psi(const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx) {
  auto grid = sector_grid(layout);
  std::vector<PointModel> models(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { models[i] = evaluate_point(grid[i], layout, scheme, ctx); });
  PsiReport r;
  r.d_b = layout.d_b();
  r.relays = layout.relays();
  r.area = layout.sector_area();
  r.e_idle = psi_idle_energy(layout.n_r(), ctx);
  r.feasible = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!models[i].probs.outage_ok) {
      r.feasible = false;
      r.first_uncovered = grid[i];
      break;
    }
    if (i == 0 || models[i].energy.total > r.e_max) {
      r.e_max = models[i].energy.total;
      r.worst_point = grid[i];
    }
  }
  r.psi = r.feasible ? (r.e_max + r.e_idle) / r.area : std::numeric_limits<double>::infinity();
  return r;
}

const char* to_string(Objective objective) { return objective == Objective::Psi ? "psi" : "gamma"; }

std::vector<Point> candidate_positions(double d_b, double search_step) {
  if (!(search_step > 0.0)) throw std::invalid_argument("search step must be positive");
  std::vector<Point> out;
  const double pi = std::numbers::pi;
  for (int i = 1; i * search_step <= d_b + 1e-9; ++i) {
    double r = i * search_step;
    int m = static_cast<int>(std::floor((pi / 3.0) * r / search_step + 1e-9));
    double dphi = m > 0 ? (pi / 3.0) / m : 0.0;
    for (int j = -m; j <= m; ++j) {
      double phi = pi + j * dphi;
      Point p{d_b + r * std::cos(phi), j == 0 ? 0.0 : r * std::sin(phi)};
      if (in_sector(p, d_b)) out.push_back(p);
    }
  }
  return out;
}

namespace {

struct Table {
  std::size_t n_c = 0;
  std::size_t n_u = 0;
  std::vector<double> cost;       // serving cost, [c * n_u + u]
  std::vector<double> total;      // modeled consumed energy
  std::vector<unsigned char> covered;
  std::vector<double> base_gain;  // gain before relay idle energy
  std::vector<double> inv_e0;     // per user
  std::vector<double> rf;         // expected relay radiated energy
  std::vector<double> victim;     // per candidate
};

Table build_table(const CellLayout& base, const std::vector<Point>& candidates, SchemeKind scheme,
                  const ModelContext& ctx, bool with_gamma) {
  auto grid = sector_grid(base);
  Table t;
  t.n_c = candidates.size();
  t.n_u = grid.size();
  std::size_t n = t.n_c * t.n_u;
  t.cost.resize(n);
  t.total.resize(n);
  t.covered.resize(n);
  t.base_gain.resize(n);
  t.rf.resize(n);
  t.inv_e0.resize(t.n_u);
  double eta = ctx.circuitry ? ctx.profile.eta_b : 1.0;
  double offset = ctx.circuitry ? ctx.profile.e_b_tx_plus_u_rx + ctx.profile.e_b_idle : 0.0;
  for (std::size_t u = 0; u < t.n_u; ++u) {
    t.inv_e0[u] = 1.0 / (eta * dtx_mean_energy(grid[u], base, ctx.scenario) + offset);
  }
  parallel_for(t.n_c, [&](std::size_t c) {
    CellLayout single = base.with_relays({candidates[c]});
    double b0 = backhaul_energy0(candidates[c], ctx.scenario, single);
    for (std::size_t u = 0; u < t.n_u; ++u) {
      std::size_t idx = c * t.n_u + u;
      PointModel m = evaluate_with_relay(grid[u], single, 0, scheme, ctx);
      t.cost[idx] = b0 + access_energy0(grid[u], candidates[c], ctx.scenario);
      t.total[idx] = m.energy.total;
      t.covered[idx] = m.probs.outage_ok ? 1 : 0;
      t.base_gain[idx] = 1.0 - (m.energy.total + offset) * t.inv_e0[u];
      t.rf[idx] = m.relay_rf;
    }
  });
  if (with_gamma) {
    VictimField field(base, ctx);
    t.victim.resize(t.n_c);
    parallel_for(t.n_c, [&](std::size_t c) { t.victim[c] = field.weight(candidates[c]); });
  }
  return t;
}

// Metric of one layout given as candidate indices; lower is better for both objectives.
struct Score {
  bool feasible = false;
  double value = 0.0;
};

// For the Psi objective, layouts whose worst energy exceeds e_bound are abandoned early.
Score score_layout(const Table& t, const std::vector<std::size_t>& layout, Objective objective,
                   const ModelContext& ctx, double area, std::vector<double>& scratch, double e_bound) {
  std::size_t k_n = layout.size();
  double relay_idle = ctx.circuitry ? static_cast<double>(k_n) * ctx.profile.e_r_idle : 0.0;
  scratch.assign(k_n, 0.0);
  double e_max = 0.0;
  double gain = 0.0;
  for (std::size_t u = 0; u < t.n_u; ++u) {
    std::size_t best = 0;
    double best_cost = t.cost[layout[0] * t.n_u + u];
    for (std::size_t k = 1; k < k_n; ++k) {
      double c = t.cost[layout[k] * t.n_u + u];
      if (c < best_cost * (1.0 - 1e-12)) {
        best = k;
        best_cost = c;
      }
    }
    std::size_t idx = layout[best] * t.n_u + u;
    if (objective == Objective::Psi) {
      if (!t.covered[idx]) return {};
      e_max = std::max(e_max, t.total[idx]);
      if (e_max > e_bound) return {};
    } else {
      gain += t.base_gain[idx] - relay_idle * t.inv_e0[u];
      scratch[best] += t.rf[idx];
    }
  }
  if (objective == Objective::Psi) return {true, (e_max + psi_idle_energy(static_cast<int>(k_n), ctx)) / area};
  double n = static_cast<double>(t.n_u);
  double loss = 0.0;
  for (std::size_t k = 0; k < k_n; ++k) loss += t.victim[layout[k]] * scratch[k] / n;
  double g = gain / n;
  double gamma = loss > 0.0 ? g / loss : std::numeric_limits<double>::infinity();
  return {true, -gamma};
}

bool lexicographically_less(const std::vector<Point>& a, const std::vector<Point>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].x != b[i].x) return a[i].x < b[i].x;
    if (a[i].y != b[i].y) return a[i].y < b[i].y;
  }
  return a.size() < b.size();
}

// Visits all k-subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

OptimizeResult search(const Table& t, Objective objective, int n_r, const CellLayout& base,
                      const std::vector<Point>& candidates, const ModelContext& ctx, bool symmetric) {
  if (n_r < 1) throw std::invalid_argument("relay count must be at least 1");

  std::vector<std::size_t> axis;
  std::vector<std::size_t> upper;
  std::vector<std::size_t> mirror(candidates.size(), candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (std::abs(candidates[i].y) <= 1e-9 * base.d_b()) axis.push_back(i);
    else if (candidates[i].y > 0.0) upper.push_back(i);
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (std::abs(candidates[j].x - candidates[i].x) <= 1e-9 * base.d_b() &&
          std::abs(candidates[j].y + candidates[i].y) <= 1e-9 * base.d_b()) {
        mirror[i] = j;
        break;
      }
    }
  }

  OptimizeResult best;
  best.objective = objective;
  best.d_b = base.d_b();
  best.n_r = n_r;
  best.candidates = candidates.size();
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<double> scratch;
  std::vector<std::size_t> layout;

  auto consider = [&](const std::vector<std::size_t>& chosen) {
    ++best.layouts_evaluated;
    double e_bound = std::numeric_limits<double>::infinity();
    if (objective == Objective::Psi && best.feasible) {
      e_bound = best_score * base.sector_area() - psi_idle_energy(static_cast<int>(chosen.size()), ctx);
      e_bound += 1e-9 * std::abs(e_bound);
    }
    Score s = score_layout(t, chosen, objective, ctx, base.sector_area(), scratch, e_bound);
    if (!s.feasible) return;
    std::vector<Point> pos;
    for (std::size_t c : chosen) pos.push_back(candidates[c]);
    double tol = 1e-12 * std::max(1.0, std::abs(best_score));
    bool better = !best.feasible || s.value < best_score - tol ||
                  (std::abs(s.value - best_score) <= tol && lexicographically_less(pos, best.relays));
    if (better) {
      best.feasible = true;
      best_score = s.value;
      best.relays = pos;
    }
  };

  if (symmetric) {
    std::size_t pairs = static_cast<std::size_t>(n_r / 2);
    bool odd = n_r % 2 == 1;
    for (std::size_t c : upper) {
      if (mirror[c] == candidates.size()) throw std::logic_error("candidate set is not mirror symmetric");
    }
    auto with_pairs = [&](std::vector<std::size_t> prefix) {
      for_each_combination(upper.size(), pairs, [&](const std::vector<std::size_t>& idx) {
        layout = prefix;
        for (std::size_t i : idx) layout.push_back(upper[i]);
        for (std::size_t i : idx) layout.push_back(mirror[upper[i]]);
        consider(layout);
      });
    };
    if (odd) {
      for (std::size_t a : axis) with_pairs({a});
    } else {
      with_pairs({});
    }
  } else {
    for_each_combination(candidates.size(), static_cast<std::size_t>(n_r), [&](const std::vector<std::size_t>& idx) {
      consider(idx);
    });
  }
  best.value = objective == Objective::Psi ? best_score : -best_score;
  return best;
}

}  // namespace

std::vector<OptimizeResult> optimize_over(Objective objective, const std::vector<int>& n_r, const CellLayout& base,
                                          const std::vector<Point>& candidates, SchemeKind scheme,
                                          const ModelContext& ctx, bool symmetric) {
  if (candidates.empty()) throw std::invalid_argument("no candidate positions");
  Table t = build_table(base, candidates, scheme, ctx, objective == Objective::Gamma);
  std::vector<OptimizeResult> out;
  for (int n : n_r) out.push_back(search(t, objective, n, base, candidates, ctx, symmetric));
  return out;
}

OptimizeResult optimize_over(Objective objective, int n_r, const CellLayout& base, const std::vector<Point>& candidates,
                             SchemeKind scheme, const ModelContext& ctx, bool symmetric) {
  return optimize_over(objective, std::vector<int>{n_r}, base, candidates, scheme, ctx, symmetric).front();
}

std::vector<OptimizeResult> optimize(Objective objective, const std::vector<int>& n_r, double d_b, SchemeKind scheme,
                                     const ModelContext& ctx, const OptimizeOptions& options) {
  double step = options.grid_step > 0.0 ? options.grid_step : d_b / 30.0;
  CellLayout base(d_b, {}, step);
  return optimize_over(objective, n_r, base, candidate_positions(d_b, options.search_step), scheme, ctx,
                       options.symmetric);
}

OptimizeResult optimize(Objective objective, int n_r, double d_b, SchemeKind scheme, const ModelContext& ctx,
                        const OptimizeOptions& options) {
  return optimize(objective, std::vector<int>{n_r}, d_b, scheme, ctx, options).front();
}

std::size_t SchemeMap::count(SchemeKind kind) const {
  return static_cast<std::size_t>(std::count(schemes.begin(), schemes.end(), kind));
}

SchemeMap scheme_map(const CellLayout& layout, const ModelContext& ctx, const std::vector<SchemeKind>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidate schemes");
  std::vector<SchemeKind> order = candidates;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  SchemeKind baseline_kind = SchemeKind::TwoHop;
  if (std::find(order.begin(), order.end(), baseline_kind) == order.end()) baseline_kind = order.front();

  SchemeMap map;
  map.points = sector_grid(layout);
  std::size_t n = map.points.size();
  VictimField field(layout, ctx);
  std::vector<double> weights;
  for (const auto& c : layout.relays()) weights.push_back(field.weight(c));

  std::vector<int> serving(n);
  std::vector<std::vector<GammaPoint>> per_scheme(order.size(), std::vector<GammaPoint>(n));
  parallel_for(n, [&](std::size_t i) {
    serving[i] = serving_relay(map.points[i], layout, ctx.scenario);
    for (std::size_t s = 0; s < order.size(); ++s) {
      int k = order[s] == SchemeKind::DTx ? kNoRelay : serving[i];
      per_scheme[s][i] = gamma_point(map.points[i], layout, k, order[s], ctx);
    }
  });
  std::size_t base_idx = static_cast<std::size_t>(std::find(order.begin(), order.end(), baseline_kind) - order.begin());
  const auto& base = per_scheme[base_idx];
  map.baseline = gamma_from_points(base, weights, ctx.covered_only, field.size());

  double nn = static_cast<double>(n);
  double gain_sum = map.baseline.upsilon_gain * nn;
  double loss = map.baseline.upsilon_loss;
  std::vector<GammaPoint> chosen(n);
  map.schemes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_s = base_idx;
    for (std::size_t s = 0; s < order.size(); ++s) {
      const GammaPoint& g = per_scheme[s][i];
      double w_new = g.relay == kNoRelay ? 0.0 : weights[static_cast<std::size_t>(g.relay)];
      double w_old = base[i].relay == kNoRelay ? 0.0 : weights[static_cast<std::size_t>(base[i].relay)];
      double l = loss + (w_new * g.relay_rf - w_old * base[i].relay_rf) / nn;
      double gs = (gain_sum + g.gain - base[i].gain) / nn;
      double value = l > 0.0 ? gs / l : (gs >= 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity());
      if (s == 0 || value > best + 1e-12 * std::abs(best)) {
        best = value;
        best_s = s;
      }
    }
    map.schemes[i] = order[best_s];
    chosen[i] = per_scheme[best_s][i];
  }
  map.selected = gamma_from_points(chosen, weights, ctx.covered_only, field.size());
  return map;
}

}  // namespace relaynet
