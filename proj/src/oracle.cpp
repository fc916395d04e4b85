#include "relaynet/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "relaynet/ici.hpp"
#include "relaynet/parallel.hpp"

namespace relaynet {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(stream ^ 0xd1b54a32d192ed03ULL)) {}

CounterRng::result_type CounterRng::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

Circuitry Circuitry::of(const ModelContext& ctx, SchemeKind scheme) {
  if (!ctx.circuitry) return {};
  return {ctx.profile.eta_b, ctx.profile.eta_r, relay_dsp(scheme, ctx.profile)};
}

Estimate wilson(std::size_t hits, std::size_t n) {
  if (n == 0) throw std::invalid_argument("empty sample");
  constexpr double z = 1.959963984540054;
  double nn = static_cast<double>(n);
  double p = static_cast<double>(hits) / nn;
  double denom = 1.0 + z * z / nn;
  double center = (p + z * z / (2.0 * nn)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  // Report the plain proportion; widen the half-width so the Wilson interval is covered.
  double hw = std::max(center + half - p, p - (center - half));
  return {p, hw};
}

std::vector<ShadowDraw> shadow_draws(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  std::normal_distribution<double> normal;
  std::vector<ShadowDraw> out(n);
  for (auto& s : out) {
    s.z_d = normal(rng);
    s.z_b = normal(rng);
    s.z_r = normal(rng);
  }
  return out;
}

namespace {

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  Estimate estimate() const {
    double nn = static_cast<double>(n);
    double var = n > 1 ? std::max(0.0, m2 / (nn - 1.0)) : 0.0;
    return {mean, 1.959963984540054 * std::sqrt(var / nn)};
  }
};

struct Tally {
  std::size_t cr = 0, cd = 0, er = 0, ed = 0, outage = 0;
  Moments e_rf, e_er, e_ed, e_relay;
};

double draw(const LogNormal& x, double z) {
  if (x.is_zero()) return 0.0;
  return std::exp(x.mu + x.sigma * z);
}

}  // namespace

std::vector<EmpiricalPoint> sample_decisions(const RfEnergies& rf, const EnergyProfile& caps,
                                             const std::vector<Circuitry>& rules, std::size_t n, std::uint64_t seed,
                                             std::uint64_t stream) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  CounterRng rng(seed, stream);
  std::normal_distribution<double> normal;
  std::vector<Tally> tallies(rules.size());
  for (std::size_t i = 0; i < n; ++i) {
    double zd = normal(rng);
    double zb = normal(rng);
    double zr = normal(rng);
    double ed = draw(rf.d, zd);
    double eb = draw(rf.b, zb);
    double er = draw(rf.r, zr);
    bool direct_ok = ed <= caps.e_b_max;
    bool relay_ok = rf.has_relay && eb <= caps.e_b_max && er <= caps.e_r_max;
    for (std::size_t k = 0; k < rules.size(); ++k) {
      const Circuitry& c = rules[k];
      Tally& t = tallies[k];
      double cost_d = c.eta_b * ed;
      double cost_r = c.eta_b * eb + c.eta_r * er + c.dsp;
      double spent = 0.0;
      double spent_er = 0.0;
      double spent_ed = 0.0;
      double relay_rf = 0.0;
      if (relay_ok && direct_ok) {
        if (cost_r <= cost_d) {
          ++t.er;
          spent = spent_er = cost_r;
          relay_rf = er;
        } else {
          ++t.ed;
          spent = spent_ed = cost_d;
        }
      } else if (relay_ok) {
        ++t.cr;
        spent = cost_r;
        relay_rf = er;
      } else if (direct_ok) {
        ++t.cd;
        spent = cost_d;
      } else {
        ++t.outage;
      }
      t.e_rf.add(spent);
      t.e_er.add(spent_er);
      t.e_ed.add(spent_ed);
      t.e_relay.add(relay_rf);
    }
  }
  std::vector<EmpiricalPoint> out;
  out.reserve(rules.size());
  for (const auto& t : tallies) {
    EmpiricalPoint p;
    p.n = n;
    p.p_rtx = wilson(t.cr + t.er, n);
    p.p_dtx = wilson(t.cd + t.ed, n);
    p.p_cr = wilson(t.cr, n);
    p.p_cd = wilson(t.cd, n);
    p.p_er = wilson(t.er, n);
    p.p_ed = wilson(t.ed, n);
    p.p_outage = wilson(t.outage, n);
    p.e_rf = t.e_rf.estimate();
    p.e_er = t.e_er.estimate();
    p.e_ed = t.e_ed.estimate();
    p.e_relay_rf = t.e_relay.estimate();
    out.push_back(p);
  }
  return out;
}

EmpiricalPoint sample_decision(const RfEnergies& rf, const EnergyProfile& caps, const Circuitry& rule,
                               std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  return sample_decisions(rf, caps, {rule}, n, seed, stream).front();
}

EmpiricalPoint sample_decision(const UserPos& u, const CellLayout& layout, SchemeKind scheme,
                               const ModelContext& ctx, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  int k = serving_relay(u, layout, ctx.scenario);
  if (k == kNoRelay) throw std::invalid_argument("sampling requires at least one relay");
  RfEnergies two_hop = rf_energies(u, layout.relays()[static_cast<std::size_t>(k)], ctx.scenario, layout);
  return sample_decision(scheme_energies(two_hop, scheme, ctx), ctx.profile, Circuitry::of(ctx, scheme), n, seed,
                         stream);
}

namespace {

void tally_threshold(ValidationReport& r, const std::vector<PointComparison>& pts, const char* kind, double thr,
                     bool above) {
  ThresholdZeta z;
  z.kind = kind;
  z.threshold = thr;
  for (const auto& p : pts) {
    if (!p.covered) continue;
    double m = kind[0] == 'R' ? p.model_p : kind[0] == 'E' ? p.model_e : p.model_relay;
    double o = kind[0] == 'R' ? p.oracle_p : kind[0] == 'E' ? p.oracle_e : p.oracle_relay;
    bool in_model = above ? m >= thr : m <= thr;
    bool in_oracle = above ? o >= thr : o <= thr;
    if (in_oracle) ++z.reference;
    if (in_model != in_oracle) ++z.mismatches;
  }
  z.zeta = z.reference > 0 ? static_cast<double>(z.mismatches) / static_cast<double>(z.reference)
                           : std::numeric_limits<double>::quiet_NaN();
  r.breakdown.push_back(z);
}

double average_zeta(const ValidationReport& r, const char* kind) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& z : r.breakdown) {
    if (z.kind == kind && !std::isnan(z.zeta)) {
      sum += z.zeta;
      ++n;
    }
  }
  return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace

ValidationReport error_ratios(const std::vector<PointComparison>& pts, const Thresholds& thresholds) {
  if (thresholds.p_t.empty() && thresholds.e_t.empty() && thresholds.e_t_r.empty()) {
    throw std::invalid_argument("at least one threshold is required");
  }
  ValidationReport r;
  for (double t : thresholds.p_t) tally_threshold(r, pts, "R", t, true);
  for (double t : thresholds.e_t) tally_threshold(r, pts, "E", t, false);
  for (double t : thresholds.e_t_r) tally_threshold(r, pts, "I", t, false);
  r.zeta_r = average_zeta(r, "R");
  r.zeta_e = average_zeta(r, "E");
  r.zeta_i = average_zeta(r, "I");
  for (const auto& p : pts) r.points += p.covered ? 1 : 0;
  return r;
}

std::vector<PointComparison> compare_grid(const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx,
                                          std::size_t n, std::uint64_t seed) {
  auto grid = sector_grid(layout);
  std::vector<PointComparison> out(grid.size());
  Circuitry rule = Circuitry::of(ctx, scheme);
  parallel_for(grid.size(), [&](std::size_t i) {
    PointModel m = evaluate_point(grid[i], layout, scheme, ctx);
    PointComparison& c = out[i];
    c.covered = m.probs.outage_ok;
    c.model_p = m.probs.p_relay();
    c.model_e = m.energy.total;
    c.model_relay = m.relay_rf;
    EmpiricalPoint e = sample_decision(m.rf, ctx.profile, rule, n, seed, i);
    c.oracle_p = e.p_rtx.value;
    c.oracle_e = e.e_rf.value;
    c.oracle_relay = e.e_relay_rf.value;
  });
  return out;
}

ValidationReport error_ratios(const CellLayout& layout, SchemeKind scheme, const Thresholds& thresholds,
                              const ModelContext& ctx, std::size_t n, std::uint64_t seed) {
  ValidationReport r = error_ratios(compare_grid(layout, scheme, ctx, n, seed), thresholds);
  r.samples = n;
  r.seed = seed;
  return r;
}

}  // namespace relaynet
