#include "relaynet/schemes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relaynet {

void EnergyProfile::validate() const {
  for (double v : {e_b_max, e_r_max, e_b_tx_plus_u_rx, e_b_idle, e_r_idle, e_dsp_2hop, e_dsp_plus_pdf}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::domain_error("energy profile values must be finite and >= 0");
  }
  if (!(e_b_max > 0.0) || !(e_r_max > 0.0)) throw std::domain_error("energy caps must be positive");
  if (!(eta_b >= 1.0) || !(eta_r >= 1.0)) throw std::domain_error("amplifier coefficients must be >= 1");
}

const char* to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::DTx: return "dtx";
    case SchemeKind::TwoHop: return "2hop";
    case SchemeKind::EoPdf: return "eo-pdf";
    case SchemeKind::IrPdf: return "ir-pdf";
  }
  return "?";
}

SchemeKind scheme_from_string(const std::string& name) {
  for (SchemeKind k : {SchemeKind::DTx, SchemeKind::TwoHop, SchemeKind::EoPdf, SchemeKind::IrPdf}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown scheme '" + name + "' (expected dtx, 2hop, eo-pdf or ir-pdf)");
}

double relay_dsp(SchemeKind kind, const EnergyProfile& p) {
  switch (kind) {
    case SchemeKind::DTx: return 0.0;
    case SchemeKind::TwoHop: return p.e_dsp_2hop;
    case SchemeKind::EoPdf:
    case SchemeKind::IrPdf: return p.e_dsp_2hop + p.e_dsp_plus_pdf;
  }
  return 0.0;
}

double total_energy(SchemeKind kind, const TransmitEnergies& rf, const EnergyProfile& p, int n_r) {
  if (rf.bs < 0.0 || rf.relay < 0.0) throw std::domain_error("transmit energies must be >= 0");
  double idle = p.e_b_tx_plus_u_rx + p.e_b_idle + n_r * p.e_r_idle;
  if (kind == SchemeKind::DTx) return p.eta_b * rf.bs + idle;
  return p.eta_b * rf.bs + p.eta_r * rf.relay + relay_dsp(kind, p) + idle;
}

double dtx_energy(const ChannelGains& g, double rate, double noise) {
  return std::expm1(rate * std::numbers::ln2) * noise / g.g_d;
}

TransmitEnergies two_hop_energies(const ChannelGains& g, double rate, double noise) {
  double k = std::expm1(2.0 * rate * std::numbers::ln2) * noise / 2.0;
  return {k / g.g_b, k / g.g_r};
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double half_capacity(double snr) { return 0.5 * std::log2(1.0 + snr); }

class PdfSolver {
 public:
  PdfSolver(const ChannelGains& g, double rate, double noise, const EnergyProfile& caps)
      : rate_(rate), cap_b_(caps.e_b_max), cap_r_(caps.e_r_max) {
    if (!(g.g_d > 0.0) || !(g.g_b > 0.0) || !(g.g_r > 0.0)) throw std::domain_error("channel gains must be positive");
    if (!(rate > 0.0) || !(noise > 0.0)) throw std::domain_error("rate and noise must be positive");
    ad_ = 2.0 * g.g_d / noise;
    ab_ = 2.0 * g.g_b / noise;
    ar_ = 2.0 * g.g_r / noise;
    k_ = std::exp2(2.0 * rate);
    dtx_ = dtx_energy(g, rate, noise);
    two_hop_ = two_hop_energies(g, rate, noise);
  }

  // Cheapest phase-1 relayed and phase-2 direct energies for the given split, m_d phase-1 energy and relay energy.
  PdfAllocation complete(double t, double e1d, double e2r) const {
    double rr = t * rate_;
    double rd = rate_ - rr;
    double q_r = std::exp2(2.0 * rr);
    double l1 = std::max({(q_r - 1.0) * (1.0 + ab_ * e1d) / ab_, (q_r / (1.0 + ar_ * e2r) - 1.0) / ad_, 0.0});
    double l3 = std::max((std::exp2(2.0 * rd) / (1.0 + ad_ * e1d) - 1.0) / ad_, 0.0);
    double u_min = 1.0 + ad_ * (l1 + e1d);
    double v_min = 1.0 + ad_ * l3 + ar_ * e2r;
    double u = u_min;
    double v = v_min;
    if (u_min * v_min < k_) {
      double level = std::sqrt(k_);
      if (level < u_min) {
        v = k_ / u_min;
      } else if (level < v_min) {
        u = k_ / v_min;
      } else {
        u = level;
        v = level;
      }
    }
    PdfAllocation a;
    a.rate_relayed = rr;
    a.e1_direct = e1d;
    a.e_relay = e2r;
    a.e1_relayed = std::max((u - 1.0) / ad_ - e1d, l1);
    a.e2_direct = std::max((v - 1.0 - ar_ * e2r) / ad_, l3);
    a.feasible = true;
    return a;
  }

  PdfAllocation dtx_point() const { return complete(0.0, (std::sqrt(k_) - 1.0) / ad_, 0.0); }
  PdfAllocation two_hop_point() const { return complete(1.0, 0.0, two_hop_.relay); }

  double relay_ceiling() const { return std::min(cap_r_, two_hop_.relay); }
  double dtx() const { return dtx_; }
  double cap_b() const { return cap_b_; }

  // Minimum BS energy for a fixed relay energy, by grid plus pattern search over (split, m_d phase-1 energy).
  PdfAllocation min_bs(double e2r) const {
    double e_scale = std::max(dtx_, 1e-300);
    auto eval = [&](double t, double e1d) { return complete(t, e1d, e2r); };
    PdfAllocation best = eval(1.0, 0.0);
    double best_t = 1.0;
    double best_e = 0.0;
    constexpr int nt = 32;
    constexpr int ne = 16;
    for (int i = 0; i <= nt; ++i) {
      double t = static_cast<double>(i) / nt;
      for (int j = 0; j <= ne; ++j) {
        double f = static_cast<double>(j) / ne;
        double e1d = e_scale * f * f;
        PdfAllocation a = eval(t, e1d);
        if (a.bs_total() < best.bs_total()) {
          best = a;
          best_t = t;
          best_e = e1d;
        }
      }
    }
    double dt = 1.0 / nt;
    double de = e_scale / ne;
    while (dt > 1e-10 || de > 1e-12 * e_scale) {
      bool moved = false;
      const std::array<std::array<double, 2>, 8> dirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
      for (const auto& dir : dirs) {
        double t = std::clamp(best_t + dir[0] * dt, 0.0, 1.0);
        double e1d = std::max(best_e + dir[1] * de, 0.0);
        PdfAllocation a = eval(t, e1d);
        if (a.bs_total() < best.bs_total()) {
          best = a;
          best_t = t;
          best_e = e1d;
          moved = true;
          break;
        }
      }
      if (!moved) {
        dt *= 0.5;
        de *= 0.5;
      }
    }
    return best;
  }

  double eo_cost(double e2r, PdfAllocation* out) const {
    PdfAllocation a = min_bs(e2r);
    if (out) *out = a;
    if (a.bs_total() > cap_b_) return kInf;
    return a.transmit_total();
  }

 private:
  double rate_;
  double cap_b_;
  double cap_r_;
  double ad_ = 0.0;
  double ab_ = 0.0;
  double ar_ = 0.0;
  double k_ = 0.0;
  double dtx_ = 0.0;
  TransmitEnergies two_hop_;
};

bool within_caps(const PdfAllocation& a, const EnergyProfile& caps) {
  return a.bs_total() <= caps.e_b_max && a.e_relay <= caps.e_r_max;
}

PdfAllocation infeasible() { return PdfAllocation{}; }

PdfAllocation solve_eo(const PdfSolver& s, const EnergyProfile& caps) {
  PdfAllocation best = infeasible();
  auto consider = [&](const PdfAllocation& a) {
    if (within_caps(a, caps) && (!best.feasible || a.transmit_total() < best.transmit_total())) best = a;
  };
  consider(s.dtx_point());
  consider(s.two_hop_point());
  double hi = s.relay_ceiling();
  constexpr int n = 32;
  std::array<double, n + 1> cost{};
  int k_best = -1;
  for (int i = 0; i <= n; ++i) {
    PdfAllocation a;
    cost[static_cast<std::size_t>(i)] = s.eo_cost(hi * i / n, &a);
    if (std::isfinite(cost[static_cast<std::size_t>(i)])) {
      consider(a);
      if (k_best < 0 || cost[static_cast<std::size_t>(i)] < cost[static_cast<std::size_t>(k_best)]) k_best = i;
    }
  }
  if (k_best >= 0) {
    double lo_x = hi * std::max(k_best - 1, 0) / n;
    double hi_x = hi * std::min(k_best + 1, n) / n;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi_x - phi * (hi_x - lo_x);
    double x2 = lo_x + phi * (hi_x - lo_x);
    PdfAllocation a1;
    PdfAllocation a2;
    double f1 = s.eo_cost(x1, &a1);
    double f2 = s.eo_cost(x2, &a2);
    for (int it = 0; it < 80 && hi_x - lo_x > 1e-14 * std::max(hi, 1e-300); ++it) {
      if (f1 <= f2) {
        hi_x = x2;
        x2 = x1;
        f2 = f1;
        a2 = a1;
        x1 = hi_x - phi * (hi_x - lo_x);
        f1 = s.eo_cost(x1, &a1);
      } else {
        lo_x = x1;
        x1 = x2;
        f1 = f2;
        a1 = a2;
        x2 = lo_x + phi * (hi_x - lo_x);
        f2 = s.eo_cost(x2, &a2);
      }
      if (std::isfinite(f1)) consider(a1);
      if (std::isfinite(f2)) consider(a2);
    }
  }
  return best;
}

PdfAllocation solve_ir(const PdfSolver& s, const EnergyProfile& caps) {
  PdfAllocation d = s.dtx_point();
  if (within_caps(d, caps)) return d;
  double hi = s.relay_ceiling();
  PdfAllocation best = s.min_bs(hi);
  PdfAllocation th = s.two_hop_point();
  if (within_caps(th, caps) && th.bs_total() < best.bs_total() && th.e_relay <= hi) best = th;
  if (!within_caps(best, caps)) return infeasible();
  double lo = 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-13 * s.relay_ceiling(); ++it) {
    double mid = 0.5 * (lo + hi);
    PdfAllocation a = s.min_bs(mid);
    if (a.bs_total() <= caps.e_b_max) {
      hi = mid;
      best = a;
    } else {
      lo = mid;
    }
  }
  return best;
}

}  // namespace

double pdf_rate_violation(const PdfAllocation& a, const ChannelGains& g, double rate, double noise) {
  double ad = 2.0 * g.g_d / noise;
  double ab = 2.0 * g.g_b / noise;
  double ar = 2.0 * g.g_r / noise;
  double rr = a.rate_relayed;
  double rd = rate - rr;
  double v = 0.0;
  if (rr > 1e-15) {
    v = std::max(v, rr - half_capacity(ab * a.e1_relayed / (1.0 + ab * a.e1_direct)));
    v = std::max(v, rr - (half_capacity(ad * a.e1_relayed) + half_capacity(ar * a.e_relay)));
  }
  v = std::max(v, rd - (half_capacity(ad * a.e1_direct) + half_capacity(ad * a.e2_direct)));
  v = std::max(v, rate - (half_capacity(ad * (a.e1_relayed + a.e1_direct)) +
                          half_capacity(ad * a.e2_direct + ar * a.e_relay)));
  return v;
}

double pdf_local_optimality_gap(const PdfAllocation& a, PdfObjective objective, const ChannelGains& g, double rate,
                                double noise, const EnergyProfile& caps, double h) {
  if (!a.feasible) return 0.0;
  auto key = [&](const PdfAllocation& x) {
    return objective == PdfObjective::Total ? x.transmit_total() : x.e_relay;
  };
  double base = key(a);
  double scale = std::max(a.transmit_total(), 1e-300);
  double gap = 0.0;
  std::array<int, 5> step{};
  for (int code = 0; code < 243; ++code) {
    int c = code;
    for (auto& s : step) {
      s = c % 3 - 1;
      c /= 3;
    }
    PdfAllocation p = a;
    p.e1_relayed = std::max(0.0, p.e1_relayed + step[0] * h * scale);
    p.e1_direct = std::max(0.0, p.e1_direct + step[1] * h * scale);
    p.e2_direct = std::max(0.0, p.e2_direct + step[2] * h * scale);
    p.e_relay = std::max(0.0, p.e_relay + step[3] * h * scale);
    p.rate_relayed = std::clamp(p.rate_relayed + step[4] * h * rate, 0.0, rate);
    if (pdf_rate_violation(p, g, rate, noise) > 1e-12 || !within_caps(p, caps)) continue;
    gap = std::max(gap, base - key(p));
  }
  return gap;
}

PdfAllocation pdf_allocation(PdfObjective objective, const ChannelGains& g, double rate, double noise,
                             const EnergyProfile& caps) {
  PdfSolver s(g, rate, noise, caps);
  return objective == PdfObjective::Total ? solve_eo(s, caps) : solve_ir(s, caps);
}

PdfAllocator default_pdf_allocator() { return pdf_allocation; }

}  // namespace relaynet
