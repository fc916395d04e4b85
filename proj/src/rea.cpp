#include "relaynet/rea.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaynet {

ModelInputs make_inputs(const RfEnergies& rf, const EnergyProfile& profile) {
  ModelInputs in;
  in.d = rf.d;
  in.b = rf.b;
  in.r = rf.r;
  in.cap_bs = profile.e_b_max;
  in.cap_relay = profile.e_r_max;
  return in;
}

ModelInputs with_circuitry(const ModelInputs& in, const EnergyProfile& profile, SchemeKind scheme) {
  double dsp = relay_dsp(scheme, profile);
  ModelInputs out = in;
  out.d = in.d.scaled(profile.eta_b);
  out.b = in.b.scaled(profile.eta_b);
  out.r = in.r.scaled(profile.eta_r);
  out.cap_bs = profile.eta_b * in.cap_bs;
  out.cap_relay = profile.eta_r * in.cap_relay + dsp;
  out.relay_offset = in.relay_offset + dsp;
  out.eta_b = in.eta_b * profile.eta_b;
  out.eta_r = in.eta_r * profile.eta_r;
  return out;
}

std::pair<double, double> coverage_probs(const ModelInputs& in) {
  if (!(in.cap_bs > 0.0) || !(in.cap_relay > 0.0)) throw std::domain_error("caps must be positive");
  double pd = cdf(in.cap_bs, in.d);
  double prelay = cdf(in.cap_bs, in.b) * cdf(in.cap_relay, in.r);
  return {(1.0 - pd) * prelay, pd * (1.0 - prelay)};
}

namespace {

LogNormal direct_for(const ModelInputs& in, Tilt tilt) { return tilt == Tilt::Direct ? in.d.tilted() : in.d; }
LogNormal relay_for(const ModelInputs& in, Tilt tilt) { return tilt == Tilt::Relay ? in.r.tilted() : in.r; }

LogNormal untilted_sum(const ModelInputs& in, Tilt tilt) {
  LogNormal s = fw_sum(in.b, relay_for(in, tilt), 0.0);
  if (in.relay_offset > 0.0) s = fw_sum(s, LogNormal::constant(in.relay_offset), 0.0);
  return s;
}

}  // namespace

LogNormal relay_sum(const ModelInputs& in, Tilt tilt) {
  LogNormal s = untilted_sum(in, tilt);
  return tilt == Tilt::RelaySum ? s.tilted() : s;
}

double prob_relay_sum_below_direct(const ModelInputs& in, Tilt tilt) {
  LogNormal d = direct_for(in, tilt);
  LogNormal r = relay_for(in, tilt);
  double sd2 = in.d.sigma * in.d.sigma;
  LogNormal x(in.b.mu, std::sqrt(in.b.sigma * in.b.sigma + sd2));
  LogNormal y(r.mu, std::sqrt(r.sigma * r.sigma + sd2));
  double denom = x.sigma * y.sigma;
  double rho = denom > 0.0 ? std::min(sd2 / denom, 1.0) : 0.0;
  LogNormal t = fw_sum(x, y, rho);
  if (in.relay_offset > 0.0) {
    LogNormal z(std::log(in.relay_offset), in.d.sigma);
    double rho_z = t.sigma > 0.0 ? std::min(in.d.sigma / t.sigma, 1.0) : 0.0;
    t = fw_sum(t, z, rho_z);
  }
  if (tilt == Tilt::RelaySum) {
    double s = untilted_sum(in, tilt).sigma;
    t.mu += s * s;
  }
  return prob_le(t, LogNormal(d.mu, 0.0));
}

double prob_relay_sum_below_direct_fw(const ModelInputs& in, Tilt tilt) {
  return prob_le(relay_sum(in, tilt), direct_for(in, tilt));
}

std::pair<double, double> p_low(const ModelInputs& in, Tilt tilt) {
  double cb = in.cap_bs;
  double cr = in.cap_relay;
  LogNormal d = direct_for(in, tilt);
  LogNormal s = relay_sum(in, tilt);
  double both = cb + cr;
  double p_sum = prob_relay_sum_below_direct(in, tilt);
  // E_b + E_r <= E_d <= min(caps) satisfies every cap; with the relay cap above the BS cap,
  // E_d in (cap_bs, cap_relay] is forced relaying and must be removed too.
  double m = std::min(cb, cr);
  double removed = interval_prob(m, both, d) * cdf(both, s) + (1.0 - cdf(both, d));
  double p1 = std::max(0.0, p_sum - removed);
  double p2 = cr <= cb ? interval_prob(cr, cb, d) * cdf(cr, s) : 0.0;
  return {p1, p2};
}

bool outage_check(const DecisionProbabilities& probs, double p_out) {
  return 1.0 - p_out <= probs.p_both + probs.p_cr + probs.p_cd;
}

DecisionProbabilities decision_probabilities(const ModelInputs& in, double p_out) {
  DecisionProbabilities p;
  auto [cr, cd] = coverage_probs(in);
  p.p_cr = cr;
  p.p_cd = cd;
  auto [l1, l2] = p_low(in);
  p.p_low1 = l1;
  p.p_low2 = l2;
  p.p_low = std::min(1.0, l1 + l2);
  p.p_both = cdf(in.cap_bs, in.d) * cdf(in.cap_bs, in.b) * cdf(in.cap_relay, in.r);
  p.p_ed_ub = std::max(0.0, p.p_both - p.p_low);
  p.outage_ok = outage_check(p, p_out);
  return p;
}

bool rea_membership(const DecisionProbabilities& probs, double p_t) { return p_t <= probs.p_relay(); }

}  // namespace relaynet
