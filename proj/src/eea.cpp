#include "relaynet/eea.hpp"

#include <algorithm>
#include <stdexcept>

namespace relaynet {

EnergyEstimate expected_rf_energy(const ModelInputs& in) {
  double cb = in.cap_bs;
  double cr = in.cap_relay;
  double pd = cdf(cb, in.d);
  double pb = cdf(cb, in.b);
  double pr = cdf(cr, in.r);
  LogNormal s = relay_sum(in);

  EnergyEstimate e;
  // E[(E_b + E_r + offset) 1{CR}] and E[E_d 1{CD}] factor into partial expectations.
  e.e_cr = (1.0 - pd) * (partial_expectation(in.b, cb) * pr + pb * partial_expectation(in.r, cr) +
                         in.relay_offset * pb * pr);
  double direct_below_cap = partial_expectation(in.d, cb);
  e.e_cd = direct_below_cap * (1.0 - pb * pr);

  auto [l1_er, unused_er] = p_low(in, Tilt::RelaySum);
  (void)unused_er;
  double p2_interval = cr <= cb ? interval_prob(cr, cb, in.d) : 0.0;
  e.e_er_lb = s.mean() * l1_er + partial_expectation(s, cr) * p2_interval;

  auto [l1_ed, unused_ed] = p_low(in, Tilt::Direct);
  (void)unused_ed;
  double interval_part = 0.0;
  if (cr <= cb) {
    interval_part = (partial_expectation(in.d, cb) - partial_expectation(in.d, cr)) * cdf(cr, s);
  }
  e.e_ed_ub = std::max(0.0, direct_below_cap * pb * pr - in.d.mean() * l1_ed - interval_part);

  e.total = e.e_cr + e.e_cd + e.e_er_lb + e.e_ed_ub;
  return e;
}

bool eea_membership(const EnergyEstimate& estimate, double e_t) {
  if (!(e_t > 0.0)) throw std::domain_error("energy threshold must be positive");
  return estimate.total <= e_t;
}

}  // namespace relaynet
