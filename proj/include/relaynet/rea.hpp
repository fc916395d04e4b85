#pragma once

#include <utility>

#include "relaynet/channel.hpp"
#include "relaynet/schemes.hpp"
#include "relaynet/stats.hpp"

namespace relaynet {

// Energies entering the decision models. After with_circuitry the three variables,
// caps and relay offset are expressed in consumed rather than radiated energy.
struct ModelInputs {
  LogNormal d;
  LogNormal b;
  LogNormal r;
  double cap_bs = 1.0;
  double cap_relay = 0.5;
  double relay_offset = 0.0;  // added to E_b + E_r
  double eta_b = 1.0;         // multipliers already applied to d, b
  double eta_r = 1.0;         // multiplier already applied to r
};

ModelInputs make_inputs(const RfEnergies& rf, const EnergyProfile& profile);
ModelInputs with_circuitry(const ModelInputs& in, const EnergyProfile& profile, SchemeKind scheme);

// Which variable is replaced by its size-biased version exp(sigma^2) X.
enum class Tilt { None, RelaySum, Direct, Relay };

struct DecisionProbabilities {
  double p_cr = 0.0;
  double p_cd = 0.0;
  double p_low1 = 0.0;
  double p_low2 = 0.0;
  double p_low = 0.0;
  double p_both = 0.0;  // P(E_d <= cap_bs, E_b <= cap_bs, E_r <= cap_relay)
  double p_ed_ub = 0.0;
  bool outage_ok = false;

  double p_relay() const { return p_low + p_cr; }
};

std::pair<double, double> coverage_probs(const ModelInputs& in);

// Log-normal approximation of E_b + E_r + offset.
LogNormal relay_sum(const ModelInputs& in, Tilt tilt = Tilt::None);

// P(E_b + E_r + offset <= E_d) through the correlated ratio form sharing s_d.
double prob_relay_sum_below_direct(const ModelInputs& in, Tilt tilt = Tilt::None);
// Same probability through an independent sum compared against E_d.
double prob_relay_sum_below_direct_fw(const ModelInputs& in, Tilt tilt = Tilt::None);

std::pair<double, double> p_low(const ModelInputs& in, Tilt tilt = Tilt::None);

bool outage_check(const DecisionProbabilities& probs, double p_out);

DecisionProbabilities decision_probabilities(const ModelInputs& in, double p_out);

bool rea_membership(const DecisionProbabilities& probs, double p_t);

}  // namespace relaynet
