#pragma once

#include "relaynet/rea.hpp"

namespace relaynet {

struct EnergyEstimate {
  double e_cr = 0.0;
  double e_cd = 0.0;
  double e_er_lb = 0.0;
  double e_ed_ub = 0.0;
  double total = 0.0;
};

// Expected energy spent in each decision region, in the units of the inputs.
EnergyEstimate expected_rf_energy(const ModelInputs& in);

bool eea_membership(const EnergyEstimate& estimate, double e_t);

}  // namespace relaynet
