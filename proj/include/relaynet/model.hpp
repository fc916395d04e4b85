#pragma once

#include <vector>

#include "relaynet/channel.hpp"
#include "relaynet/eea.hpp"
#include "relaynet/geometry.hpp"
#include "relaynet/rea.hpp"
#include "relaynet/schemes.hpp"

namespace relaynet {

struct ModelContext {
  ScenarioConfig scenario;
  EnergyProfile profile;
  bool circuitry = true;       // apply amplifier coefficients and processing energy
  bool covered_only = false;   // restrict the gain average to covered points
  PdfAllocator allocator = default_pdf_allocator();
};

struct PointModel {
  int relay = kNoRelay;
  RfEnergies rf;
  ModelInputs inputs;
  DecisionProbabilities probs;
  EnergyEstimate energy;    // same units as inputs
  double relay_rf = 0.0;    // expected radiated relay energy, joules
};

// Shadow-free gains of the direct, backhaul and access links implied by rf.
ChannelGains gains_from(const RfEnergies& rf, const ScenarioConfig& cfg);

// Relay energies of a scheme at shadow-free gains, wrapped with the link shadowing.
RfEnergies scheme_energies(const RfEnergies& two_hop, SchemeKind scheme, const ModelContext& ctx);

// Evaluates the closed-form models for a user served through relay index k (kNoRelay for DTx).
PointModel evaluate_with_relay(const UserPos& u, const CellLayout& layout, int k, SchemeKind scheme,
                               const ModelContext& ctx);

int serving_relay(const UserPos& u, const CellLayout& layout, const ScenarioConfig& cfg);

PointModel evaluate_point(const UserPos& u, const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx);

// Uncapped mean DTx radiated energy at u.
double dtx_mean_energy(const UserPos& u, const CellLayout& layout, const ScenarioConfig& cfg);

}  // namespace relaynet
