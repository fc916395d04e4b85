#include "relaynet/model.hpp"

#include <cmath>
#include <numbers>

#include "relaynet/ici.hpp"

namespace relaynet {

ChannelGains gains_from(const RfEnergies& rf, const ScenarioConfig& cfg) {
  double k1 = std::expm1(cfg.rate * std::numbers::ln2) * cfg.noise;
  double k2 = std::expm1(2.0 * cfg.rate * std::numbers::ln2) * cfg.noise / 2.0;
  return {k1 / rf.d.median(), k2 / rf.b.median(), k2 / rf.r.median()};
}

RfEnergies scheme_energies(const RfEnergies& two_hop, SchemeKind scheme, const ModelContext& ctx) {
  if (scheme != SchemeKind::EoPdf && scheme != SchemeKind::IrPdf) return two_hop;
  PdfObjective objective = scheme == SchemeKind::EoPdf ? PdfObjective::Total : PdfObjective::RelayOnly;
  PdfAllocation a = ctx.allocator(objective, gains_from(two_hop, ctx.scenario), ctx.scenario.rate,
                                  ctx.scenario.noise, ctx.profile);
  if (!a.feasible) return two_hop;
  RfEnergies out = two_hop;
  out.b = LogNormal::from_median(a.bs_total(), two_hop.b.sigma);
  out.r = LogNormal::from_median(a.e_relay, two_hop.r.sigma);
  return out;
}

double dtx_mean_energy(const UserPos& u, const CellLayout& layout, const ScenarioConfig& cfg) {
  double s = cfg.links.direct.sigma();
  return direct_energy0(u, cfg, layout) * std::exp(0.5 * s * s);
}

int serving_relay(const UserPos& u, const CellLayout& layout, const ScenarioConfig& cfg) {
  return serving_assignment(u, layout, [&](const Point& relay) {
    return backhaul_energy0(relay, cfg, layout) + access_energy0(u, relay, cfg);
  });
}

namespace {

PointModel evaluate_direct_only(const UserPos& u, const CellLayout& layout, const ModelContext& ctx) {
  PointModel m;
  double d0 = direct_energy0(u, ctx.scenario, layout);
  m.rf.d = LogNormal::from_median(d0, ctx.scenario.links.direct.sigma());
  m.rf.b = LogNormal::constant(0.0);
  m.rf.r = LogNormal::constant(0.0);
  m.rf.has_relay = false;
  m.inputs = make_inputs(m.rf, ctx.profile);
  if (ctx.circuitry) m.inputs = with_circuitry(m.inputs, ctx.profile, SchemeKind::DTx);
  double pd = cdf(m.inputs.cap_bs, m.inputs.d);
  m.probs.p_cd = pd;
  m.probs.outage_ok = 1.0 - ctx.scenario.p_out <= pd;
  m.energy.e_cd = partial_expectation(m.inputs.d, m.inputs.cap_bs);
  m.energy.total = m.energy.e_cd;
  return m;
}

}  // namespace

PointModel evaluate_with_relay(const UserPos& u, const CellLayout& layout, int k, SchemeKind scheme,
                               const ModelContext& ctx) {
  if (k == kNoRelay || scheme == SchemeKind::DTx) return evaluate_direct_only(u, layout, ctx);
  PointModel m;
  m.relay = k;
  RfEnergies two_hop = rf_energies(u, layout.relays().at(static_cast<std::size_t>(k)), ctx.scenario, layout);
  m.rf = scheme_energies(two_hop, scheme, ctx);
  m.inputs = make_inputs(m.rf, ctx.profile);
  if (ctx.circuitry) m.inputs = with_circuitry(m.inputs, ctx.profile, scheme);
  m.probs = decision_probabilities(m.inputs, ctx.scenario.p_out);
  m.energy = expected_rf_energy(m.inputs);
  m.relay_rf = expected_relay_rf(m.inputs);
  return m;
}

PointModel evaluate_point(const UserPos& u, const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx) {
  int k = scheme == SchemeKind::DTx ? kNoRelay : serving_relay(u, layout, ctx.scenario);
  return evaluate_with_relay(u, layout, k, scheme, ctx);
}

}  // namespace relaynet
