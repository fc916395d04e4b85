#include <doctest.h>

#include <cmath>
#include <random>

#include "common.hpp"
#include "relaynet/oracle.hpp"

using namespace relaynet;

namespace {

RunConfig shadow_free() {
  RunConfig cfg = testing::table1();
  for (LinkModel* l : {&cfg.ctx.scenario.links.direct, &cfg.ctx.scenario.links.backhaul,
                       &cfg.ctx.scenario.links.access, &cfg.ctx.scenario.links.interference}) {
    l->sigma_db = 0.0;
  }
  return cfg;
}

}  // namespace

TEST_CASE("counter streams are reproducible and independent of order") {
  auto a = shadow_draws(5, 42, 3);
  auto b = shadow_draws(5, 42, 3);
  auto c = shadow_draws(5, 42, 4);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a[i].z_d == b[i].z_d);
    CHECK(a[i].z_r == b[i].z_r);
  }
  CHECK(a[0].z_d != c[0].z_d);
  auto one = shadow_draws(1, 42, 3);
  auto many = shadow_draws(100000, 42, 3);
  CHECK(one[0].z_d == many[0].z_d);
  CHECK(one[0].z_b == many[0].z_b);
  CHECK(one[0].z_r == many[0].z_r);
}

TEST_CASE("first sample matches the shared draw") {
  RunConfig cfg = testing::table1();
  CellLayout layout = cfg.layout.build();
  PointModel m = evaluate_point({300.0, 100.0}, layout, SchemeKind::TwoHop, cfg.ctx);
  EnergyProfile caps = cfg.ctx.profile;
  for (std::uint64_t stream = 0; stream < 50; ++stream) {
    ShadowDraw z = shadow_draws(1, 9, stream)[0];
    double ed = std::exp(m.rf.d.mu + m.rf.d.sigma * z.z_d);
    double eb = std::exp(m.rf.b.mu + m.rf.b.sigma * z.z_b);
    double er = std::exp(m.rf.r.mu + m.rf.r.sigma * z.z_r);
    bool relay_ok = eb <= caps.e_b_max && er <= caps.e_r_max;
    bool direct_ok = ed <= caps.e_b_max;
    bool relays = relay_ok && (!direct_ok || eb + er <= ed);
    EmpiricalPoint e = sample_decision(m.rf, caps, Circuitry{}, 1, 9, stream);
    CHECK(e.p_rtx.value == (relays ? 1.0 : 0.0));
  }
}

TEST_CASE("shadow-free sampling equals the deterministic comparison") {
  RunConfig cfg = shadow_free();
  CellLayout layout = cfg.layout.build();
  Circuitry rule = Circuitry::of(cfg.ctx, SchemeKind::TwoHop);
  for (const auto& u : sector_grid(layout)) {
    if (std::abs(u.y) > 150.0) continue;
    PointModel m = evaluate_point(u, layout, SchemeKind::TwoHop, cfg.ctx);
    EmpiricalPoint e = sample_decision(m.rf, cfg.ctx.profile, rule, 50, 1, 0);
    double cd = rule.eta_b * m.rf.d.median();
    double cr = rule.eta_b * m.rf.b.median() + rule.eta_r * m.rf.r.median() + rule.dsp;
    bool direct_ok = m.rf.d.median() <= cfg.ctx.profile.e_b_max;
    bool relay_ok = m.rf.b.median() <= cfg.ctx.profile.e_b_max && m.rf.r.median() <= cfg.ctx.profile.e_r_max;
    bool relays = relay_ok && (!direct_ok || cr <= cd);
    CHECK(e.p_rtx.value == (relays ? 1.0 : 0.0));
    CHECK(e.e_rf.half_width == 0.0);
    double spent = relays ? cr : (direct_ok ? cd : 0.0);
    CHECK(e.e_rf.value == doctest::Approx(spent).epsilon(1e-12));
  }
}

TEST_CASE("relaying probability against an independent sampler") {
  RunConfig cfg = testing::table1();
  CellLayout layout(800.0, {{320.0, 350.0}}, 40.0);
  UserPos u{300.0, 200.0};
  PointModel m = evaluate_point(u, layout, SchemeKind::TwoHop, cfg.ctx);
  const std::size_t n = 100000;
  EmpiricalPoint e = sample_decision(u, layout, SchemeKind::TwoHop, cfg.ctx, n, 4);

  const EnergyProfile& p = cfg.ctx.profile;
  std::mt19937 rng(2024);
  std::lognormal_distribution<double> sd(m.rf.d.mu, m.rf.d.sigma), sb(m.rf.b.mu, m.rf.b.sigma),
      sr(m.rf.r.mu, m.rf.r.sigma);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double ed = sd(rng), eb = sb(rng), er = sr(rng);
    bool direct_ok = ed <= p.e_b_max;
    bool relay_ok = eb <= p.e_b_max && er <= p.e_r_max;
    if (relay_ok && (!direct_ok || p.eta_b * eb + p.eta_r * er + p.e_dsp_2hop <= p.eta_b * ed)) ++hits;
  }
  double ref = static_cast<double>(hits) / n;
  double se = std::sqrt(ref * (1.0 - ref) / n);
  CHECK(std::abs(e.p_rtx.value - ref) <= 3.0 * std::sqrt(2.0) * se + 1e-12);
}

TEST_CASE("interval width shrinks with the sample count") {
  RunConfig cfg = testing::table1();
  CellLayout layout = cfg.layout.build();
  PointModel m = evaluate_point({300.0, 100.0}, layout, SchemeKind::TwoHop, cfg.ctx);
  Circuitry rule = Circuitry::of(cfg.ctx, SchemeKind::TwoHop);
  EmpiricalPoint a = sample_decision(m.rf, cfg.ctx.profile, rule, 20000, 1);
  EmpiricalPoint b = sample_decision(m.rf, cfg.ctx.profile, rule, 40000, 1);
  CHECK(b.p_rtx.half_width / a.p_rtx.half_width == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
  CHECK(b.e_rf.half_width / a.e_rf.half_width == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("wilson interval") {
  Estimate e = wilson(0, 100);
  CHECK(e.value == 0.0);
  CHECK(e.half_width > 0.0);
  Estimate h = wilson(50, 100);
  CHECK(h.value == 0.5);
  CHECK(h.half_width == doctest::Approx(0.0962).epsilon(0.01));
  CHECK_THROWS(wilson(0, 0));
}

TEST_CASE("error ratios") {
  std::vector<PointComparison> pts(10);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i].model_p = pts[i].oracle_p = 0.1 * static_cast<double>(i);
    pts[i].model_e = pts[i].oracle_e = 0.1 * static_cast<double>(i);
    pts[i].model_relay = pts[i].oracle_relay = 0.01 * static_cast<double>(i);
  }
  Thresholds t{{0.25, 0.55}, {0.35}, {0.045}};
  ValidationReport same = error_ratios(pts, t);
  CHECK(same.zeta_r == 0.0);
  CHECK(same.zeta_e == 0.0);
  CHECK(same.zeta_i == 0.0);
  CHECK(same.breakdown.size() == 4);

  // Always relaying: every oracle point below the threshold is an error, over the oracle area.
  for (auto& p : pts) p.model_p = 1.0;
  ValidationReport always = error_ratios(pts, {{0.25}, {}, {}});
  CHECK(always.breakdown[0].reference == 7);
  CHECK(always.breakdown[0].mismatches == 3);
  CHECK(always.zeta_r == doctest::Approx(3.0 / 7.0));

  pts[0].covered = false;
  CHECK(error_ratios(pts, {{0.25}, {}, {}}).breakdown[0].mismatches == 2);
  CHECK_THROWS(error_ratios(pts, Thresholds{}));
}

TEST_CASE("shadow-free validation has no errors") {
  RunConfig cfg = shadow_free();
  CellLayout layout = cfg.layout.build();
  ValidationReport r = error_ratios(layout, SchemeKind::TwoHop, cfg.thresholds, cfg.ctx, 20, 1);
  CHECK(r.zeta_r == 0.0);
  CHECK(r.zeta_e == 0.0);
  CHECK(r.zeta_i == 0.0);
  CHECK(r.samples == 20);
}
