#include <doctest.h>

#include <cmath>
#include <random>

#include "common.hpp"
#include "relaynet/planner.hpp"

using namespace relaynet;

namespace {

ModelContext bare_context() {
  ModelContext ctx = testing::table1().ctx;
  for (LinkModel* l : {&ctx.scenario.links.direct, &ctx.scenario.links.backhaul, &ctx.scenario.links.access,
                       &ctx.scenario.links.interference}) {
    l->sigma_db = 0.0;
  }
  ctx.circuitry = false;
  return ctx;
}

}  // namespace

TEST_CASE("psi of a single shadow-free point") {
  ModelContext ctx = bare_context();
  CellLayout layout(800.0, {{500.0, 0.0}}, 800.0);
  auto grid = sector_grid(layout);
  REQUIRE(grid.size() == 2);
  PsiReport r = psi(layout, SchemeKind::TwoHop, ctx);
  REQUIRE(r.feasible);
  double ed = direct_energy0(grid[0], ctx.scenario, layout);
  double er = backhaul_energy0({500.0, 0.0}, ctx.scenario, layout) + access_energy0(grid[0], {500.0, 0.0}, ctx.scenario);
  CHECK(r.e_idle == 0.0);
  CHECK(r.psi == doctest::Approx(std::min(ed, er) / layout.sector_area()).epsilon(1e-12));
}

TEST_CASE("psi area law and idle energy") {
  RunConfig cfg = testing::table1();
  CellLayout layout(800.0, {{350.0, 250.0}, {350.0, -250.0}}, 800.0 / 30.0);
  PsiReport r = psi(layout, SchemeKind::TwoHop, cfg.ctx);
  REQUIRE(r.feasible);
  CHECK(r.e_idle == doctest::Approx(0.090 + 0.025 + 2 * 0.010));
  CHECK(r.psi == doctest::Approx((r.e_max + r.e_idle) / (std::sqrt(3.0) / 2.0 * 800.0 * 800.0)));
  CellLayout twice(1600.0, {}, 1600.0 / 30.0);
  double a1 = layout.sector_area(), a2 = twice.sector_area();
  CHECK(a2 == doctest::Approx(4.0 * a1));
}

TEST_CASE("psi reports the first coverage hole") {
  RunConfig cfg = testing::table1();
  CellLayout layout(3000.0, {}, 100.0);
  PsiReport r = psi(layout, SchemeKind::TwoHop, cfg.ctx);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.first_uncovered.has_value());
  CHECK(in_sector(*r.first_uncovered, 3000.0));
  CHECK(std::isinf(r.psi));
}

TEST_CASE("candidate positions") {
  auto c = candidate_positions(800.0, 50.0);
  CHECK(!c.empty());
  for (const auto& p : c) CHECK(in_sector(p, 800.0));
  CHECK_THROWS(candidate_positions(800.0, 0.0));
}

TEST_CASE("single-relay search matches brute-force enumeration") {
  ModelContext ctx = bare_context();
  CellLayout base(800.0, {}, 800.0 / 10.0);
  std::vector<Point> toy;
  for (int i = 0; i < 5; ++i) {
    for (int j = -2; j <= 2; ++j) {
      Point p{150.0 + 120.0 * i, 80.0 * j};
      if (in_sector(p, 800.0)) toy.push_back(p);
    }
  }
  OptimizeResult r = optimize_over(Objective::Psi, 1, base, toy, SchemeKind::TwoHop, ctx, false);
  REQUIRE(r.feasible);
  double best = std::numeric_limits<double>::infinity();
  Point arg{};
  for (const auto& p : toy) {
    PsiReport q = psi(base.with_relays({p}), SchemeKind::TwoHop, ctx);
    if (q.feasible && q.psi < best) {
      best = q.psi;
      arg = p;
    }
  }
  CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
  REQUIRE(r.relays.size() == 1);
  CHECK(psi(base.with_relays(r.relays), SchemeKind::TwoHop, ctx).psi == doctest::Approx(best).epsilon(1e-12));
  (void)arg;
}

TEST_CASE("optimized psi is no worse than sampled layouts") {
  RunConfig cfg = testing::table1();
  ModelContext ctx = cfg.ctx;
  CellLayout base(800.0, {}, 800.0 / 12.0);
  auto cand = candidate_positions(800.0, 100.0);
  OptimizeResult r = optimize_over(Objective::Psi, 2, base, cand, SchemeKind::TwoHop, ctx, true);
  REQUIRE(r.feasible);
  REQUIRE(r.relays.size() == 2);
  CHECK(r.relays[0].y >= 0.0);
  CHECK(r.relays[1].x == doctest::Approx(r.relays[0].x));
  CHECK(r.relays[1].y == doctest::Approx(-r.relays[0].y));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
  for (int k = 0; k < 20; ++k) {
    Point p = cand[pick(rng)];
    PsiReport q = psi(base.with_relays({p, {p.x, -p.y}}), SchemeKind::TwoHop, ctx);
    if (q.feasible) CHECK(r.value <= q.psi * (1.0 + 1e-12));
  }
}

TEST_CASE("shared-table search agrees with single relay counts") {
  RunConfig cfg = testing::table1();
  CellLayout base(800.0, {}, 800.0 / 10.0);
  auto cand = candidate_positions(800.0, 150.0);
  auto both = optimize_over(Objective::Psi, std::vector<int>{2, 3}, base, cand, SchemeKind::TwoHop, cfg.ctx, true);
  REQUIRE(both.size() == 2);
  OptimizeResult two = optimize_over(Objective::Psi, 2, base, cand, SchemeKind::TwoHop, cfg.ctx, true);
  REQUIRE(two.feasible);
  REQUIRE(both[0].feasible);
  CHECK(both[0].value == two.value);
  CHECK(both[0].relays[0] == two.relays[0]);
  CHECK(both[1].n_r == 3);
}

TEST_CASE("scheme map with no extra processing energy") {
  RunConfig cfg = testing::table1();
  cfg.ctx.profile.e_dsp_plus_pdf = 0.0;
  CellLayout layout(800.0, {{300.0, 200.0}, {300.0, -200.0}}, 800.0 / 12.0);
  SchemeMap map = scheme_map(layout, cfg.ctx, {SchemeKind::TwoHop, SchemeKind::EoPdf});
  REQUIRE(map.schemes.size() == map.points.size());
  CHECK(map.count(SchemeKind::EoPdf) + map.count(SchemeKind::TwoHop) == map.points.size());
  CHECK(map.count(SchemeKind::EoPdf) >= map.count(SchemeKind::TwoHop));
  CHECK(map.selected.gamma >= map.baseline.gamma * (1.0 - 1e-12));
}

TEST_CASE("scheme map region shrinks with extra processing energy") {
  RunConfig cfg = testing::table1();
  CellLayout layout(800.0, {{300.0, 200.0}, {300.0, -200.0}}, 800.0 / 12.0);
  std::vector<std::size_t> eo;
  std::vector<std::vector<SchemeKind>> maps;
  for (double dsp : {0.0, 0.01, 0.03, 0.05}) {
    cfg.ctx.profile.e_dsp_plus_pdf = dsp;
    SchemeMap m = scheme_map(layout, cfg.ctx, {SchemeKind::TwoHop, SchemeKind::EoPdf, SchemeKind::IrPdf});
    eo.push_back(m.count(SchemeKind::EoPdf));
    maps.push_back(m.schemes);
  }
  for (std::size_t k = 1; k < eo.size(); ++k) {
    CHECK(eo[k] <= eo[k - 1]);
    for (std::size_t i = 0; i < maps[k].size(); ++i) {
      if (maps[k][i] == SchemeKind::EoPdf) CHECK(maps[k - 1][i] == SchemeKind::EoPdf);
    }
  }
}
