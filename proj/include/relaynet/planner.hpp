#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relaynet/ici.hpp"
#include "relaynet/model.hpp"

namespace relaynet {

struct PsiReport {
  bool feasible = false;
  double e_max = 0.0;
  double e_idle = 0.0;
  double psi = 0.0;
  double area = 0.0;
  UserPos worst_point;
  std::optional<UserPos> first_uncovered;
  std::vector<Point> relays;
  double d_b = 0.0;
};

double psi_idle_energy(int n_r, const ModelContext& ctx);

PsiReport psi(const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx);

enum class Objective { Psi, Gamma };

const char* to_string(Objective objective);

struct OptimizeOptions {
  double search_step = 25.0;
  bool symmetric = true;
  double grid_step = 0.0;  // 0 selects d_b / 30
};

struct OptimizeResult {
  bool feasible = false;
  Objective objective = Objective::Psi;
  double d_b = 0.0;
  int n_r = 0;
  double value = 0.0;  // psi (minimized) or gamma (maximized)
  std::vector<Point> relays;
  std::size_t layouts_evaluated = 0;
  std::size_t candidates = 0;
};

// Polar grid around the base station: radial step search_step, arc spacing about search_step.
std::vector<Point> candidate_positions(double d_b, double search_step);

// Exhaustive search over relay placements drawn from an explicit candidate list.
OptimizeResult optimize_over(Objective objective, int n_r, const CellLayout& base, const std::vector<Point>& candidates,
                             SchemeKind scheme, const ModelContext& ctx, bool symmetric);

OptimizeResult optimize(Objective objective, int n_r, double d_b, SchemeKind scheme, const ModelContext& ctx,
                        const OptimizeOptions& options);

// Several relay counts sharing one candidate evaluation.
std::vector<OptimizeResult> optimize_over(Objective objective, const std::vector<int>& n_r, const CellLayout& base,
                                          const std::vector<Point>& candidates, SchemeKind scheme,
                                          const ModelContext& ctx, bool symmetric);
std::vector<OptimizeResult> optimize(Objective objective, const std::vector<int>& n_r, double d_b, SchemeKind scheme,
                                     const ModelContext& ctx, const OptimizeOptions& options);

struct SchemeMap {
  std::vector<UserPos> points;
  std::vector<SchemeKind> schemes;
  GammaReport baseline;  // all points on the first relaying candidate
  GammaReport selected;

  std::size_t count(SchemeKind kind) const;
};

// Per-point selection maximizing Gamma with every other point held at the baseline,
// ties resolved in the order DTx, TwoHop, EoPdf, IrPdf.
SchemeMap scheme_map(const CellLayout& layout, const ModelContext& ctx, const std::vector<SchemeKind>& candidates);

}  // namespace relaynet
