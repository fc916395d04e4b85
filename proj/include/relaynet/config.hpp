#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relaynet/model.hpp"
#include "relaynet/oracle.hpp"
#include "relaynet/planner.hpp"

namespace relaynet {

struct LayoutSpec {
  double d_b = 800.0;
  std::vector<Point> relays;
  double grid_step = 0.0;  // 0 selects d_b / 30

  CellLayout build() const;
};

struct OracleSettings {
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
};

struct OptimizeSpec {
  Objective objective = Objective::Psi;
  std::vector<int> n_r{2};
  std::vector<double> d_b;  // empty: the layout radius
  double search_step = 25.0;
  bool symmetric = true;
};

struct SchemeMapSpec {
  std::vector<SchemeKind> candidates{SchemeKind::TwoHop, SchemeKind::EoPdf, SchemeKind::IrPdf};
};

struct RunConfig {
  ModelContext ctx;
  SchemeKind scheme = SchemeKind::TwoHop;
  LayoutSpec layout;
  Thresholds thresholds;
  OracleSettings oracle;
  OptimizeSpec optimize;
  SchemeMapSpec scheme_map;
  std::string link_version;
  std::string fingerprint;  // raw bytes of the config and parameter files
};

// Table I defaults with the shipped link parameter file.
RunConfig default_run_config();
ScenarioConfig default_scenario();
std::string default_link_file();

RunConfig load_run_config(const std::string& path);

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace relaynet
