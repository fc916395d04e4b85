#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "relaynet/config.hpp"

namespace testing {

inline relaynet::RunConfig table1() {
  static const relaynet::RunConfig cfg = relaynet::load_run_config(std::string(RELAYNET_CONFIG_DIR) + "/table1.yaml");
  return cfg;
}

// |a - b| relative to the larger magnitude.
inline bool close(double a, double b, double rel) {
  double m = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * (m > 0.0 ? m : 1.0);
}

// A sample mean of n draws cannot resolve events rarer than about 3/n; bound is the
// largest value the variable can take.
inline double resolution(std::size_t n, double bound) { return 3.0 / static_cast<double>(n) * bound; }

}  // namespace testing
