#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "relaynet/model.hpp"

namespace relaynet {

// SplitMix64 stream keyed by (seed, stream index); independent of evaluation order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

// Consumed-energy accounting used by the sampled decision rule.
struct Circuitry {
  double eta_b = 1.0;
  double eta_r = 1.0;
  double dsp = 0.0;

  static Circuitry of(const ModelContext& ctx, SchemeKind scheme);
};

struct Estimate {
  double value = 0.0;
  double half_width = 0.0;  // 95% interval

  double lower() const { return value - half_width; }
  double upper() const { return value + half_width; }
};

struct EmpiricalPoint {
  std::size_t n = 0;
  Estimate p_rtx;     // relaying chosen (CR or ER)
  Estimate p_dtx;     // direct chosen (CD or ED)
  Estimate p_cr;
  Estimate p_cd;
  Estimate p_er;
  Estimate p_ed;
  Estimate p_outage;
  Estimate e_rf;        // consumed energy, zero in outage
  Estimate e_er;        // E[(eta_b E_b + eta_r E_r + dsp) 1{ER}]
  Estimate e_ed;        // E[eta_b E_d 1{ED}]
  Estimate e_relay_rf;  // E[E_r 1{relaying}], radiated
};

struct ShadowDraw {
  double z_d;
  double z_b;
  double z_r;
};

std::vector<ShadowDraw> shadow_draws(std::size_t n, std::uint64_t seed, std::uint64_t stream);

// One pass over shared draws, evaluated under several accounting rules.
std::vector<EmpiricalPoint> sample_decisions(const RfEnergies& rf, const EnergyProfile& caps,
                                             const std::vector<Circuitry>& rules, std::size_t n, std::uint64_t seed,
                                             std::uint64_t stream);

EmpiricalPoint sample_decision(const RfEnergies& rf, const EnergyProfile& caps, const Circuitry& rule,
                               std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

EmpiricalPoint sample_decision(const UserPos& u, const CellLayout& layout, SchemeKind scheme,
                               const ModelContext& ctx, std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

Estimate wilson(std::size_t hits, std::size_t n);

struct Thresholds {
  std::vector<double> p_t;
  std::vector<double> e_t;
  std::vector<double> e_t_r;
};

// Model and oracle values at one grid point.
struct PointComparison {
  bool covered = true;
  double model_p = 0.0;
  double oracle_p = 0.0;
  double model_e = 0.0;
  double oracle_e = 0.0;
  double model_relay = 0.0;
  double oracle_relay = 0.0;
};

struct ThresholdZeta {
  std::string kind;  // "R", "E" or "I"
  double threshold = 0.0;
  std::size_t mismatches = 0;
  std::size_t reference = 0;  // oracle region size
  double zeta = 0.0;          // NaN when the oracle region is empty
};

struct ValidationReport {
  double zeta_r = 0.0;
  double zeta_e = 0.0;
  double zeta_i = 0.0;
  std::vector<ThresholdZeta> breakdown;
  std::size_t points = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

ValidationReport error_ratios(const std::vector<PointComparison>& pts, const Thresholds& thresholds);

std::vector<PointComparison> compare_grid(const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx,
                                          std::size_t n, std::uint64_t seed);

ValidationReport error_ratios(const CellLayout& layout, SchemeKind scheme, const Thresholds& thresholds,
                              const ModelContext& ctx, std::size_t n, std::uint64_t seed);

}  // namespace relaynet
