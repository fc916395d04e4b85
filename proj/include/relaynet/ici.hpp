#pragma once

#include <string>
#include <vector>

#include "relaynet/model.hpp"
#include "relaynet/rea.hpp"

namespace relaynet {

// Expected energy radiated by the relay, in joules (amplifier coefficient removed).
double expected_relay_rf(const ModelInputs& in);

// Average interference energy at distance dist from a relay radiating relay_energy on average.
double interference_at(double relay_energy, double dist, const ScenarioConfig& cfg);
double interference_at(double relay_energy, const UserPos& victim, const Point& relay, const ScenarioConfig& cfg);

struct GammaReport {
  double upsilon_gain = 0.0;
  double upsilon_loss = 0.0;
  double gamma = 0.0;  // +inf when upsilon_loss is 0
  std::size_t points = 0;
  std::size_t victims = 0;

  std::string regime() const;
};

// Victims of cells 2 to 7 served by DTx without cap. weight(c) is the loss contribution
// per joule of average radiated energy of a relay at c.
class VictimField {
 public:
  VictimField(const CellLayout& layout, const ModelContext& ctx);

  double weight(const Point& relay) const;
  std::size_t size() const { return coeff_.size() * centers_.size(); }

 private:
  ScenarioConfig cfg_;
  std::vector<Point> centers_;
  std::vector<Point> relative_;
  std::vector<double> coeff_;
};

// Per-point contributions to the gain and to the relay energy averages.
struct GammaPoint {
  double gain = 0.0;       // (E0 - EN) / E0
  double relay_rf = 0.0;   // expected radiated energy of the serving relay
  int relay = kNoRelay;
  bool covered = true;
};

GammaPoint gamma_point(const UserPos& u, const CellLayout& layout, int relay, SchemeKind scheme,
                       const ModelContext& ctx);

GammaReport gamma_from_points(const std::vector<GammaPoint>& pts, const std::vector<double>& relay_weights,
                              bool covered_only, std::size_t victims);

// assignment holds one scheme per sector_grid point.
GammaReport gamma(const CellLayout& layout, const std::vector<SchemeKind>& assignment, const ModelContext& ctx);
GammaReport gamma(const CellLayout& layout, SchemeKind scheme, const ModelContext& ctx);

}  // namespace relaynet
