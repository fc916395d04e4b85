#pragma once

#include <string>

#include "relaynet/geometry.hpp"
#include "relaynet/stats.hpp"

namespace relaynet {

enum class LinkLabel { Direct, Backhaul, Access, Interference };

const char* to_string(LinkLabel label);

// 10 log10(gamma) = A log10(d) + B + C log10(f_c / 5) + D log10((h_tx - 1)(h_rx - 1))
struct LinkModel {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double sigma_db = 0.0;
  double h_tx = 0.0;
  double h_rx = 0.0;
  LinkLabel label = LinkLabel::Direct;

  double alpha() const { return a / 10.0; }
  double sigma() const { return sigma_db_to_nat(sigma_db); }
  void validate() const;
};

struct LinkSet {
  std::string version;
  LinkModel direct;
  LinkModel backhaul;
  LinkModel access;
  LinkModel interference;
};

LinkSet load_link_parameters(const std::string& path);

double path_loss_db(const LinkModel& link, double dist, double f_c_ghz);
double path_loss(const LinkModel& link, double dist, double f_c_ghz);

// G(theta) = G_max - min(12 (theta / theta_3dB)^2, A_max) in dBi, or 0 dBi when omni.
struct AntennaPattern {
  bool omni = false;
  double g_max_db = 17.0;
  double theta_3db_deg = 65.0;
  double a_max_db = 20.0;
  bool on_backhaul = true;  // also apply the pattern to the BS-to-relay link

  double gain_db(double off_boresight_rad) const;
  double gain(double off_boresight_rad) const;
};

struct ScenarioConfig {
  double rate = 3.0;       // bits per channel use
  double noise = 0.0;      // watts
  double f_c = 2.6;        // GHz
  double p_out = 0.02;
  double min_distance = 1.0;  // meters, link distances are clamped to this
  LinkSet links;
  AntennaPattern antenna;

  void validate() const;
};

// Shadow-free RF energies, each wrapped with its link's shadowing.
struct RfEnergies {
  LogNormal d;
  LogNormal b;
  LogNormal r;
  bool degenerate = false;  // rate 0: all energies vanish
  bool has_relay = true;    // false when only the direct link exists
};

double bs_antenna_gain(const Point& target, const BaseStation& bs, const AntennaPattern& pattern);

double direct_energy0(const UserPos& u, const ScenarioConfig& cfg, const CellLayout& layout);
double backhaul_energy0(const Point& relay, const ScenarioConfig& cfg, const CellLayout& layout);
double access_energy0(const UserPos& u, const Point& relay, const ScenarioConfig& cfg);
// DTx energy from an arbitrary base station, used for victims of neighbor cells.
double direct_energy0_from(const Point& target, const BaseStation& bs, const ScenarioConfig& cfg);

RfEnergies rf_energies(const UserPos& u, const Point& relay, const ScenarioConfig& cfg, const CellLayout& layout);

}  // namespace relaynet
