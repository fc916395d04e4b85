#pragma once

#include <functional>
#include <string>

namespace relaynet {

struct EnergyProfile {
  double e_b_max = 1.0;   // joules
  double e_r_max = 0.5;
  double eta_b = 2.66;
  double eta_r = 3.1;
  double e_b_tx_plus_u_rx = 0.090;
  double e_b_idle = 0.025;
  double e_r_idle = 0.010;
  double e_dsp_2hop = 0.0;
  double e_dsp_plus_pdf = 0.0;

  void validate() const;
};

enum class SchemeKind { DTx, TwoHop, EoPdf, IrPdf };

const char* to_string(SchemeKind kind);
SchemeKind scheme_from_string(const std::string& name);

// Processing energy spent by the relay path of a scheme (zero for DTx).
double relay_dsp(SchemeKind kind, const EnergyProfile& profile);

struct TransmitEnergies {
  double bs = 0.0;
  double relay = 0.0;
};

double total_energy(SchemeKind kind, const TransmitEnergies& rf, const EnergyProfile& profile, int n_r);

// Linear power gains (antenna gain over path loss), shadowing excluded.
struct ChannelGains {
  double g_d = 0.0;
  double g_b = 0.0;
  double g_r = 0.0;
};

double dtx_energy(const ChannelGains& g, double rate, double noise);
TransmitEnergies two_hop_energies(const ChannelGains& g, double rate, double noise);

enum class PdfObjective { Total, RelayOnly };

// Half-duplex partial decode-forward. Phase 1: BS sends m_r (relay decodes it) superposed with m_d.
// Phase 2: relay resends m_r while the BS sends m_d; the user decodes both jointly.
struct PdfAllocation {
  bool feasible = false;
  double rate_relayed = 0.0;  // bits per channel use carried by m_r
  double e1_relayed = 0.0;    // BS phase-1 energy on m_r
  double e1_direct = 0.0;     // BS phase-1 energy on m_d
  double e2_direct = 0.0;     // BS phase-2 energy
  double e_relay = 0.0;       // relay phase-2 energy

  double e_bs_phase1() const { return e1_relayed + e1_direct; }
  double e_bs_phase2() const { return e2_direct; }
  double bs_total() const { return e1_relayed + e1_direct + e2_direct; }
  double transmit_total() const { return bs_total() + e_relay; }
};

// Largest violation of the rate constraints (in bits per channel use), 0 when satisfied.
double pdf_rate_violation(const PdfAllocation& a, const ChannelGains& g, double rate, double noise);

// Largest objective improvement found by feasible coordinate perturbations of relative size h.
double pdf_local_optimality_gap(const PdfAllocation& a, PdfObjective objective, const ChannelGains& g, double rate,
                                double noise, const EnergyProfile& caps, double h = 1e-3);

PdfAllocation pdf_allocation(PdfObjective objective, const ChannelGains& g, double rate, double noise,
                             const EnergyProfile& caps);

using PdfAllocator =
    std::function<PdfAllocation(PdfObjective, const ChannelGains&, double rate, double noise, const EnergyProfile&)>;

PdfAllocator default_pdf_allocator();

}  // namespace relaynet
