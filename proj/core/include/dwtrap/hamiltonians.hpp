#pragma once

#include <span>

#include "dwtrap/hilbert_space.hpp"

namespace dwtrap {

enum class Regime {
    motional,
    red_sideband_well1,
    carrier_well1,
    red_sideband_both,
    extended_ld,
};

const char* regime_name(Regime r);

// Everything a Hamiltonian builder needs, in reduced units (energies already
// divided by hbar, so every rate is in s^-1; for scaled-time runs they are
// plain dimensionless numbers).
struct RegimeParams {
    double r1 = 0.0;       // ground-level tunneling R(1)/hbar
    double r2 = 0.0;       // excited-level tunneling R(2)/hbar
    double g = 0.0;        // electronic Rabi frequency
    double eta = 0.0;      // Lamb-Dicke parameter, in [0, 1)
    double phi_l = 0.0;    // laser phase, radians
    double omega0 = 0.0;   // local well frequency (motional term only)
    bool ld_scalar_factor = false;  // multiply the drive by exp(-eta^2)
};

void validate_params(const RegimeParams& p);

struct Hamiltonian {
    Regime regime;
    OperatorMatrix op;     // hermitian by construction
};

// Bare double-well motion: level energies (n - 1/2) omega0 plus the R(n)
// cross-well tunneling for each level.
Hamiltonian build_motional(const Basis& basis, const RegimeParams& p);

// First red sideband addressed to well 1, rotating frame, two local levels:
// tunneling + i eta g (sigma+ c1(1)+ c1(2) e^{i phi} - h.c.). The drive
// exchanges |level 2, down> with |level 1, up> inside well 1 and the
// excited-level tunneling leaks population to well 2.
Hamiltonian build_red_sideband_well1(const Basis& basis, const RegimeParams& p);

// Resonant carrier on well 1: tunneling + g (sigma+ e^{i phi} + h.c.)
// restricted to well-1 motional states (the laser only illuminates well 1).
Hamiltonian build_carrier_well1(const Basis& basis, const RegimeParams& p);

// Red sideband when the drive illuminates both wells symmetrically. Only the
// excited-level tunneling r2 is kept, matching the regime of interest.
Hamiltonian build_red_sideband_both(const Basis& basis, const RegimeParams& p);

// Expanded Lamb-Dicke drive on an N-level-per-well basis: the sideband
// ladder sigma+ sum_l sqrt(l) c1(l)+ c1(l+1) plus per-level tunneling.
// tunneling_rates[l-1] = R(l)/hbar; when empty, {r1, r2, 0, 0, ...} is used
// (no closed form fixes the rates above level 2, and the resonant sector
// never reaches them from the stock initial states anyway).
Hamiltonian build_extended_ld(const Basis& basis, const RegimeParams& p,
                              std::span<const double> tunneling_rates = {});

// Convenience parameter sets for scaled-time runs (grid variable w*t or g*t
// with the relevant scale normalized to 1).
RegimeParams scaled_sideband_params(double chi, double r1 = 0.0,
                                    double phi_l = -1.5707963267948966);
RegimeParams scaled_carrier_params(double chi_c, double r1 = 0.0,
                                   double phi_l = -1.5707963267948966);

}  // namespace dwtrap
