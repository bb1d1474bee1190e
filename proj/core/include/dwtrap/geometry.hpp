#pragma once

#include <string>

#include "dwtrap/constants.hpp"

namespace dwtrap {

// Double-well potential V(x) = b (x^2 - x0^2)^2 with minima at +-x0.
// Writing V = b x^4 - d x^2 + const gives d = 2 b x0^2; each well is locally
// harmonic with omega0 = sqrt(4 d / m). The ground-state width of a single
// well is delta_x = sqrt(hbar / (2 m omega0)) and the separation parameter
// u = x0^2 / delta_x^2 controls every tunneling quantity.
struct TrapGeometry {
    IonSpecies species;
    double omega0;      // local well frequency, s^-1
    double b;           // quartic coefficient, J / m^4
    double d;           // quadratic coefficient, J / m^2
    double x0;          // half the well separation, m
    double delta_x;     // single-well ground-state width, m
    double u;           // x0^2 / delta_x^2, dimensionless
    double barrier;     // central barrier height d^2 / (4 b), J
};

// Build the geometry from (omega0, u), from (omega0, x0), or from the raw
// potential coefficients (b, d). All three agree on the round trip.
TrapGeometry derive_geometry(const IonSpecies& species, double omega0, double u);
TrapGeometry geometry_from_x0(const IonSpecies& species, double omega0, double x0);
TrapGeometry geometry_from_coefficients(const IonSpecies& species, double b, double d);

// Leading-order tunneling rates between the two wells:
//   Omega1 = (3 omega0 u / 8) exp(-u/2)   ground-level doublet splitting
//   Omega2 = u * Omega1                   first-excited doublet splitting
// R_n = hbar Omega_n / 2 is the tunneling matrix element magnitude (J).
struct TunnelingRates {
    double omega1;      // s^-1
    double omega2;      // s^-1
    double r1;          // J
    double r2;          // J
};
TunnelingRates closed_form_rates(const TrapGeometry& geo);

// Validity checks for the two-level local-mode treatment. Defaults accept
// the stock parameter sets (u = 17.3 and u = 10.8 at eta = 0.1) and reject
// wells that are too shallow (u < 5).
struct RegimeThresholds {
    double max_epsilon = 1e-2;          // cross-well mode overlap
    double max_eta = 0.2;               // Lamb-Dicke parameter
    double max_rate_ratio = 0.1;        // |R1 / R2| = 1/u
    double max_energy_ratio = 0.1;      // R2 / E0(2)
};

struct RegimeReport {
    double epsilon;          // exp(-u/2) cross-well ground overlap
    double eta;
    double rate_ratio;       // Omega1 / Omega2 = 1/u
    double energy_ratio;     // R2 / ((3/2) hbar omega0)
    double chi;              // R2 / (hbar eta g), sideband tunneling/drive ratio
    double chi_carrier;      // R2 / (hbar g)
    bool epsilon_ok;
    bool eta_ok;
    bool rate_ratio_ok;
    bool energy_ratio_ok;
    bool all_ok;
    std::string flags() const;   // compact "eps=PASS;eta=PASS;..." summary
};

RegimeReport regime_report(const TrapGeometry& geo, double eta, double g,
                           const RegimeThresholds& thresholds = {});

}  // namespace dwtrap
