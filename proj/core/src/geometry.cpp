#include "dwtrap/geometry.hpp"

#include <cmath>

#include "dwtrap/errors.hpp"

namespace dwtrap {

namespace {

void check_species(const IonSpecies& s) {
    if (!(s.mass_kg > 0.0)) throw domain_error("ion mass must be positive");
}

TrapGeometry assemble(const IonSpecies& species, double omega0, double x0) {
    // delta_x^2 = hbar / (2 m omega0); d follows from omega0 = sqrt(4d/m)
    // and b from the minimum condition x0^2 = d / (2b).
    const double m = species.mass_kg;
    const double delta_x = std::sqrt(constants::hbar / (2.0 * m * omega0));
    const double d = m * omega0 * omega0 / 4.0;
    const double b = d / (2.0 * x0 * x0);
    TrapGeometry geo;
    geo.species = species;
    geo.omega0 = omega0;
    geo.b = b;
    geo.d = d;
    geo.x0 = x0;
    geo.delta_x = delta_x;
    geo.u = (x0 * x0) / (delta_x * delta_x);
    geo.barrier = d * d / (4.0 * b);       // = b x0^4
    return geo;
}

}  // namespace

TrapGeometry derive_geometry(const IonSpecies& species, double omega0, double u) {
    check_species(species);
    if (!(omega0 > 0.0)) throw domain_error("omega0 must be positive");
    if (!(u > 0.0)) throw domain_error("separation parameter u must be positive");
    const double delta_x = std::sqrt(constants::hbar / (2.0 * species.mass_kg * omega0));
    return assemble(species, omega0, std::sqrt(u) * delta_x);
}

TrapGeometry geometry_from_x0(const IonSpecies& species, double omega0, double x0) {
    check_species(species);
    if (!(omega0 > 0.0)) throw domain_error("omega0 must be positive");
    if (!(x0 > 0.0)) throw domain_error("well position x0 must be positive");
    return assemble(species, omega0, x0);
}

TrapGeometry geometry_from_coefficients(const IonSpecies& species, double b, double d) {
    check_species(species);
    if (!(b > 0.0) || !(d > 0.0))
        throw domain_error("potential coefficients b, d must be positive");
    const double omega0 = std::sqrt(4.0 * d / species.mass_kg);
    const double x0 = std::sqrt(d / (2.0 * b));
    return assemble(species, omega0, x0);
}

TunnelingRates closed_form_rates(const TrapGeometry& geo) {
    TunnelingRates r;
    r.omega1 = (3.0 * geo.omega0 * geo.u / 8.0) * std::exp(-geo.u / 2.0);
    r.omega2 = geo.u * r.omega1;
    r.r1 = constants::hbar * r.omega1 / 2.0;
    r.r2 = constants::hbar * r.omega2 / 2.0;
    return r;
}

RegimeReport regime_report(const TrapGeometry& geo, double eta, double g,
                           const RegimeThresholds& thresholds) {
    if (!(eta >= 0.0 && eta < 1.0)) throw domain_error("eta must lie in [0, 1)");
    if (!(g > 0.0)) throw domain_error("Rabi frequency g must be positive");

    const TunnelingRates rates = closed_form_rates(geo);
    const double e0_excited = 1.5 * constants::hbar * geo.omega0;

    RegimeReport rep;
    rep.epsilon = std::exp(-geo.u / 2.0);
    rep.eta = eta;
    rep.rate_ratio = 1.0 / geo.u;                 // Omega1/Omega2
    rep.energy_ratio = rates.r2 / e0_excited;
    rep.chi = rates.r2 / (constants::hbar * eta * g);
    rep.chi_carrier = rates.r2 / (constants::hbar * g);
    rep.epsilon_ok = rep.epsilon < thresholds.max_epsilon;
    rep.eta_ok = eta <= thresholds.max_eta;
    rep.rate_ratio_ok = rep.rate_ratio < thresholds.max_rate_ratio;
    rep.energy_ratio_ok = rep.energy_ratio < thresholds.max_energy_ratio;
    rep.all_ok = rep.epsilon_ok && rep.eta_ok && rep.rate_ratio_ok && rep.energy_ratio_ok;
    return rep;
}

std::string RegimeReport::flags() const {
    auto tag = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    return std::string("eps=") + tag(epsilon_ok) + ";eta=" + tag(eta_ok) +
           ";rate=" + tag(rate_ratio_ok) + ";energy=" + tag(energy_ratio_ok);
}

}  // namespace dwtrap
