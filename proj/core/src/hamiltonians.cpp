#include "dwtrap/hamiltonians.hpp"

#include <cmath>

#include "dwtrap/errors.hpp"

namespace dwtrap {

namespace {
using complexd = std::complex<double>;

void add_tunneling(Eigen::MatrixXcd& m, const Basis& basis, int level, double rate) {
    if (rate == 0.0) return;
    for (Spin s : {Spin::up, Spin::down}) {
        m(basis.index(1, level, s), basis.index(2, level, s)) += rate;
        m(basis.index(2, level, s), basis.index(1, level, s)) += rate;
    }
}

// sideband coupling i A e^{i phi} sigma+ c(low)+ c(low+1) + h.c. inside one
// well: |low, up><low+1, down| exchanges a motional quantum for a spin flip
void add_sideband_drive(Eigen::MatrixXcd& m, const Basis& basis, int well, int low,
                        double amplitude, double phi) {
    const complexd amp = complexd(0.0, amplitude) * std::exp(complexd(0.0, phi));
    m(basis.index(well, low, Spin::up), basis.index(well, low + 1, Spin::down)) += amp;
    m(basis.index(well, low + 1, Spin::down), basis.index(well, low, Spin::up)) +=
        std::conj(amp);
}

void require_electronic(const Basis& basis) {
    if (!basis.has_electronic())
        throw domain_error("driven Hamiltonians need an electronic basis");
}

double drive_scale(const RegimeParams& p) {
    // optional exp(-eta^2) scalar from the exact Lamb-Dicke expansion;
    // dropped by default since it is 0.99 at eta = 0.1
    return p.ld_scalar_factor ? std::exp(-p.eta * p.eta) : 1.0;
}
}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::motional: return "motional";
        case Regime::red_sideband_well1: return "red_sideband_well1";
        case Regime::carrier_well1: return "carrier_well1";
        case Regime::red_sideband_both: return "red_sideband_both";
        case Regime::extended_ld: return "extended_ld";
    }
    return "unknown";
}

void validate_params(const RegimeParams& p) {
    if (!(p.eta >= 0.0 && p.eta < 1.0)) throw domain_error("eta must lie in [0, 1)");
    if (!(p.g >= 0.0)) throw domain_error("Rabi frequency g must be >= 0");
    if (!(p.omega0 >= 0.0)) throw domain_error("omega0 must be >= 0");
    if (!std::isfinite(p.r1) || !std::isfinite(p.r2) || !std::isfinite(p.phi_l))
        throw domain_error("regime parameters must be finite");
}

Hamiltonian build_motional(const Basis& basis, const RegimeParams& p) {
    validate_params(p);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    // level energies (l - 1/2) omega0 in both wells
    for (int i = 0; i < basis.size(); ++i)
        m(i, i) = (basis.state(i).level - 0.5) * p.omega0;
    if (basis.has_electronic()) {
        add_tunneling(m, basis, 1, p.r1);
        if (basis.levels_per_well() >= 2) add_tunneling(m, basis, 2, p.r2);
    } else {
        auto add = [&m, &basis](int level, double rate) {
            if (rate == 0.0) return;
            m(basis.index(1, level), basis.index(2, level)) += rate;
            m(basis.index(2, level), basis.index(1, level)) += rate;
        };
        add(1, p.r1);
        if (basis.levels_per_well() >= 2) add(2, p.r2);
    }
    return {Regime::motional, {basis, m, true}};
}

Hamiltonian build_red_sideband_well1(const Basis& basis, const RegimeParams& p) {
    validate_params(p);
    require_electronic(basis);
    if (basis.levels_per_well() < 2)
        throw domain_error("sideband regime needs at least 2 levels per well");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    add_tunneling(m, basis, 1, p.r1);
    add_tunneling(m, basis, 2, p.r2);
    add_sideband_drive(m, basis, 1, 1, p.eta * p.g * drive_scale(p), p.phi_l);
    return {Regime::red_sideband_well1, {basis, m, true}};
}

Hamiltonian build_carrier_well1(const Basis& basis, const RegimeParams& p) {
    validate_params(p);
    require_electronic(basis);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    add_tunneling(m, basis, 1, p.r1);
    if (basis.levels_per_well() >= 2) add_tunneling(m, basis, 2, p.r2);
    // resonant carrier g (sigma+ e^{i phi} + h.c.), well 1 only: the laser
    // spot does not reach well 2
    const complexd amp = p.g * std::exp(complexd(0.0, p.phi_l));
    for (int l = 1; l <= basis.levels_per_well(); ++l) {
        m(basis.index(1, l, Spin::up), basis.index(1, l, Spin::down)) += amp;
        m(basis.index(1, l, Spin::down), basis.index(1, l, Spin::up)) += std::conj(amp);
    }
    return {Regime::carrier_well1, {basis, m, true}};
}

Hamiltonian build_red_sideband_both(const Basis& basis, const RegimeParams& p) {
    validate_params(p);
    require_electronic(basis);
    if (basis.levels_per_well() < 2)
        throw domain_error("sideband regime needs at least 2 levels per well");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    // ground-level tunneling is negligible in this regime and dropped (r1
    // is ignored on purpose); only the excited doublet tunnels
    add_tunneling(m, basis, 2, p.r2);
    const double amp = p.eta * p.g * drive_scale(p);
    add_sideband_drive(m, basis, 1, 1, amp, p.phi_l);
    add_sideband_drive(m, basis, 2, 1, amp, p.phi_l);
    return {Regime::red_sideband_both, {basis, m, true}};
}

Hamiltonian build_extended_ld(const Basis& basis, const RegimeParams& p,
                              std::span<const double> tunneling_rates) {
    validate_params(p);
    require_electronic(basis);
    const int n = basis.levels_per_well();
    std::vector<double> rates(tunneling_rates.begin(), tunneling_rates.end());
    if (rates.empty()) {
        rates.assign(static_cast<size_t>(n), 0.0);
        rates[0] = p.r1;
        if (n >= 2) rates[1] = p.r2;
    }
    if (static_cast<int>(rates.size()) != n)
        throw domain_error("extended_ld needs one tunneling rate per level");

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (int l = 1; l <= n; ++l) add_tunneling(m, basis, l, rates[l - 1]);
    // sideband ladder with the sqrt(l) matrix elements of the position
    // operator; reduces entry-for-entry to the two-level drive at n = 2
    const double amp = p.eta * p.g * drive_scale(p);
    for (int l = 1; l < n; ++l)
        add_sideband_drive(m, basis, 1, l, amp * std::sqrt(double(l)), p.phi_l);
    return {Regime::extended_ld, {basis, m, true}};
}

RegimeParams scaled_sideband_params(double chi, double r1, double phi_l) {
    if (!std::isfinite(chi)) throw domain_error("chi must be finite");
    // scaled units: w = eta g = 1, so the grid variable is w t and
    // r2 = chi w = chi
    RegimeParams p;
    p.eta = 0.1;
    p.g = 10.0;
    p.r2 = chi;
    p.r1 = r1;
    p.phi_l = phi_l;
    return p;
}

RegimeParams scaled_carrier_params(double chi_c, double r1, double phi_l) {
    if (!std::isfinite(chi_c)) throw domain_error("chi_c must be finite");
    // scaled units: g = 1, grid variable g t, r2 = chi_c g = chi_c
    RegimeParams p;
    p.eta = 0.1;
    p.g = 1.0;
    p.r2 = chi_c;
    p.r1 = r1;
    p.phi_l = phi_l;
    return p;
}

}  // namespace dwtrap
