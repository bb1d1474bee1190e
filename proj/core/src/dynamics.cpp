#include "dwtrap/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "dwtrap/errors.hpp"

namespace dwtrap {

namespace {
using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};
}  // namespace

std::vector<double> TimeGrid::times() const {
    std::vector<double> t(static_cast<size_t>(num_points));
    for (int k = 0; k < num_points; ++k)
        t[static_cast<size_t>(k)] = t_start + (t_end - t_start) * k / (num_points - 1);
    return t;
}

double TimeGrid::step() const { return (t_end - t_start) / (num_points - 1); }

void validate_grid(const TimeGrid& grid) {
    if (grid.num_points < 2) throw domain_error("time grid needs at least 2 points");
    if (!(grid.t_end > grid.t_start)) throw domain_error("time grid needs t_end > t_start");
    if (!(grid.t_start >= 0.0)) throw domain_error("time grid needs t_start >= 0");
}

Trajectory propagate_expm(const Hamiltonian& h, const StateVector& psi0,
                          const TimeGrid& grid) {
    validate_grid(grid);
    if (!(psi0.basis == h.op.basis))
        throw domain_error("initial state and Hamiltonian bases differ");
    if (!is_hermitian(h.op.mat, 1e-9))
        throw numerical_error("propagate_expm needs a hermitian Hamiltonian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.op.mat);
    if (es.info() != Eigen::Success)
        throw numerical_error("eigendecomposition failed in propagate_expm");
    const auto& v = es.eigenvectors();
    const auto& ev = es.eigenvalues();
    const Eigen::VectorXcd c = v.adjoint() * psi0.amps;

    Trajectory traj{grid, h.regime, h.op.basis, Method::expm, {}};
    traj.states.reserve(static_cast<size_t>(grid.num_points));
    for (double t : grid.times()) {
        Eigen::VectorXcd phased(c.size());
        for (int i = 0; i < c.size(); ++i)
            phased(i) = std::exp(-kI * ev(i) * t) * c(i);
        traj.states.push_back(v * phased);
    }
    return traj;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

}  // namespace

Trajectory propagate_ode(const Hamiltonian& h, const StateVector& psi0,
                         const TimeGrid& grid, double tol) {
    validate_grid(grid);
    if (!(psi0.basis == h.op.basis))
        throw domain_error("initial state and Hamiltonian bases differ");
    if (!(tol >= 1e-13 && tol <= 1e-6))
        throw domain_error("ode tolerance must lie in [1e-13, 1e-6]");
    if (!is_hermitian(h.op.mat, 1e-9))
        throw numerical_error("propagate_ode needs a hermitian Hamiltonian");

    const Eigen::MatrixXcd& m = h.op.mat;
    auto deriv = [&m](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        return -kI * (m * y);
    };

    // Error control per unit step keeps the accumulated error near
    // tol * (t_end - t_start); the step is additionally capped so the cubic
    // Hermite dense output stays within the same budget
    // (interpolation error ~ (h |H|)^4 / 384).
    const double norm_bound = std::max(m.cwiseAbs().rowwise().sum().maxCoeff(), 1e-12);
    const double interp_cap = std::pow(384.0 * tol, 0.25) / norm_bound;

    const std::vector<double> times = grid.times();
    Trajectory traj{grid, h.regime, h.op.basis, Method::ode, {}};
    traj.states.reserve(times.size());

    double t = times.front();
    Eigen::VectorXcd y = psi0.amps;
    Eigen::VectorXcd f = deriv(y);
    traj.states.push_back(y);
    size_t next_out = 1;

    double hstep = std::min(interp_cap, (times.back() - t) / 100.0);
    const double h_min = 1e-14 * (times.back() - times.front());
    long iterations = 0;

    while (next_out < times.size()) {
        if (++iterations > 20'000'000)
            throw numerical_error("ode integrator exceeded its step budget");
        hstep = std::min(hstep, times.back() - t);

        const Eigen::VectorXcd k1 = f;
        const Eigen::VectorXcd k2 = deriv(y + hstep * (A21 * k1));
        const Eigen::VectorXcd k3 = deriv(y + hstep * (A31 * k1 + A32 * k2));
        const Eigen::VectorXcd k4 = deriv(y + hstep * (A41 * k1 + A42 * k2 + A43 * k3));
        const Eigen::VectorXcd k5 =
            deriv(y + hstep * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
        const Eigen::VectorXcd k6 =
            deriv(y + hstep * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
        const Eigen::VectorXcd y_new =
            y + hstep * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
        const Eigen::VectorXcd f_new = deriv(y_new);   // FSAL stage
        const Eigen::VectorXcd err_vec =
            hstep * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * f_new);

        double err = 0.0;
        for (int i = 0; i < y.size(); ++i) {
            const double denom = tol * (1.0 + std::max(std::abs(y(i)), std::abs(y_new(i))));
            const double e = std::abs(err_vec(i)) / denom;
            err += e * e;
        }
        err = std::sqrt(err / y.size());

        const bool ok = std::isfinite(err) && err <= hstep;
        if (ok) {
            // cubic Hermite interpolation for grid points inside the step
            while (next_out < times.size() && times[next_out] <= t + hstep + 1e-300) {
                const double s = (times[next_out] - t) / hstep;
                if (s >= 1.0 - 1e-12) {
                    traj.states.push_back(y_new);
                } else {
                    const double s2 = s * s, s3 = s2 * s;
                    traj.states.push_back((2 * s3 - 3 * s2 + 1) * y +
                                          (hstep * (s3 - 2 * s2 + s)) * f +
                                          (-2 * s3 + 3 * s2) * y_new +
                                          (hstep * (s3 - s2)) * f_new);
                }
                ++next_out;
            }
            t += hstep;
            y = y_new;
            f = f_new;
        }

        double factor = ok ? 0.9 * std::pow(hstep / std::max(err, 1e-300), 0.25) : 0.5;
        if (!std::isfinite(err)) factor = 0.1;
        hstep *= std::clamp(factor, 0.2, 5.0);
        hstep = std::min(hstep, interp_cap);
        if (hstep < h_min && next_out < times.size())
            throw numerical_error("ode step size underflow", err, tol);
    }
    return traj;
}

std::vector<CoefficientSet> closed_form_red_sideband(double chi, const TimeGrid& grid,
                                                     FormVariant form) {
    validate_grid(grid);
    if (!std::isfinite(chi)) throw domain_error("chi must be finite");
    const double xi2 = 1.0 + chi * chi;
    const double xi = std::sqrt(xi2);
    // printed variant carries the opposite (conjugate) phase on c12; the
    // corrected sign is fixed by direct propagation and by the chi -> 0
    // limit of the two-well solution
    const complexd c12_phase = (form == FormVariant::corrected) ? -kI : kI;

    std::vector<CoefficientSet> out;
    out.reserve(static_cast<size_t>(grid.num_points));
    for (double t : grid.times()) {
        const double c = std::cos(xi * t);
        const double s = std::sin(xi * t);
        CoefficientSet cs;
        cs.c11 = (c + xi2 - 1.0) / xi2;
        cs.c21 = 0.0;
        cs.c12 = c12_phase * (s / xi);
        cs.c22 = chi * (c - 1.0) / xi2;
        out.push_back(cs);
    }
    return out;
}

LambdaPair carrier_lambdas(double chi_c) {
    if (!(chi_c >= 0.0)) throw domain_error("chi_c must be >= 0");
    const double s = std::sqrt(1.0 + 4.0 * chi_c * chi_c);
    return {std::sqrt(std::max(0.0, (1.0 + 2.0 * chi_c * chi_c - s) / 2.0)),
            std::sqrt((1.0 + 2.0 * chi_c * chi_c + s) / 2.0)};
}

LambdaPair tunneling_lambdas(double chi) {
    if (!(chi >= 0.0)) throw domain_error("chi must be >= 0");
    const double d = std::sqrt(4.0 + chi * chi);
    return {std::sqrt(1.0 + (chi * chi - chi * d) / 2.0),
            std::sqrt(1.0 + (chi * chi + chi * d) / 2.0)};
}

std::vector<double> closed_form_carrier(double chi_c, const TimeGrid& grid) {
    validate_grid(grid);
    const auto [l1, l2] = carrier_lambdas(chi_c);
    const double denom = l2 * l2 - l1 * l1;   // = sqrt(1 + 4 chi_c^2) >= 1

    std::vector<double> out;
    out.reserve(static_cast<size_t>(grid.num_points));
    for (double t : grid.times()) {
        const double amp = (l1 * std::sin(l1 * t) - l2 * std::sin(l2 * t)) / denom;
        out.push_back(amp * amp);
    }
    return out;
}

namespace {

struct BothWellsLambdas {
    double l1, l2, d;
};

BothWellsLambdas both_wells_factors(double chi) {
    const auto [l1, l2] = tunneling_lambdas(chi);
    return {l1, l2, std::sqrt(4.0 + chi * chi)};
}

CoefficientSet both_wells_corrected(const BothWellsLambdas& lam, double t, double phi) {
    const double c1 = std::cos(lam.l1 * t), c2 = std::cos(lam.l2 * t);
    const double s1 = std::sin(lam.l1 * t), s2 = std::sin(lam.l2 * t);
    const complexd ph = std::exp(complexd(0.0, -phi));   // e^{-i phi_L}
    CoefficientSet cs;
    cs.c11 = (lam.l1 * c2 + lam.l2 * c1) / lam.d;
    cs.c21 = kI * (lam.l2 * s1 - lam.l1 * s2) / lam.d;
    cs.c12 = -ph * (s1 + s2) / lam.d;
    cs.c22 = -kI * ph * (c2 - c1) / lam.d;
    return cs;
}

CoefficientSet both_wells_printed(double chi, const BothWellsLambdas& lam, double t,
                                  double phi) {
    // textbook-style sums over j = 1, 2; the c21 bracket is reproduced
    // verbatim including its extra (chi^2+2) weight, and the 1/chi poles in
    // c21/c22 are why the corrected variant is the default
    const double d2 = lam.d * lam.d;                      // chi^2 + 4
    const double lams[2] = {lam.l1, lam.l2};
    const complexd ph = std::exp(complexd(0.0, -phi));
    CoefficientSet cs{0.0, 0.0, 0.0, 0.0};
    for (double lj : lams) {
        const double lj2 = lj * lj;
        const double c = std::cos(lj * t), s = std::sin(lj * t);
        cs.c11 += (chi * chi - lj2 + 3.0) * c / d2;
        cs.c21 += kI / (chi * d2) *
                  (lj * ((chi * chi + 2.0) * (chi * chi + 2.0) -
                         (chi * chi + 2.0) * lj2) * s);
        cs.c12 += ph / d2 * (lj * (lj2 - chi * chi - 3.0) * s);
        cs.c22 += -kI * ph / (chi * d2) * ((2.0 * lj2 - chi * chi - 2.0) * c);
    }
    return cs;
}

}  // namespace

std::vector<CoefficientSet> closed_form_both_wells(double chi, const TimeGrid& grid,
                                                   FormVariant form) {
    validate_grid(grid);
    if (!(chi >= 0.0)) throw domain_error("chi must be >= 0");
    const double phi = -1.5707963267948966;   // the solution is quoted at -pi/2
    const BothWellsLambdas lam = both_wells_factors(chi);
    // the printed sums divide by chi; below 1e-8 take the well-defined
    // Jaynes-Cummings limit (identical to the corrected forms there)
    const bool printed = form == FormVariant::printed && chi >= 1e-8;

    std::vector<CoefficientSet> out;
    out.reserve(static_cast<size_t>(grid.num_points));
    for (double t : grid.times())
        out.push_back(printed ? both_wells_printed(chi, lam, t, phi)
                              : both_wells_corrected(lam, t, phi));
    return out;
}

namespace {
Basis coefficient_basis() { return Basis(2, true); }
}  // namespace

Trajectory coefficient_trajectory(Regime regime, const std::vector<CoefficientSet>& cs,
                                  const TimeGrid& grid) {
    validate_grid(grid);
    if (static_cast<int>(cs.size()) != grid.num_points)
        throw domain_error("coefficient series length does not match the grid");
    const Basis basis = coefficient_basis();
    Trajectory traj{grid, regime, basis, Method::closed_form, {}};
    traj.states.reserve(cs.size());
    for (const CoefficientSet& c : cs) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
        v(basis.index(1, 1, Spin::up)) = c.c11;
        v(basis.index(2, 1, Spin::up)) = c.c21;
        v(basis.index(1, 2, Spin::down)) = c.c12;
        v(basis.index(2, 2, Spin::down)) = c.c22;
        traj.states.push_back(v);
    }
    return traj;
}

std::vector<CoefficientSet> extract_coefficients(const Trajectory& traj) {
    const Basis& b = traj.basis;
    if (!b.has_electronic() || b.levels_per_well() < 2)
        throw domain_error("trajectory basis does not contain the ansatz states");
    std::vector<CoefficientSet> out;
    out.reserve(traj.states.size());
    for (const auto& st : traj.states)
        out.push_back({st(b.index(1, 1, Spin::up)), st(b.index(2, 1, Spin::up)),
                       st(b.index(1, 2, Spin::down)), st(b.index(2, 2, Spin::down))});
    return out;
}

double max_state_deviation(const Trajectory& a, const Trajectory& b) {
    if (a.states.size() != b.states.size())
        throw domain_error("trajectories have different lengths");
    if (!(a.basis == b.basis))
        throw domain_error("trajectories live in different bases");
    double dev = 0.0;
    for (size_t k = 0; k < a.states.size(); ++k)
        dev = std::max(dev, (a.states[k] - b.states[k]).cwiseAbs().maxCoeff());
    return dev;
}

double max_norm_drift(const Trajectory& traj) {
    double drift = 0.0;
    for (const auto& st : traj.states)
        drift = std::max(drift, std::abs(st.squaredNorm() - 1.0));
    return drift;
}

}  // namespace dwtrap
