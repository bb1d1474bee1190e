#pragma once

#include <complex>
#include <vector>

#include "dwtrap/hamiltonians.hpp"

namespace dwtrap {

// Grid variable is dimensionless scaled time: w*t for sideband runs
// (w = eta g) and g*t for carrier runs. Physical seconds only appear in the
// geometry module and in emitted metadata.
enum class TimeScale { sideband_w, carrier_g };

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int num_points = 0;
    TimeScale scale = TimeScale::sideband_w;

    std::vector<double> times() const;
    double step() const;
};

void validate_grid(const TimeGrid& grid);

enum class Method { expm, ode, closed_form };

struct Trajectory {
    TimeGrid grid;
    Regime regime;
    Basis basis;
    Method method;
    std::vector<Eigen::VectorXcd> states;
};

// Ground-truth propagator: H = V diag(ev) V+, psi(t) = V e^{-i ev t} V+ psi0.
// This is the oracle every closed form is checked against.
Trajectory propagate_expm(const Hamiltonian& h, const StateVector& psi0,
                          const TimeGrid& grid);

// Independent cross-check: adaptive embedded Runge-Kutta 4(5)
// (Dormand-Prince pair) on i dpsi/dt = H psi with dense cubic-Hermite output
// onto the grid points.
Trajectory propagate_ode(const Hamiltonian& h, const StateVector& psi0,
                         const TimeGrid& grid, double tol = 1e-10);

// Amplitudes of the single-excitation ansatz
//   [ c11 |g,1> + c21 |g,2> ] |up>  +  [ c12 |e,1> + c22 |e,2> ] |down>
// where |g,i> / |e,i> are the ground / first-excited modes of well i.
struct CoefficientSet {
    std::complex<double> c11, c21, c12, c22;
};

// Closed-form solutions. "corrected" delivers the exact solution of the
// corresponding Hamiltonian (verified against propagate_expm to round-off);
// "printed" keeps the historical textbook-style expressions, which differ in
// the phase of c12 (sideband, well 1) and in the c21 bracket (both wells).
enum class FormVariant { corrected, printed };

// Sideband, well 1, ground tunneling dropped (r1 = 0):
//   xi = sqrt(1 + chi^2)
//   c11 = [cos(xi wt) + xi^2 - 1] / xi^2
//   c12 = -i sin(xi wt) / xi          (printed variant: +i sin(xi wt)/xi)
//   c22 = chi [cos(xi wt) - 1] / xi^2
std::vector<CoefficientSet> closed_form_red_sideband(
    double chi, const TimeGrid& grid, FormVariant form = FormVariant::corrected);

// Frequencies rescaling the bare Rabi rate in the two beat-type solutions.
struct LambdaPair {
    double l1, l2;
};

// lambda_{1,2} = sqrt[(1 + 2 chi_c^2 -+ sqrt(1 + 4 chi_c^2)) / 2]; at
// chi_c = 1 these are the golden-ratio pair sqrt((3 -+ sqrt5)/2).
LambdaPair carrier_lambdas(double chi_c);

// lambda_{1,2} = sqrt[1 + (chi^2 -+ chi sqrt(chi^2+4))/2]; the product is
// exactly 1 and the difference is exactly chi.
LambdaPair tunneling_lambdas(double chi);

// Carrier P_down series:
//   P = [(lambda1 sin(lambda1 gt) - lambda2 sin(lambda2 gt)) /
//        (lambda2^2 - lambda1^2)]^2
std::vector<double> closed_form_carrier(double chi_c, const TimeGrid& grid);

// Sideband on both wells: with D = sqrt(chi^2 + 4) and
// lambda_{1,2} = sqrt[1 + (chi^2 -+ chi D)/2] (so lambda1 lambda2 = 1):
//   c11 = [lambda1 cos(lambda2 wt) + lambda2 cos(lambda1 wt)] / D
//   c21 = i [lambda2 sin(lambda1 wt) - lambda1 sin(lambda2 wt)] / D
//   c12 = -i [sin(lambda1 wt) + sin(lambda2 wt)] / D
//   c22 = [cos(lambda2 wt) - cos(lambda1 wt)] / D
// The printed c21 bracket carries a spurious (chi^2+2) factor and a 1/chi
// pole; the corrected forms are pole-free for every chi >= 0. The printed
// variant falls back to the chi -> 0 limit below 1e-8 to avoid the pole.
std::vector<CoefficientSet> closed_form_both_wells(
    double chi, const TimeGrid& grid, FormVariant form = FormVariant::corrected);

// Lift coefficient series into a full dim-8 Trajectory (method closed_form),
// and project a trajectory back onto the ansatz slots.
Trajectory coefficient_trajectory(Regime regime, const std::vector<CoefficientSet>& cs,
                                  const TimeGrid& grid);
std::vector<CoefficientSet> extract_coefficients(const Trajectory& traj);

// Diagnostics shared by tests and emitted metadata.
double max_state_deviation(const Trajectory& a, const Trajectory& b);
double max_norm_drift(const Trajectory& traj);

}  // namespace dwtrap
