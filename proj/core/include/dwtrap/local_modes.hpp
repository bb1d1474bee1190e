#pragma once

#include "dwtrap/geometry.hpp"
#include "dwtrap/quadrature.hpp"

namespace dwtrap {

// Harmonic eigenfunction of one well, used as the localized basis mode.
// Levels count from 1: level 1 = oscillator ground state, level 2 = first
// excited state. Well 1 sits at -x0, well 2 at +x0.
struct LocalMode {
    int well;        // 1 or 2
    int level;       // 1..max supported level
    double center;   // m
    double width;    // delta_x, m
};

inline constexpr int max_mode_level = 8;

LocalMode local_mode(const TrapGeometry& geo, int well, int level);

// Value of the normalized mode wavefunction at x (units m^-1/2). Hermite
// polynomials are evaluated with the normalized three-term recurrence
//   h_{n+1}(y) = y sqrt(2/(n+1)) h_n(y) - sqrt(n/(n+1)) h_{n-1}(y)
// so no raw factorials appear at any level.
double mode_value(const LocalMode& mode, double x);

// Default window: both wells plus a 12 delta_x guard band on each side.
QuadratureSpec default_quadrature(const TrapGeometry& geo);

// <a|b> by adaptive quadrature. Same well: delta_{nm} exactly. Across wells
// the ground-ground overlap is exp(-u/2); other combinations are of the same
// exponential order but carry polynomial prefactors in u.
double overlap(const LocalMode& a, const LocalMode& b, const QuadratureSpec& spec);

// Which harmonic reference is subtracted from the quartic inside the
// tunneling integral. The standard scheme subtracts well 1's parabola;
// the symmetrized variant subtracts the mean of both (study option only).
enum class SubtractionScheme { well1_parabola, symmetrized };

// Tunneling matrix element between the level-n modes of the two wells:
//   R(n) = integral phi_1(n)(x + x0) [V(x) - Vtilde(x)] phi_2(n)(x - x0) dx
// Returned signed, in J. The signs alternate with n (R(1) < 0 < R(2)); the
// closed-form rates in geometry.hpp quote magnitudes.
double coupling_element(int level, const TrapGeometry& geo, const QuadratureSpec& spec,
                        SubtractionScheme scheme = SubtractionScheme::well1_parabola);

}  // namespace dwtrap
