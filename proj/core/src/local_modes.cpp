#include "dwtrap/local_modes.hpp"

#include <cmath>

#include "dwtrap/errors.hpp"

namespace dwtrap {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_level(int level) {
    if (level < 1 || level > max_mode_level)
        throw domain_error("mode level must lie in 1.." + std::to_string(max_mode_level));
}
}  // namespace

LocalMode local_mode(const TrapGeometry& geo, int well, int level) {
    if (well != 1 && well != 2) throw domain_error("well index must be 1 or 2");
    check_level(level);
    // well 1 sits at -x0, well 2 at +x0
    return {well, level, (well == 1 ? -geo.x0 : geo.x0), geo.delta_x};
}

double mode_value(const LocalMode& mode, double x) {
    check_level(mode.level);
    if (!(mode.width > 0.0)) throw domain_error("mode width must be positive");

    // psi_n(x) = sqrt(alpha) h_n(alpha (x - c)), alpha = 1/(sqrt(2) delta_x),
    // with h_n the unit-normalized Hermite functions. The recurrence keeps
    // each step normalized, so no factorial overflow at higher levels.
    const double alpha = 1.0 / (std::sqrt(2.0) * mode.width);
    const double y = alpha * (x - mode.center);
    double h_prev = 0.0;
    double h = std::pow(kPi, -0.25) * std::exp(-0.5 * y * y);   // h_0
    for (int n = 0; n < mode.level - 1; ++n) {
        const double h_next =
            y * std::sqrt(2.0 / (n + 1)) * h - std::sqrt(double(n) / (n + 1)) * h_prev;
        h_prev = h;
        h = h_next;
    }
    return std::sqrt(alpha) * h;
}

QuadratureSpec default_quadrature(const TrapGeometry& geo) {
    // both wells plus a 12 delta_x guard band: the modes are pure Gaussians
    // times polynomials, so the truncated tails are far below tolerance
    const double margin = geo.x0 + 12.0 * geo.delta_x;
    return {.lower = -margin, .upper = margin, .rel_tolerance = 1e-10,
            .max_subdivisions = 2000};
}

double overlap(const LocalMode& a, const LocalMode& b, const QuadratureSpec& spec) {
    return integrate([&a, &b](double x) { return mode_value(a, x) * mode_value(b, x); },
                     spec);
}

double coupling_element(int level, const TrapGeometry& geo, const QuadratureSpec& spec,
                        SubtractionScheme scheme) {
    check_level(level);
    const LocalMode left = local_mode(geo, 1, level);
    const LocalMode right = local_mode(geo, 2, level);
    const double m = geo.species.mass_kg;
    const double k = 0.5 * m * geo.omega0 * geo.omega0;   // harmonic 1/2 m w^2

    auto dv = [&](double x) {
        const double q = x * x - geo.x0 * geo.x0;
        const double v = geo.b * q * q;
        const double near1 = k * (x + geo.x0) * (x + geo.x0);
        if (scheme == SubtractionScheme::well1_parabola) return v - near1;
        const double near2 = k * (x - geo.x0) * (x - geo.x0);
        return v - 0.5 * (near1 + near2);
    };
    return integrate(
        [&](double x) { return mode_value(left, x) * dv(x) * mode_value(right, x); },
        spec);
}

}  // namespace dwtrap
