#pragma once

#include <functional>

namespace dwtrap {

// Integration window and tolerances for the mode-overlap integrals.
struct QuadratureSpec {
    double lower;
    double upper;
    double rel_tolerance = 1e-10;
    int max_subdivisions = 2000;
};

// Adaptive composite Gauss-Legendre integration: 12-point panels, bisected
// until the panel estimate is stable. Throws numerical_error (with the
// achieved estimate attached) if the subdivision budget runs out.
double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec);

}  // namespace dwtrap
