#include "dwtrap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dwtrap/errors.hpp"

namespace dwtrap {

namespace {

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[6] = {
    0.1252334085114689154, 0.3678314989981801937, 0.5873179542866174473,
    0.7699026741943046870, 0.9041172563704748566, 0.9815606342467192506,
};
constexpr double kWeights[6] = {
    0.2491470458134027850, 0.2334925365383548087, 0.2031674267230659217,
    0.1600783285433462263, 0.1069393259953184309, 0.0471753363865118272,
};

double gauss12(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double dx = half * kNodes[i];
        sum += kWeights[i] * (f(mid - dx) + f(mid + dx));
    }
    return half * sum;
}

struct Panel {
    double a, b, estimate;
};

}  // namespace

double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    if (!(spec.upper > spec.lower))
        throw domain_error("quadrature window must have lower < upper");
    if (!(spec.rel_tolerance > 0.0 && spec.rel_tolerance <= 1e-4))
        throw domain_error("quadrature rel_tolerance must lie in (0, 1e-4]");
    if (spec.max_subdivisions < 1)
        throw domain_error("quadrature max_subdivisions must be >= 1");

    const double total_len = spec.upper - spec.lower;
    // L1-style scale so that integrals that cancel to zero (orthogonality)
    // still terminate against a meaningful magnitude.
    const double l1 = gauss12([&f](double x) { return std::abs(f(x)); },
                              spec.lower, spec.upper);
    const double scale = std::max(l1, 1e-300);

    std::vector<Panel> stack{{spec.lower, spec.upper, gauss12(f, spec.lower, spec.upper)}};
    double result = 0.0;
    int splits = 0;
    double worst_rel = 0.0;

    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        const double left = gauss12(f, p.a, mid);
        const double right = gauss12(f, mid, p.b);
        const double err = std::abs(left + right - p.estimate);
        const double budget = spec.rel_tolerance * scale * ((p.b - p.a) / total_len);
        worst_rel = std::max(worst_rel, err / scale);
        if (err <= budget) {
            result += left + right;
            continue;
        }
        if ((p.b - p.a) < 1e-14 * total_len || ++splits > spec.max_subdivisions)
            throw numerical_error("quadrature did not converge", worst_rel,
                                  spec.rel_tolerance);
        stack.push_back({p.a, mid, left});
        stack.push_back({mid, p.b, right});
    }
    return result;
}

}  // namespace dwtrap
