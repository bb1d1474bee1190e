#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "dwtrap/dynamics.hpp"
#include "dwtrap/errors.hpp"

using namespace dwtrap;
using complexd = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

TimeGrid sideband_grid(double t_end = 6.0 * kPi, int n = 2001) {
    return {0.0, t_end, n, TimeScale::sideband_w};
}
}  // namespace

TEST_CASE("time grid basics") {
    const TimeGrid g{0.0, 2.0, 5, TimeScale::carrier_g};
    const auto t = g.times();
    REQUIRE(t.size() == 5);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == doctest::Approx(2.0));
    CHECK(t[1] == doctest::Approx(0.5));
    CHECK(g.step() == doctest::Approx(0.5));

    CHECK_THROWS_AS(validate_grid(TimeGrid{0.0, 1.0, 1, TimeScale::sideband_w}),
                    domain_error);
    CHECK_THROWS_AS(validate_grid(TimeGrid{1.0, 1.0, 10, TimeScale::sideband_w}),
                    domain_error);
    CHECK_THROWS_AS(validate_grid(TimeGrid{-0.5, 1.0, 10, TimeScale::sideband_w}),
                    domain_error);
}

TEST_CASE("expm propagator matches the two-level Rabi solution") {
    // carrier on a single level pair: e^{-iHt} = cos(gt) - i sin(gt) H/g
    const Basis b(1, true);
    RegimeParams p;
    p.g = 3.0;
    p.phi_l = 0.4;
    const auto h = build_carrier_well1(b, p);
    const StateVector psi0 = basis_ket(b, 1, 1, Spin::down);
    const TimeGrid grid{0.0, 5.0, 11, TimeScale::carrier_g};
    const auto traj = propagate_expm(h, psi0, grid);
    const auto times = grid.times();
    for (size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const complexd up_expect =
            complexd(0.0, -1.0) * std::sin(p.g * t) * std::exp(complexd(0.0, p.phi_l));
        const complexd down_expect = std::cos(p.g * t);
        CHECK(std::abs(traj.states[k](b.index(1, 1, Spin::up)) - up_expect) < 1e-12);
        CHECK(std::abs(traj.states[k](b.index(1, 1, Spin::down)) - down_expect) <
              1e-12);
    }
    CHECK(max_norm_drift(traj) < 1e-13);
}

TEST_CASE("expm rejects bad input") {
    const Basis b(1, true);
    const TimeGrid grid{0.0, 1.0, 3, TimeScale::sideband_w};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(b.size(), b.size());
    m(0, 1) = 1.0;   // deliberately non-hermitian
    const Hamiltonian broken{Regime::motional, {b, m, false}};
    CHECK_THROWS_AS(propagate_expm(broken, basis_ket(b, 1, 1, Spin::up), grid),
                    numerical_error);

    RegimeParams p;
    p.g = 1.0;
    const auto h = build_carrier_well1(b, p);
    const StateVector other = basis_ket(Basis(2, true), 1, 1, Spin::up);
    CHECK_THROWS_AS(propagate_expm(h, other, grid), domain_error);
}

TEST_CASE("ode propagator tracks expm to round-off scale") {
    const Basis b(2, true);
    const auto h = build_red_sideband_well1(b, scaled_sideband_params(1.0));
    const StateVector psi0 = basis_ket(b, 1, 1, Spin::up);
    const TimeGrid grid = sideband_grid();
    const auto ref = propagate_expm(h, psi0, grid);
    const auto ode = propagate_ode(h, psi0, grid);
    CHECK(max_state_deviation(ref, ode) < 1.0e-9);
    CHECK(max_norm_drift(ode) < 1.0e-9);

    CHECK_THROWS_AS(propagate_ode(h, psi0, grid, 1e-5), domain_error);
    CHECK_THROWS_AS(propagate_ode(h, psi0, grid, 1e-14), domain_error);
}

TEST_CASE("closed forms start from the right initial condition") {
    const TimeGrid grid = sideband_grid(2.0 * kPi, 5);
    for (FormVariant v : {FormVariant::corrected, FormVariant::printed}) {
        for (double chi : {0.0, 0.7, 2.0}) {
            const auto side = closed_form_red_sideband(chi, grid, v);
            CHECK(std::abs(side[0].c11 - 1.0) < 1e-14);
            CHECK(std::abs(side[0].c21) < 1e-14);
            CHECK(std::abs(side[0].c12) < 1e-14);
            CHECK(std::abs(side[0].c22) < 1e-14);
            const auto both = closed_form_both_wells(chi, grid, v);
            CHECK(std::abs(both[0].c11 - 1.0) < 1e-14);
            CHECK(std::abs(both[0].c21) < 1e-14);
            CHECK(std::abs(both[0].c12) < 1e-14);
            CHECK(std::abs(both[0].c22) < 1e-14);
        }
        const auto carrier = closed_form_carrier(1.0, grid);
        CHECK(carrier[0] == 0.0);
    }
}

TEST_CASE("lambda pair identities") {
    for (double chi : {0.0, 0.3, 1.0, 2.5}) {
        const LambdaPair lp = tunneling_lambdas(chi);
        CHECK(lp.l1 * lp.l2 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(lp.l2 - lp.l1 == doctest::Approx(chi).epsilon(1e-13));
        CHECK(lp.l1 + lp.l2 ==
              doctest::Approx(std::sqrt(chi * chi + 4.0)).epsilon(1e-14));
    }
    for (double chi_c : {0.0, 0.4, 1.0, 3.0}) {
        const LambdaPair lp = carrier_lambdas(chi_c);
        CHECK(lp.l2 * lp.l2 - lp.l1 * lp.l1 ==
              doctest::Approx(std::sqrt(1.0 + 4.0 * chi_c * chi_c)).epsilon(1e-13));
        CHECK(lp.l2 - lp.l1 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(lp.l1 * lp.l2 == doctest::Approx(chi_c * chi_c).epsilon(1e-12));
    }
    // chi_c = 1 gives the golden-ratio pair
    const LambdaPair golden = carrier_lambdas(1.0);
    CHECK(std::abs(golden.l1 - std::sqrt((3.0 - std::sqrt(5.0)) / 2.0)) < 1e-12);
    CHECK(std::abs(golden.l2 - std::sqrt((3.0 + std::sqrt(5.0)) / 2.0)) < 1e-12);
    CHECK(std::abs(golden.l1 - (std::sqrt(5.0) - 1.0) / 2.0) < 1e-12);

    CHECK_THROWS_AS(tunneling_lambdas(-1.0), domain_error);
    CHECK_THROWS_AS(carrier_lambdas(-0.5), domain_error);
}

TEST_CASE("well-1 sideband closed form vs expm") {
    const TimeGrid grid = sideband_grid();
    for (double chi : {0.0, 0.5, 1.0, 2.0}) {
        const auto h = build_red_sideband_well1(Basis(2, true),
                                                scaled_sideband_params(chi));
        const auto ref =
            propagate_expm(h, basis_ket(h.op.basis, 1, 1, Spin::up), grid);
        const auto cs = closed_form_red_sideband(chi, grid);
        const auto closed =
            coefficient_trajectory(Regime::red_sideband_well1, cs, grid);
        CHECK(max_state_deviation(ref, closed) < 1e-12);
    }
}

TEST_CASE("well-1 sideband checkpoint state") {
    // chi = 1 quarter-revival: wt = pi sqrt2 / 4 lands on
    // (1/2, 0, -i/sqrt2, -1/2)
    const double wt = kPi * std::sqrt(2.0) / 4.0;
    const TimeGrid grid{0.0, wt, 2, TimeScale::sideband_w};
    const auto cs = closed_form_red_sideband(1.0, grid);
    CHECK(std::abs(cs[1].c11 - complexd(0.5)) < 1e-14);
    CHECK(std::abs(cs[1].c21) < 1e-14);
    CHECK(std::abs(cs[1].c12 - complexd(0.0, -1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(cs[1].c22 - complexd(-0.5)) < 1e-14);
}

TEST_CASE("printed well-1 variant differs only in the c12 phase") {
    const TimeGrid grid = sideband_grid(4.0 * kPi, 4001);
    const auto corrected = closed_form_red_sideband(1.0, grid);
    const auto printed = closed_form_red_sideband(1.0, grid, FormVariant::printed);
    double max_c12 = 0.0;
    for (size_t k = 0; k < corrected.size(); ++k) {
        CHECK(std::abs(printed[k].c11 - corrected[k].c11) < 1e-14);
        CHECK(std::abs(printed[k].c22 - corrected[k].c22) < 1e-14);
        // printed c12 is the complex conjugate, so the gap is 2|sin|/xi
        CHECK(std::abs(printed[k].c12 - std::conj(corrected[k].c12)) < 1e-14);
        max_c12 = std::max(max_c12, std::abs(printed[k].c12 - corrected[k].c12));
    }
    CHECK(max_c12 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("carrier closed form vs expm") {
    const TimeGrid grid{0.0, 12.0 * kPi, 4001, TimeScale::carrier_g};
    for (double chi_c : {0.0, 1.0}) {
        const auto h =
            build_carrier_well1(Basis(2, true), scaled_carrier_params(chi_c));
        const auto ref =
            propagate_expm(h, basis_ket(h.op.basis, 1, 2, Spin::up), grid);
        const auto closed = closed_form_carrier(chi_c, grid);
        const int det = h.op.basis.index(1, 2, Spin::down);
        double dev = 0.0;
        for (size_t k = 0; k < closed.size(); ++k)
            dev = std::max(dev, std::abs(closed[k] - std::norm(ref.states[k](det))));
        CHECK(dev < 1e-12);
    }
    // chi_c = 0 collapses to plain Rabi flopping sin^2(gt)
    const auto bare = closed_form_carrier(0.0, grid);
    const auto times = grid.times();
    for (size_t k = 0; k < bare.size(); ++k) {
        const double s = std::sin(times[k]);
        CHECK(std::abs(bare[k] - s * s) < 1e-13);
    }
}

TEST_CASE("both-well closed form vs expm") {
    const TimeGrid grid = sideband_grid();
    for (double chi : {0.0, 0.5, 1.0, 2.0}) {
        const auto h = build_red_sideband_both(Basis(2, true),
                                               scaled_sideband_params(chi));
        const auto ref =
            propagate_expm(h, basis_ket(h.op.basis, 1, 1, Spin::up), grid);
        const auto cs = closed_form_both_wells(chi, grid);
        const auto closed =
            coefficient_trajectory(Regime::red_sideband_both, cs, grid);
        CHECK(max_state_deviation(ref, closed) < 1e-12);
    }
}

TEST_CASE("printed both-well variant deviates through the c21 bracket") {
    const TimeGrid grid = sideband_grid();
    const auto h =
        build_red_sideband_both(Basis(2, true), scaled_sideband_params(1.0));
    const auto ref = propagate_expm(h, basis_ket(h.op.basis, 1, 1, Spin::up), grid);
    const auto printed = coefficient_trajectory(
        Regime::red_sideband_both,
        closed_form_both_wells(1.0, grid, FormVariant::printed), grid);
    const double dev = max_state_deviation(ref, printed);
    CHECK(dev == doctest::Approx(0.894069).epsilon(1e-4));

    // everything except c21 agrees with the corrected solution
    const auto corrected = closed_form_both_wells(1.0, grid);
    const auto printed_cs = closed_form_both_wells(1.0, grid, FormVariant::printed);
    for (size_t k = 0; k < corrected.size(); ++k) {
        CHECK(std::abs(printed_cs[k].c11 - corrected[k].c11) < 1e-13);
        CHECK(std::abs(printed_cs[k].c12 - corrected[k].c12) < 1e-13);
        CHECK(std::abs(printed_cs[k].c22 - corrected[k].c22) < 1e-13);
    }

    // below the pole guard the printed variant falls back to the corrected
    // expressions, so chi = 0 agrees exactly
    const auto tiny_p = closed_form_both_wells(0.0, grid, FormVariant::printed);
    const auto tiny_c = closed_form_both_wells(0.0, grid);
    for (size_t k = 0; k < tiny_p.size(); ++k)
        CHECK(std::abs(tiny_p[k].c21 - tiny_c[k].c21) == 0.0);
}

TEST_CASE("coefficient trajectory round trip") {
    const TimeGrid grid = sideband_grid(2.0 * kPi, 51);
    const auto cs = closed_form_both_wells(1.3, grid);
    const auto traj = coefficient_trajectory(Regime::red_sideband_both, cs, grid);
    CHECK(traj.method == Method::closed_form);
    CHECK(traj.basis.size() == 8);
    const auto back = extract_coefficients(traj);
    REQUIRE(back.size() == cs.size());
    for (size_t k = 0; k < cs.size(); ++k) {
        CHECK(back[k].c11 == cs[k].c11);
        CHECK(back[k].c21 == cs[k].c21);
        CHECK(back[k].c12 == cs[k].c12);
        CHECK(back[k].c22 == cs[k].c22);
    }

    const std::vector<CoefficientSet> wrong(3);
    CHECK_THROWS_AS(coefficient_trajectory(Regime::red_sideband_both, wrong, grid),
                    domain_error);
}

TEST_CASE("trajectory diagnostics reject mismatched input") {
    const Basis b(2, true);
    const auto h = build_red_sideband_well1(b, scaled_sideband_params(1.0));
    const TimeGrid g1 = sideband_grid(1.0, 5);
    const TimeGrid g2 = sideband_grid(1.0, 7);
    const auto a = propagate_expm(h, basis_ket(b, 1, 1, Spin::up), g1);
    const auto c = propagate_expm(h, basis_ket(b, 1, 1, Spin::up), g2);
    CHECK_THROWS_AS(max_state_deviation(a, c), domain_error);

    const auto hm = build_motional(Basis(2, false), RegimeParams{});
    const auto mtraj = propagate_expm(hm, basis_ket(Basis(2, false), 1, 1), g1);
    CHECK_THROWS_AS(max_state_deviation(a, mtraj), domain_error);
    CHECK_THROWS_AS(extract_coefficients(mtraj), domain_error);
}
