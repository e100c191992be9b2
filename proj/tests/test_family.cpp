#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "canal/ellipse_kappa.hpp"
#include "canal/errors.hpp"
#include "canal/family.hpp"
#include "canal/quadrature.hpp"
#include "oracles.hpp"

using namespace canal;

TEST_CASE("kappa_dot closed form") {
    CHECK(kappa_dot(0.0) == 0.0);
    CHECK(std::abs(kappa_dot(M_PI / 2)) < 1e-15);
    CHECK(kappa_dot(M_PI / 4) ==
          doctest::Approx(-9.0 / std::pow(2.5, 2.5)).epsilon(1e-15));
    // Cross-check against finite differences of kappa(t) = 2 g^{-3/2}.
    auto kappa = [](double t) {
        const double c = std::cos(t);
        return 2.0 * std::pow(4.0 - 3.0 * c * c, -1.5);
    };
    oracle::Rng rng(0x5eed0301);
    for (int i = 0; i < 30; ++i) {
        const double t = rng.uniform(0, 2 * M_PI);
        const double h = 1e-6;
        const double fd = (kappa(t + h) - kappa(t - h)) / (2 * h);
        CHECK(kappa_dot(t) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("higher kappa derivatives are consistent") {
    oracle::Rng rng(0x5eed0302);
    for (int i = 0; i < 30; ++i) {
        const double t = rng.uniform(0, 2 * M_PI);
        const double h = 1e-6;
        const EllipseKappaJet k = ellipse_kappa_jet(t);
        CHECK(k.d2 == doctest::Approx((kappa_dot(t + h) - kappa_dot(t - h)) /
                                      (2 * h))
                          .epsilon(1e-6));
        const EllipseKappaJet kp = ellipse_kappa_jet(t + h);
        const EllipseKappaJet km = ellipse_kappa_jet(t - h);
        CHECK(k.d3 == doctest::Approx((kp.d2 - km.d2) / (2 * h)).epsilon(1e-5));
        CHECK(k.d4 == doctest::Approx((kp.d3 - km.d3) / (2 * h)).epsilon(1e-5));
    }
}

TEST_CASE("family surface construction") {
    // A constant-radius member is a torsion-free tube: the flow vanishes.
    const CanalSurface tube = make_family_surface({0.0, 0.1, 0.0});
    const FlowField flow(tube);
    oracle::Rng rng(0x5eed0303);
    for (int i = 0; i < 20; ++i)
        CHECK(std::abs(flow.rhs(rng.uniform(0, 2 * M_PI),
                                rng.uniform(0, 2 * M_PI))) < 1e-15);

    CHECK(immersion_margin(make_family_surface({0.01, 0.1, 0.01})).margin > 0.0);
}

TEST_CASE("family construction rejects invalid parameters by name") {
    // mu far too large against rho: the radius goes negative
    // (max |kappa_dot| ~ 2.85).
    CHECK_THROWS_WITH_AS(make_family_surface({0.0, 0.1, 10.0}),
                         doctest::Contains("r <= 0"), ConstructionError);
    CHECK_THROWS_WITH_AS(make_family_surface({0.0, 0.1, 0.05}),
                         doctest::Contains("r <= 0"), ConstructionError);
    // Large rho keeps r positive while mu max |kappa_ddot| = 18 pushes
    // |r'| past 1.
    CHECK_THROWS_WITH_AS(make_family_surface({0.0, 1.0, 0.06}),
                         doctest::Contains("|r'|"), ConstructionError);
}

TEST_CASE("curvature coupling integral hits the closed-form constant") {
    const double C = coupling_constant();
    CHECK(std::abs(curvature_coupling_integral() - (-C)) < 1e-10);

    // Two-path pointwise oracle: the rational closed form equals the
    // product route (note the sign: it is minus kappa_ddot * kappa).
    oracle::Rng rng(0x5eed0304);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0, 2 * M_PI);
        const double c2 = std::cos(t) * std::cos(t);
        const double closed = 36.0 * (9.0 * c2 * c2 - 4.0 * c2 - 4.0) /
                              std::pow(4.0 - 3.0 * c2, 5);
        const EllipseKappaJet k = ellipse_kappa_jet(t);
        CHECK(std::abs(closed + k.d2 * k.value) <=
              1e-10 * (1.0 + std::abs(closed)));
    }

    // By parts over the period it is minus the integral of kappa_dot^2.
    const double kd2 = oracle::trapezoid_periodic(
        [](double t) { return kappa_dot(t) * kappa_dot(t); }, 0, 2 * M_PI,
        8192);
    CHECK(std::abs(curvature_coupling_integral() + kd2) < 1e-11);

    // Half-period symmetry (the integrand is pi-periodic).
    const double full = curvature_coupling_integral(1e-13);
    const double half = integrate(
        [](double t) {
            const EllipseKappaJet k = ellipse_kappa_jet(t);
            return k.d2 * k.value;
        },
        0.0, M_PI, 1e-13);
    CHECK(full == doctest::Approx(2.0 * half).epsilon(1e-9));
}

TEST_CASE("torsion coupling integral and its finite-difference route") {
    const double C = coupling_constant();
    CHECK(std::abs(torsion_coupling_integral() - C) < 1e-9);
    CHECK(std::abs(torsion_coupling_integral_fd() - C) / C < 1e-5);

    // The two constants are negatives of each other.
    CHECK(std::abs(curvature_coupling_integral() + torsion_coupling_integral()) <
          1e-9);

    // torsion_rate matches d(tau)/d(eps) of the numerically computed torsion.
    const ClosedCurve plus = ClosedCurve::deformed_ellipse(1e-5);
    const ClosedCurve minus = ClosedCurve::deformed_ellipse(-1e-5);
    oracle::Rng rng(0x5eed0305);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0, 2 * M_PI);
        const double fd =
            (frenet(plus, t).torsion - frenet(minus, t).torsion) / 2e-5;
        CHECK(std::abs(fd - torsion_rate(t)) <=
              1e-5 * (1.0 + std::abs(torsion_rate(t))));
    }
}

TEST_CASE("variational derivatives of the return map") {
    const double C = coupling_constant();
    const std::vector<double> grid = {0.0,        M_PI / 4, M_PI / 2, M_PI,
                                      3 * M_PI / 2, 5.0};
    const VariationalReport rep =
        verify_variational_derivatives(0.1, 1e-4, grid, 1e-11);
    CHECK(rep.max_eps_rel_dev < 1e-3);
    CHECK(rep.eps_spread < 1e-3 * C);
    CHECK(rep.max_mu_rel_dev < 1e-3);
    CHECK(rep.max_mu_abs_dev < 1e-3 * C);
    for (const auto& row : rep.rows) {
        CHECK(row.d_eps == doctest::Approx(C).epsilon(1e-3));
        CHECK(row.d_mu ==
              doctest::Approx(C * std::sin(row.phi0)).epsilon(1e-3).scale(C));
    }

    CHECK_THROWS_AS(verify_variational_derivatives(0.1, 1e-2, grid), InputError);
}

TEST_CASE("halving h improves the central differences about fourfold") {
    const std::vector<double> grid = {1.0};
    const double C = coupling_constant();
    const double dev4 =
        std::abs(verify_variational_derivatives(0.1, 8e-4, grid, 1e-12)
                     .rows[0]
                     .d_eps -
                 C);
    const double dev2 =
        std::abs(verify_variational_derivatives(0.1, 4e-4, grid, 1e-12)
                     .rows[0]
                     .d_eps -
                 C);
    CHECK(dev4 / dev2 == doctest::Approx(4.0).epsilon(0.5));
}

TEST_CASE("fold curves bracket the first-order slopes") {
    const FoldCurves curves = trace_fold_curves(0.1, {0.01});
    REQUIRE(curves.lower.size() == 1);
    REQUIRE(curves.upper.size() == 1);
    const FoldPoint& e1 = curves.lower[0];
    const FoldPoint& e2 = curves.upper[0];
    CHECK(e1.eps > -0.011);
    CHECK(e1.eps < -0.009);
    CHECK(e2.eps > 0.009);
    CHECK(e2.eps < 0.011);
    CHECK(e1.residual >= 0.0);
    CHECK(e1.residual < 1e-9);
    CHECK(e2.residual < 1e-9);
    // Double cycle near -pi/2 on the lower fold, +3pi/2 ditto upper.
    CHECK(std::abs(e1.phi_star - M_PI / 2) < 1e-3);
    CHECK(std::abs(e2.phi_star - 3 * M_PI / 2) < 1e-3);

    // The located points classify as parabolic with one fixed point.
    const CanalSurface at_fold = make_family_surface({e2.eps, 0.1, e2.mu});
    const FlowField flow(at_fold);
    const ReturnMapReport rep = find_principal_cycles(flow, 1e-10);
    CHECK(rep.classification == MapClass::parabolic);
    CHECK(rep.fixed_points.size() == 1);
    CHECK(rep.parabolic_confident);
}

TEST_CASE("fold point symmetry and slope continuation") {
    const std::vector<double> mus = {0.02, 0.01, 0.005};
    const FoldCurves curves = trace_fold_curves(0.1, mus);
    for (std::size_t i = 0; i < mus.size(); ++i) {
        // eps1(mu) = -eps2(mu) holds exactly for this family; allow the
        // fold-location tolerance.
        CHECK(std::abs(curves.lower[i].eps + curves.upper[i].eps) <
              mus[i] * mus[i]);
    }
    const double slope =
        (curves.upper[1].eps - curves.upper[2].eps) / (0.01 - 0.005);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("fold bracket failures are reported, never widened") {
    // [2 mu, 3 mu] lies entirely outside the wedge: no sign change.
    CHECK_THROWS_WITH_AS(locate_fold(0.1, 0.01, 0.02, 0.03),
                         doctest::Contains("no sign change"), BracketFailure);
    CHECK_THROWS_AS(trace_fold_curves(0.1, {-0.01}), InputError);
}

TEST_CASE("tongue sweep grid") {
    const SweepGrid grid =
        tongue_sweep(0.1, {-0.03, 0.03}, {0.0, 0.02}, 13, 5, 1e-10);
    REQUIRE(grid.cells.size() == 13 * 5);
    for (const SweepCell& c : grid.cells) CHECK(c.ok);

    // mu = 0 row: rotation number strictly increasing in eps, zero at eps = 0.
    for (int i = 0; i + 1 < 13; ++i) {
        const SweepCell& a = grid.cell(i, 0);
        const SweepCell& b = grid.cell(i + 1, 0);
        REQUIRE(a.rotation_number.has_value());
        CHECK(*a.rotation_number < *b.rotation_number);
    }
    const SweepCell& center = grid.cell(6, 0);
    CHECK(center.eps == 0.0);
    CHECK(*center.rotation_number == 0.0);
    CHECK(center.classification == MapClass::identity);

    // (0, mu > 0): hyperbolic pair near phi = 0 and pi.
    for (int j = 1; j < 5; ++j) {
        const SweepCell& c = grid.cell(6, j);
        CHECK(c.classification == MapClass::hyperbolic);
        CHECK(c.n_fixed_points == 2);
    }

    // (3 mu, mu) sits outside the principal tongue: elliptic.
    const SweepCell& outside = grid.cell(12, 2);  // eps = 0.03, mu = 0.01
    CHECK(outside.classification == MapClass::elliptic);
    CHECK(outside.n_fixed_points == 0);

    // The principal tongue is a connected wedge with vertex at (0, 0):
    // on each mu > 0 row its cells form one contiguous run containing
    // eps = 0, and the run widens with mu.
    int prev_count = 1;
    for (int j = 1; j < 5; ++j) {
        std::vector<int> locked;
        for (int i = 0; i < 13; ++i) {
            const SweepCell& c = grid.cell(i, j);
            if ((c.classification == MapClass::hyperbolic ||
                 c.classification == MapClass::parabolic) &&
                c.rotation_number && *c.rotation_number == 0.0)
                locked.push_back(i);
        }
        REQUIRE(!locked.empty());
        for (std::size_t k = 0; k + 1 < locked.size(); ++k)
            CHECK(locked[k + 1] == locked[k] + 1);
        CHECK(locked.front() <= 6);
        CHECK(locked.back() >= 6);
        CHECK(static_cast<int>(locked.size()) >= prev_count);
        prev_count = static_cast<int>(locked.size());
    }

    CHECK_THROWS_AS(tongue_sweep(0.1, {-0.01, 0.01}, {0.0, 0.01}, 1, 5),
                    InputError);
}

TEST_CASE("sweep records per-cell errors and keeps going") {
    // mu = 0.05 is invalid for rho = 0.1 (r <= 0); eps column stays fine.
    const SweepGrid grid =
        tongue_sweep(0.1, {0.0, 0.01}, {0.0, 0.05}, 2, 2, 1e-10);
    CHECK(grid.cell(0, 0).ok);
    CHECK(!grid.cell(0, 1).ok);
    CHECK(grid.cell(0, 1).error.find("r <= 0") != std::string::npos);
}
