#include <cmath>

#include "doctest.h"
#include "pendnet/integrator.hpp"
#include "pendnet/reduced.hpp"

using namespace pendnet;

namespace {

CoupledSystem k2(double kappa) {
    return CoupledSystem(make_complete(2), InteractionPotential::double_well(), kappa);
}

SignVector k2_antiphase() { return {{1, -1}, 2}; }
SignVector p3_endpoints() { return {{1, 0, -1}, 1}; }
SignVector k3_trivalent() { return {{0, 1, -1}, 3}; }

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

}  // namespace

TEST_CASE("reduce extracts the neighbor counts") {
    auto rk2 = reduce(k2(0.3), k2_antiphase());
    CHECK(rk2.d_pm == 1);
    CHECK(rk2.d_0 == 0);
    CHECK(rk2.lambda == 2);

    auto rp3 = reduce(CoupledSystem(make_path(3), InteractionPotential::double_well(), 0.3),
                      p3_endpoints());
    CHECK(rp3.d_pm == 0);
    CHECK(rp3.d_0 == 1);
    CHECK(rp3.lambda == 1);

    auto rk3 = reduce(CoupledSystem(make_complete(3), InteractionPotential::double_well(), 0.3),
                      k3_trivalent());
    CHECK(rk3.d_pm == 1);
    CHECK(rk3.d_0 == 1);
    CHECK(rk3.lambda == 3);

    CHECK_THROWS(reduce(k2(0.3), p3_endpoints()));
}

TEST_CASE("reduced energy: quadratic coefficients at the origin") {
    // K(x, y) ~ const + (1/2 + k lam c10) x^2 + (1/2 + k lam c01) y^2,
    // so the x^2 coefficient vanishes exactly at kappa^crit.
    const double h = 1e-4;
    for (double kappa : {0.1, 0.25, 0.4}) {
        auto rs = reduce(k2(kappa), k2_antiphase());
        double kxx = (rs.hamiltonian(h, 0) - 2 * rs.hamiltonian(0, 0) + rs.hamiltonian(-h, 0)) /
                     (h * h);
        double kyy = (rs.hamiltonian(0, h) - 2 * rs.hamiltonian(0, 0) + rs.hamiltonian(0, -h)) /
                     (h * h);
        double c10 = -1.0, c01 = 0.0;
        CHECK(0.5 * kxx == doctest::Approx(0.5 + kappa * 2 * c10).epsilon(1e-5).scale(1.0));
        CHECK(0.5 * kyy == doctest::Approx(0.5 + kappa * 2 * c01).epsilon(1e-5).scale(1.0));
    }
}

TEST_CASE("reduced orbits conserve the reduced energy") {
    auto rs = reduce(k2(0.3), k2_antiphase());
    OdeFn f = [&rs](double, const std::vector<double>& y, std::vector<double>& dy) {
        auto d = rs.vector_field(y[0], y[1]);
        dy = {d[0], d[1]};
    };
    double K0 = rs.hamiltonian(0.5, 0.1);
    IntegratorConfig cfg;
    double worst = 0.0;
    integrate_ode(f, {0.5, 0.1}, 0.0, 50.0, cfg, [&](double, const std::vector<double>& y) {
        worst = std::max(worst, std::abs(rs.hamiltonian(y[0], y[1]) - K0));
    });
    CHECK(worst <= 1e-8);
}

TEST_CASE("reduced orbit embeds into the full flow") {
    // the span of the sign eigenvector is flow-invariant: x(t) v must track
    // the full trajectory started at x0 v
    auto sys = k2(0.3);
    auto v = k2_antiphase();
    auto rs = reduce(sys, v);
    const double x0 = 0.4;

    OdeFn f = [&rs](double, const std::vector<double>& y, std::vector<double>& dy) {
        auto d = rs.vector_field(y[0], y[1]);
        dy = {d[0], d[1]};
    };
    std::vector<double> red_x, red_y, red_t;
    IntegratorConfig cfg;
    integrate_ode(f, {x0, 0.0}, 0.0, 50.0, cfg, [&](double t, const std::vector<double>& y) {
        red_t.push_back(t);
        red_x.push_back(y[0]);
        red_y.push_back(y[1]);
    });

    auto traj = integrate(sys, SystemState({x0 * 1, x0 * -1}, {0.0, 0.0}), 50.0, cfg);
    REQUIRE(traj.times.size() == red_t.size());
    for (size_t k = 0; k < red_t.size(); ++k) {
        const auto& s = traj.states[k];
        for (int i = 0; i < 2; ++i) {
            CHECK(s.q[i] == doctest::Approx(red_x[k] * v.entries[i]).epsilon(1e-6).scale(1.0));
            CHECK(s.p[i] == doctest::Approx(red_y[k] * v.entries[i]).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("axis equilibria of the pair below and above the critical coupling") {
    auto count_interior = [](const std::vector<double>& roots) {
        int c = 0;
        for (double r : roots)
            if (std::abs(r) < M_PI - 1e-6) ++c;
        return c;
    };

    auto rs0 = reduce(k2(0.0), k2_antiphase());
    auto roots0 = equilibria_on_axis(rs0);
    CHECK(count_interior(roots0) == 1);  // just the origin; +-pi are boundary

    auto rs_sub = reduce(k2(0.2), k2_antiphase());
    CHECK(count_interior(equilibria_on_axis(rs_sub)) == 1);

    auto rs_sup = reduce(k2(0.3), k2_antiphase());
    auto roots = equilibria_on_axis(rs_sup);
    REQUIRE(count_interior(roots) == 3);
    // analytic root of -sin x + 1.2 x - 9.6 x^3 near 0.1456
    double xstar = 0.0;
    for (double r : roots)
        if (r > 1e-6) xstar = r;
    CHECK(xstar == doctest::Approx(0.145595).epsilon(1e-4));
}

TEST_CASE("pitchfork detection on the coupled pair") {
    auto base = reduce(k2(0.0), k2_antiphase());
    auto diag = detect_pitchfork(base, linspace(0.05, 0.6, 551));  // step 1e-3
    REQUIRE(diag.bifurcations.size() == 1);
    const auto& b = diag.bifurcations[0];
    CHECK(b.axis == 'x');
    CHECK(std::abs(b.kappa - 0.25) <= 1e-3);
    CHECK(b.closed_third == doctest::Approx(-47.0));
    CHECK(b.closed_mixed == doctest::Approx(4.0));
    CHECK(b.nondeg_third == doctest::Approx(-47.0).epsilon(1e-4));
    CHECK(b.nondeg_mixed == doctest::Approx(4.0).epsilon(1e-4));

    // past the bifurcation: origin saddle flanked by two centers
    const auto& eqs = diag.equilibria.back();
    int centers = 0, saddles = 0;
    for (const auto& e : eqs) {
        if (e.cls == Equilibrium::Class::Center) ++centers;
        else ++saddles;
    }
    CHECK(centers == 2);
    CHECK(saddles == 1);
}

TEST_CASE("pitchfork of the path endpoints branch at kappa = 1/2") {
    auto base = reduce(CoupledSystem(make_path(3), InteractionPotential::double_well(), 0.0),
                       p3_endpoints());
    auto diag = detect_pitchfork(base, linspace(0.3, 0.7, 401));
    REQUIRE(diag.bifurcations.size() == 1);
    CHECK(std::abs(diag.bifurcations[0].kappa - 0.5) <= 1e-3);
    CHECK(diag.bifurcations[0].axis == 'x');
}

TEST_CASE("harmonic interaction never opens a pitchfork") {
    auto base = reduce(CoupledSystem(make_complete(2), InteractionPotential::harmonic(), 0.0),
                       k2_antiphase());
    auto diag = detect_pitchfork(base, linspace(0.05, 2.0, 200));
    CHECK(diag.bifurcations.empty());
}

TEST_CASE("transversal eigenvalues of the pair") {
    // complement of the anti-phase plane is the synchrony plane; at
    // (x v, 0) the projected block gives +- sqrt(-cos x)
    auto sys = k2(0.0);
    auto v = k2_antiphase();
    auto e1 = transversal_eigenvalues(sys, v, 0.5, 0.3);
    REQUIRE(e1.size() == 2);
    for (const auto& z : e1) {
        CHECK(std::abs(z.real()) <= 1e-9);
        CHECK(std::abs(z.imag()) == doctest::Approx(std::sqrt(std::cos(0.5))).epsilon(1e-9));
    }
    auto e2 = transversal_eigenvalues(sys, v, 2.0, 0.3);  // cos < 0: real pair
    bool unstable = false;
    for (const auto& z : e2) unstable |= z.real() > 1e-6;
    CHECK(unstable);
}

TEST_CASE("transversal stability map flags the unstable wedge") {
    auto sys = CoupledSystem(make_path(3), InteractionPotential::double_well(), 0.0);
    auto v = p3_endpoints();
    auto map = transversal_stability_map(sys, v, {0.0}, {0.05, 0.4});
    REQUIRE(map.stable.size() == 1);
    // at the origin the transversal block is the synchrony linearization on
    // the remaining eigenvalue lambda = 3: stable iff kappa < 1/6
    CHECK(map.stable[0][0] == true);
    CHECK(map.stable[0][1] == false);
}

TEST_CASE("double-cusp level sets and critical points") {
    // a = 0, alpha = beta = -1: critical points at the 3x3 sign lattice
    auto grid = double_cusp_levelset(0.0, -1.0, -1.0, -1.5, 1.5, 61, -1.5, 1.5, 61);
    CHECK_FALSE(grid.degenerate);
    REQUIRE(grid.critical_points.size() == 9);
    double c = std::sqrt(0.5);
    bool found_corner = false, found_origin = false;
    for (const auto& cp : grid.critical_points) {
        if (std::abs(cp[0] - c) < 1e-9 && std::abs(cp[1] - c) < 1e-9) found_corner = true;
        if (cp[0] == 0.0 && cp[1] == 0.0) found_origin = true;
    }
    CHECK(found_corner);
    CHECK(found_origin);
    CHECK(grid.F(30, 30) == doctest::Approx(0.0));  // centre of the grid is the origin

    // alpha = beta = +1: origin is the only critical point
    auto single = double_cusp_levelset(3.0, 1.0, 1.0, -1.0, 1.0, 21, -1.0, 1.0, 21);
    CHECK(single.critical_points.size() == 1);

    auto dg = double_cusp_levelset(2.0, -1.0, -1.0, -1.0, 1.0, 11, -1.0, 1.0, 11);
    CHECK(dg.degenerate);
}
