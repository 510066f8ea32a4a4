#include <cmath>
#include <random>

#include "doctest.h"
#include "pendnet/system.hpp"

using namespace pendnet;

namespace {

CoupledSystem k2_double_well(double kappa) {
    return CoupledSystem(make_complete(2), InteractionPotential::double_well(), kappa);
}

SystemState random_state(int n, std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> q(n), p(n);
    for (int i = 0; i < n; ++i) {
        q[i] = u(rng);
        p[i] = u(rng);
    }
    return SystemState(std::move(q), std::move(p));
}

}  // namespace

TEST_CASE("vector field at the origin and decoupled limit") {
    auto sys = k2_double_well(0.7);
    auto f0 = vector_field(sys, SystemState({0, 0}, {0, 0}));
    for (double v : f0) CHECK(v == 0.0);

    auto dec = k2_double_well(0.0);
    SystemState s({0.3, -1.1}, {0.9, 0.2});
    auto f = vector_field(dec, s);
    CHECK(f[0] == doctest::Approx(0.9));
    CHECK(f[1] == doctest::Approx(0.2));
    CHECK(f[2] == doctest::Approx(-std::sin(0.3)));
    CHECK(f[3] == doctest::Approx(-std::sin(-1.1)));
}

TEST_CASE("vector field hand evaluation on K2") {
    auto sys = k2_double_well(0.2);
    SystemState s({0.2, 1.0 / 7.0}, {0.0, 0.0});
    auto f = vector_field(sys, s);
    double dq = 0.2 - 1.0 / 7.0;
    double g10 = -2 * dq + 4 * dq * dq * dq;
    CHECK(f[0] == doctest::Approx(0.0));
    CHECK(f[1] == doctest::Approx(0.0));
    CHECK(f[2] == doctest::Approx(-std::sin(0.2) - 0.2 * g10));
    CHECK(f[3] == doctest::Approx(-std::sin(1.0 / 7.0) + 0.2 * g10));
    CHECK(f[2] == doctest::Approx(-0.175961).epsilon(1e-4));
    // coupling terms cancel in the total momentum derivative
    CHECK(f[2] + f[3] == doctest::Approx(-std::sin(0.2) - std::sin(1.0 / 7.0)));
}

TEST_CASE("hamiltonian matches the reported energies") {
    SystemState s({0.2, 1.0 / 7.0}, {0.0, 0.0});
    CHECK(hamiltonian(k2_double_well(0.2), s) == doctest::Approx(-1.92).epsilon(5e-3));
    CHECK(hamiltonian(k2_double_well(0.5), s) == doctest::Approx(-1.85).epsilon(5e-3));

    // any system at the origin: -N + kappa |E| G(0,0)
    auto k3 = CoupledSystem(make_complete(3), InteractionPotential::double_well(), 0.4);
    SystemState o({0, 0, 0}, {0, 0, 0});
    CHECK(hamiltonian(k3, o) == doctest::Approx(-3.0 + 0.4 * 3 * 0.25));
}

TEST_CASE("antisymmetric coupling sums cancel at random states") {
    std::mt19937 rng(42);
    auto sys = CoupledSystem(make_complete(3), InteractionPotential::double_well(), 0.8);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_state(3, rng);
        double sum01 = 0.0, sum10 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (!sys.graph.has_edge(i, j)) continue;
                sum01 += sys.potential.eval(s.q[i] - s.q[j], s.p[i] - s.p[j], 0, 1);
                sum10 += sys.potential.eval(s.q[i] - s.q[j], s.p[i] - s.p[j], 1, 0);
            }
        CHECK(std::abs(sum01) <= 1e-12);
        CHECK(std::abs(sum10) <= 1e-12);
    }
}

TEST_CASE("jacobian agrees with central finite differences") {
    std::mt19937 rng(7);
    auto sys = CoupledSystem(make_complete(3), InteractionPotential::double_well(), 0.35);
    const int n = 3, d = 6;
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_state(n, rng);
        Mat J = jacobian(sys, s);
        CHECK(std::abs([&] {
                  double tr = 0.0;
                  for (int i = 0; i < d; ++i) tr += J(i, i);
                  return tr;
              }()) <= 1e-12);
        for (int col = 0; col < d; ++col) {
            SystemState plus = s, minus = s;
            auto& vp = col < n ? plus.q[col] : plus.p[col - n];
            auto& vm = col < n ? minus.q[col] : minus.p[col - n];
            vp += h;
            vm -= h;
            auto fp = vector_field(sys, plus);
            auto fm = vector_field(sys, minus);
            for (int row = 0; row < d; ++row)
                CHECK(J(row, col) == doctest::Approx((fp[row] - fm[row]) / (2 * h)).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("jacobian at a synchronous state uses the plain Laplacian") {
    auto sys = CoupledSystem(make_path(3), InteractionPotential::double_well(), 0.3);
    SystemState s({0.4, 0.4, 0.4}, {0.1, 0.1, 0.1});
    Mat J = jacobian(sys, s);
    auto L = laplacian(sys.graph);
    const int n = 3;
    double c10 = -1.0;  // double well
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(J(i, j) == doctest::Approx(0.0));                         // kappa L11 = 0
            CHECK(J(i, n + j) == doctest::Approx(i == j ? 1.0 : 0.0));      // I + kappa L02
            double expected = -(i == j ? std::cos(0.4) : 0.0) - sys.kappa * 2 * c10 * L[i][j];
            CHECK(J(n + i, j) == doctest::Approx(expected));
        }
}

TEST_CASE("equivariance under graph automorphisms and sign flip") {
    auto k3 = CoupledSystem(make_complete(3), InteractionPotential::double_well(), 0.45);
    auto p3 = CoupledSystem(make_path(3), InteractionPotential::double_well(), 0.45);
    std::mt19937 rng(11);
    auto s = random_state(3, rng);

    auto permute = [](const SystemState& st, const std::vector<int>& perm) {
        SystemState r = st;
        for (size_t i = 0; i < perm.size(); ++i) {
            r.q[i] = st.q[perm[i]];
            r.p[i] = st.p[perm[i]];
        }
        return r;
    };
    std::vector<std::vector<int>> k3_perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& perm : k3_perms) {
        auto fs = vector_field(k3, permute(s, perm));
        auto f = vector_field(k3, s);
        for (int i = 0; i < 3; ++i) {
            CHECK(fs[i] == doctest::Approx(f[perm[i]]).epsilon(1e-14));
            CHECK(fs[3 + i] == doctest::Approx(f[3 + perm[i]]).epsilon(1e-14));
        }
    }
    // P3: the 1 <-> 3 swap
    std::vector<int> swap13 = {2, 1, 0};
    auto fs = vector_field(p3, permute(s, swap13));
    auto f = vector_field(p3, s);
    for (int i = 0; i < 3; ++i) {
        CHECK(fs[i] == doctest::Approx(f[swap13[i]]).epsilon(1e-14));
        CHECK(fs[3 + i] == doctest::Approx(f[3 + swap13[i]]).epsilon(1e-14));
    }
    // global sign flip
    SystemState neg = s;
    for (int i = 0; i < 3; ++i) {
        neg.q[i] = -s.q[i];
        neg.p[i] = -s.p[i];
    }
    auto fneg = vector_field(k3, neg);
    auto fk3 = vector_field(k3, s);
    for (int i = 0; i < 6; ++i) CHECK(fneg[i] == doctest::Approx(-fk3[i]).epsilon(1e-14));
}

TEST_CASE("bounded motion certificate") {
    SystemState table1({0.2, 1.0 / 7.0}, {0.0, 0.0});
    CHECK(bounded_motion_certificate(k2_double_well(0.2), table1));  // H ~ -1.92 <= 0

    auto k3 = CoupledSystem(make_complete(3), InteractionPotential::double_well(), 0.125);
    SystemState s3({0.2, 1.0 / 7.0, 0.1}, {0.0, 0.0, 0.0});
    CHECK(bounded_motion_certificate(k3, s3));  // H ~ -2.87 <= -1

    SystemState fast({0.0, 0.0}, {3.0, 0.0});
    CHECK_FALSE(bounded_motion_certificate(k2_double_well(0.0), fast));  // H = 2.5 > 0

    auto single = CoupledSystem(Graph(1, {}), InteractionPotential::double_well(), 0.0);
    CHECK_THROWS(bounded_motion_certificate(single, SystemState({0.0}, {0.0})));
}

TEST_CASE("dimension mismatch rejected") {
    auto sys = k2_double_well(0.1);
    CHECK_THROWS(vector_field(sys, SystemState({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0})));
    CHECK_THROWS(SystemState({0.0}, {0.0, 0.0}));
}
