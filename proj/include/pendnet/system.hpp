#ifndef PENDNET_SYSTEM_HPP
#define PENDNET_SYSTEM_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pendnet/graph.hpp"
#include "pendnet/linalg.hpp"
#include "pendnet/potential.hpp"

namespace pendnet {

/// Phase-space point (q, p) in R^{2N} plus time.
struct SystemState {
    std::vector<double> q;
    std::vector<double> p;
    double t = 0.0;

    SystemState() = default;
    SystemState(std::vector<double> q_, std::vector<double> p_, double t_ = 0.0)
        : q(std::move(q_)), p(std::move(p_)), t(t_) {
        if (q.size() != p.size())
            throw std::invalid_argument("SystemState: q/p length mismatch");
    }
    int size() const { return static_cast<int>(q.size()); }
};

/// Immutable coupled-pendulum network: topology, interaction, strength.
/// kappa = 0 is allowed as the decoupled reference.
struct CoupledSystem {
    Graph graph;
    InteractionPotential potential;
    double kappa = 0.0;

    CoupledSystem(Graph g, InteractionPotential pot, double k)
        : graph(std::move(g)), potential(std::move(pot)), kappa(k) {
        if (kappa < 0.0) throw std::invalid_argument("CoupledSystem: kappa must be >= 0");
    }
    int n() const { return graph.n; }
};

inline void check_dims(const CoupledSystem& sys, const SystemState& s) {
    if (s.size() != sys.n())
        throw std::invalid_argument("state dimension does not match graph");
}

/// H = sum_i (p_i^2/2 - cos q_i) + kappa sum_{edges} G(q_i - q_j, p_i - p_j).
inline double hamiltonian(const CoupledSystem& sys, const SystemState& s) {
    check_dims(sys, s);
    double h = 0.0;
    for (int i = 0; i < sys.n(); ++i) h += 0.5 * s.p[i] * s.p[i] - std::cos(s.q[i]);
    for (auto [i, j] : sys.graph.edges)
        h += sys.kappa * sys.potential.eval(s.q[i] - s.q[j], s.p[i] - s.p[j]);
    return h;
}

/// Equations of motion, concatenated as (qdot, pdot):
///   qdot_i =  p_i     + kappa sum_j a_ij G_01(q_i - q_j, p_i - p_j)
///   pdot_i = -sin q_i - kappa sum_j a_ij G_10(q_i - q_j, p_i - p_j)
inline std::vector<double> vector_field(const CoupledSystem& sys, const SystemState& s) {
    check_dims(sys, s);
    const int n = sys.n();
    std::vector<double> f(2 * n, 0.0);
    for (int i = 0; i < n; ++i) {
        f[i] = s.p[i];
        f[n + i] = -std::sin(s.q[i]);
    }
    for (auto [i, j] : sys.graph.edges) {
        double dq = s.q[i] - s.q[j], dp = s.p[i] - s.p[j];
        double g01 = sys.potential.eval(dq, dp, 0, 1);
        double g10 = sys.potential.eval(dq, dp, 1, 0);
        // derivatives of G are odd, so the j-side terms flip sign
        f[i] += sys.kappa * g01;
        f[j] -= sys.kappa * g01;
        f[n + i] -= sys.kappa * g10;
        f[n + j] += sys.kappa * g10;
    }
    return f;
}

/// Jacobian in block form
///   [ kappa L11              I + kappa L02 ]
///   [ -diag(cos q) - kappa L20   -kappa L11 ]
/// where L^(nm) are weighted Laplacians with w_ij = G_nm(q_i - q_j, p_i - p_j).
inline Mat jacobian(const CoupledSystem& sys, const SystemState& s) {
    check_dims(sys, s);
    const int n = sys.n();
    Mat L11(n, n), L20(n, n), L02(n, n);
    for (auto [i, j] : sys.graph.edges) {
        double dq = s.q[i] - s.q[j], dp = s.p[i] - s.p[j];
        double w11 = sys.potential.eval(dq, dp, 1, 1);
        double w20 = sys.potential.eval(dq, dp, 2, 0);
        double w02 = sys.potential.eval(dq, dp, 0, 2);
        L11(i, j) -= w11; L11(j, i) -= w11; L11(i, i) += w11; L11(j, j) += w11;
        L20(i, j) -= w20; L20(j, i) -= w20; L20(i, i) += w20; L20(j, j) += w20;
        L02(i, j) -= w02; L02(j, i) -= w02; L02(i, i) += w02; L02(j, j) += w02;
    }
    Mat J(2 * n, 2 * n);
    const double k = sys.kappa;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            J(i, j) = k * L11(i, j);
            J(i, n + j) = (i == j ? 1.0 : 0.0) + k * L02(i, j);
            J(n + i, j) = -(i == j ? std::cos(s.q[i]) : 0.0) - k * L20(i, j);
            J(n + i, n + j) = -k * L11(i, j);
        }
    return J;
}

/// Sufficient (not necessary) condition for bounded forward orbits:
/// H <= 2 - N. Requires the standing assumption G >= 0 to be meaningful.
inline bool bounded_motion_certificate(const CoupledSystem& sys, const SystemState& s) {
    if (sys.n() < 2)
        throw std::domain_error("bounded_motion_certificate: requires N >= 2");
    return hamiltonian(sys, s) <= 2.0 - sys.n();
}

}  // namespace pendnet

#endif
