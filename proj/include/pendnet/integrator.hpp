#ifndef PENDNET_INTEGRATOR_HPP
#define PENDNET_INTEGRATOR_HPP

#include <cmath>
#include <vector>

#include "pendnet/odeint.hpp"
#include "pendnet/system.hpp"

namespace pendnet {

struct Trajectory {
    std::vector<double> times;
    std::vector<SystemState> states;
    std::vector<double> energies;
    double energy_drift = 0.0;  // max |H(t) - H(0)| / (1 + |H(0)|)
};

namespace detail {

inline OdeFn flow_fn(const CoupledSystem& sys) {
    const int n = sys.n();
    return [&sys, n](double t, const std::vector<double>& y, std::vector<double>& dy) {
        SystemState s(std::vector<double>(y.begin(), y.begin() + n),
                      std::vector<double>(y.begin() + n, y.end()), t);
        dy = vector_field(sys, s);
    };
}

inline std::vector<double> pack(const SystemState& s) {
    std::vector<double> y(s.q);
    y.insert(y.end(), s.p.begin(), s.p.end());
    return y;
}

inline SystemState unpack(const std::vector<double>& y, int n, double t) {
    return SystemState(std::vector<double>(y.begin(), y.begin() + n),
                       std::vector<double>(y.begin() + n, y.begin() + 2 * n), t);
}

}  // namespace detail

inline Trajectory integrate(const CoupledSystem& sys, const SystemState& s0, double T,
                            const IntegratorConfig& cfg = {}) {
    check_dims(sys, s0);
    const int n = sys.n();
    Trajectory traj;
    double h0 = 0.0;
    bool first = true;
    integrate_ode(detail::flow_fn(sys), detail::pack(s0), s0.t, T, cfg,
                  [&](double t, const std::vector<double>& y) {
                      SystemState s = detail::unpack(y, n, t);
                      double h = hamiltonian(sys, s);
                      if (first) {
                          h0 = h;
                          first = false;
                      }
                      traj.energy_drift =
                          std::max(traj.energy_drift, std::abs(h - h0) / (1.0 + std::abs(h0)));
                      traj.times.push_back(t);
                      traj.energies.push_back(h);
                      traj.states.push_back(std::move(s));
                  });
    return traj;
}

struct TangentHistory {
    std::vector<double> times;
    std::vector<Mat> frames;  // Y(t) at sample instants, 2N x 2N
};

/// Joint flow + variational flow: x' = f(x), Y' = J(x) Y, integrated as one
/// augmented state so that base and tangent share step sizes.
inline std::pair<Trajectory, TangentHistory> integrate_with_tangent(
    const CoupledSystem& sys, const SystemState& s0, const Mat& basis0, double T,
    const IntegratorConfig& cfg = {}) {
    check_dims(sys, s0);
    const int n = sys.n(), d = 2 * n;
    if (basis0.rows != d || basis0.cols != d)
        throw std::invalid_argument("integrate_with_tangent: basis must be 2N x 2N");

    OdeFn aug = [&sys, n, d](double t, const std::vector<double>& y, std::vector<double>& dy) {
        dy.resize(y.size());
        SystemState s = detail::unpack(y, n, t);
        auto f = vector_field(sys, s);
        std::copy(f.begin(), f.end(), dy.begin());
        Mat J = jacobian(sys, s);
        // columns of Y stored consecutively after the base state
        for (int col = 0; col < d; ++col) {
            const double* ycol = y.data() + d + col * d;
            double* dcol = dy.data() + d + col * d;
            for (int i = 0; i < d; ++i) {
                double s_ = 0.0;
                for (int j = 0; j < d; ++j) s_ += J(i, j) * ycol[j];
                dcol[i] = s_;
            }
        }
    };

    std::vector<double> y0 = detail::pack(s0);
    y0.resize(d + d * d);
    for (int col = 0; col < d; ++col)
        for (int i = 0; i < d; ++i) y0[d + col * d + i] = basis0(i, col);

    Trajectory traj;
    TangentHistory hist;
    double h0 = 0.0;
    bool first = true;
    integrate_ode(aug, std::move(y0), s0.t, T, cfg,
                  [&](double t, const std::vector<double>& y) {
                      SystemState s = detail::unpack(y, n, t);
                      double h = hamiltonian(sys, s);
                      if (first) {
                          h0 = h;
                          first = false;
                      }
                      traj.energy_drift =
                          std::max(traj.energy_drift, std::abs(h - h0) / (1.0 + std::abs(h0)));
                      traj.times.push_back(t);
                      traj.energies.push_back(h);
                      traj.states.push_back(std::move(s));
                      Mat Y(d, d);
                      for (int col = 0; col < d; ++col)
                          for (int i = 0; i < d; ++i) Y(i, col) = y[d + col * d + i];
                      hist.times.push_back(t);
                      hist.frames.push_back(std::move(Y));
                  });
    return {std::move(traj), std::move(hist)};
}

}  // namespace pendnet

#endif
