#ifndef PENDNET_LYAPUNOV_HPP
#define PENDNET_LYAPUNOV_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pendnet/integrator.hpp"
#include "pendnet/linalg.hpp"
#include "pendnet/odeint.hpp"
#include "pendnet/system.hpp"

namespace pendnet {

struct LyapunovResult {
    std::vector<double> exponents;  // sorted descending
    std::vector<double> checkpoint_times;
    std::vector<std::vector<double>> history;  // running estimates per checkpoint
    double T_total = 0.0;
    double reorth_period = 0.0;
    bool converged = true;  // last-decade drift of the top exponent <= 20%
};

/// Benettin-style spectrum: evolve an orthonormal tangent frame with the
/// flow, modified Gram-Schmidt every reorth_period, accumulate log norms
/// (compensated summation). Exponents are accumulated logs / T.
inline LyapunovResult lyapunov_spectrum(const CoupledSystem& sys, const SystemState& s0,
                                        double T = 1e4, double reorth_period = 1.0,
                                        IntegratorConfig cfg = {},
                                        int history_stride = 10) {
    check_dims(sys, s0);
    if (T < 100.0 * reorth_period)
        throw std::invalid_argument("lyapunov_spectrum: T must be >= 100 * reorth_period");
    const int n = sys.n(), d = 2 * n;

    OdeFn aug = [&sys, n, d](double t, const std::vector<double>& y, std::vector<double>& dy) {
        dy.resize(y.size());
        SystemState s(std::vector<double>(y.begin(), y.begin() + n),
                      std::vector<double>(y.begin() + n, y.begin() + d), t);
        auto f = vector_field(sys, s);
        std::copy(f.begin(), f.end(), dy.begin());
        Mat J = jacobian(sys, s);
        for (int col = 0; col < d; ++col) {
            const double* ycol = y.data() + d + col * d;
            double* dcol = dy.data() + d + col * d;
            for (int i = 0; i < d; ++i) {
                double acc = 0.0;
                for (int j = 0; j < d; ++j) acc += J(i, j) * ycol[j];
                dcol[i] = acc;
            }
        }
    };

    std::vector<double> y(static_cast<size_t>(d) + d * d, 0.0);
    for (int i = 0; i < n; ++i) {
        y[i] = s0.q[i];
        y[n + i] = s0.p[i];
    }
    for (int col = 0; col < d; ++col) y[d + col * d + col] = 1.0;  // identity frame

    const long ncheck = static_cast<long>(std::llround(T / reorth_period));
    std::vector<KahanSum> logs(d);
    LyapunovResult out;
    out.T_total = T;
    out.reorth_period = reorth_period;

    detail::AdaptiveStepper stepper(aug, d + d * d, cfg);
    Mat Y(d, d);
    double t = s0.t;
    double top_at_tenth = 0.0;
    for (long c = 1; c <= ncheck; ++c) {
        double target = s0.t + c * reorth_period;
        if (cfg.method == Method::AdaptiveRk45)
            stepper.advance(y, t, target);
        else
            detail::rk4_advance(aug, y, t, target, cfg.step);
        t = target;

        for (int col = 0; col < d; ++col)
            for (int i = 0; i < d; ++i) Y(i, col) = y[d + col * d + i];
        auto rdiag = mgs_orthonormalize(Y);
        for (int col = 0; col < d; ++col) logs[col].add(std::log(rdiag[col]));
        for (int col = 0; col < d; ++col)
            for (int i = 0; i < d; ++i) y[d + col * d + i] = Y(i, col);
        stepper.invalidate_fsal();

        double elapsed = t - s0.t;
        if (c % history_stride == 0 || c == ncheck) {
            std::vector<double> est(d);
            for (int col = 0; col < d; ++col) est[col] = logs[col].sum / elapsed;
            out.checkpoint_times.push_back(elapsed);
            out.history.push_back(std::move(est));
        }
        if (c == std::max<long>(1, ncheck / 10)) {
            double m = logs[0].sum / elapsed;
            for (int col = 1; col < d; ++col) m = std::max(m, logs[col].sum / elapsed);
            top_at_tenth = m;
        }
    }

    out.exponents.resize(d);
    for (int col = 0; col < d; ++col) out.exponents[col] = logs[col].sum / (t - s0.t);
    std::sort(out.exponents.rbegin(), out.exponents.rend());

    // convergence heuristic: top exponent moved by more than 20% (with a
    // 1e-2 absolute floor) between T/10 and T
    double top = out.exponents.front();
    out.converged = std::abs(top - top_at_tenth) <= std::max(0.2 * std::abs(top), 1e-2);
    return out;
}

}  // namespace pendnet

#endif
