#ifndef PENDNET_ODEINT_HPP
#define PENDNET_ODEINT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pendnet {

using OdeFn = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;

enum class Method { FixedRk4, AdaptiveRk45 };

struct IntegratorConfig {
    Method method = Method::AdaptiveRk45;
    double step = 1e-3;         // fixed RK4 only
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = 0.1;
    double sample_interval = 0.05;

    void validate() const {
        if (step <= 0 || abs_tol <= 0 || rel_tol <= 0 || max_step <= 0 || sample_interval <= 0)
            throw std::invalid_argument("IntegratorConfig: steps and tolerances must be > 0");
    }
};

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool all_finite(const std::vector<double>& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // embedded 4th-order weights
    static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                            e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;
};

class AdaptiveStepper {
  public:
    AdaptiveStepper(const OdeFn& f, int dim, const IntegratorConfig& cfg)
        : f_(f), cfg_(cfg), dim_(dim), k_(7, std::vector<double>(dim)), tmp_(dim),
          ynew_(dim), yerr_(dim) {}

    // Advance y from t0 to t1 (t1 > t0 assumed after time mapping).
    void advance(std::vector<double>& y, double t0, double t1) {
        double t = t0;
        if (!fsal_valid_) {
            f_(t, y, k_[0]);
            fsal_valid_ = true;
        }
        while (t < t1) {
            double span = t1 - t;
            // snap roundoff-sized tails instead of stepping through them
            if (span <= 1e-12 * std::max(1.0, std::abs(t1))) break;
            double h = std::min({h_, cfg_.max_step, span});
            if (h < 1e-14)
                throw StiffnessError("adaptive step underflow (required step < 1e-14)");
            bool clipped = h < h_ || h == span;

            step(y, t, h);
            if (!all_finite(ynew_)) throw DivergenceError("non-finite state during integration");

            double err = error_norm(y, h);
            if (err <= 1.0) {
                t = (h == span) ? t1 : t + h;
                y.swap(ynew_);
                k_[0].swap(k_[6]);  // FSAL
                update_controller(err, h, clipped);
            } else {
                fsal_keep();
                h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
                err_prev_ = 1.0;  // reset PI memory after rejection
                if (h_ < 1e-14)
                    throw StiffnessError("adaptive step underflow (required step < 1e-14)");
            }
        }
    }

    void reset() { fsal_valid_ = false; h_ = 1e-4; err_prev_ = 1.0; }

    // The cached derivative must be dropped whenever the caller mutates y
    // between advance() calls (e.g. tangent-frame reorthonormalization).
    void invalidate_fsal() { fsal_valid_ = false; }

  private:
    void step(const std::vector<double>& y, double t, double h) {
        using T = Dopri5;
        auto& k = k_;
        auto comb = [&](std::initializer_list<std::pair<double, int>> terms) {
            for (int i = 0; i < dim_; ++i) {
                double s = 0.0;
                for (auto [w, idx] : terms) s += w * k[idx][i];
                tmp_[i] = y[i] + h * s;
            }
        };
        comb({{T::a21, 0}});
        f_(t + T::c2 * h, tmp_, k[1]);
        comb({{T::a31, 0}, {T::a32, 1}});
        f_(t + T::c3 * h, tmp_, k[2]);
        comb({{T::a41, 0}, {T::a42, 1}, {T::a43, 2}});
        f_(t + T::c4 * h, tmp_, k[3]);
        comb({{T::a51, 0}, {T::a52, 1}, {T::a53, 2}, {T::a54, 3}});
        f_(t + T::c5 * h, tmp_, k[4]);
        comb({{T::a61, 0}, {T::a62, 1}, {T::a63, 2}, {T::a64, 3}, {T::a65, 4}});
        f_(t + h, tmp_, k[5]);
        for (int i = 0; i < dim_; ++i)
            ynew_[i] = y[i] + h * (T::b1 * k[0][i] + T::b3 * k[2][i] + T::b4 * k[3][i] +
                                   T::b5 * k[4][i] + T::b6 * k[5][i]);
        f_(t + h, ynew_, k[6]);
        for (int i = 0; i < dim_; ++i) {
            double y4 = y[i] + h * (T::e1 * k[0][i] + T::e3 * k[2][i] + T::e4 * k[3][i] +
                                    T::e5 * k[4][i] + T::e6 * k[5][i] + T::e7 * k[6][i]);
            yerr_[i] = ynew_[i] - y4;
        }
    }

    double error_norm(const std::vector<double>& y, double /*h*/) const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
            double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
            double e = yerr_[i] / sc;
            s += e * e;
        }
        return std::sqrt(s / dim_);
    }

    void update_controller(double err, double h, bool clipped) {
        // PI controller (Gustafsson): beta = 0.04, alpha = 0.2 - 0.75*beta
        double e = std::max(err, 1e-16);
        double fac = 0.9 * std::pow(e, -0.17) * std::pow(err_prev_, 0.04);
        fac = std::clamp(fac, 0.2, 5.0);
        double hopt = h * fac;
        if (!clipped || hopt > h_) h_ = hopt;
        err_prev_ = e;
    }

    void fsal_keep() { /* k_[0] still holds f(t, y); nothing to do */ }

    const OdeFn& f_;
    IntegratorConfig cfg_;
    int dim_;
    std::vector<std::vector<double>> k_;
    std::vector<double> tmp_, ynew_, yerr_;
    double h_ = 1e-4;
    double err_prev_ = 1.0;
    bool fsal_valid_ = false;
};

inline void rk4_advance(const OdeFn& f, std::vector<double>& y, double t0, double t1,
                        double step) {
    const int dim = static_cast<int>(y.size());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    double t = t0;
    while (t < t1 - 1e-15) {
        double h = std::min(step, t1 - t);
        f(t, y, k1);
        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        f(t + 0.5 * h, tmp, k2);
        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        f(t + 0.5 * h, tmp, k3);
        for (int i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
        f(t + h, tmp, k4);
        for (int i = 0; i < dim; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!all_finite(y)) throw DivergenceError("non-finite state during integration");
        t += h;
    }
}

}  // namespace detail

/// Integrates y' = f(t, y) from t0 over duration T, invoking
/// sample(t, y) at t0 and every sample_interval thereafter (hit exactly).
inline void integrate_ode(const OdeFn& f, std::vector<double> y, double t0, double T,
                          const IntegratorConfig& cfg,
                          const std::function<void(double, const std::vector<double>&)>& sample) {
    cfg.validate();
    if (T <= 0) throw std::invalid_argument("integrate_ode: T must be > 0");
    if (!detail::all_finite(y)) throw std::invalid_argument("integrate_ode: non-finite initial state");

    const int dim = static_cast<int>(y.size());
    const long nsamples = static_cast<long>(std::floor(T / cfg.sample_interval + 1e-9));
    detail::AdaptiveStepper stepper(f, dim, cfg);

    sample(t0, y);
    double t = t0;
    for (long s = 1; s <= nsamples; ++s) {
        double target = t0 + s * cfg.sample_interval;
        if (cfg.method == Method::AdaptiveRk45)
            stepper.advance(y, t, target);
        else
            detail::rk4_advance(f, y, t, target, cfg.step);
        t = target;
        sample(t, y);
    }
    double end = t0 + T;
    if (end - t > 1e-9 * std::max(1.0, std::abs(end))) {
        if (cfg.method == Method::AdaptiveRk45)
            stepper.advance(y, t, end);
        else
            detail::rk4_advance(f, y, t, end, cfg.step);
        sample(end, y);
    }
}

}  // namespace pendnet

#endif
