#ifndef PENDNET_ANALYSIS_HPP
#define PENDNET_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pendnet/connectivity.hpp"
#include "pendnet/graph.hpp"
#include "pendnet/integrator.hpp"
#include "pendnet/system.hpp"

namespace pendnet {

/// Linearization eigenvalues at a fully synchronous state: for each
/// Laplacian eigenvalue lambda,
///   +- sqrt(-(1 + 2 k c01 lambda)(cos q_synch + 2 k c10 lambda)).
/// Each value is purely real or purely imaginary.
inline std::vector<std::complex<double>> synchrony_eigenvalues(const CoupledSystem& sys,
                                                               double q_synch) {
    auto spec = spectrum(sys.graph);
    const double c10 = sys.potential.coefficient(1, 0);
    const double c01 = sys.potential.coefficient(0, 1);
    std::vector<std::complex<double>> out;
    out.reserve(2 * sys.n());
    for (double lam : spec.eigenvalues) {
        double r = -(1.0 + 2.0 * sys.kappa * c01 * lam) *
                   (std::cos(q_synch) + 2.0 * sys.kappa * c10 * lam);
        if (r >= 0.0) {
            double s = std::sqrt(r);
            out.emplace_back(s, 0.0);
            out.emplace_back(-s, 0.0);
        } else {
            double s = std::sqrt(-r);
            out.emplace_back(0.0, s);
            out.emplace_back(0.0, -s);
        }
    }
    return out;
}

enum class CouplingBranch { C10, C01 };  // position / momentum interaction term

struct CriticalCoupling {
    double kappa;
    double lambda;  // Laplacian eigenvalue producing this value
    CouplingBranch branch;
    int multiplicity;
};

/// All kappa = -1/(2 c lambda) over non-zero Laplacian eigenvalues and
/// c in {c10, c01} with c < 0. Branches with c >= 0 yield no bifurcation
/// of the origin and are skipped; both nonnegative gives an empty set.
inline std::vector<CriticalCoupling> critical_couplings(const CoupledSystem& sys) {
    auto spec = spectrum(sys.graph);
    std::vector<CriticalCoupling> out;
    auto add_branch = [&](double c, CouplingBranch branch) {
        if (c >= 0.0) return;
        for (double lam : spec.eigenvalues) {
            if (lam < 1e-9) continue;
            double kappa = -1.0 / (2.0 * c * lam);
            bool merged = false;
            for (auto& cc : out)
                if (cc.branch == branch && std::abs(cc.kappa - kappa) <= 1e-9 * (1.0 + kappa)) {
                    ++cc.multiplicity;
                    merged = true;
                    break;
                }
            if (!merged) out.push_back({kappa, lam, branch, 1});
        }
    };
    add_branch(sys.potential.coefficient(1, 0), CouplingBranch::C10);
    add_branch(sys.potential.coefficient(0, 1), CouplingBranch::C01);
    std::sort(out.begin(), out.end(),
              [](const CriticalCoupling& a, const CriticalCoupling& b) { return a.kappa < b.kappa; });
    return out;
}

struct BifurcationInterval {
    CouplingBranch branch;
    double lo;
    double hi;
};

/// -1/(2c) * [1/N, N/(2 kappa')] per negative coefficient branch, where
/// kappa' is the edge-connectivity. Contains every critical coupling.
inline std::vector<BifurcationInterval> bifurcation_interval(const CoupledSystem& sys) {
    int kprime = edge_connectivity(sys.graph);
    if (kprime == 0)
        throw std::domain_error("bifurcation_interval: graph disconnected (edge-connectivity 0)");
    const double N = sys.n();
    std::vector<BifurcationInterval> out;
    auto add_branch = [&](double c, CouplingBranch branch) {
        if (c >= 0.0) return;
        double scale = -1.0 / (2.0 * c);
        out.push_back({branch, scale / N, scale * N / (2.0 * kprime)});
    };
    add_branch(sys.potential.coefficient(1, 0), CouplingBranch::C10);
    add_branch(sys.potential.coefficient(0, 1), CouplingBranch::C01);
    return out;
}

struct ComSeries {
    std::vector<double> times;
    std::vector<double> q_bar;
    std::vector<double> p_bar;
};

inline ComSeries centre_of_mass(const Trajectory& traj) {
    if (traj.states.empty()) throw std::invalid_argument("centre_of_mass: empty trajectory");
    ComSeries com;
    com.times = traj.times;
    com.q_bar.reserve(traj.states.size());
    com.p_bar.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        double qs = 0.0, ps = 0.0;
        for (int i = 0; i < s.size(); ++i) {
            qs += s.q[i];
            ps += s.p[i];
        }
        com.q_bar.push_back(qs / s.size());
        com.p_bar.push_back(ps / s.size());
    }
    return com;
}

struct SpectralPeak {
    double omega;      // angular frequency
    double amplitude;  // windowed DFT magnitude (arbitrary units)
};

struct FrequencySpectrum {
    std::vector<double> omega;
    std::vector<double> amplitude;
};

namespace detail {

// Hann-windowed magnitudes of the positive-frequency DFT bins (1..n/2).
inline FrequencySpectrum windowed_dft(const std::vector<double>& samples, double dt) {
    const int n = static_cast<int>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = (samples[i] - mean) * 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
    FrequencySpectrum spec;
    const int half = n / 2;
    spec.omega.reserve(half);
    spec.amplitude.reserve(half);
    for (int k = 1; k <= half; ++k) {
        double re = 0.0, im = 0.0;
        double ang = -2.0 * M_PI * k / n;
        double c = std::cos(ang), s = std::sin(ang);
        double cr = 1.0, ci = 0.0;  // running phasor
        for (int i = 0; i < n; ++i) {
            re += w[i] * cr;
            im += w[i] * ci;
            double nr = cr * c - ci * s;
            ci = cr * s + ci * c;
            cr = nr;
        }
        spec.omega.push_back(2.0 * M_PI * k / (n * dt));
        spec.amplitude.push_back(std::hypot(re, im));
    }
    return spec;
}

}  // namespace detail

/// Angular frequency of the largest non-DC DFT bin of q_bar, refined by
/// quadratic interpolation of the neighboring bin magnitudes. Empty for a
/// constant series.
inline std::optional<SpectralPeak> dominant_frequency(const ComSeries& series) {
    const int n = static_cast<int>(series.q_bar.size());
    if (n < 1024) throw std::invalid_argument("dominant_frequency: need >= 1024 samples");
    double dt = series.times[1] - series.times[0];
    auto spec = detail::windowed_dft(series.q_bar, dt);

    int peak = 0;
    for (int k = 1; k < static_cast<int>(spec.amplitude.size()); ++k)
        if (spec.amplitude[k] > spec.amplitude[peak]) peak = k;
    if (spec.amplitude[peak] < 1e-12 * n) return std::nullopt;  // no oscillation

    double delta = 0.0;
    if (peak > 0 && peak + 1 < static_cast<int>(spec.amplitude.size())) {
        double ym = spec.amplitude[peak - 1], y0 = spec.amplitude[peak],
               yp = spec.amplitude[peak + 1];
        double denom = ym - 2.0 * y0 + yp;
        if (std::abs(denom) > 1e-300) delta = 0.5 * (ym - yp) / denom;
    }
    double bin = (peak + 1) + delta;  // spec.omega[0] is bin 1
    return SpectralPeak{2.0 * M_PI * bin / (n * dt), spec.amplitude[peak]};
}

/// Residual of the centre-of-mass momentum equation,
/// max_t | d p_bar/dt + (1/N) sum_i sin q_i |, by central differences.
inline double com_residual(const Trajectory& traj) {
    auto com = centre_of_mass(traj);
    const int n = static_cast<int>(com.times.size());
    if (n < 3) throw std::invalid_argument("com_residual: need >= 3 samples");
    double worst = 0.0;
    for (int k = 1; k + 1 < n; ++k) {
        double dt = com.times[k + 1] - com.times[k - 1];
        double dpbar = (com.p_bar[k + 1] - com.p_bar[k - 1]) / dt;
        const auto& s = traj.states[k];
        double sinsum = 0.0;
        for (double qi : s.q) sinsum += std::sin(qi);
        worst = std::max(worst, std::abs(dpbar + sinsum / s.size()));
    }
    return worst;
}

// ---- relative coordinates (N = 2 only) -------------------------------

struct RelativeState {
    double q_s, p_s;  // differences
    double q_a, p_a;  // sums
};

inline RelativeState to_relative(const SystemState& s) {
    if (s.size() != 2) throw std::domain_error("to_relative: requires N = 2");
    return {s.q[0] - s.q[1], s.p[0] - s.p[1], s.q[0] + s.q[1], s.p[0] + s.p[1]};
}

inline SystemState from_relative(const RelativeState& r, double t = 0.0) {
    return SystemState({0.5 * (r.q_a + r.q_s), 0.5 * (r.q_a - r.q_s)},
                       {0.5 * (r.p_a + r.p_s), 0.5 * (r.p_a - r.p_s)}, t);
}

/// Vector field in relative coordinates for a coupled pair:
///   q_s' = p_s + 2k G01(q_s, p_s)
///   q_a' = p_a
///   p_s' = -2 (cos(q_a/2) sin(q_s/2) + k G10(q_s, p_s))
///   p_a' = -2 cos(q_s/2) sin(q_a/2)
inline RelativeState relative_vector_field(const CoupledSystem& sys, const RelativeState& r) {
    if (sys.n() != 2 || sys.graph.edges.size() != 1)
        throw std::domain_error("relative_vector_field: requires the two-node coupled pair");
    RelativeState d;
    d.q_s = r.p_s + 2.0 * sys.kappa * sys.potential.eval(r.q_s, r.p_s, 0, 1);
    d.q_a = r.p_a;
    d.p_s = -2.0 * (std::cos(0.5 * r.q_a) * std::sin(0.5 * r.q_s) +
                    sys.kappa * sys.potential.eval(r.q_s, r.p_s, 1, 0));
    d.p_a = -2.0 * std::cos(0.5 * r.q_s) * std::sin(0.5 * r.q_a);
    return d;
}

}  // namespace pendnet

#endif
