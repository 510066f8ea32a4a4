#ifndef PENDNET_IO_HPP
#define PENDNET_IO_HPP

#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pendnet/analysis.hpp"
#include "pendnet/integrator.hpp"
#include "pendnet/lyapunov.hpp"

namespace pendnet {

constexpr const char* kVersion = "0.1.0";

/// Fixed-width decimal formatting so identical runs emit identical bytes.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// `# key: value` comment block embedded at the top of every output file,
/// including a hash of the full configuration string.
inline void write_metadata(std::ostream& os, const std::map<std::string, std::string>& meta) {
    std::string all;
    for (const auto& [k, v] : meta) all += k + "=" + v + ";";
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(all)));
    os << "# tool_version: " << kVersion << "\n";
    os << "# config_hash: " << hash << "\n";
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                                 const std::map<std::string, std::string>& meta = {}) {
    write_metadata(os, meta);
    const int n = traj.states.empty() ? 0 : traj.states.front().size();
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",q" << i;
    for (int i = 1; i <= n; ++i) os << ",p" << i;
    os << ",H\n";
    for (size_t k = 0; k < traj.times.size(); ++k) {
        os << fmt(traj.times[k]);
        for (int i = 0; i < n; ++i) os << "," << fmt(traj.states[k].q[i]);
        for (int i = 0; i < n; ++i) os << "," << fmt(traj.states[k].p[i]);
        os << "," << fmt(traj.energies[k]) << "\n";
    }
}

inline void write_lyapunov_csv(std::ostream& os, const LyapunovResult& res,
                               const std::map<std::string, std::string>& meta = {}) {
    write_metadata(os, meta);
    const int d = static_cast<int>(res.exponents.size());
    os << "checkpoint_time";
    for (int i = 1; i <= d; ++i) os << ",lambda_" << i;
    os << "\n";
    for (size_t k = 0; k < res.checkpoint_times.size(); ++k) {
        os << fmt(res.checkpoint_times[k]);
        auto sorted = res.history[k];
        std::sort(sorted.rbegin(), sorted.rend());
        for (double v : sorted) os << "," << fmt(v);
        os << "\n";
    }
    os << "final";
    for (double v : res.exponents) os << "," << fmt(v);
    os << "\n";
}

inline void write_com_csv(std::ostream& os, const ComSeries& com,
                          const std::map<std::string, std::string>& meta = {}) {
    write_metadata(os, meta);
    os << "t,q_bar,p_bar\n";
    for (size_t k = 0; k < com.times.size(); ++k)
        os << fmt(com.times[k]) << "," << fmt(com.q_bar[k]) << "," << fmt(com.p_bar[k]) << "\n";
}

inline void write_spectrum_csv(std::ostream& os, const FrequencySpectrum& spec,
                               const std::map<std::string, std::string>& meta = {}) {
    write_metadata(os, meta);
    os << "omega,amplitude\n";
    for (size_t k = 0; k < spec.omega.size(); ++k)
        os << fmt(spec.omega[k]) << "," << fmt(spec.amplitude[k]) << "\n";
}

/// Minimal polyline SVG: axes plus one path per series.
inline void write_svg_polylines(std::ostream& os, const std::vector<double>& ts,
                                const std::vector<std::vector<double>>& series,
                                const std::string& title = "") {
    const double w = 800, h = 500, margin = 50;
    double tmin = ts.front(), tmax = ts.back();
    double lo = 1e300, hi = -1e300;
    for (const auto& s : series)
        for (double v : s) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi <= lo) hi = lo + 1.0;
    auto X = [&](double t) { return margin + (w - 2 * margin) * (t - tmin) / (tmax - tmin); };
    auto Y = [&](double v) { return h - margin - (h - 2 * margin) * (v - lo) / (hi - lo); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b"};
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\">\n";
    if (!title.empty())
        os << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title
           << "</text>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
       << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
       << h - margin << "\" stroke=\"black\"/>\n";
    for (size_t si = 0; si < series.size(); ++si) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[si % 6] << "\" points=\"";
        for (size_t k = 0; k < ts.size(); ++k)
            os << fmt(X(ts[k])) << "," << fmt(Y(series[si][k])) << " ";
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace pendnet

#endif
