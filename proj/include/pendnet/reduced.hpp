#ifndef PENDNET_REDUCED_HPP
#define PENDNET_REDUCED_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pendnet/linalg.hpp"
#include "pendnet/partition.hpp"
#include "pendnet/potential.hpp"
#include "pendnet/system.hpp"

namespace pendnet {

/// 1-d.o.f. restriction of the flow to the anti-synchrony subspace of a
/// bivalent/trivalent eigenvector:
///   x' = y + k d_pm G01(2x,2y) + k d_0 G01(x,y)
///   y' = -sin x - k d_pm G10(2x,2y) - k d_0 G10(x,y)
struct ReducedSystem {
    int d_pm = 0;
    int d_0 = 0;
    int lambda = 0;  // = 2 d_pm + d_0
    InteractionPotential potential;
    double kappa = 0.0;

    std::array<double, 2> vector_field(double x, double y) const {
        const auto& G = potential;
        double xd = y + kappa * (d_pm * G.eval(2 * x, 2 * y, 0, 1) + d_0 * G.eval(x, y, 0, 1));
        double yd = -std::sin(x) -
                    kappa * (d_pm * G.eval(2 * x, 2 * y, 1, 0) + d_0 * G.eval(x, y, 1, 0));
        return {xd, yd};
    }

    /// K = y^2/2 - cos x + k (d_pm/2) G(2x,2y) + k d_0 G(x,y).
    double hamiltonian(double x, double y) const {
        return 0.5 * y * y - std::cos(x) +
               kappa * (0.5 * d_pm * potential.eval(2 * x, 2 * y) + d_0 * potential.eval(x, y));
    }
};

inline ReducedSystem reduce(const CoupledSystem& sys, const SignVector& v) {
    if (static_cast<int>(v.entries.size()) != sys.n())
        throw std::invalid_argument("reduce: sign vector length mismatch");
    auto [d_pm, d_0] = partition_counts(v, sys.graph);  // also checks validity
    return {d_pm, d_0, v.lambda, sys.potential, sys.kappa};
}

namespace detail {

inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Roots of y'(x, 0) = 0 on [-pi, pi]: sign-change bracketing on a grid of
/// step pi/200 refined by bisection. x = 0 is always a root (odd field).
inline std::vector<double> equilibria_on_axis(const ReducedSystem& rs) {
    auto g = [&rs](double x) { return rs.vector_field(x, 0.0)[1]; };
    const double step = M_PI / 200.0;
    std::vector<double> roots;
    double prev_x = -M_PI, prev_g = g(prev_x);
    if (std::abs(prev_g) < 1e-14) roots.push_back(prev_x);
    for (int k = 1; k <= 400; ++k) {
        double x = -M_PI + k * step;
        double gx = g(x);
        if (std::abs(gx) < 1e-14) {
            roots.push_back(x);
        } else if ((prev_g < 0) != (gx < 0) && std::abs(prev_g) >= 1e-14) {
            roots.push_back(detail::bisect_root(g, prev_x, x));
        }
        prev_x = x;
        prev_g = gx;
    }
    // snap the symmetric root at the origin
    for (double& r : roots)
        if (std::abs(r) < 1e-9) r = 0.0;
    bool has_zero = std::any_of(roots.begin(), roots.end(), [](double r) { return r == 0.0; });
    if (!has_zero) roots.push_back(0.0);
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct Equilibrium {
    double x;
    double y;
    enum class Class { Center, Saddle } cls;
};

struct PitchforkPoint {
    double kappa;          // located bifurcation parameter (grid midpoint)
    char axis;             // 'x' (c10 branch) or 'y' (c01 branch)
    double nondeg_third;   // finite-difference third derivative along the axis
    double nondeg_mixed;   // finite-difference d^2/(dkappa daxis)
    double closed_third;   // closed-form values for comparison
    double closed_mixed;
};

struct BranchDiagram {
    std::vector<double> kappa_grid;
    std::vector<std::vector<Equilibrium>> equilibria;  // per grid value
    std::vector<PitchforkPoint> bifurcations;
};

namespace detail {

inline Equilibrium::Class classify_reduced(const ReducedSystem& rs, double x, double y) {
    const double h = 1e-6;
    auto fx = [&](double a, double b) { return rs.vector_field(a, b)[0]; };
    auto fy = [&](double a, double b) { return rs.vector_field(a, b)[1]; };
    double j11 = (fx(x + h, y) - fx(x - h, y)) / (2 * h);
    double j12 = (fx(x, y + h) - fx(x, y - h)) / (2 * h);
    double j21 = (fy(x + h, y) - fy(x - h, y)) / (2 * h);
    double j22 = (fy(x, y + h) - fy(x, y - h)) / (2 * h);
    // trace is zero for the Hamiltonian field; sign of det decides
    double det = j11 * j22 - j12 * j21;
    return det >= 0 ? Equilibrium::Class::Center : Equilibrium::Class::Saddle;
}

// Roots of x'(0, y) = 0, the y-axis analogue of equilibria_on_axis.
inline std::vector<double> equilibria_on_y_axis(const ReducedSystem& rs) {
    auto f = [&rs](double y) { return rs.vector_field(0.0, y)[0]; };
    const double step = M_PI / 200.0;
    std::vector<double> roots;
    double prev_y = -M_PI, prev_f = f(prev_y);
    if (std::abs(prev_f) < 1e-14) roots.push_back(prev_y);
    for (int k = 1; k <= 400; ++k) {
        double y = -M_PI + k * step;
        double fy = f(y);
        if (std::abs(fy) < 1e-14) roots.push_back(y);
        else if ((prev_f < 0) != (fy < 0) && std::abs(prev_f) >= 1e-14)
            roots.push_back(bisect_root(f, prev_y, y));
        prev_y = y;
        prev_f = fy;
    }
    for (double& r : roots)
        if (std::abs(r) < 1e-9) r = 0.0;
    if (std::none_of(roots.begin(), roots.end(), [](double r) { return r == 0.0; }))
        roots.push_back(0.0);
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline int count_interior(const std::vector<double>& roots) {
    int c = 0;
    for (double r : roots)
        if (std::abs(r) < M_PI - 1e-6) ++c;
    return c;
}

}  // namespace detail

/// Sweeps the kappa grid, counting axis equilibria of the reduced system and
/// locating 1 -> 3 transitions (the pitchfork openings) on both axes. At
/// each located point the non-degeneracy derivatives are reported from
/// central finite differences together with their closed forms.
inline BranchDiagram detect_pitchfork(const ReducedSystem& base,
                                      const std::vector<double>& kappa_grid) {
    if (kappa_grid.size() < 2)
        throw std::invalid_argument("detect_pitchfork: grid needs >= 2 points");
    BranchDiagram out;
    out.kappa_grid = kappa_grid;

    auto at_kappa = [&base](double k) {
        ReducedSystem rs = base;
        rs.kappa = k;
        return rs;
    };

    int prev_x_count = -1, prev_y_count = -1;
    for (size_t gi = 0; gi < kappa_grid.size(); ++gi) {
        ReducedSystem rs = at_kappa(kappa_grid[gi]);
        auto xroots = equilibria_on_axis(rs);
        auto yroots = detail::equilibria_on_y_axis(rs);

        std::vector<Equilibrium> eqs;
        for (double r : xroots)
            if (std::abs(r) < M_PI - 1e-6)
                eqs.push_back({r, 0.0, detail::classify_reduced(rs, r, 0.0)});
        for (double r : yroots)
            if (r != 0.0 && std::abs(r) < M_PI - 1e-6)
                eqs.push_back({0.0, r, detail::classify_reduced(rs, 0.0, r)});
        out.equilibria.push_back(std::move(eqs));

        int xc = detail::count_interior(xroots);
        int yc = detail::count_interior(yroots);
        auto locate = [&](int prev, int cur, char axis) {
            if (prev < 0 || !(prev == 1 && cur >= 3)) return;
            double k_lo = kappa_grid[gi - 1], k_hi = kappa_grid[gi];
            const double h = 1e-3, ek = 1e-5;
            auto gfun = [&](const ReducedSystem& r, double s) {
                return axis == 'x' ? r.vector_field(s, 0.0)[1] : r.vector_field(0.0, s)[0];
            };
            // the axis slope at the origin crosses zero exactly at the
            // pitchfork; refine within the bracketing grid cell
            auto slope = [&](double k) {
                ReducedSystem r = at_kappa(k);
                return (gfun(r, h) - gfun(r, -h)) / (2 * h);
            };
            // small branch amplitudes can delay the count transition by a
            // cell, so allow the bracket to grow downward a few cells
            double lo = k_lo, hi = k_hi;
            double cell = k_hi - k_lo;
            double floor_k = kappa_grid.front();
            for (int grow = 0; grow < 4 && (slope(lo) < 0) == (slope(hi) < 0) && lo - cell >= floor_k;
                 ++grow)
                lo -= cell;
            double k_mid;
            if ((slope(lo) < 0) != (slope(hi) < 0))
                k_mid = detail::bisect_root(slope, lo, hi);
            else
                k_mid = 0.5 * (k_lo + k_hi);
            ReducedSystem rc = at_kappa(k_mid);
            double third = (-gfun(rc, -2 * h) + 2 * gfun(rc, -h) - 2 * gfun(rc, h) +
                            gfun(rc, 2 * h)) /
                           (2 * h * h * h);
            auto gx = [&](double k) {
                ReducedSystem r = at_kappa(k);
                return (gfun(r, h) - gfun(r, -h)) / (2 * h);
            };
            double mixed = (gx(k_mid + ek) - gx(k_mid - ek)) / (2 * ek);

            double lam = base.lambda;
            double c10 = base.potential.coefficient(1, 0);
            double c01 = base.potential.coefficient(0, 1);
            double c20 = base.potential.coefficient(2, 0);
            double c02 = base.potential.coefficient(0, 2);
            double reach = 8.0 * base.d_pm + base.d_0;
            double closed_third, closed_mixed;
            if (axis == 'x') {
                closed_third = 1.0 + 12.0 * c20 / (lam * c10) * reach;
                // d/dkappa of dg/dx = -1 - 2 kappa c10 lambda
                closed_mixed = -2.0 * lam * c10;
            } else {
                closed_third = -12.0 * c02 / (lam * c01) * reach;
                closed_mixed = 2.0 * lam * c01;
            }
            out.bifurcations.push_back({k_mid, axis, third, mixed, closed_third, closed_mixed});
        };
        locate(prev_x_count, xc, 'x');
        locate(prev_y_count, yc, 'y');
        prev_x_count = xc;
        prev_y_count = yc;
    }
    return out;
}

// ---- transversal stability ------------------------------------------

/// Eigenvalues of the Jacobian projected onto the orthogonal complement of
/// span{(v,0),(0,v)} at the embedded state (x v, 0).
inline std::vector<std::complex<double>> transversal_eigenvalues(const CoupledSystem& sys,
                                                                 const SignVector& v, double x,
                                                                 double kappa) {
    const int n = sys.n(), d = 2 * n;
    CoupledSystem at(sys.graph, sys.potential, kappa);
    std::vector<double> q(n), p(n, 0.0);
    for (int i = 0; i < n; ++i) q[i] = x * v.entries[i];
    Mat J = jacobian(at, SystemState(q, p));

    // orthonormal basis of the complement via Gram-Schmidt against the
    // two v-directions, seeded with standard basis vectors
    Eigen::MatrixXd dirs(d, 2);
    dirs.setZero();
    for (int i = 0; i < n; ++i) {
        dirs(i, 0) = v.entries[i];
        dirs(n + i, 1) = v.entries[i];
    }
    dirs.col(0).normalize();
    dirs.col(1).normalize();
    Eigen::MatrixXd B(d, d - 2);
    int cols = 0;
    for (int e = 0; e < d && cols < d - 2; ++e) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
        w(e) = 1.0;
        w -= dirs.col(0) * dirs.col(0).dot(w);
        w -= dirs.col(1) * dirs.col(1).dot(w);
        for (int c = 0; c < cols; ++c) w -= B.col(c) * B.col(c).dot(w);
        double norm = w.norm();
        if (norm < 1e-8) continue;
        B.col(cols++) = w / norm;
    }
    if (cols != d - 2) throw std::runtime_error("transversal basis construction failed");

    Eigen::MatrixXd Je(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Je(i, j) = J(i, j);
    Eigen::MatrixXd M = B.transpose() * Je * B;
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    std::vector<std::complex<double>> out(d - 2);
    for (int i = 0; i < d - 2; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

struct StabilityMap {
    std::vector<double> x_grid;
    std::vector<double> kappa_grid;
    std::vector<std::vector<bool>> stable;  // [xi][ki]
};

/// Classifies each (x, kappa) cell of the anti-synchrony axis as
/// transversely stable-elliptic (all projected eigenvalues imaginary)
/// or unstable (any with |Re| > 1e-8).
inline StabilityMap transversal_stability_map(const CoupledSystem& sys, const SignVector& v,
                                              const std::vector<double>& x_grid,
                                              const std::vector<double>& kappa_grid) {
    StabilityMap map;
    map.x_grid = x_grid;
    map.kappa_grid = kappa_grid;
    map.stable.assign(x_grid.size(), std::vector<bool>(kappa_grid.size(), false));
    for (size_t xi = 0; xi < x_grid.size(); ++xi)
        for (size_t ki = 0; ki < kappa_grid.size(); ++ki) {
            auto eigs = transversal_eigenvalues(sys, v, x_grid[xi], kappa_grid[ki]);
            bool stable = true;
            for (const auto& e : eigs) stable &= std::abs(e.real()) <= 1e-8;
            map.stable[xi][ki] = stable;
        }
    return map;
}

// ---- double-cusp unfolding level sets --------------------------------

struct LevelSetGrid {
    std::vector<double> xs, ys;
    Mat F;  // F(xs[i], ys[j]) at (i, j)
    double level = 0.0;
    std::vector<std::array<double, 2>> critical_points;
    bool degenerate = false;  // a^2 == 4
};

/// F = x^4 + y^4 + a x^2 y^2 + alpha x^2 + beta y^2, sampled on the grid.
/// Critical points located by damped Newton on grad F from multi-start.
inline LevelSetGrid double_cusp_levelset(double a, double alpha, double beta, double x_lo,
                                         double x_hi, int nx, double y_lo, double y_hi, int ny,
                                         double level = 0.0) {
    LevelSetGrid out;
    out.level = level;
    out.degenerate = std::abs(a * a - 4.0) < 1e-12;
    auto F = [&](double x, double y) {
        return x * x * x * x + y * y * y * y + a * x * x * y * y + alpha * x * x + beta * y * y;
    };
    out.xs.resize(nx);
    out.ys.resize(ny);
    out.F = Mat(nx, ny);
    for (int i = 0; i < nx; ++i) out.xs[i] = x_lo + (x_hi - x_lo) * i / (nx - 1);
    for (int j = 0; j < ny; ++j) out.ys[j] = y_lo + (y_hi - y_lo) * j / (ny - 1);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) out.F(i, j) = F(out.xs[i], out.ys[j]);

    auto grad = [&](double x, double y) {
        return std::array<double, 2>{4 * x * x * x + 2 * a * x * y * y + 2 * alpha * x,
                                     4 * y * y * y + 2 * a * x * x * y + 2 * beta * y};
    };
    auto hess = [&](double x, double y) {
        return std::array<double, 4>{12 * x * x + 2 * a * y * y + 2 * alpha, 4 * a * x * y,
                                     4 * a * x * y, 12 * y * y + 2 * a * x * x + 2 * beta};
    };
    const int starts = 9;
    for (int si = 0; si < starts; ++si)
        for (int sj = 0; sj < starts; ++sj) {
            double x = x_lo + (x_hi - x_lo) * si / (starts - 1);
            double y = y_lo + (y_hi - y_lo) * sj / (starts - 1);
            bool ok = false;
            for (int it = 0; it < 100; ++it) {
                auto g = grad(x, y);
                if (std::hypot(g[0], g[1]) < 1e-12) {
                    ok = true;
                    break;
                }
                auto h = hess(x, y);
                double det = h[0] * h[3] - h[1] * h[2];
                if (std::abs(det) < 1e-14) break;
                double dx = (h[3] * g[0] - h[1] * g[1]) / det;
                double dy = (-h[2] * g[0] + h[0] * g[1]) / det;
                if (std::abs(dx) > 1.0) dx = std::copysign(1.0, dx);
                if (std::abs(dy) > 1.0) dy = std::copysign(1.0, dy);
                x -= dx;
                y -= dy;
                if (!std::isfinite(x) || !std::isfinite(y)) break;
            }
            if (!ok) continue;
            if (std::abs(x) < 1e-9) x = 0.0;
            if (std::abs(y) < 1e-9) y = 0.0;
            bool dup = false;
            for (auto& cp : out.critical_points)
                dup |= std::hypot(cp[0] - x, cp[1] - y) < 1e-6;
            if (!dup) out.critical_points.push_back({x, y});
        }
    std::sort(out.critical_points.begin(), out.critical_points.end());
    return out;
}

}  // namespace pendnet

#endif
