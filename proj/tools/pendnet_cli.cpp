// Command-line front end: graph spectra, simulations, Lyapunov spectra,
// bifurcation scans, and level-set sampling, with CSV/SVG output.
//
// Exit codes: 0 success, 1 numerical failure, 2 input error.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pendnet/pendnet.hpp"

namespace fs = std::filesystem;
using namespace pendnet;

namespace {

struct CommonOpts {
    std::string graph = "complete:2";
    std::string potential = "double-well";
    double kappa = 0.0;
    std::string kappa_range;  // "a:b:n"
    std::vector<double> ic;
    double T = 100.0;
    double tol = 1e-10;
    std::string out = ".";
    int jobs = 1;
    unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_kappa = true) {
    cmd->add_option("--graph", o.graph, "graph spec: path:N, cycle:N, complete:N, or file");
    cmd->add_option("--potential", o.potential, "potential: double-well, harmonic, or file");
    if (needs_kappa) cmd->add_option("--kappa", o.kappa, "coupling strength");
    cmd->add_option("--ic", o.ic, "initial condition q1..qN p1..pN");
    cmd->add_option("--T", o.T, "integration horizon");
    cmd->add_option("--tol", o.tol, "integrator tolerance (abs and rel)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--jobs", o.jobs, "worker threads for sweeps");
    cmd->add_option("--seed", o.seed, "RNG seed for randomized initial conditions");
}

IntegratorConfig config_from(const CommonOpts& o) {
    IntegratorConfig cfg;
    cfg.abs_tol = cfg.rel_tol = o.tol;
    return cfg;
}

SystemState initial_state(const CommonOpts& o, int n) {
    if (!o.ic.empty()) {
        if (static_cast<int>(o.ic.size()) != 2 * n)
            throw std::invalid_argument("--ic must have 2N entries");
        return SystemState(std::vector<double>(o.ic.begin(), o.ic.begin() + n),
                           std::vector<double>(o.ic.begin() + n, o.ic.end()));
    }
    std::mt19937 rng(o.seed);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    std::vector<double> q(n), p(n);
    for (int i = 0; i < n; ++i) {
        q[i] = u(rng);
        p[i] = u(rng);
    }
    return SystemState(std::move(q), std::move(p));
}

std::map<std::string, std::string> base_metadata(const CommonOpts& o) {
    std::map<std::string, std::string> meta;
    meta["graph"] = o.graph;
    meta["potential"] = o.potential;
    meta["kappa"] = fmt(o.kappa);
    meta["T"] = fmt(o.T);
    meta["tol"] = fmt(o.tol);
    meta["seed"] = std::to_string(o.seed);
    return meta;
}

std::ofstream open_out(const CommonOpts& o, const std::string& name) {
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / name, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + name);
    return f;
}

std::vector<double> parse_range(const std::string& spec) {
    double a, b;
    int n;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 2 || b <= a)
        throw std::invalid_argument("--kappa-range must be a:b:n with b > a, n >= 2");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = a + (b - a) * i / (n - 1);
    return grid;
}

std::string sign_vector_str(const SignVector& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.entries.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v.entries[i]);
    }
    return s + ")";
}

// picks the anti-synchrony direction with the smallest eigenvalue, the
// branch shown in the bifurcation diagrams
SignVector scan_direction(const Graph& g) {
    auto vecs = find_sign_eigenvectors(g, true);
    if (vecs.empty()) throw std::invalid_argument("graph has no anti-synchrony directions");
    size_t best = 0;
    for (size_t i = 1; i < vecs.size(); ++i)
        if (vecs[i].lambda < vecs[best].lambda) best = i;
    return vecs[best];
}

void run_parallel(int jobs, int tasks, const std::function<void(int)>& work) {
    if (jobs <= 1) {
        for (int i = 0; i < tasks; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(jobs, tasks); ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < tasks; i = next++) work(i);
        });
    for (auto& th : pool) th.join();
}

// ---- subcommands -------------------------------------------------------

int cmd_spectrum(const CommonOpts& o) {
    Graph g = parse_graph_spec(o.graph);
    auto pot = InteractionPotential::named_or_file(o.potential);
    auto spec = spectrum(g);
    std::cout << "graph: " << o.graph << " (n=" << g.n << ", edges=" << g.edges.size() << ")\n";
    std::cout << "laplacian eigenvalues:";
    for (double v : spec.eigenvalues) std::cout << " " << fmt(v);
    std::cout << "\nedge connectivity: " << edge_connectivity(g) << "\n";
    std::cout << "sign eigenvectors:\n";
    for (const auto& v : find_sign_eigenvectors(g, true))
        std::cout << "  lambda=" << v.lambda << " v=" << sign_vector_str(v) << "\n";
    CoupledSystem sys(g, pot, 0.0);
    for (const auto& cc : critical_couplings(sys))
        std::cout << "critical kappa=" << fmt(cc.kappa) << " (lambda=" << fmt(cc.lambda)
                  << ", mult=" << cc.multiplicity << ")\n";
    if (is_connected(g))
        for (const auto& iv : bifurcation_interval(sys))
            std::cout << "interval [" << fmt(iv.lo) << ", " << fmt(iv.hi) << "] ("
                      << (iv.branch == CouplingBranch::C10 ? "position" : "momentum")
                      << " branch)\n";
    return 0;
}

int cmd_partitions(const CommonOpts& o) {
    Graph g = parse_graph_spec(o.graph);
    auto vecs = find_sign_eigenvectors(g, true);
    std::cout << "single-letter anti-synchrony patterns of " << o.graph << ":\n";
    for (const auto& v : vecs) {
        auto p = sign_vector_to_partition(v);
        auto rep = verify_odd_balanced(g, p);
        std::cout << "  v=" << sign_vector_str(v) << " lambda=" << v.lambda
                  << (v.bivalent() ? " bivalent" : " trivalent")
                  << " odd-balanced=" << (rep.ok ? "yes" : "no") << "\n";
    }
    if (vecs.empty()) std::cout << "  none\n";
    return 0;
}

int cmd_simulate(const CommonOpts& o) {
    Graph g = parse_graph_spec(o.graph);
    CoupledSystem sys(g, InteractionPotential::named_or_file(o.potential), o.kappa);
    SystemState s0 = initial_state(o, g.n);
    auto traj = integrate(sys, s0, o.T, config_from(o));
    auto meta = base_metadata(o);
    meta["energy_drift"] = fmt(traj.energy_drift);

    auto fcsv = open_out(o, "trajectory.csv");
    write_trajectory_csv(fcsv, traj, meta);
    auto fcom = open_out(o, "com.csv");
    write_com_csv(fcom, centre_of_mass(traj), meta);

    std::vector<std::vector<double>> series(g.n);
    for (const auto& s : traj.states)
        for (int i = 0; i < g.n; ++i) series[i].push_back(s.q[i]);
    auto fsvg = open_out(o, "trajectory.svg");
    write_svg_polylines(fsvg, traj.times, series, "positions q_i(t)");

    std::cout << "samples: " << traj.times.size() << "\n";
    std::cout << "energy drift: " << fmt(traj.energy_drift) << "\n";
    return 0;
}

int cmd_lyapunov(const CommonOpts& o) {
    Graph g = parse_graph_spec(o.graph);
    CoupledSystem sys(g, InteractionPotential::named_or_file(o.potential), o.kappa);
    SystemState s0 = initial_state(o, g.n);
    auto res = lyapunov_spectrum(sys, s0, o.T, 1.0, config_from(o));
    auto meta = base_metadata(o);
    meta["converged"] = res.converged ? "yes" : "no (last-decade drift > 20%)";
    auto f = open_out(o, "lyapunov.csv");
    write_lyapunov_csv(f, res, meta);
    std::cout << "exponents:";
    for (double e : res.exponents) std::cout << " " << fmt(e);
    std::cout << "\n";
    if (!res.converged) std::cout << "warning: top exponent not converged\n";
    return 0;
}

int cmd_table1(const CommonOpts& o) {
    struct Row {
        const char* label;
        Graph g;
        double kappa;
        std::vector<double> q0;
    };
    std::vector<Row> rows = {
        {"K2 kappa=1/5", make_complete(2), 1.0 / 5, {1.0 / 5, 1.0 / 7}},
        {"K2 kappa=1/2", make_complete(2), 1.0 / 2, {1.0 / 5, 1.0 / 7}},
        {"K3 kappa=1/8", make_complete(3), 1.0 / 8, {1.0 / 5, 1.0 / 7, 1.0 / 10}},
        {"K3 kappa=1/4", make_complete(3), 1.0 / 4, {1.0 / 5, 1.0 / 7, 1.0 / 10}},
        {"P3 kappa=1/8", make_path(3), 1.0 / 8, {1.0 / 5, 1.0 / 10, 1.0 / 7}},
        {"P3 kappa=1/4", make_path(3), 1.0 / 4, {1.0 / 5, 1.0 / 10, 1.0 / 7}},
        {"P3 kappa=1", make_path(3), 1.0, {1.0 / 5, 1.0 / 10, 1.0 / 7}},
    };
    double T = o.T > 100.0 ? o.T : 1e4;
    std::vector<std::string> lines(rows.size());
    run_parallel(o.jobs, static_cast<int>(rows.size()), [&](int i) {
        const auto& r = rows[i];
        CoupledSystem sys(r.g, InteractionPotential::double_well(), r.kappa);
        SystemState s0(r.q0, std::vector<double>(r.q0.size(), 0.0));
        double H = hamiltonian(sys, s0);
        auto res = lyapunov_spectrum(sys, s0, T, 1.0, config_from(o));
        std::ostringstream os;
        os << r.label << "  E=" << fmt(H) << "  "
           << (res.exponents.front() > 1e-2 ? "CHAOTIC" : "REGULAR") << "  exponents:";
        for (double e : res.exponents) os << " " << fmt(e);
        lines[i] = os.str();
    });
    for (const auto& l : lines) std::cout << l << "\n";
    return 0;
}

int cmd_scan(const CommonOpts& o) {
    if (o.kappa_range.empty()) throw std::invalid_argument("scan requires --kappa-range");
    auto grid = parse_range(o.kappa_range);
    Graph g = parse_graph_spec(o.graph);
    auto pot = InteractionPotential::named_or_file(o.potential);
    CoupledSystem sys(g, pot, 0.0);
    SignVector v = scan_direction(g);
    auto base = reduce(sys, v);
    auto diag = detect_pitchfork(base, grid);

    auto meta = base_metadata(o);
    meta["direction"] = sign_vector_str(v);
    meta["lambda"] = std::to_string(v.lambda);
    auto fbranch = open_out(o, "branches.csv");
    write_metadata(fbranch, meta);
    fbranch << "kappa,x_eq,y_eq,class\n";
    for (size_t k = 0; k < grid.size(); ++k)
        for (const auto& eq : diag.equilibria[k])
            fbranch << fmt(grid[k]) << "," << fmt(eq.x) << "," << fmt(eq.y) << ","
                    << (eq.cls == Equilibrium::Class::Center ? "center" : "saddle") << "\n";

    std::vector<double> xs;
    for (int i = 0; i <= 40; ++i) xs.push_back(-1.5 + 3.0 * i / 40);
    std::vector<std::vector<int>> stable(xs.size(), std::vector<int>(grid.size(), 0));
    run_parallel(o.jobs, static_cast<int>(grid.size()), [&](int ki) {
        for (size_t xi = 0; xi < xs.size(); ++xi) {
            auto eigs = transversal_eigenvalues(sys, v, xs[xi], grid[ki]);
            bool s = true;
            for (const auto& z : eigs) s &= std::abs(z.real()) <= 1e-8;
            stable[xi][ki] = s ? 1 : 0;
        }
    });
    auto fmap = open_out(o, "stability.csv");
    write_metadata(fmap, meta);
    fmap << "x,kappa,stable\n";
    for (size_t xi = 0; xi < xs.size(); ++xi)
        for (size_t ki = 0; ki < grid.size(); ++ki)
            fmap << fmt(xs[xi]) << "," << fmt(grid[ki]) << "," << stable[xi][ki] << "\n";

    // branch diagram as SVG: one point series per grid value
    std::vector<double> ts;
    std::vector<std::vector<double>> series(1);
    for (size_t k = 0; k < grid.size(); ++k)
        for (const auto& eq : diag.equilibria[k])
            if (eq.y == 0.0) {
                ts.push_back(grid[k]);
                series[0].push_back(eq.x);
            }
    if (ts.size() >= 2) {
        auto fsvg = open_out(o, "branches.svg");
        write_svg_polylines(fsvg, ts, series, "axis equilibria vs kappa");
    }

    for (const auto& b : diag.bifurcations)
        std::cout << "pitchfork at kappa=" << fmt(b.kappa) << " axis=" << b.axis
                  << " third=" << fmt(b.nondeg_third) << " (closed " << fmt(b.closed_third)
                  << ") mixed=" << fmt(b.nondeg_mixed) << " (closed " << fmt(b.closed_mixed)
                  << ")\n";
    if (diag.bifurcations.empty()) std::cout << "no pitchfork in the scanned range\n";
    return 0;
}

int cmd_com(const CommonOpts& o) {
    Graph g = parse_graph_spec(o.graph);
    CoupledSystem sys(g, InteractionPotential::named_or_file(o.potential), o.kappa);
    SystemState s0 = initial_state(o, g.n);
    auto traj = integrate(sys, s0, o.T, config_from(o));
    auto com = centre_of_mass(traj);
    auto meta = base_metadata(o);
    auto fcom = open_out(o, "com.csv");
    write_com_csv(fcom, com, meta);
    if (com.times.size() >= 1024) {
        double dt = com.times[1] - com.times[0];
        auto spec = detail::windowed_dft(com.q_bar, dt);
        auto fspec = open_out(o, "com_spectrum.csv");
        write_spectrum_csv(fspec, spec, meta);
        auto peak = dominant_frequency(com);
        if (peak)
            std::cout << "dominant angular frequency: " << fmt(peak->omega) << "\n";
        else
            std::cout << "no oscillation detected\n";
    } else {
        std::cout << "note: < 1024 samples, spectrum skipped (raise --T)\n";
    }
    std::cout << "com residual: " << fmt(com_residual(traj)) << "\n";
    return 0;
}

int cmd_levelset(const CommonOpts& o, double a, double alpha, double beta, int grid_n,
                 double extent) {
    auto grid = double_cusp_levelset(a, alpha, beta, -extent, extent, grid_n, -extent, extent,
                                     grid_n);
    auto meta = base_metadata(o);
    meta["a"] = fmt(a);
    meta["alpha"] = fmt(alpha);
    meta["beta"] = fmt(beta);
    auto f = open_out(o, "levelset.csv");
    write_metadata(f, meta);
    f << "x,y,F\n";
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j)
            f << fmt(grid.xs[i]) << "," << fmt(grid.ys[j]) << "," << fmt(grid.F(i, j)) << "\n";
    if (grid.degenerate) std::cout << "warning: a^2 == 4, degenerate unfolding\n";
    std::cout << "critical points:\n";
    for (const auto& cp : grid.critical_points)
        std::cout << "  (" << fmt(cp[0]) << ", " << fmt(cp[1]) << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled pendulum network toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    double ls_a = 0.0, ls_alpha = 0.0, ls_beta = 0.0, ls_extent = 1.5;
    int ls_grid = 101;

    auto* c_spectrum = app.add_subcommand("spectrum", "Laplacian spectrum and coupling intervals");
    add_common(c_spectrum, o, false);
    auto* c_partitions = app.add_subcommand("partitions", "anti-synchrony patterns of a graph");
    add_common(c_partitions, o, false);
    auto* c_simulate = app.add_subcommand("simulate", "integrate and write trajectory files");
    add_common(c_simulate, o);
    auto* c_lyapunov = app.add_subcommand("lyapunov", "Lyapunov exponent spectrum");
    add_common(c_lyapunov, o);
    auto* c_table1 = app.add_subcommand("table1", "seven-scenario Lyapunov survey");
    add_common(c_table1, o);
    auto* c_scan = app.add_subcommand("scan", "bifurcation branch and stability scan");
    add_common(c_scan, o, false);
    c_scan->add_option("--kappa-range", o.kappa_range, "grid a:b:n");
    auto* c_com = app.add_subcommand("com", "centre-of-mass series and spectrum");
    add_common(c_com, o);
    auto* c_levelset = app.add_subcommand("levelset", "double-cusp level-set sampling");
    add_common(c_levelset, o, false);
    c_levelset->add_option("--a", ls_a, "cross coefficient a");
    c_levelset->add_option("--alpha", ls_alpha, "unfolding alpha");
    c_levelset->add_option("--beta", ls_beta, "unfolding beta");
    c_levelset->add_option("--grid", ls_grid, "grid resolution per axis");
    c_levelset->add_option("--extent", ls_extent, "half-width of the sampled square");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_spectrum->parsed()) return cmd_spectrum(o);
        if (c_partitions->parsed()) return cmd_partitions(o);
        if (c_simulate->parsed()) return cmd_simulate(o);
        if (c_lyapunov->parsed()) return cmd_lyapunov(o);
        if (c_table1->parsed()) return cmd_table1(o);
        if (c_scan->parsed()) return cmd_scan(o);
        if (c_com->parsed()) return cmd_com(o);
        if (c_levelset->parsed())
            return cmd_levelset(o, ls_a, ls_alpha, ls_beta, ls_grid, ls_extent);
    } catch (const StiffnessError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const DivergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
