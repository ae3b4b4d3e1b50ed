#include "latticewave/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <thread>

#include "json.hpp"

namespace latticewave::sweep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
using nlohmann::json;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return g;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool strictly_increasing(const std::vector<double>& g) {
    for (size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) return false;
    return true;
}

} // namespace

std::string config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["figure"] = c.figure;
    j["alpha"] = c.alpha;
    j["omega0"] = c.omega0;
    j["kappa"] = c.kappa;
    j["x0"] = c.x0;
    j["X0"] = c.X0;
    j["Xdot0"] = c.Xdot0;
    j["V"] = c.V;
    j["omega"] = c.omega;
    j["K"] = c.K;
    j["n_index"] = c.n_index;
    j["band"] = c.band;
    j["bands"] = c.bands;
    j["N_cells"] = c.N_cells;
    j["comb_cutoff"] = c.comb_cutoff;
    j["m_min"] = c.m_min;
    j["m_max"] = c.m_max;
    j["eta_levels"] = c.eta_levels;
    j["threads"] = c.threads;
    j["V_grid"] = c.V_grid;
    j["omega_grid"] = c.omega_grid;
    j["K_grid"] = c.K_grid;
    j["t_grid"] = c.t_grid;
    j["x_grid"] = c.x_grid;
    j["output"] = c.output;
    j["format"] = c.format;
    return j.dump();
}

RunConfig config_from_json(const std::string& s) {
    json j = json::parse(s);
    RunConfig c;
    j.at("command").get_to(c.command);
    j.at("figure").get_to(c.figure);
    j.at("alpha").get_to(c.alpha);
    j.at("omega0").get_to(c.omega0);
    j.at("kappa").get_to(c.kappa);
    j.at("x0").get_to(c.x0);
    j.at("X0").get_to(c.X0);
    j.at("Xdot0").get_to(c.Xdot0);
    j.at("V").get_to(c.V);
    j.at("omega").get_to(c.omega);
    j.at("K").get_to(c.K);
    j.at("n_index").get_to(c.n_index);
    j.at("band").get_to(c.band);
    j.at("bands").get_to(c.bands);
    j.at("N_cells").get_to(c.N_cells);
    j.at("comb_cutoff").get_to(c.comb_cutoff);
    j.at("m_min").get_to(c.m_min);
    j.at("m_max").get_to(c.m_max);
    j.at("eta_levels").get_to(c.eta_levels);
    j.at("threads").get_to(c.threads);
    j.at("V_grid").get_to(c.V_grid);
    j.at("omega_grid").get_to(c.omega_grid);
    j.at("K_grid").get_to(c.K_grid);
    j.at("t_grid").get_to(c.t_grid);
    j.at("x_grid").get_to(c.x_grid);
    j.at("output").get_to(c.output);
    j.at("format").get_to(c.format);
    return c;
}

int resolve_threads(int requested) {
    if (const char* env = std::getenv("LATTICEWAVE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& f) {
    const int nt = std::min<std::size_t>(resolve_threads(threads), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

std::vector<std::string> validate(const RunConfig& c) {
    std::vector<std::string> v;
    static const std::set<std::string> cmds = {
        "bands",      "energy-velocity", "modes",      "doppler-spectrum",
        "damping",    "trajectory",      "work-trace", "work-average",
        "absorption-rate", "figure"};
    if (!cmds.count(c.command)) v.push_back("unknown command: " + c.command);
    if (!(c.alpha >= 0.0)) v.push_back("alpha must satisfy alpha>=0");
    if (!(std::abs(c.V) < 1.0)) v.push_back("V must satisfy |V|<1");
    for (double Vg : c.V_grid)
        if (!(std::abs(Vg) < 1.0)) {
            v.push_back("V must satisfy |V|<1");
            break;
        }
    if (!(c.omega0 > 0.0)) v.push_back("omega0 must satisfy omega0>0");
    if (!std::isfinite(c.kappa)) v.push_back("kappa must be finite");
    if (c.band < 1) v.push_back("band must satisfy band>=1");
    if (c.bands < 1) v.push_back("bands must satisfy bands>=1");
    if (c.N_cells < 1 || c.N_cells % 2 == 0)
        v.push_back("N_cells must be odd and >=1");
    if (c.m_min > c.m_max) v.push_back("m_min must not exceed m_max");
    if (c.eta_levels.size() < 2)
        v.push_back("eta_levels needs at least two entries");
    if (c.format != "csv" && c.format != "json")
        v.push_back("format must be csv or json");
    auto check_grid = [&](const std::vector<double>& g, const char* name,
                          bool required) {
        if (g.empty()) {
            if (required) v.push_back(std::string(name) + " grid is empty");
            return;
        }
        if (!strictly_increasing(g))
            v.push_back(std::string(name) + " grid must be strictly increasing");
    };
    check_grid(c.V_grid, "V", false);
    check_grid(c.omega_grid, "omega", false);
    check_grid(c.K_grid, "K", false);
    check_grid(c.t_grid, "t", false);
    check_grid(c.x_grid, "x", false);
    // Advisory: velocities exactly at the Cherenkov threshold are singular.
    const double n = c.n_index > 0.0 ? c.n_index : std::sqrt(1.0 + c.alpha);
    for (double Vg : c.V_grid)
        if (std::abs(Vg - 1.0 / n) < 1e-12)
            v.push_back("ThresholdSingular point will be skipped");
    return v;
}

namespace {

struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    std::vector<std::vector<std::string>> point_warnings;

    void init(std::initializer_list<const char*> ns, size_t rows) {
        for (const char* n : ns) names.emplace_back(n);
        cols.assign(names.size(), std::vector<double>(rows, kNan));
        point_warnings.assign(rows, {});
    }
    void set(size_t row, std::initializer_list<double> vals) {
        size_t j = 0;
        for (double v : vals) cols[j++][row] = v;
    }
};

// Evaluate f(i) for every row through the worker pool; any latticewave::Error
// leaves the row as nan and records a warning.
bool run_points(Table& tab, size_t n, int threads,
                const std::function<void(size_t)>& f) {
    std::atomic<bool> partial{false};
    parallel_for(n, threads, [&](size_t i) {
        try {
            f(i);
        } catch (const Error& e) {
            tab.point_warnings[i].push_back("point " + std::to_string(i) +
                                            ": " + e.what());
            partial = true;
        }
    });
    return partial.load();
}

SweepResult assemble(const RunConfig& cfg, Table&& tab, bool partial) {
    SweepResult r;
    r.config = cfg;
    r.names = std::move(tab.names);
    r.columns = std::move(tab.cols);
    for (auto& pw : tab.point_warnings)
        for (auto& w : pw) r.warnings.push_back(std::move(w));
    r.partial = partial;
    return r;
}

void write_file(const SweepResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << (r.config.format == "json" ? to_json(r) : to_csv(r));
}

double band1_edge(const lattice::LatticeSpec& spec) {
    return lattice::band_frequency(spec, 1, kPi / spec.a);
}

// ---- individual commands -------------------------------------------------

SweepResult run_bands(const RunConfig& cfg) {
    lattice::LatticeSpec spec{cfg.alpha, 1.0, 1.0};
    spec.validate();
    std::vector<double> grid = cfg.omega_grid.empty()
                                   ? linspace(1e-3, 4.0, 800)
                                   : cfg.omega_grid;
    Table tab;
    tab.init({"omega", "Re_Ka", "Im_Ka"}, grid.size());
    bool partial = run_points(tab, grid.size(), cfg.threads, [&](size_t i) {
        const lattice::Complex Ka = lattice::bloch_vector(spec, grid[i]) * spec.a;
        tab.set(i, {grid[i], Ka.real(), Ka.imag()});
    });
    return assemble(cfg, std::move(tab), partial);
}

SweepResult run_energy_velocity(const RunConfig& cfg) {
    lattice::LatticeSpec spec{cfg.alpha, 1.0, 1.0};
    spec.validate();
    std::vector<double> grid = cfg.omega_grid;
    if (grid.empty()) {
        const double edge = band1_edge(spec);
        grid = linspace(1e-3, edge - 5e-5, 600);
    }
    Table tab;
    tab.init({"omega", "v_g"}, grid.size());
    bool partial = run_points(tab, grid.size(), cfg.threads, [&](size_t i) {
        const double w = grid[i];
        const double z = lattice::dispersion_rhs(spec, w);
        if (std::abs(z) > 1.0) {
            tab.set(i, {w, kNan}); // band gap: no propagating mode
            return;
        }
        lattice::BlochMode m;
        m.spec = spec;
        m.omega = w;
        m.k = w;
        m.K = std::acos(z);
        m.N = 1.0;
        tab.set(i, {w, lattice::energy_velocity(m)});
    });
    return assemble(cfg, std::move(tab), partial);
}

SweepResult run_modes(const RunConfig& cfg) {
    lattice::LatticeSpec spec{cfg.alpha, 1.0, 1.0};
    spec.validate();
    std::vector<double> grid =
        cfg.x_grid.empty() ? linspace(-3.0, 3.0, 601) : cfg.x_grid;
    const lattice::BlochMode mode = lattice::make_mode(spec, cfg.band, cfg.K);
    Table tab;
    tab.init({"x", "Re_phi", "Im_phi", "abs2_phi", "Re_u", "Im_u"},
             grid.size());
    bool partial = run_points(tab, grid.size(), cfg.threads, [&](size_t i) {
        const lattice::Complex phi = lattice::mode_field(mode, grid[i]);
        const lattice::Complex u = lattice::periodic_part(mode, grid[i]);
        tab.set(i, {grid[i], phi.real(), phi.imag(), std::norm(phi), u.real(),
                    u.imag()});
    });
    return assemble(cfg, std::move(tab), partial);
}

SweepResult run_doppler_spectrum(const RunConfig& cfg) {
    lattice::LatticeSpec spec{cfg.alpha, 1.0, 1.0};
    spec.validate();
    const lattice::BlochMode mode = lattice::make_mode(spec, cfg.band, cfg.K);
    const auto boost = relativity::FrameBoost::make(cfg.V, 1.0);
    auto comps =
        relativity::moving_frame_spectrum(mode, boost, cfg.m_min, cfg.m_max);
    Table tab;
    tab.init({"m", "omega_prime", "k_prime", "Re_amp", "Im_amp", "abs2_amp"},
             comps.size());
    for (size_t i = 0; i < comps.size(); ++i)
        tab.set(i, {static_cast<double>(comps[i].m), comps[i].omega_prime,
                    comps[i].k_prime, comps[i].amplitude.real(),
                    comps[i].amplitude.imag(), std::norm(comps[i].amplitude)});
    return assemble(cfg, std::move(tab), false);
}

SweepResult run_damping(const RunConfig& cfg) {
    const double n = cfg.n_index > 0.0 ? cfg.n_index : std::sqrt(1.0 + cfg.alpha);
    std::vector<double> grid =
        cfg.V_grid.empty() ? linspace(0.0, 0.95, 96) : cfg.V_grid;
    Table tab;
    tab.init({"V", "Gamma", "Gamma_norm"}, grid.size());
    bool partial = run_points(tab, grid.size(), cfg.threads, [&](size_t i) {
        const auto boost = relativity::FrameBoost::make(grid[i], 1.0);
        const double G =
            classical::macroscopic_damping(cfg.omega0, boost, n, cfg.kappa);
        tab.set(i, {grid[i], G, G / (cfg.kappa * cfg.kappa / (2.0 * n))});
    });
    return assemble(cfg, std::move(tab), partial);
}

SweepResult run_trajectory(const RunConfig& cfg) {
    const double n = cfg.n_index > 0.0 ? cfg.n_index : std::sqrt(1.0 + cfg.alpha);
    classical::OscillatorSpec osc{cfg.omega0, cfg.kappa, cfg.x0, cfg.X0,
                                  cfg.Xdot0};
    const auto boost = relativity::FrameBoost::make(cfg.V, 1.0);
    const double G = classical::macroscopic_damping(cfg.omega0, boost, n,
                                                    cfg.kappa);
    std::vector<double> grid =
        cfg.t_grid.empty() ? linspace(0.0, 2000.0, 1001) : cfg.t_grid;
    auto X = classical::oscillator_trajectory(osc, G, grid);
    Table tab;
    tab.init({"t", "X"}, grid.size());
    for (size_t i = 0; i < grid.size(); ++i) tab.set(i, {grid[i], X[i]});
    return assemble(cfg, std::move(tab), false);
}

SweepResult run_work_trace(const RunConfig& cfg) {
    lattice::LatticeSpec spec{cfg.alpha, 1.0, 1.0};
    spec.validate();
    classical::OscillatorSpec osc{cfg.omega0, cfg.kappa, cfg.x0, cfg.X0,
                                  cfg.Xdot0};
    const auto boost = relativity::FrameBoost::make(cfg.V, 1.0);
    std::vector<double> grid =
        cfg.t_grid.empty() ? linspace(0.0, 40.0 * kPi / cfg.omega, 2001)
                           : cfg.t_grid;
    auto tr = classical::work_trace(spec, osc, boost, cfg.omega, grid,
                                    cfg.eta_levels, cfg.comb_cutoff);
    // Reference scale: the sub-threshold (V -> 0) macroscopic work.
    const double W0 =
        cfg.kappa * cfg.kappa * cfg.omega * cfg.omega / (4.0 * spec.index());
    Table tab;
    tab.init({"t", "W", "W_over_W0"}, grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        tab.set(i, {grid[i], tr.W[i], tr.W[i] / W0});
    SweepResult r = assemble(cfg, std::move(tab), false);
    r.warnings.push_back("time_average=" + fmt17(tr.time_average));
    r.warnings.push_back("time_average_over_W0=" +
                         fmt17(tr.time_average / W0));
    r.warnings.push_back("extrapolation_spread=" +
                         fmt17(tr.extrapolation_spread));
    return r;
}

SweepResult run_work_average(const RunConfig& cfg) {
    lattice::LatticeSpec spec{cfg.alpha, 1.0, 1.0};
    spec.validate();
    classical::OscillatorSpec osc{cfg.omega0, cfg.kappa, cfg.x0, cfg.X0,
                                  cfg.Xdot0};
    std::vector<double> grid =
        cfg.V_grid.empty() ? linspace(0.05, 0.95, 37) : cfg.V_grid;
    // Reference scale: the sub-threshold (V -> 0) macroscopic work.
    const double W0 =
        cfg.kappa * cfg.kappa * cfg.omega * cfg.omega / (4.0 * spec.index());
    Table tab;
    tab.init({"V", "W", "W_over_W0"}, grid.size());
    bool partial = run_points(tab, grid.size(), cfg.threads, [&](size_t i) {
        const auto boost = relativity::FrameBoost::make(grid[i], 1.0);
        const auto wa = classical::average_work(spec, osc, boost, cfg.omega);
        tab.set(i, {grid[i], wa.value, wa.value / W0});
    });
    return assemble(cfg, std::move(tab), partial);
}

SweepResult run_absorption_rate(const RunConfig& cfg) {
    lattice::LatticeSpec spec{cfg.alpha, 1.0, 1.0};
    spec.validate();
    classical::OscillatorSpec osc{cfg.omega0, cfg.kappa, cfg.x0, cfg.X0,
                                  cfg.Xdot0};
    std::vector<double> grid =
        cfg.V_grid.empty() ? linspace(0.05, 0.95, 91) : cfg.V_grid;
    Table tab;
    tab.init({"V", "Gamma", "Gamma_prime", "Gamma_prime_norm"}, grid.size());
    bool partial = run_points(tab, grid.size(), cfg.threads, [&](size_t i) {
        const auto boost = relativity::FrameBoost::make(grid[i], 1.0);
        const auto ar = quantum::absorption_rate(spec, osc, boost, cfg.bands);
        for (const auto& w : ar.warnings)
            tab.point_warnings[i].push_back("point " + std::to_string(i) +
                                            ": " + w);
        tab.set(i, {grid[i], ar.rate, ar.rate_oscillator_frame,
                    ar.rate_oscillator_frame / (cfg.kappa * cfg.kappa)});
    });
    return assemble(cfg, std::move(tab), partial);
}

std::string sibling_path(const std::string& base, const std::string& tag) {
    const auto dot = base.find_last_of('.');
    if (dot == std::string::npos) return base + "_" + tag;
    return base.substr(0, dot) + "_" + tag + base.substr(dot);
}

SweepResult run_figure(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.figure == "1") {
        // Two files: group velocity across band 1, and the (complex) Bloch
        // vector across band 1 and the first gap.
        lattice::LatticeSpec spec{c.alpha, 1.0, 1.0};
        const double edge = band1_edge(spec);
        RunConfig cv = c;
        cv.command = "energy-velocity";
        if (cv.omega_grid.empty())
            cv.omega_grid = linspace(1e-3, edge - 5e-5, 600);
        cv.output = sibling_path(c.output, "vg");
        SweepResult rv = run_energy_velocity(cv);
        write_file(rv, cv.output);

        RunConfig cb = c;
        cb.command = "bands";
        cb.omega_grid = linspace(1e-3, 4.0, 800);
        cb.output = sibling_path(c.output, "bloch");
        SweepResult rb = run_bands(cb);
        write_file(rb, cb.output);

        rv.config = cv;
        rv.partial = rv.partial || rb.partial;
        return rv;
    }
    if (c.figure == "2") {
        c.command = "trajectory";
        return run_trajectory(c);
    }
    if (c.figure == "3a" || c.figure == "3b") {
        c.command = "work-trace";
        return run_work_trace(c);
    }
    if (c.figure == "3c" || c.figure == "3d") {
        c.command = "work-average";
        return run_work_average(c);
    }
    if (c.figure == "4") {
        c.command = "absorption-rate";
        return run_absorption_rate(c);
    }
    throw ConfigError("unknown figure id: " + c.figure);
}

} // namespace

SweepResult run(const RunConfig& config) {
    auto violations = validate(config);
    for (const auto& v : violations)
        if (v.find("will be skipped") == std::string::npos)
            throw ConfigError(v);
    SweepResult r;
    if (config.command == "bands") r = run_bands(config);
    else if (config.command == "energy-velocity") r = run_energy_velocity(config);
    else if (config.command == "modes") r = run_modes(config);
    else if (config.command == "doppler-spectrum") r = run_doppler_spectrum(config);
    else if (config.command == "damping") r = run_damping(config);
    else if (config.command == "trajectory") r = run_trajectory(config);
    else if (config.command == "work-trace") r = run_work_trace(config);
    else if (config.command == "work-average") r = run_work_average(config);
    else if (config.command == "absorption-rate") r = run_absorption_rate(config);
    else if (config.command == "figure") r = run_figure(config);
    else throw ConfigError("unknown command: " + config.command);
    write_file(r, r.config.output);
    return r;
}

int exit_code(const SweepResult& r) { return r.partial ? 3 : 0; }

std::string to_csv(const SweepResult& r) {
    std::string out = "# latticewave v";
    out += kVersion;
    out += "\n";
    out += config_to_json(r.config);
    out += "\n";
    for (size_t j = 0; j < r.names.size(); ++j) {
        if (j) out += ",";
        out += r.names[j];
    }
    out += "\n";
    const size_t rows = r.columns.empty() ? 0 : r.columns[0].size();
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < r.columns.size(); ++j) {
            if (j) out += ",";
            out += fmt17(r.columns[j][i]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const SweepResult& r) {
    json j;
    j["version"] = kVersion;
    j["config"] = json::parse(config_to_json(r.config));
    json cols = json::object();
    for (size_t k = 0; k < r.names.size(); ++k) {
        json arr = json::array();
        for (double v : r.columns[k]) {
            if (std::isnan(v)) arr.push_back(nullptr);
            else arr.push_back(v);
        }
        cols[r.names[k]] = arr;
    }
    j["columns"] = cols;
    j["warnings"] = r.warnings;
    j["partial"] = r.partial;
    return j.dump(2) + "\n";
}

} // namespace latticewave::sweep
