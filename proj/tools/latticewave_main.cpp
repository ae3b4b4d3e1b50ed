#include <cstdio>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latticewave/sweep.hpp"

namespace {

using latticewave::sweep::RunConfig;

std::vector<double> parse_grid(const std::string& s) {
    // "lo:hi:n" (inclusive linear grid) or a comma-separated list.
    std::vector<double> g;
    if (s.find(':') != std::string::npos) {
        double lo, hi;
        int n;
        if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
            throw CLI::ValidationError("grid", "expected lo:hi:n");
        for (int i = 0; i < n; ++i)
            g.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        return g;
    }
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        g.push_back(std::stod(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return g;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i)
        g.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return g;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"latticewave: waves in a 1D lattice of point scatterers"};
    app.set_config("--config", "", "TOML config file mirroring all flags");
    app.set_version_flag("--version",
                         std::string("latticewave v") +
                             latticewave::sweep::kVersion);

    RunConfig cfg;
    std::string V_grid_s, omega_grid_s, K_grid_s, t_grid_s, x_grid_s;
    std::string eta_s;

    app.add_option("command", cfg.command,
                   "bands | energy-velocity | modes | doppler-spectrum | "
                   "damping | trajectory | work-trace | work-average | "
                   "absorption-rate | figure")
        ->required();
    app.add_option("--id", cfg.figure, "figure id: 1, 2, 3a, 3b, 3c, 3d, 4");
    app.add_option("--alpha", cfg.alpha, "scatterer strength alpha/a");
    app.add_option("--omega0", cfg.omega0, "oscillator frequency (a/c units)");
    app.add_option("--kappa", cfg.kappa, "coupling strength");
    app.add_option("--x0", cfg.x0, "oscillator position");
    app.add_option("--X0", cfg.X0, "initial amplitude");
    app.add_option("--Xdot0", cfg.Xdot0, "initial velocity of X");
    app.add_option("--V", cfg.V, "frame velocity V/c");
    app.add_option("--omega", cfg.omega, "drive frequency (a/c units)");
    app.add_option("--K", cfg.K, "Bloch vector (1/a units)");
    app.add_option("--n-index", cfg.n_index,
                   "refractive index (default sqrt(1+alpha))");
    app.add_option("--band", cfg.band, "band index (1-based)");
    app.add_option("--bands", cfg.bands, "number of bands in sums");
    app.add_option("--N-cells", cfg.N_cells, "interaction cells (odd)");
    app.add_option("--comb-cutoff", cfg.comb_cutoff, "frequency-comb cutoff");
    app.add_option("--m-min", cfg.m_min, "lowest Fourier order");
    app.add_option("--m-max", cfg.m_max, "highest Fourier order");
    app.add_option("--eta-levels", eta_s,
                   "comma list of regulator levels (units of omega)");
    app.add_option("--threads", cfg.threads,
                   "worker threads (0 = auto; env LATTICEWAVE_THREADS wins)");
    app.add_option("--V-grid", V_grid_s, "velocity grid, lo:hi:n or list");
    app.add_option("--omega-grid", omega_grid_s, "frequency grid");
    app.add_option("--K-grid", K_grid_s, "Bloch-vector grid");
    app.add_option("--t-grid", t_grid_s, "time grid");
    app.add_option("--x-grid", x_grid_s, "position grid");
    app.add_option("--output,-o", cfg.output, "output file path");
    app.add_option("--format", cfg.format, "csv | json");

    try {
        app.parse(argc, argv);
        if (!V_grid_s.empty()) cfg.V_grid = parse_grid(V_grid_s);
        if (!omega_grid_s.empty()) cfg.omega_grid = parse_grid(omega_grid_s);
        if (!K_grid_s.empty()) cfg.K_grid = parse_grid(K_grid_s);
        if (!t_grid_s.empty()) cfg.t_grid = parse_grid(t_grid_s);
        if (!x_grid_s.empty()) cfg.x_grid = parse_grid(x_grid_s);
        if (!eta_s.empty()) cfg.eta_levels = parse_grid(eta_s);

        if (cfg.command == "figure") {
            // Per-figure defaults; explicit flags override.
            auto unset = [&](const char* flag) {
                return app.count(flag) == 0;
            };
            if (cfg.figure == "1") {
                if (unset("--alpha")) cfg.alpha = 1.0;
            } else if (cfg.figure == "2") {
                if (unset("--alpha")) cfg.alpha = 1.0;
                if (unset("--omega0")) cfg.omega0 = 1.0;
                if (unset("--V")) cfg.V = 0.3;
                if (cfg.t_grid.empty()) cfg.t_grid = linspace(0.0, 2000.0, 1001);
            } else if (cfg.figure == "3a" || cfg.figure == "3b") {
                if (unset("--alpha")) cfg.alpha = 4.0;
                if (unset("--omega")) cfg.omega = 0.1;
                if (unset("--V")) cfg.V = cfg.figure == "3a" ? 0.3 : 0.6;
                if (cfg.t_grid.empty())
                    cfg.t_grid = linspace(0.0, 40.0 * std::numbers::pi /
                                                    cfg.omega, 2001);
            } else if (cfg.figure == "3c" || cfg.figure == "3d") {
                if (unset("--alpha")) cfg.alpha = 4.0;
                if (unset("--omega"))
                    cfg.omega = cfg.figure == "3c" ? 0.0005 : 0.1;
                if (cfg.V_grid.empty()) cfg.V_grid = linspace(0.05, 0.95, 37);
            } else if (cfg.figure == "4") {
                if (unset("--alpha")) cfg.alpha = 1.0;
                if (unset("--omega0")) cfg.omega0 = 1e-5;
                if (cfg.V_grid.empty()) cfg.V_grid = linspace(0.05, 0.95, 91);
            }
        }

        auto result = latticewave::sweep::run(cfg);
        for (const auto& w : result.warnings)
            std::fprintf(stderr, "warning: %s\n", w.c_str());
        return latticewave::sweep::exit_code(result);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const latticewave::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
