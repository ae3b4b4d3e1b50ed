#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "latticewave/classical.hpp"
#include "latticewave/lattice.hpp"
#include "latticewave/quantum.hpp"
#include "latticewave/relativity.hpp"

namespace latticewave::sweep {

inline constexpr const char* kVersion = "0.1.0";

// Full description of one CLI run: command, physical parameters, numeric
// parameters, grids, and output destination.  Serializes losslessly to JSON
// (embedded in every output file) so any emitted file can be re-run.
struct RunConfig {
    std::string command = "bands";
    std::string figure; // figure id: 1, 2, 3a, 3b, 3c, 3d, 4

    // Physical parameters (units: c = a = 1).
    double alpha = 1.0;
    double omega0 = 1.0;
    double kappa = 0.1;
    double x0 = 0.0;
    double X0 = 1.0;
    double Xdot0 = 0.0;
    double V = 0.0;
    double omega = 1.0;
    double K = 0.5;       // Bloch vector (units 1/a)
    double n_index = 0.0; // 0 = derive sqrt(1 + alpha)

    // Numeric parameters.
    int band = 1;
    int bands = 6;
    long N_cells = 10001;
    int comb_cutoff = 16;
    int m_min = -64;
    int m_max = 64;
    std::vector<double> eta_levels = {2e-2, 1e-2, 5e-3};
    int threads = 0; // 0 = hardware concurrency (env LATTICEWAVE_THREADS wins)

    // Grids (explicit, strictly increasing where used).
    std::vector<double> V_grid;
    std::vector<double> omega_grid;
    std::vector<double> K_grid;
    std::vector<double> t_grid;
    std::vector<double> x_grid;

    std::string output = "out.csv";
    std::string format = "csv"; // csv | json
};

std::string config_to_json(const RunConfig& c);
RunConfig config_from_json(const std::string& s);

// Tabular result: named columns of equal length plus run metadata.
struct SweepResult {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns; // columns[j][i]
    std::vector<std::string> warnings;        // per-point records, grid order
    RunConfig config;
    bool partial = false; // some points failed and were emitted as nan
};

// Every violated downstream precondition (not just the first); advisory
// entries for points that will be skipped are included too.
std::vector<std::string> validate(const RunConfig& config);

// Execute the run and write the output file(s).  Never throws on per-point
// failures (those become nan rows + warnings, result.partial = true); throws
// ConfigError on an unusable config.
SweepResult run(const RunConfig& config);

// Suggested process exit code: 0 clean, 3 partial.
int exit_code(const SweepResult& r);

// Serialize to the output format (CSV: "# latticewave v..." line, a
// JSON-encoded RunConfig line, a header row, then 17-significant-digit rows).
std::string to_csv(const SweepResult& r);
std::string to_json(const SweepResult& r);

// Worker-pool helper: evaluates f(i) for i in [0, n) on `threads` threads
// (0 = auto), assembling results in index order.  f must be pure.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& f);
int resolve_threads(int requested);

} // namespace latticewave::sweep
