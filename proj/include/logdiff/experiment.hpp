#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "logdiff/initial_data.hpp"
#include "logdiff/resolvent.hpp"

namespace logdiff {

/// Everything needed to reproduce one run plus its verification suites.
struct ExperimentSpec {
    std::string name = "experiment";
    int n = 1024;
    double L = 30.0;
    std::string nonlinearity = "log1p";  // log1p | linear | power:<m>
    InitialDataSpec initial;
    double t_end = 1.0;
    double dt = 1e-3;
    double dt_ratio = 1.0;
    double dt_max = std::numeric_limits<double>::infinity();
    int store_every = 1;
    double newton_tol = 1e-11;
    int max_newton_iters = 50;
    std::vector<std::string> suites;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int threads = 0;

    /// Key-value file (nested names with dots, '#' comments) or JSON
    /// (detected by a leading '{' or a .json extension). Errors carry
    /// line/field context.
    static ExperimentSpec parse_file(const std::string& path);
    static ExperimentSpec from_flat_map(const std::map<std::string, std::string>& kv,
                                        const std::string& context);

    void validate() const;
    Nonlinearity make_nonlinearity() const;
    RunConfig to_run_config() const;
};

const std::vector<std::string>& known_suites();

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;          // one-line summary
    std::string report_json;     // full report
};

/// Run the experiment and its enabled suites, writing diagnostics CSV,
/// snapshots, and per-suite reports under out_dir. Returns 0 when every
/// enabled assertion passed, 1 otherwise. Validation problems throw
/// std::invalid_argument before anything is written.
int run_experiment(const ExperimentSpec& spec, std::vector<SuiteResult>* results = nullptr);

struct SweepPoint {
    double value = 0.0;
    bool ok = false;
    double metric = 0.0;     // axis-dependent (error vs reference, fitted constant, ...)
    std::string note;
};

struct SweepReport {
    std::string axis;
    std::vector<SweepPoint> points;
    std::vector<double> observed_orders;  // log2 ratios of successive errors
    bool passed = false;
    std::string table() const;
    std::string to_json() const;
};

/// Parameter sweeps along dt, n, amplitude, or mass. Refinement axes (dt, n)
/// produce a convergence-order table against the finest run; the amplitude
/// and mass axes drive the calibrated sup-norm smoothing check across the
/// family. Individual failures are recorded and the sweep continues.
SweepReport sweep(const ExperimentSpec& base, const std::string& axis,
                  const std::vector<double>& values);

}  // namespace logdiff
