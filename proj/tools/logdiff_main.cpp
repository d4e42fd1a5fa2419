// Command-line laboratory for the logarithmic fractional diffusion equation
//   d_t u + (-Delta)^{1/2} log(1+u) = 0
// on a truncated periodic line: implicit resolvent stepping, transport-side
// transforms, and the verification suites.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logdiff/backlund.hpp"
#include "logdiff/experiment.hpp"
#include "logdiff/io.hpp"
#include "logdiff/parallel.hpp"

using namespace logdiff;

namespace {

struct CommonOpts {
    std::string config;
    std::string out;
    long long seed = -1;
    int threads = 0;
    std::string suite_list;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* c = cmd->add_option("--config", opts.config, "experiment config (key=value or JSON)");
    if (config_required) c->required();
    cmd->add_option("--out", opts.out, "output directory (overrides config)");
    cmd->add_option("--seed", opts.seed, "seed override");
    cmd->add_option("--threads", opts.threads,
                    "worker threads (overrides LOGDIFF_THREADS)");
    cmd->add_option("--suite", opts.suite_list, "comma-separated suite list override");
}

ExperimentSpec load_spec(const CommonOpts& opts) {
    ExperimentSpec spec = ExperimentSpec::parse_file(opts.config);
    if (!opts.out.empty()) spec.out_dir = opts.out;
    if (opts.seed >= 0) spec.seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.threads > 0) spec.threads = opts.threads;
    if (!opts.suite_list.empty()) {
        spec.suites.clear();
        std::stringstream ss(opts.suite_list);
        std::string item;
        while (std::getline(ss, item, ',')) spec.suites.push_back(item);
    }
    spec.validate();
    return spec;
}

int cmd_solve(const CommonOpts& opts) {
    ExperimentSpec spec = load_spec(opts);
    spec.suites.clear();  // solve only runs the evolution and writes artifacts
    int rc = run_experiment(spec);
    std::cout << "wrote " << spec.out_dir << "/diagnostics.csv\n";
    return rc;
}

int cmd_verify(const CommonOpts& opts) {
    ExperimentSpec spec = load_spec(opts);
    if (spec.suites.empty()) spec.suites = known_suites();
    std::vector<SuiteResult> results;
    int rc = run_experiment(spec, &results);
    for (const auto& r : results)
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << "\n";
    std::cout << (rc == 0 ? "all suites passed\n" : "some suites FAILED\n");
    return rc;
}

int cmd_transport(const CommonOpts& opts) {
    ExperimentSpec spec = load_spec(opts);
    spec.validate();
    par::set_threads(par::resolve_thread_request(spec.threads));
    RunConfig cfg = spec.to_run_config();
    Trajectory traj = evolve(cfg);

    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    double worst_bridge = 0.0;
    for (size_t k = 0; k < traj.points.size(); ++k) {
        const auto& pt = traj.points[k];
        if (pt.diag.mass <= 0.0) continue;
        TransportField tf = to_transport(pt.u, pt.t);
        const std::string stem =
            (fs::path(spec.out_dir) / ("transport_" + std::to_string(k))).string();
        write_transport_csv(stem + ".csv", tf);
        write_transport_json(stem + ".json", tf);
        worst_bridge = std::max(worst_bridge,
                                std::abs(transport_conservation(tf) - pt.diag.mass) /
                                    pt.diag.mass);
    }
    TransportResidualReport rr = transport_residual(traj);
    std::ostringstream os;
    os << "time,transport_residual_l2\n";
    for (size_t i = 0; i < rr.times.size(); ++i)
        os << format_double(rr.times[i]) << ',' << format_double(rr.l2_residual[i]) << '\n';
    write_text_file((fs::path(spec.out_dir) / "transport_residual.csv").string(), os.str());
    std::cout << "worst mass bridge (rel): " << format_double(worst_bridge)
              << ", conservation drift (rel): " << format_double(rr.max_conservation_drift)
              << "\n";
    return worst_bridge <= 1e-4 && rr.max_conservation_drift <= 1e-5 ? 0 : 1;
}

int cmd_sweep(const CommonOpts& opts, const std::string& axis,
              const std::string& values_csv) {
    ExperimentSpec spec = load_spec(opts);
    std::vector<double> values;
    std::stringstream ss(values_csv);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    par::set_threads(par::resolve_thread_request(spec.threads));
    SweepReport rep = sweep(spec, axis, values);
    std::filesystem::create_directories(spec.out_dir);
    write_text_file((std::filesystem::path(spec.out_dir) / ("sweep_" + axis + ".json")).string(),
                    rep.to_json() + "\n");
    write_text_file((std::filesystem::path(spec.out_dir) / ("sweep_" + axis + ".txt")).string(),
                    rep.table());
    std::cout << rep.table();
    return rep.passed ? 0 : 1;
}

int cmd_inspect(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        auto [field, t] = read_snapshot_json(path);
        std::cout << "snapshot: n = " << field.grid().n << ", L = " << field.grid().L
                  << ", t = " << format_double(t) << "\n"
                  << "mass = " << format_double(integrate(field))
                  << ", linf = " << format_double(lp_norm(field, std::numeric_limits<double>::infinity()))
                  << ", min = " << format_double(field.min())
                  << ", max = " << format_double(field.max()) << "\n";
        return 0;
    }
    std::ifstream is(path);
    if (!is) {
        std::cerr << "inspect: cannot open " << path << "\n";
        return 2;
    }
    std::string header, line, last;
    std::getline(is, header);
    long rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) {
            ++rows;
            last = line;
        }
    std::cout << "csv: " << path << "\ncolumns: " << header << "\nrows: " << rows << "\n";
    if (rows > 0) std::cout << "last: " << last << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for 1-D logarithmic fractional diffusion"};
    app.require_subcommand(1);

    CommonOpts solve_opts, verify_opts, transport_opts, sweep_opts;
    std::string sweep_axis, sweep_values, inspect_path;

    auto* solve = app.add_subcommand("solve", "run the implicit solver, write artifacts");
    add_common(solve, solve_opts);
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    add_common(verify, verify_opts);
    auto* transport = app.add_subcommand("transport", "transform a run to transport variables");
    add_common(transport, transport_opts);
    auto* sw = app.add_subcommand("sweep", "parameter sweep with convergence table");
    add_common(sw, sweep_opts);
    sw->add_option("--axis", sweep_axis, "dt | n | amplitude | mass")->required();
    sw->add_option("--values", sweep_values, "comma-separated axis values")->required();
    auto* inspect = app.add_subcommand("inspect", "summarize a snapshot or CSV");
    inspect->add_option("path", inspect_path, "file to inspect")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_opts);
        if (verify->parsed()) return cmd_verify(verify_opts);
        if (transport->parsed()) return cmd_transport(transport_opts);
        if (sw->parsed()) return cmd_sweep(sweep_opts, sweep_axis, sweep_values);
        if (inspect->parsed()) return cmd_inspect(inspect_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
