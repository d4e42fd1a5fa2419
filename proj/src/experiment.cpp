#include "logdiff/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "logdiff/backlund.hpp"
#include "logdiff/inequalities.hpp"
#include "logdiff/io.hpp"
#include "logdiff/parallel.hpp"
#include "logdiff/smoothing.hpp"
#include "logdiff/spectral.hpp"

namespace logdiff {

namespace {

using nlohmann::json;

void flatten_json(const json& j, const std::string& prefix,
                  std::map<std::string, std::string>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        std::string joined;
        for (const auto& el : j) {
            if (!joined.empty()) joined += ',';
            joined += el.is_string() ? el.get<std::string>() : el.dump();
        }
        out[prefix] = joined;
    } else if (j.is_string()) {
        out[prefix] = j.get<std::string>();
    } else {
        out[prefix] = j.dump();
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> parse_kv(std::istream& is, const std::string& context) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(context + ":" + std::to_string(lineno) +
                                        ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(context + ":" + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            throw std::invalid_argument(context + ":" + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

double to_double(const std::string& v, const std::string& field) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument("field '" + field + "': expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& v, const std::string& field) {
    try {
        size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument("field '" + field + "': expected an integer, got '" + v +
                                    "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = {
        "monotone", "mass",     "positivity",  "contraction", "smoothing_lp",
        "smoothing_lx", "h12",  "gradient",    "backlund",    "inequalities"};
    return names;
}

ExperimentSpec ExperimentSpec::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    char first = 0;
    is >> std::ws;
    first = static_cast<char>(is.peek());
    if (first == '{' || (path.size() > 5 && path.substr(path.size() - 5) == ".json")) {
        json j;
        try {
            is >> j;
        } catch (const std::exception& e) {
            throw std::invalid_argument("config " + path + ": JSON parse error: " + e.what());
        }
        flatten_json(j, "", kv);
    } else {
        kv = parse_kv(is, path);
    }
    return from_flat_map(kv, path);
}

ExperimentSpec ExperimentSpec::from_flat_map(const std::map<std::string, std::string>& kv,
                                             const std::string& context) {
    ExperimentSpec spec;
    InitialDataSpec& in = spec.initial;
    bool kind_set = false;
    for (const auto& [key, val] : kv) {
        if (key == "name") spec.name = val;
        else if (key == "grid.n") spec.n = static_cast<int>(to_long(val, key));
        else if (key == "grid.L") spec.L = to_double(val, key);
        else if (key == "nonlinearity") spec.nonlinearity = val;
        else if (key == "initial.kind") {
            kind_set = true;
            if (val == "gaussian") in.kind = InitialDataSpec::Kind::Gaussian;
            else if (val == "box") in.kind = InitialDataSpec::Kind::Box;
            else if (val == "double_bump") in.kind = InitialDataSpec::Kind::DoubleBump;
            else if (val == "poisson") in.kind = InitialDataSpec::Kind::Poisson;
            else if (val == "from_file") in.kind = InitialDataSpec::Kind::FromFile;
            else
                throw std::invalid_argument(context + ": unknown initial.kind '" + val + "'");
        }
        else if (key == "initial.amplitude") in.amplitude = to_double(val, key);
        else if (key == "initial.width") in.width = to_double(val, key);
        else if (key == "initial.center") in.center = to_double(val, key);
        else if (key == "initial.amplitude2") in.amplitude2 = to_double(val, key);
        else if (key == "initial.width2") in.width2 = to_double(val, key);
        else if (key == "initial.center2") in.center2 = to_double(val, key);
        else if (key == "initial.height") in.height = to_double(val, key);
        else if (key == "initial.halfwidth") in.halfwidth = to_double(val, key);
        else if (key == "initial.t0") in.t0 = to_double(val, key);
        else if (key == "initial.path") in.path = val;
        else if (key == "time.t_end") spec.t_end = to_double(val, key);
        else if (key == "time.dt") spec.dt = to_double(val, key);
        else if (key == "time.dt_ratio") spec.dt_ratio = to_double(val, key);
        else if (key == "time.dt_max") spec.dt_max = to_double(val, key);
        else if (key == "time.store_every") spec.store_every = static_cast<int>(to_long(val, key));
        else if (key == "solver.newton_tol") spec.newton_tol = to_double(val, key);
        else if (key == "solver.max_newton_iters")
            spec.max_newton_iters = static_cast<int>(to_long(val, key));
        else if (key == "suites") spec.suites = split_list(val);
        else if (key == "out") spec.out_dir = val;
        else if (key == "seed") spec.seed = static_cast<std::uint64_t>(to_long(val, key));
        else if (key == "threads") spec.threads = static_cast<int>(to_long(val, key));
        else
            throw std::invalid_argument(context + ": unknown key '" + key + "'");
    }
    (void)kind_set;
    spec.validate();
    return spec;
}

void ExperimentSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("spec: name must be nonempty");
    Grid1D::make(n, L);  // validates n, L
    make_nonlinearity();
    initial.validate();
    if (!(t_end > 0.0)) throw std::invalid_argument("spec: time.t_end must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("spec: time.dt must be > 0");
    if (!(dt_ratio >= 1.0)) throw std::invalid_argument("spec: time.dt_ratio must be >= 1");
    if (!(dt_max > 0.0)) throw std::invalid_argument("spec: time.dt_max must be > 0");
    if (store_every < 1) throw std::invalid_argument("spec: time.store_every must be >= 1");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("spec: solver.newton_tol must be > 0");
    if (max_newton_iters < 1)
        throw std::invalid_argument("spec: solver.max_newton_iters must be >= 1");
    for (const auto& s : suites)
        if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
            throw std::invalid_argument("spec: unknown suite '" + s + "'");
    if (out_dir.empty()) throw std::invalid_argument("spec: out must be nonempty");
}

Nonlinearity ExperimentSpec::make_nonlinearity() const {
    if (nonlinearity == "log1p") return Nonlinearity::log1p();
    if (nonlinearity == "linear") return Nonlinearity::linear();
    if (nonlinearity.rfind("power:", 0) == 0)
        return Nonlinearity::power(to_double(nonlinearity.substr(6), "nonlinearity"));
    throw std::invalid_argument("spec: unknown nonlinearity '" + nonlinearity + "'");
}

RunConfig ExperimentSpec::to_run_config() const {
    RunConfig cfg;
    cfg.grid = Grid1D::make(n, L);
    cfg.nl = make_nonlinearity();
    cfg.initial = initial.sample(cfg.grid);
    cfg.t_end = t_end;
    cfg.schedule = {dt, dt_ratio, dt_max};
    cfg.store_every = store_every;
    cfg.step.newton_tol = newton_tol;
    cfg.step.max_newton_iters = max_newton_iters;
    return cfg;
}

// ---------------------------------------------------------------------------
// verification suites

namespace {

Trajectory evolve_scaled(const ExperimentSpec& spec, double scale) {
    RunConfig cfg = spec.to_run_config();
    cfg.initial = scale * cfg.initial;
    return evolve(cfg);
}

SuiteResult suite_monotone(const Trajectory& traj) {
    SuiteResult res{"monotone", true, "", ""};
    double worst = 0.0;
    double worst_energy_bound = 0.0;
    const double lx0 = traj.points.front().diag.lx;
    for (size_t k = 1; k < traj.points.size(); ++k) {
        const auto& a = traj.points[k - 1].diag;
        const auto& b = traj.points[k].diag;
        worst = std::max({worst, b.l1 - a.l1, b.l2 - a.l2, b.l4 - a.l4, b.linf - a.linf,
                          b.lx - a.lx, b.energy - a.energy});
        if (b.t > 0.0 && lx0 > 0.0)
            worst_energy_bound = std::max(worst_energy_bound, b.energy * 2.0 * b.t / lx0);
    }
    res.passed = worst <= 1e-9 && worst_energy_bound <= 1.01;
    json j;
    j["worst_increase"] = worst;
    j["worst_energy_time_over_lx"] = worst_energy_bound;
    res.report_json = j.dump();
    res.detail = "worst increase " + format_double(worst) + ", max 2tE/Lx " +
                 format_double(worst_energy_bound);
    return res;
}

SuiteResult suite_mass(const Trajectory& traj) {
    SuiteResult res{"mass", true, "", ""};
    const double m0 = traj.points.front().diag.mass;
    double worst = 0.0;
    for (const auto& pt : traj.points)
        worst = std::max(worst, m0 > 0.0 ? std::abs(pt.diag.mass - m0) / m0
                                         : std::abs(pt.diag.mass));
    res.passed = worst <= 1e-8;
    json j;
    j["relative_drift"] = worst;
    res.report_json = j.dump();
    res.detail = "relative drift " + format_double(worst);
    return res;
}

SuiteResult suite_positivity(const Trajectory& traj) {
    SuiteResult res{"positivity", true, "", ""};
    const bool nontrivial = traj.points.front().diag.mass > 0.0;
    double worst_min = std::numeric_limits<double>::infinity();
    for (const auto& pt : traj.points) {
        if (pt.t <= 0.0) continue;
        worst_min = std::min(worst_min, pt.diag.min_u);
    }
    res.passed = !nontrivial || worst_min > 0.0;
    json j;
    j["min_over_positive_times"] = worst_min;
    res.report_json = j.dump();
    res.detail = "min u over t > 0: " + format_double(worst_min);
    return res;
}

double positive_part_integral(const Field& a, const Field& b) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += std::max(a[i] - b[i], 0.0);
    return a.grid().h * s;
}

SuiteResult suite_contraction(const ExperimentSpec& spec, const Trajectory& traj) {
    SuiteResult res{"contraction", true, "", ""};
    RunConfig cfg = spec.to_run_config();

    // Ordered partner: f_tilde = f + bump >= f.
    Field bump = Field::sample(cfg.grid, [&](double x) {
        return 0.3 * std::exp(-(x - 1.0) * (x - 1.0));
    });
    RunConfig cfg_ord = cfg;
    cfg_ord.initial = cfg.initial + bump;
    Trajectory traj_ord = evolve(cfg_ord);

    // Unordered partner: translate the data by 2 length units (same mass).
    RunConfig cfg_shift = cfg;
    cfg_shift.initial = Field::sample(cfg.grid, [&](double x) {
        double xs = x - 2.0;
        if (xs < -cfg.grid.L) xs += 2.0 * cfg.grid.L;
        int i = static_cast<int>(std::llround((xs + cfg.grid.L) / cfg.grid.h)) % cfg.grid.n;
        return cfg.initial[i];
    });
    Trajectory traj_shift = evolve(cfg_shift);

    double worst_ordered = 0.0, worst_unordered = 0.0, worst_l1 = 0.0;
    double prev_pp = positive_part_integral(traj.points[0].u, traj_shift.points[0].u);
    double prev_l1 = lp_norm(traj.points[0].u - traj_shift.points[0].u, 1.0);
    const size_t npts = std::min({traj.size(), traj_ord.size(), traj_shift.size()});
    for (size_t k = 0; k < npts; ++k) {
        worst_ordered = std::max(
            worst_ordered, positive_part_integral(traj.points[k].u, traj_ord.points[k].u));
        const double pp = positive_part_integral(traj.points[k].u, traj_shift.points[k].u);
        worst_unordered = std::max(worst_unordered, pp - prev_pp);
        prev_pp = pp;
        const double l1 = lp_norm(traj.points[k].u - traj_shift.points[k].u, 1.0);
        worst_l1 = std::max(worst_l1, l1 - prev_l1);
        prev_l1 = l1;
    }
    res.passed = worst_ordered <= 1e-9 && worst_unordered <= 1e-9 && worst_l1 <= 1e-9;
    json j;
    j["ordered_positive_part_max"] = worst_ordered;
    j["unordered_positive_part_worst_increase"] = worst_unordered;
    j["l1_distance_worst_increase"] = worst_l1;
    res.report_json = j.dump();
    res.detail = "ordered " + format_double(worst_ordered) + ", unordered increase " +
                 format_double(worst_unordered);
    return res;
}

json smoothing_report_json(const SmoothingReport& rep) {
    json j;
    j["family_id"] = rep.family_id;
    j["fitted_constant"] = rep.fitted_constant;
    j["safety"] = rep.safety;
    j["worst_ratio"] = rep.worst_ratio;
    j["second_constant"] = rep.second_constant;
    j["per_run_worst"] = rep.per_run_worst;
    if (rep.exponent.valid) {
        j["exponent"]["slope"] = rep.exponent.slope;
        j["exponent"]["stderr"] = rep.exponent.stderr_slope;
        j["exponent"]["window"] = {rep.exponent.t_lo, rep.exponent.t_hi};
        j["exponent"]["n_points"] = rep.exponent.n_points;
    }
    j["passed"] = rep.passed;
    return j;
}

SuiteResult suite_smoothing(const ExperimentSpec& spec, const Trajectory& traj,
                            const std::string& which) {
    // Amplitude family x{2,4,8} of the run's data. The calibration member is
    // the one whose fitted constant dominates: the largest amplitude for the
    // L log L -> L^2 bound, the run itself for the others.
    std::vector<Trajectory> family;
    for (double s : {2.0, 4.0}) family.push_back(evolve_scaled(spec, s));
    Trajectory top = evolve_scaled(spec, 8.0);

    SmoothingReport rep;
    if (which == "smoothing_lp") {
        family.push_back(std::move(top));
        rep = check_lp_linf_smoothing(traj, family, 2.0);
    } else if (which == "smoothing_lx") {
        family.push_back(traj);
        rep = check_lx_l2_smoothing(top, family);
    } else {
        family.push_back(std::move(top));
        rep = check_h12_bound(traj, family);
    }

    SuiteResult res{which, rep.passed, "", ""};
    res.report_json = smoothing_report_json(rep).dump();
    res.detail = "C = " + format_double(rep.fitted_constant) + ", worst ratio " +
                 format_double(rep.worst_ratio);
    return res;
}

SuiteResult suite_gradient(const ExperimentSpec& spec, const Trajectory& traj) {
    Trajectory verify = evolve_scaled(spec, 1.5);
    GradientReport rep = check_gradient_corollary(traj, verify);
    SuiteResult res{"gradient", rep.passed && rep.chain_rule_error <= 1e-10, "", ""};
    json j;
    j["fitted_c_w"] = rep.fitted_c_w;
    j["fitted_c_u"] = rep.fitted_c_u;
    j["fitted_c_ut"] = rep.fitted_c_ut;
    j["worst_ratio"] = rep.worst_ratio;
    j["chain_rule_error"] = rep.chain_rule_error;
    res.report_json = j.dump();
    res.detail = "worst ratio " + format_double(rep.worst_ratio) + ", chain rule " +
                 format_double(rep.chain_rule_error);
    return res;
}

SuiteResult suite_backlund(const Trajectory& traj) {
    SuiteResult res{"backlund", true, "", ""};
    double worst_mass_bridge = 0.0, worst_v_bridge = 0.0;
    double cons0 = -1.0, worst_cons = 0.0;
    for (const auto& pt : traj.points) {
        if (pt.diag.mass <= 0.0) continue;
        TransportField tf = to_transport(pt.u, pt.t);
        const double mass_y = transport_conservation(tf);
        worst_mass_bridge =
            std::max(worst_mass_bridge, std::abs(mass_y - pt.diag.mass) / pt.diag.mass);
        // int v dy = int (1+u) log(1+u) dx
        double rhs = 0.0;
        for (int i = 0; i < pt.u.size(); ++i) rhs += (1.0 + pt.u[i]) * std::log1p(pt.u[i]);
        rhs *= traj.grid.h;
        const double lhs = transport_l1_v(tf);
        if (rhs > 0.0) worst_v_bridge = std::max(worst_v_bridge, std::abs(lhs - rhs) / rhs);
        if (cons0 < 0.0) cons0 = mass_y;
        else if (cons0 > 0.0)
            worst_cons = std::max(worst_cons, std::abs(mass_y - cons0) / cons0);
    }
    res.passed = worst_mass_bridge <= 1e-4 && worst_v_bridge <= 1e-4 && worst_cons <= 1e-5;
    json j;
    j["mass_bridge_rel"] = worst_mass_bridge;
    j["v_l1_bridge_rel"] = worst_v_bridge;
    j["conservation_drift_rel"] = worst_cons;
    res.report_json = j.dump();
    res.detail = "bridges " + format_double(worst_mass_bridge) + " / " +
                 format_double(worst_v_bridge) + ", drift " + format_double(worst_cons);
    return res;
}

SuiteResult suite_inequalities(const ExperimentSpec& spec) {
    SuiteResult res{"inequalities", true, "", ""};
    json j;
    const Grid1D grid = Grid1D::make(512, 30.0);

    // Plancherel identity witness.
    SampleFamily witness{SampleFamily::Kind::RandomBandLimited, 1, spec.seed + 7};
    Field z0 = witness.generate(grid).front();
    StroockVaropoulosResult ident = stroock_varopoulos_identity(z0);
    const double ident_margin = std::abs(ident.lhs - ident.rhs) / ident.scale;
    j["identity_margin"] = ident_margin;
    bool ok = ident_margin <= 1e-10;

    // 200 samples at p = 2, 50 regularized samples at p = 1.3.
    SampleFamily fam{SampleFamily::Kind::RandomBandLimited, 200, spec.seed + 1};
    double worst_sv = 0.0;
    for (const Field& u : fam.generate(grid)) {
        Field z = u.map([](double s) { return std::log1p(s); });
        auto r = check_stroock_varopoulos(z, 2.0);
        worst_sv = std::min(worst_sv, (r.lhs - r.rhs) / r.scale);
    }
    j["sv_p2_worst_margin"] = worst_sv;
    ok = ok && worst_sv >= -1e-8;

    SampleFamily fam_reg{SampleFamily::Kind::GaussianBumps, 50, spec.seed + 2};
    double worst_sv_reg = 0.0;
    for (const Field& u : fam_reg.generate(grid)) {
        Field z = u.map([](double s) { return std::log1p(s); });
        auto r = check_stroock_varopoulos(z, 1.3);
        worst_sv_reg = std::min(worst_sv_reg, (r.lhs - r.rhs) / r.scale);
    }
    j["sv_p13_worst_margin"] = worst_sv_reg;
    ok = ok && worst_sv_reg >= -1e-8;

    // Empirical constant of the critical interpolation inequality.
    SampleFamily fam_ngn{SampleFamily::Kind::MultiBump, 200, spec.seed + 3};
    double cmax = 0.0;
    for (const Field& phi : fam_ngn.generate(grid))
        cmax = std::max(cmax, ngn_ratio(phi, 1.0, 2.0, 0.5));
    j["ngn_empirical_C"] = cmax;
    ok = ok && std::isfinite(cmax) && cmax > 0.0;

    SampleFamily fam_dil{SampleFamily::Kind::RescaledDilates, 4, spec.seed + 4};
    std::vector<double> dil;
    for (const Field& phi : fam_dil.generate(grid)) dil.push_back(ngn_ratio(phi, 1.0, 2.0, 0.5));
    double dmin = dil[0], dmax = dil[0];
    for (double d : dil) {
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    j["ngn_dilation_spread"] = (dmax - dmin) / dmax;
    ok = ok && (dmax - dmin) / dmax <= 0.02;

    // Orlicz embedding constants.
    SampleFamily fam_tr{SampleFamily::Kind::MultiBump, 100, spec.seed + 5};
    std::vector<Field> tr_members = fam_tr.generate(grid);
    const double alpha22 = trudinger_alpha_search(tr_members, 2.0, 2.0, 0.5);
    const double alpha42 = trudinger_alpha_search(tr_members, 4.0, 2.0, 0.5);
    j["trudinger_alpha_p2_q2"] = alpha22;
    j["trudinger_alpha_p4_q2"] = alpha42;
    ok = ok && alpha22 > 0.0 && alpha42 > 0.0;

    // Calculus inequality over the 10^6-point tensor grid.
    std::vector<double> ag(1000), xg(1000);
    for (int i = 0; i < 1000; ++i) {
        ag[static_cast<size_t>(i)] = 30.0 * i / 999.0;
        xg[static_cast<size_t>(i)] = 10.0 * i / 999.0;
    }
    const double b1 = lemma_b1_worst_margin(ag, xg);
    j["lemma_b1_worst_margin"] = b1;
    ok = ok && b1 >= -1e-12;

    LogInequalityReport logs = check_log_inequality_suite();
    j["log_suite_passed"] = logs.passed;
    j["psi_prime_error"] = logs.worst_psi_prime_error;
    ok = ok && logs.passed;

    res.passed = ok;
    res.report_json = j.dump();
    res.detail = "alpha(2,2) = " + format_double(alpha22) + ", B1 margin " + format_double(b1);
    return res;
}

}  // namespace

int run_experiment(const ExperimentSpec& spec, std::vector<SuiteResult>* results) {
    spec.validate();
    RunConfig cfg = spec.to_run_config();  // samples initial data; throws before any output
    par::set_threads(par::resolve_thread_request(spec.threads));

    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    auto path = [&](const std::string& name) { return (fs::path(spec.out_dir) / name).string(); };

    Trajectory traj = evolve(cfg);

    std::vector<DiagnosticsRecord> recs;
    recs.reserve(traj.points.size());
    for (const auto& pt : traj.points) recs.push_back(pt.diag);
    write_diagnostics_csv(path("diagnostics.csv"), recs);
    write_snapshot_json(path("snapshot_initial.json"), traj.points.front().u, 0.0);
    write_snapshot_json(path("snapshot_final.json"), traj.points.back().u,
                        traj.points.back().t);
    write_field_csv(path("field_final.csv"), traj.points.back().u);

    std::vector<SuiteResult> local;
    for (const std::string& name : spec.suites) {
        SuiteResult r;
        if (name == "monotone") r = suite_monotone(traj);
        else if (name == "mass") r = suite_mass(traj);
        else if (name == "positivity") r = suite_positivity(traj);
        else if (name == "contraction") r = suite_contraction(spec, traj);
        else if (name == "smoothing_lp" || name == "smoothing_lx" || name == "h12")
            r = suite_smoothing(spec, traj, name);
        else if (name == "gradient") r = suite_gradient(spec, traj);
        else if (name == "backlund") r = suite_backlund(traj);
        else r = suite_inequalities(spec);
        write_text_file(path("report_" + name + ".json"), r.report_json + "\n");
        local.push_back(std::move(r));
    }

    json summary;
    summary["name"] = spec.name;
    summary["initial"] = spec.initial.describe();
    summary["nonlinearity"] = spec.nonlinearity;
    bool all_ok = true;
    std::string table = "suite                pass  detail\n";
    for (const auto& r : local) {
        summary["suites"][r.name] = r.passed;
        all_ok = all_ok && r.passed;
        std::string pad = r.name;
        pad.resize(20, ' ');
        table += pad + (r.passed ? " PASS  " : " FAIL  ") + r.detail + "\n";
    }
    summary["passed"] = all_ok;
    write_text_file(path("verify_summary.json"), summary.dump(2) + "\n");
    write_text_file(path("verify_summary.txt"), table);

    if (results) *results = std::move(local);
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweeps

std::string SweepReport::table() const {
    auto pad = [](std::string s, size_t width) {
        if (s.size() < width) s.append(width - s.size(), ' ');
        return s;
    };
    std::string out = "axis = " + axis + "\n" + pad("value", 24) + " " + pad("metric", 24) +
                      " ok\n";
    for (const auto& p : points) {
        out += pad(format_double(p.value), 24) + " " + pad(format_double(p.metric), 24) +
               " " + (p.ok ? "yes" : "NO ") + (p.note.empty() ? "" : "  # " + p.note) + "\n";
    }
    if (!observed_orders.empty()) {
        out += "observed orders:";
        for (double o : observed_orders) out += " " + format_double(o);
        out += "\n";
    }
    return out;
}

std::string SweepReport::to_json() const {
    json j;
    j["axis"] = axis;
    for (const auto& p : points) {
        json jp;
        jp["value"] = p.value;
        jp["metric"] = p.metric;
        jp["ok"] = p.ok;
        jp["note"] = p.note;
        j["points"].push_back(jp);
    }
    j["observed_orders"] = observed_orders;
    j["passed"] = passed;
    return j.dump(2);
}

SweepReport sweep(const ExperimentSpec& base, const std::string& axis,
                  const std::vector<double>& values) {
    if (values.size() < 2) throw std::invalid_argument("sweep: need at least two axis values");
    SweepReport rep;
    rep.axis = axis;

    if (axis == "dt" || axis == "n") {
        // points are independent runs; failures stay inside their slot
        std::vector<Trajectory> trajs(values.size());
        std::vector<bool> ok(values.size(), false);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(values.size()); ++i) {
            ExperimentSpec spec = base;
            if (axis == "dt") spec.dt = values[static_cast<size_t>(i)];
            else spec.n = static_cast<int>(values[static_cast<size_t>(i)]);
            try {
                trajs[static_cast<size_t>(i)] = evolve(spec.to_run_config());
                ok[static_cast<size_t>(i)] = true;
            } catch (const std::exception&) {
            }
        }
        // Reference = finest run (smallest dt / largest n).
        size_t ref = 0;
        for (size_t i = 1; i < values.size(); ++i)
            if (axis == "dt" ? values[i] < values[ref] : values[i] > values[ref]) ref = i;
        std::vector<double> errors(values.size(),
                                   std::numeric_limits<double>::quiet_NaN());
        for (size_t i = 0; i < values.size(); ++i) {
            SweepPoint pt{values[i], ok[i], 0.0, ""};
            if (ok[i] && ok[ref] && i != ref) {
                const Field& uf = trajs[ref].points.back().u;
                const Field& uc = trajs[i].points.back().u;
                double err = 0.0;
                if (axis == "dt") {
                    err = sup_diff(uf, uc);
                } else {
                    const int stride = uf.size() / uc.size();
                    for (int k = 0; k < uc.size(); ++k)
                        err = std::max(err, std::abs(uc[k] - uf[k * stride]));
                }
                errors[i] = err;
                pt.metric = err;
            } else if (i == ref) {
                pt.note = "reference";
            } else {
                pt.ok = false;
                pt.note = "run failed";
            }
            rep.points.push_back(pt);
        }
        // Orders from differences of consecutive refinement levels (sorted
        // coarse -> fine); unlike errors against the finest run, consecutive
        // differences estimate the order without bias.
        std::vector<size_t> idx;
        for (size_t i = 0; i < values.size(); ++i)
            if (ok[i]) idx.push_back(i);
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return axis == "dt" ? values[a] > values[b] : values[a] < values[b];
        });
        auto level_diff = [&](size_t a, size_t b) {
            const Field& ua = trajs[a].points.back().u;
            const Field& ub = trajs[b].points.back().u;  // finer
            if (axis == "dt") return sup_diff(ua, ub);
            const int stride = ub.size() / ua.size();
            double e = 0.0;
            for (int k = 0; k < ua.size(); ++k)
                e = std::max(e, std::abs(ua[k] - ub[k * stride]));
            return e;
        };
        for (size_t k = 0; k + 2 < idx.size(); ++k) {
            const double d1 = level_diff(idx[k], idx[k + 1]);
            const double d2 = level_diff(idx[k + 1], idx[k + 2]);
            const double step = axis == "dt" ? values[idx[k]] / values[idx[k + 1]]
                                             : values[idx[k + 1]] / values[idx[k]];
            if (d1 > 0.0 && d2 > 0.0 && step > 1.0)
                rep.observed_orders.push_back(std::log(d1 / d2) / std::log(step));
        }
        rep.passed = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
        return rep;
    }

    if (axis == "amplitude" || axis == "mass") {
        std::vector<Trajectory> family(values.size());
        std::vector<bool> ok(values.size(), false);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(values.size()); ++i) {
            try {
                family[static_cast<size_t>(i)] = evolve_scaled(base, values[static_cast<size_t>(i)]);
                ok[static_cast<size_t>(i)] = true;
            } catch (const std::exception&) {
            }
        }
        size_t cal = 0;  // first successful run calibrates
        while (cal < family.size() && !ok[cal]) ++cal;
        if (cal == family.size()) {
            rep.passed = false;
            for (size_t i = 0; i < values.size(); ++i)
                rep.points.push_back({values[i], false, 0.0, "run failed"});
            return rep;
        }
        std::vector<Trajectory> verify;
        for (size_t i = 0; i < family.size(); ++i)
            if (ok[i]) verify.push_back(family[i]);
        SmoothingReport srep = check_lp_linf_smoothing(family[cal], verify, 2.0);
        for (size_t i = 0; i < values.size(); ++i) {
            SweepPoint pt{values[i], ok[i], 0.0, ""};
            if (ok[i]) pt.metric = lp_norm(family[i].points.back().u,
                                           std::numeric_limits<double>::infinity());
            else pt.note = "run failed";
            rep.points.push_back(pt);
        }
        rep.passed = srep.passed && std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
        rep.observed_orders.push_back(srep.exponent.valid ? srep.exponent.slope : 0.0);
        return rep;
    }

    throw std::invalid_argument("sweep: unknown axis '" + axis +
                                "' (expected dt, n, amplitude, or mass)");
}

}  // namespace logdiff
