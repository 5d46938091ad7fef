// Command-line front end for the twistpass library.
//
// Subcommands: simulate | sweep | quench | pump | convert | levels |
// validate | plot. Exit codes: 0 success, 1 usage/config error, 2 numerical
// failure. Every option can also come from a JSON config file (--config);
// flags given on the command line win. Data outputs are deterministic:
// numbers carry 17 significant digits and nothing embeds a timestamp.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistpass/twistpass.hpp"

using namespace twistpass;

namespace {

std::string jnum(double v) { return io::format_full(v); }

std::string jarr(const std::vector<double>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += jnum(xs[i]);
    }
    return s + "]";
}

std::string jesc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// Print a record to stdout and, when a path is given, to that file as well.
void emit(const std::string& text, const std::string& path) {
    std::cout << text;
    if (!path.empty()) {
        std::ofstream out(path);
        out << text;
        if (!out) throw io::io_error("cannot write " + path);
    }
}

// Applies values from a JSON config file to every bound option whose flag
// was not given on the command line.
struct config_binder {
    std::vector<std::function<void(const nlohmann::json&)>> setters;

    template <class T>
    void bind(CLI::Option* opt, const char* key, T& target) {
        setters.push_back([opt, key, &target](const nlohmann::json& j) {
            if (opt->count() == 0 && j.contains(key)) target = j.at(key).get<T>();
        });
    }

    void apply(const std::string& path) const {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot read config file: " + path);
        const nlohmann::json j = nlohmann::json::parse(in); // reports line/column
        if (!j.is_object())
            throw std::invalid_argument(path + ": config must be a JSON object");
        for (const auto& setter : setters) setter(j);
    }
};

struct integ_opts {
    double tau0 = 0.0; // 0 = automatic window rule
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int tail_samples = 10;
    double tail_fraction = 0.15;
};

void add_integ_options(CLI::App* cmd, integ_opts& o, config_binder& cb) {
    cb.bind(cmd->add_option("--tau0", o.tau0, "integration window in tau (0 = auto rule)"),
            "tau0", o.tau0);
    cb.bind(cmd->add_option("--rel-tol", o.rel_tol, "relative step tolerance"), "rel_tol",
            o.rel_tol);
    cb.bind(cmd->add_option("--abs-tol", o.abs_tol, "absolute step tolerance"), "abs_tol",
            o.abs_tol);
    cb.bind(cmd->add_option("--tail-samples", o.tail_samples, "averaging points in the tail"),
            "tail_samples", o.tail_samples);
    cb.bind(cmd->add_option("--tail-fraction", o.tail_fraction, "tail fraction of the window"),
            "tail_fraction", o.tail_fraction);
}

integrator_config make_cfg(const integ_opts& o) {
    integrator_config cfg;
    cfg.tau0 = o.tau0;
    cfg.rel_tol = o.rel_tol;
    cfg.abs_tol = o.abs_tol;
    cfg.tail_samples = o.tail_samples;
    cfg.tail_fraction = o.tail_fraction;
    return cfg;
}

unsigned env_workers() {
    const char* env = std::getenv("TWISTPASS_WORKERS");
    if (env == nullptr) return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') return 0;
    return static_cast<unsigned>(v);
}

// ---------------------------------------------------------------- simulate

struct simulate_opts {
    double lambda = 1.0;
    double eta = 0.0;
    int n = 2;
    integ_opts integ;
    std::string out, summary, config;
};

int run_simulate(const simulate_opts& o) {
    const pulse_params p{o.lambda, o.eta, o.n};
    p.validate();
    const integrator_config cfg = make_cfg(o.integ);
    if (cfg.tau0 != 0.0 && 0.5 * cfg.tau0 < auto_half_window(p))
        throw std::invalid_argument("simulate: tau0/2 is below the automatic window rule");

    const auto run = detail::integrate_adiabatic(p, cfg, true);
    double p_asym = 0.0;
    for (double v : run.tail_p) p_asym += v;
    p_asym /= static_cast<double>(run.tail_p.size());

    if (!o.out.empty()) io::write_trajectory_csv(o.out, run.traj);

    const crossing_set xs = predict_crossings(p);
    std::ostringstream js;
    js << "{\n"
       << "  \"command\": \"simulate\",\n"
       << "  \"engine_version\": \"" << k_version << "\",\n"
       << "  \"lambda\": " << jnum(p.lambda) << ",\n"
       << "  \"eta\": " << jnum(p.eta) << ",\n"
       << "  \"n\": " << p.n << ",\n"
       << "  \"tau0\": " << jnum(run.traj.tau0) << ",\n"
       << "  \"P_asymptotic\": " << jnum(p_asym) << ",\n"
       << "  \"P_final\": " << jnum(run.traj.final_p()) << ",\n"
       << "  \"fidelity\": " << jnum(1.0 - p_asym) << ",\n"
       << "  \"crossings\": " << jarr(xs.locations) << ",\n";
    if (xs.separation)
        js << "  \"crossing_separation\": " << jnum(*xs.separation) << ",\n";
    js << "  \"steps_accepted\": " << run.traj.steps_taken << ",\n"
       << "  \"steps_rejected\": " << run.traj.rejected_steps << ",\n"
       << "  \"max_norm_drift\": " << jnum(run.traj.max_norm_drift) << "\n"
       << "}\n";
    emit(js.str(), o.summary);
    return 0;
}

// ------------------------------------------------------------------- sweep

struct sweep_opts {
    double lambda = 1.0;
    int n = 2;
    double eta_min = 0.0, eta_max = 0.0;
    int points = 0;
    std::vector<double> eta_list;
    unsigned workers = 0;
    std::string oracle;
    integ_opts integ;
    std::string out, config;
};

int run_sweep(const sweep_opts& o) {
    if (o.out.empty()) throw std::invalid_argument("sweep: --out is required");
    sweep_spec spec;
    spec.lambda = o.lambda;
    spec.n = o.n;
    spec.integrator = make_cfg(o.integ);
    spec.eta_grid = o.eta_list.empty() ? linspace(o.eta_min, o.eta_max, o.points) : o.eta_list;

    if (!o.oracle.empty()) {
        if (o.oracle != "quadratic")
            throw std::invalid_argument("sweep: unknown oracle '" + o.oracle + "'");
        if (o.n != 2)
            throw std::invalid_argument("sweep: --oracle quadratic requires --n 2");
    }

    const unsigned workers = o.workers != 0 ? o.workers : env_workers();
    const sweep_result result = sweep(spec, workers);

    std::vector<double> analytic;
    double max_dev = 0.0;
    if (!o.oracle.empty()) {
        for (const sweep_row& row : result.rows) {
            analytic.push_back(quadratic_exact(spec.lambda, row.eta));
            if (row.ok()) max_dev = std::max(max_dev, std::abs(row.p - analytic.back()));
        }
    }
    io::write_sweep_csv(o.out, result, o.oracle.empty() ? "" : "P_quadratic_exact", analytic);

    std::size_t failed = 0;
    std::string first_error;
    for (const sweep_row& row : result.rows)
        if (!row.ok()) {
            if (failed == 0) first_error = row.error;
            ++failed;
        }

    std::ostringstream js;
    js << "{\n"
       << "  \"command\": \"sweep\",\n"
       << "  \"engine_version\": \"" << result.engine_version << "\",\n"
       << "  \"lambda\": " << jnum(spec.lambda) << ",\n"
       << "  \"n\": " << spec.n << ",\n"
       << "  \"rows\": " << result.rows.size() << ",\n"
       << "  \"rows_failed\": " << failed << ",\n";
    if (!o.oracle.empty())
        js << "  \"oracle\": \"" << o.oracle << "\",\n"
           << "  \"max_oracle_deviation\": " << jnum(max_dev) << ",\n";
    js << "  \"out\": \"" << jesc(o.out) << "\"\n"
       << "}\n";
    emit(js.str(), "");

    if (failed > 0) {
        std::cerr << "sweep: " << failed << " row(s) failed; first error: " << first_error
                  << "\n";
        return 2;
    }
    return 0;
}

// ----------------------------------------------------------- quench / pump

struct optimize_opts {
    double lambda = 1.0;
    int n = 2;
    std::vector<double> bracket;
    double tol_eta = 1e-4;
    int probe_points = 5;
    integ_opts integ;
    std::string out, config;
};

int run_optimize(const optimize_opts& o, bool maximize) {
    if (o.bracket.size() != 2)
        throw std::invalid_argument(std::string(maximize ? "pump" : "quench") +
                                    ": --bracket LO HI is required");
    const integrator_config cfg = make_cfg(o.integ);
    const optimum_report rep =
        maximize ? find_pump(o.lambda, o.n, o.bracket[0], o.bracket[1], o.tol_eta, cfg,
                             o.probe_points)
                 : find_quench(o.lambda, o.n, o.bracket[0], o.bracket[1], o.tol_eta, cfg,
                               o.probe_points);

    std::ostringstream js;
    js << "{\n"
       << "  \"command\": \"" << (maximize ? "pump" : "quench") << "\",\n"
       << "  \"engine_version\": \"" << k_version << "\",\n"
       << "  \"lambda\": " << jnum(o.lambda) << ",\n"
       << "  \"n\": " << o.n << ",\n"
       << "  \"eta_star\": " << jnum(rep.eta_star) << ",\n"
       << "  \"p_star\": " << jnum(rep.p_star) << ",\n"
       << "  \"fidelity\": " << jnum(rep.fidelity) << ",\n"
       << "  \"meets_fault_tolerance\": " << (rep.meets_ft ? "true" : "false") << ",\n"
       << "  \"bracket\": [" << jnum(rep.bracket_lo) << ", " << jnum(rep.bracket_hi) << "],\n"
       << "  \"evaluations\": " << rep.evaluations << "\n"
       << "}\n";
    emit(js.str(), o.out);
    return 0;
}

// ----------------------------------------------------------------- convert

struct convert_opts {
    bool to_experiment = false;
    bool to_dimensionless = false;
    double lambda = 1.0, eta = 0.0;
    int n = 4;
    double A = 0.0, B_exp = 0.0, omega1 = 0.0, T = 0.0;
    double f = 0.1;
    std::string out, config;
};

int run_convert(const convert_opts& o) {
    if (o.to_experiment == o.to_dimensionless)
        throw std::invalid_argument(
            "convert: choose exactly one of --to-experiment / --to-dimensionless");

    std::ostringstream js;
    if (o.to_dimensionless) {
        const pulse_params p = to_dimensionless({o.A, o.B_exp, o.omega1, o.T, o.n});
        js << "{\n"
           << "  \"command\": \"convert\",\n"
           << "  \"direction\": \"to_dimensionless\",\n"
           << "  \"lambda\": " << jnum(p.lambda) << ",\n"
           << "  \"eta\": " << jnum(p.eta) << ",\n"
           << "  \"n\": " << p.n << "\n"
           << "}\n";
    } else {
        const experiment_params e = from_dimensionless({o.lambda, o.eta, o.n}, o.omega1, o.f);
        const double t_pi = pi_pulse_time(e.omega1);
        js << "{\n"
           << "  \"command\": \"convert\",\n"
           << "  \"direction\": \"to_experiment\",\n"
           << "  \"A\": " << jnum(e.A) << ",\n"
           << "  \"B_exp\": " << jnum(e.B_exp) << ",\n"
           << "  \"omega1\": " << jnum(e.omega1) << ",\n"
           << "  \"T\": " << jnum(e.T) << ",\n"
           << "  \"n\": " << e.n << ",\n"
           << "  \"f\": " << jnum(o.f) << ",\n"
           << "  \"pi_pulse_time\": " << jnum(t_pi) << ",\n"
           << "  \"pi_pulse_ratio\": " << jnum(e.T / t_pi) << "\n"
           << "}\n";
    }
    emit(js.str(), o.out);
    return 0;
}

// ------------------------------------------------------------------ levels

struct levels_opts {
    double omega_c = 0.0, omega_t = 0.0, j = 0.0;
    std::string out, config;
};

int run_levels(const levels_opts& o) {
    const cnot_levels lv = cnot_level_structure(o.omega_c, o.omega_t, o.j);
    std::ostringstream js;
    js << "{\n"
       << "  \"command\": \"levels\",\n"
       << "  \"omega_c\": " << jnum(lv.omega_c) << ",\n"
       << "  \"omega_t\": " << jnum(lv.omega_t) << ",\n"
       << "  \"J\": " << jnum(lv.coupling_j) << ",\n"
       << "  \"E_00\": " << jnum(lv.level(0, 0)) << ",\n"
       << "  \"E_01\": " << jnum(lv.level(0, 1)) << ",\n"
       << "  \"E_10\": " << jnum(lv.level(1, 0)) << ",\n"
       << "  \"E_11\": " << jnum(lv.level(1, 1)) << ",\n"
       << "  \"omega_plus\": " << jnum(lv.omega_plus) << ",\n"
       << "  \"omega_minus\": " << jnum(lv.omega_minus) << ",\n"
       << "  \"cnot_sweep_line\": \"omega_plus\"\n"
       << "}\n";
    emit(js.str(), o.out);
    return 0;
}

// ---------------------------------------------------------------- validate

struct validate_opts {
    bool strict = false;
    std::string config;
};

int run_validate(const validate_opts& o) {
    struct check {
        std::string name;
        double measured;
        double tol;
    };
    std::vector<check> checks;

    // Twistless limit against the closed-form asymptote, both regimes.
    for (double lambda : {5.0, 0.5}) {
        const double p_sim = asymptotic_probability(pulse_params{lambda, 0.0, 2});
        checks.push_back({"landau_zener_limit_lambda_" + io::format_full(lambda),
                          std::abs(p_sim - landau_zener(lambda)), 1e-3});
    }

    // Quadratic twist against the exact closed form (wide fixed window so the
    // residual oscillation is far below tolerance).
    {
        integrator_config wide;
        wide.tau0 = 800.0;
        for (double eta : {0.0, -0.25}) {
            const double p_sim = asymptotic_probability(pulse_params{10.0, eta, 2}, wide);
            checks.push_back({"quadratic_exact_eta_" + io::format_full(eta),
                              std::abs(p_sim - quadratic_exact(10.0, eta)), 1e-3});
        }
    }

    // Adiabatic-representation result against the lab-frame oracle.
    {
        const pulse_params cubic{1.0, 0.04, 3};
        checks.push_back({"lab_frame_oracle_cubic",
                          std::abs(asymptotic_probability(cubic) - lab_frame_oracle(cubic)),
                          1e-3});
        const pulse_params quad{10.0, 0.0, 2};
        checks.push_back({"lab_frame_oracle_quadratic",
                          std::abs(asymptotic_probability(quad) - lab_frame_oracle(quad)),
                          1e-3});
    }

    // Norm conservation along full trajectories.
    {
        double drift = 0.0;
        for (const pulse_params p : {pulse_params{5.0, 0.02, 3}, pulse_params{10.0, 0.3, 2}})
            drift = std::max(drift, integrate(p).max_norm_drift);
        checks.push_back({"norm_conservation", drift, 1e-6});
    }

    // Predicted crossings sit on the rotating-frame gap minimum (gap = 2).
    {
        double residual = 0.0;
        for (const pulse_params p :
             {pulse_params{5.0, 0.02, 3}, pulse_params{5.0, 4.6e-4, 4}, pulse_params{10.0, 0.5, 2}})
            for (double t : predict_crossings(p).locations)
                residual = std::max(residual, std::abs(rotating_gap(t, p) - 2.0));
        checks.push_back({"crossing_gap_residual", residual, 1e-9});
    }

    // Dimensionless <-> experiment conversion round trip.
    {
        double rel = 0.0;
        for (const pulse_params p : {pulse_params{5.0, 4.0e-3, 4}, pulse_params{2.0, 0.05, 3}}) {
            const pulse_params back = to_dimensionless(from_dimensionless(p, 4000.0));
            rel = std::max(rel, std::abs(back.lambda - p.lambda) / p.lambda);
            rel = std::max(rel, std::abs(back.eta - p.eta) / std::abs(p.eta));
        }
        checks.push_back({"bridge_round_trip", rel, 1e-12});
    }

    int passed = 0;
    for (const check& c : checks) {
        const double tol = o.strict ? c.tol / 10.0 : c.tol;
        const bool ok = c.measured <= tol;
        if (ok) ++passed;
        std::cout << (ok ? "PASS" : "FAIL") << " " << c.name
                  << ": measured=" << io::format_full(c.measured)
                  << " tol=" << io::format_full(tol);
        if (o.strict && c.measured > 0.0)
            std::cout << " margin=" << io::format_full(tol / c.measured);
        std::cout << "\n";
    }
    std::cout << "validation: " << passed << "/" << checks.size() << " checks passed"
              << (o.strict ? " (strict)" : "") << "\n";
    return passed == static_cast<int>(checks.size()) ? 0 : 2;
}

// -------------------------------------------------------------------- plot

struct plot_opts {
    std::string in, out, title, config;
};

int run_plot(const plot_opts& o) {
    if (o.in.empty() || o.out.empty())
        throw std::invalid_argument("plot: --in and --out are required");
    const trajectory traj = io::read_trajectory_csv(o.in);
    svg::write_plot(o.out, traj, o.title);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted rapid passage: simulation and pulse design for a two-level qubit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(k_version));

    simulate_opts sim;
    sweep_opts swp;
    optimize_opts qnc, pmp;
    convert_opts cnv;
    levels_opts lvl;
    validate_opts val;
    plot_opts plt;
    config_binder cb_sim, cb_swp, cb_qnc, cb_pmp, cb_cnv, cb_lvl, cb_val, cb_plt;
    int rc = 0;

    { // simulate
        CLI::App* c = app.add_subcommand("simulate", "integrate one pulse and report P");
        cb_sim.bind(c->add_option("--lambda", sim.lambda, "inversion rate"), "lambda", sim.lambda);
        cb_sim.bind(c->add_option("--eta", sim.eta, "twist strength"), "eta", sim.eta);
        cb_sim.bind(c->add_option("--n", sim.n, "twist order (>= 2)"), "n", sim.n);
        add_integ_options(c, sim.integ, cb_sim);
        cb_sim.bind(c->add_option("--out", sim.out, "trajectory CSV path"), "out", sim.out);
        cb_sim.bind(c->add_option("--summary", sim.summary, "summary JSON path"), "summary",
                    sim.summary);
        c->add_option("--config", sim.config, "JSON config file (flags override)");
        c->callback([&] {
            cb_sim.apply(sim.config);
            rc = run_simulate(sim);
        });
    }
    { // sweep
        CLI::App* c = app.add_subcommand("sweep", "evaluate P over an eta grid");
        cb_swp.bind(c->add_option("--lambda", swp.lambda, "inversion rate"), "lambda",
                    swp.lambda);
        cb_swp.bind(c->add_option("--n", swp.n, "twist order (>= 2)"), "n", swp.n);
        cb_swp.bind(c->add_option("--eta-min", swp.eta_min, "grid start"), "eta_min",
                    swp.eta_min);
        cb_swp.bind(c->add_option("--eta-max", swp.eta_max, "grid end"), "eta_max", swp.eta_max);
        cb_swp.bind(c->add_option("--points", swp.points, "grid size"), "points", swp.points);
        cb_swp.bind(c->add_option("--eta", swp.eta_list, "explicit eta values"), "eta",
                    swp.eta_list);
        cb_swp.bind(c->add_option("--workers", swp.workers,
                                  "worker threads (default: TWISTPASS_WORKERS or hardware)"),
                    "workers", swp.workers);
        cb_swp.bind(c->add_option("--oracle", swp.oracle, "analytic column: quadratic"),
                    "oracle", swp.oracle);
        add_integ_options(c, swp.integ, cb_swp);
        cb_swp.bind(c->add_option("--out", swp.out, "sweep CSV path"), "out", swp.out);
        c->add_option("--config", swp.config, "JSON config file (flags override)");
        c->callback([&] {
            cb_swp.apply(swp.config);
            rc = run_sweep(swp);
        });
    }
    { // quench / pump
        CLI::App* c = app.add_subcommand("quench", "minimize P over eta in a bracket");
        cb_qnc.bind(c->add_option("--lambda", qnc.lambda, "inversion rate"), "lambda",
                    qnc.lambda);
        cb_qnc.bind(c->add_option("--n", qnc.n, "twist order (>= 2)"), "n", qnc.n);
        cb_qnc.bind(c->add_option("--bracket", qnc.bracket, "eta bracket LO HI")->expected(2),
                    "bracket", qnc.bracket);
        cb_qnc.bind(c->add_option("--tol-eta", qnc.tol_eta, "bracket width at convergence"),
                    "tol_eta", qnc.tol_eta);
        cb_qnc.bind(c->add_option("--probe-points", qnc.probe_points,
                                  "coarse probe size (raise for oscillatory landscapes)"),
                    "probe_points", qnc.probe_points);
        add_integ_options(c, qnc.integ, cb_qnc);
        cb_qnc.bind(c->add_option("--out", qnc.out, "report JSON path"), "out", qnc.out);
        c->add_option("--config", qnc.config, "JSON config file (flags override)");
        c->callback([&] {
            cb_qnc.apply(qnc.config);
            rc = run_optimize(qnc, false);
        });

        CLI::App* d = app.add_subcommand("pump", "maximize P over eta in a bracket");
        cb_pmp.bind(d->add_option("--lambda", pmp.lambda, "inversion rate"), "lambda",
                    pmp.lambda);
        cb_pmp.bind(d->add_option("--n", pmp.n, "twist order (>= 2)"), "n", pmp.n);
        cb_pmp.bind(d->add_option("--bracket", pmp.bracket, "eta bracket LO HI")->expected(2),
                    "bracket", pmp.bracket);
        cb_pmp.bind(d->add_option("--tol-eta", pmp.tol_eta, "bracket width at convergence"),
                    "tol_eta", pmp.tol_eta);
        cb_pmp.bind(d->add_option("--probe-points", pmp.probe_points,
                                  "coarse probe size (raise for oscillatory landscapes)"),
                    "probe_points", pmp.probe_points);
        add_integ_options(d, pmp.integ, cb_pmp);
        cb_pmp.bind(d->add_option("--out", pmp.out, "report JSON path"), "out", pmp.out);
        d->add_option("--config", pmp.config, "JSON config file (flags override)");
        d->callback([&] {
            cb_pmp.apply(pmp.config);
            rc = run_optimize(pmp, true);
        });
    }
    { // convert
        CLI::App* c = app.add_subcommand("convert",
                                         "translate between dimensionless and experiment units");
        c->add_flag("--to-experiment", cnv.to_experiment, "dimensionless -> (A, B, omega1, T)");
        c->add_flag("--to-dimensionless", cnv.to_dimensionless,
                    "(A, B, omega1, T) -> (lambda, eta)");
        cb_cnv.bind(c->add_option("--lambda", cnv.lambda, "inversion rate"), "lambda",
                    cnv.lambda);
        cb_cnv.bind(c->add_option("--eta", cnv.eta, "twist strength"), "eta", cnv.eta);
        cb_cnv.bind(c->add_option("--n", cnv.n, "twist order (3 or 4)"), "n", cnv.n);
        cb_cnv.bind(c->add_option("--A", cnv.A, "sweep amplitude (Hz)"), "A", cnv.A);
        cb_cnv.bind(c->add_option("--B-exp", cnv.B_exp, "twist strength, experiment convention"),
                    "B_exp", cnv.B_exp);
        cb_cnv.bind(c->add_option("--omega1", cnv.omega1, "rf amplitude (Hz)"), "omega1",
                    cnv.omega1);
        cb_cnv.bind(c->add_option("--T", cnv.T, "pulse duration (s)"), "T", cnv.T);
        cb_cnv.bind(c->add_option("--f", cnv.f, "sweep asymmetry omega1/|A| (<= 0.2)"), "f",
                    cnv.f);
        cb_cnv.bind(c->add_option("--out", cnv.out, "record JSON path"), "out", cnv.out);
        c->add_option("--config", cnv.config, "JSON config file (flags override)");
        c->callback([&] {
            cb_cnv.apply(cnv.config);
            rc = run_convert(cnv);
        });
    }
    { // levels
        CLI::App* c = app.add_subcommand("levels", "two-qubit CNOT level structure");
        cb_lvl.bind(c->add_option("--omega-c", lvl.omega_c, "control Larmor frequency"),
                    "omega_c", lvl.omega_c);
        cb_lvl.bind(c->add_option("--omega-t", lvl.omega_t, "target Larmor frequency"),
                    "omega_t", lvl.omega_t);
        cb_lvl.bind(c->add_option("--j", lvl.j, "Ising coupling J"), "j", lvl.j);
        cb_lvl.bind(c->add_option("--out", lvl.out, "record JSON path"), "out", lvl.out);
        c->add_option("--config", lvl.config, "JSON config file (flags override)");
        c->callback([&] {
            cb_lvl.apply(lvl.config);
            rc = run_levels(lvl);
        });
    }
    { // validate
        CLI::App* c = app.add_subcommand("validate", "run the built-in invariant suite");
        c->add_flag("--strict", val.strict, "tighten every tolerance 10x and report margins");
        c->add_option("--config", val.config, "JSON config file (flags override)");
        c->callback([&] {
            cb_val.apply(val.config);
            rc = run_validate(val);
        });
    }
    { // plot
        CLI::App* c = app.add_subcommand("plot", "render a trajectory CSV as an SVG chart");
        cb_plt.bind(c->add_option("--in", plt.in, "trajectory CSV path"), "in", plt.in);
        cb_plt.bind(c->add_option("--out", plt.out, "SVG path"), "out", plt.out);
        cb_plt.bind(c->add_option("--title", plt.title, "chart title"), "title", plt.title);
        c->add_option("--config", plt.config, "JSON config file (flags override)");
        c->callback([&] {
            cb_plt.apply(plt.config);
            rc = run_plot(plt);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the diagnostic
        return 1;
    } catch (const integration_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const optimization_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
