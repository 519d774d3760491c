#include "pplag/bench.hpp"

#include "pplag/diagnostics.hpp"
#include "pplag/instance_io.hpp"
#include "pplag/pplag.hpp"
#include "pplag/sproxalm.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace pplag::bench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kTraceHeader =
    "k,objective,stationarity,feasibility,lagrangian,dual_lambda,dual_mu,"
    "delta,d_norm,descent_ok,wallclock_ns";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Writes the shared CSV schema; optional fields the solver never produced
// come out as empty cells. Timing cells are filled only on request so that
// repeated runs yield byte-identical files.
class TraceWriter {
public:
    TraceWriter(const fs::path& path, bool timing)
        : out_(path), timing_(timing) {
        if (!out_)
            throw std::runtime_error("cannot open trace file: " +
                                     path.string());
        out_ << kTraceHeader << "\n";
    }

    void operator()(const IterationRecord& rec) {
        out_ << rec.k << ',' << fmt17(rec.objective) << ','
             << fmt17(rec.stationarity) << ',' << fmt17(rec.feasibility) << ','
             << fmt17(rec.lagrangian) << ',' << fmt17(rec.dual_norm_lambda)
             << ',';
        if (rec.dual_norm_mu) out_ << fmt17(*rec.dual_norm_mu);
        out_ << ',';
        if (rec.delta) out_ << fmt17(*rec.delta);
        out_ << ',';
        if (rec.d_norm) out_ << fmt17(*rec.d_norm);
        out_ << ',';
        if (rec.descent_ok) out_ << (*rec.descent_ok ? 1 : 0);
        out_ << ',';
        if (timing_) out_ << rec.wallclock_ns;
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("trace write failed");
    }

private:
    std::ofstream out_;
    bool timing_;
};

struct InstanceBundle {
    LcqpInstance inst;
    CompositeProblem problem;
    std::string source;
    Eigen::Index n = 0;
    Eigen::Index m = 0;
};

int validate_config(const RunConfig& cfg, std::ostream& log) {
    const int sources =
        (cfg.generate.has_value() ? 1 : 0) + (cfg.load_path.has_value() ? 1 : 0);
    if (sources != 1) {
        log << "error: exactly one instance source (generate or load) is required\n";
        return kExitConfigError;
    }
    if (cfg.solver != "pplag" && cfg.solver != "sproxalm" &&
        cfg.solver != "both") {
        log << "error: solver must be pplag, sproxalm or both\n";
        return kExitConfigError;
    }
    if (cfg.stop.max_iters < 1 || cfg.stop.eps_stat <= 0.0 ||
        cfg.stop.eps_feas <= 0.0) {
        log << "error: stopping rule needs max_iters >= 1 and positive thresholds\n";
        return kExitConfigError;
    }
    if (cfg.record_every && *cfg.record_every < 1) {
        log << "error: record_every must be at least 1\n";
        return kExitConfigError;
    }
    if (!(cfg.alpha > 0.0)) {
        log << "error: alpha must be positive\n";
        return kExitConfigError;
    }
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) {
        log << "error: beta must lie in (0,1)\n";
        return kExitConfigError;
    }
    if (!(cfg.r_ratio > 0.9 && cfg.r_ratio < 1.0)) {
        log << "error: r_ratio must lie in (0.9,1)\n";
        return kExitConfigError;
    }
    if (!(cfg.delta0 > 0.0 && cfg.delta0 <= 1.0)) {
        log << "error: delta0 must lie in (0,1]\n";
        return kExitConfigError;
    }
    if (!(cfg.eta_safety > 0.0 && cfg.eta_safety <= 1.0)) {
        log << "error: eta-safety must lie in (0,1]\n";
        return kExitConfigError;
    }
    if (cfg.gamma && !(*cfg.gamma > 0.0)) {
        log << "error: gamma must be positive\n";
        return kExitConfigError;
    }
    return kExitOk;
}

InstanceBundle acquire_instance(const RunConfig& cfg) {
    InstanceBundle bundle;
    if (cfg.generate) {
        bundle.inst = generate_lcqp(*cfg.generate);
        bundle.source = "generated";
    } else {
        // load paths are taken literally; only output dirs get the env root
        bundle.inst = load_instance(*cfg.load_path);
        bundle.source = cfg.load_path->string();
    }
    bundle.problem = make_problem(bundle.inst);
    bundle.n = bundle.problem.n;
    bundle.m = bundle.problem.m;
    return bundle;
}

long effective_record_every(const RunConfig& cfg, Eigen::Index n) {
    if (cfg.record_every) return *cfg.record_every;
    return n <= 100 ? 1 : 10;
}

std::uint64_t effective_x0_seed(const RunConfig& cfg,
                                const InstanceBundle& bundle) {
    return cfg.x0_seed.value_or(bundle.inst.seed ^ kX0SeedSalt);
}

int exit_for(TerminationReason reason) {
    return reason == TerminationReason::kTolerance ? kExitOk
                                                   : kExitIterationCap;
}

json outcome_json(const SolverOutcome& o) {
    json j;
    j["solver"] = o.solver;
    j["termination"] = o.termination;
    j["iterations"] = o.iterations;
    j["stationarity"] = o.stationarity;
    j["feasibility"] = o.feasibility;
    j["objective"] = o.objective;
    j["wallclock_ns"] = o.wallclock_ns;
    j["exit_code"] = o.exit_code;
    if (!o.failure_step.empty()) j["failure_step"] = o.failure_step;
    return j;
}

json instance_json(const InstanceBundle& bundle) {
    json j;
    j["n"] = bundle.n;
    j["m"] = bundle.m;
    j["seed"] = bundle.inst.seed;
    j["source"] = bundle.source;
    return j;
}

json stop_json(const StoppingRule& stop) {
    json j;
    j["max_iters"] = stop.max_iters;
    j["eps_stat"] = stop.eps_stat;
    j["eps_feas"] = stop.eps_feas;
    return j;
}

PplagParams pplag_params_from(const RunConfig& cfg,
                              const CompositeProblem& p) {
    PplagParams params = default_params(p, cfg.alpha, cfg.beta, cfg.eta_safety);
    params.r_ratio = cfg.r_ratio;
    params.delta0 = cfg.delta0;
    return params;
}

json pplag_params_json(const PplagParams& params) {
    json j;
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["rho"] = params.rho();
    j["r_ratio"] = params.r_ratio;
    j["delta0"] = params.delta0;
    j["eta"] = params.eta;
    return j;
}

json sprox_params_json(const SproxParams& params) {
    json j;
    j["gamma"] = params.gamma;  // always stated, comparisons hinge on it
    j["alpha_t"] = params.alpha_t;
    j["p"] = params.p_weight;
    j["beta_t"] = params.beta_t;
    j["c"] = params.c;
    return j;
}

std::int64_t now_ns_since(
    const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

// Runs one solver, streams its trace, and folds the result (including a
// numerical failure) into a SolverOutcome. Throws only on I/O problems.
SolverOutcome run_pplag(const RunConfig& cfg, const InstanceBundle& bundle,
                        const PplagParams& params, const fs::path& trace_path,
                        double* max_z_ratio_out) {
    SolverOutcome outcome;
    outcome.solver = "pplag";

    TraceWriter writer(trace_path, cfg.timing);
    double max_z_ratio = 0.0;
    TraceSink sink = [&](const IterationRecord& rec) {
        if (rec.z_ratio && *rec.z_ratio > max_z_ratio)
            max_z_ratio = *rec.z_ratio;
        writer(rec);
    };

    PplagState state =
        make_initial_state(bundle.problem, params, effective_x0_seed(cfg, bundle));

    const auto t0 = std::chrono::steady_clock::now();
    try {
        SolveResult res =
            solve(bundle.problem, params, state, cfg.stop, sink,
                  effective_record_every(cfg, bundle.n));
        outcome.termination = to_string(res.reason);
        outcome.iterations = res.iterations;
        outcome.stationarity = res.stationarity;
        outcome.feasibility = res.feasibility;
        outcome.objective = res.objective;
        outcome.exit_code = exit_for(res.reason);
    } catch (const NumericalError& err) {
        // keep the partial trace; report the step that produced nonfinites
        const auto [stat, feas] =
            kkt_residual(bundle.problem, state.x, state.lambda);
        outcome.termination = "numerical-failure";
        outcome.iterations = state.k;
        outcome.stationarity = stat;
        outcome.feasibility = feas;
        outcome.objective = bundle.problem.f_value(state.x);
        outcome.exit_code = kExitNumericalFailure;
        outcome.failure_step = err.step();
    }
    outcome.wallclock_ns = now_ns_since(t0);
    writer.close();
    if (max_z_ratio_out) *max_z_ratio_out = max_z_ratio;
    return outcome;
}

SolverOutcome run_sproxalm(const RunConfig& cfg, const InstanceBundle& bundle,
                           const SproxParams& params,
                           const fs::path& trace_path) {
    SolverOutcome outcome;
    outcome.solver = "sproxalm";

    TraceWriter writer(trace_path, cfg.timing);
    TraceSink sink = [&](const IterationRecord& rec) { writer(rec); };

    SproxState state = make_sprox_initial_state(
        bundle.problem, effective_x0_seed(cfg, bundle));

    const auto t0 = std::chrono::steady_clock::now();
    try {
        SolveResult res =
            sprox_solve(bundle.problem, params, state, cfg.stop, sink,
                        effective_record_every(cfg, bundle.n));
        outcome.termination = to_string(res.reason);
        outcome.iterations = res.iterations;
        outcome.stationarity = res.stationarity;
        outcome.feasibility = res.feasibility;
        outcome.objective = res.objective;
        outcome.exit_code = exit_for(res.reason);
    } catch (const NumericalError& err) {
        outcome.termination = "numerical-failure";
        outcome.iterations = state.k;
        outcome.stationarity =
            sprox_stationarity(bundle.problem, params, state.x, state.lambda);
        outcome.feasibility = (bundle.problem.A * state.x - bundle.problem.b).norm();
        outcome.objective = bundle.problem.f_value(state.x);
        outcome.exit_code = kExitNumericalFailure;
        outcome.failure_step = err.step();
    }
    outcome.wallclock_ns = now_ns_since(t0);
    writer.close();
    return outcome;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

void log_outcome(std::ostream& log, const SolverOutcome& o) {
    log << o.solver << ": termination=" << o.termination
        << " iterations=" << o.iterations
        << " stationarity=" << fmt17(o.stationarity)
        << " feasibility=" << fmt17(o.feasibility);
    if (!o.failure_step.empty()) log << " failure_step=" << o.failure_step;
    log << "\n";
}

}  // namespace

fs::path resolve_out_dir(const fs::path& dir) {
    if (dir.is_absolute()) return dir;
    if (const char* root = std::getenv(kOutRootEnv); root && *root)
        return fs::path(root) / dir;
    return dir;
}

int cmd_gen(const RunConfig& cfg, std::ostream& log) {
    if (!cfg.generate) {
        log << "error: gen requires generator settings (n, m, seed)\n";
        return kExitConfigError;
    }
    if (cfg.load_path) {
        log << "error: gen does not take a load path\n";
        return kExitConfigError;
    }
    const auto& gc = *cfg.generate;
    if (gc.n < 1 || gc.m < 1) {
        log << "error: n and m must be at least 1\n";
        return kExitConfigError;
    }

    const fs::path dir = resolve_out_dir(cfg.out_dir);
    if (fs::exists(dir) && !cfg.force) {
        log << "error: " << dir.string()
            << " already exists (pass --force to overwrite)\n";
        return kExitConfigError;
    }

    const LcqpInstance inst = generate_lcqp(gc);
    save_instance(dir, inst);

    log << "n=" << gc.n << " m=" << gc.m << " seed=" << gc.seed << "\n"
        << "L_Q=" << fmt17(lipschitz_constant(inst.Q))
        << " sigma_max=" << fmt17(largest_singular_value(inst.A)) << "\n"
        << "dir=" << dir.string() << "\n";
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    if (int rc = validate_config(cfg, log); rc != kExitOk) return rc;

    InstanceBundle bundle;
    try {
        bundle = acquire_instance(cfg);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    const fs::path dir = resolve_out_dir(cfg.out_dir);
    fs::create_directories(dir);

    log << "instance: n=" << bundle.n << " m=" << bundle.m
        << " seed=" << bundle.inst.seed << " (" << bundle.source << ")\n";

    int exit_code = kExitOk;

    if (cfg.solver == "pplag" || cfg.solver == "both") {
        const PplagParams params = pplag_params_from(cfg, bundle.problem);
        double max_z_ratio = 0.0;
        const SolverOutcome outcome = run_pplag(
            cfg, bundle, params, dir / "trace_pplag.csv", &max_z_ratio);

        json summary;
        summary["schema_version"] = kSchemaVersion;
        summary["instance"] = instance_json(bundle);
        summary["stop"] = stop_json(cfg.stop);
        summary["params"] = pplag_params_json(params);
        summary["x0_seed"] = effective_x0_seed(cfg, bundle);
        summary["result"] = outcome_json(outcome);
        summary["satisfied"] = outcome.termination == "tolerance";
        summary["max_z_ratio"] = max_z_ratio;
        write_json(dir / "summary_pplag.json", summary);

        log_outcome(log, outcome);
        exit_code = std::max(exit_code, outcome.exit_code);
    }

    if (cfg.solver == "sproxalm" || cfg.solver == "both") {
        const SproxParams params =
            default_sprox_params(bundle.problem, cfg.gamma);
        const SolverOutcome outcome =
            run_sproxalm(cfg, bundle, params, dir / "trace_sproxalm.csv");

        json summary;
        summary["schema_version"] = kSchemaVersion;
        summary["instance"] = instance_json(bundle);
        summary["stop"] = stop_json(cfg.stop);
        summary["params"] = sprox_params_json(params);
        summary["x0_seed"] = effective_x0_seed(cfg, bundle);
        summary["result"] = outcome_json(outcome);
        summary["satisfied"] = outcome.termination == "tolerance";
        write_json(dir / "summary_sproxalm.json", summary);

        log << "gamma=" << fmt17(params.gamma) << "\n";
        log_outcome(log, outcome);
        exit_code = std::max(exit_code, outcome.exit_code);
    }

    return exit_code;
}

int cmd_compare(const RunConfig& cfg, std::ostream& log) {
    if (int rc = validate_config(cfg, log); rc != kExitOk) return rc;

    InstanceBundle bundle;
    try {
        bundle = acquire_instance(cfg);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    if (!std::holds_alternative<BoxIndicator>(bundle.problem.h_spec)) {
        log << "error: compare needs a box-constrained instance\n";
        return kExitConfigError;
    }

    const fs::path dir = resolve_out_dir(cfg.out_dir);
    fs::create_directories(dir);

    log << "instance: n=" << bundle.n << " m=" << bundle.m
        << " seed=" << bundle.inst.seed << " (" << bundle.source << ")\n";

    // identical instance object and stop thresholds for both solvers
    const PplagParams pparams = pplag_params_from(cfg, bundle.problem);
    const SproxParams sparams = default_sprox_params(bundle.problem, cfg.gamma);

    ComparisonReport report;
    report.gamma = sparams.gamma;

    double max_z_ratio = 0.0;
    report.pplag = run_pplag(cfg, bundle, pparams, dir / "trace_pplag.csv",
                             &max_z_ratio);
    report.sproxalm =
        run_sproxalm(cfg, bundle, sparams, dir / "trace_sproxalm.csv");

    json j;
    j["schema_version"] = kSchemaVersion;
    j["instance"] = instance_json(bundle);
    j["stop"] = stop_json(cfg.stop);
    j["x0_seed"] = effective_x0_seed(cfg, bundle);
    j["pplag"] = {{"params", pplag_params_json(pparams)},
                  {"result", outcome_json(report.pplag)},
                  {"max_z_ratio", max_z_ratio}};
    j["sproxalm"] = {{"params", sprox_params_json(sparams)},
                     {"result", outcome_json(report.sproxalm)}};
    j["gamma"] = report.gamma;
    write_json(dir / "report.json", j);

    log << "gamma=" << fmt17(report.gamma) << "\n";
    log_outcome(log, report.pplag);
    log_outcome(log, report.sproxalm);

    return std::max(report.pplag.exit_code, report.sproxalm.exit_code);
}

int cmd_sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas,
                    std::ostream& log) {
    if (int rc = validate_config(cfg, log); rc != kExitOk) return rc;
    if (alphas.empty()) {
        log << "error: sweep needs at least one alpha\n";
        return kExitConfigError;
    }
    for (double a : alphas) {
        if (!(a > 0.0)) {
            log << "error: alphas must be positive\n";
            return kExitConfigError;
        }
    }

    InstanceBundle bundle;
    try {
        bundle = acquire_instance(cfg);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    const fs::path dir = resolve_out_dir(cfg.out_dir);
    fs::create_directories(dir);

    log << "instance: n=" << bundle.n << " m=" << bundle.m
        << " seed=" << bundle.inst.seed << " (" << bundle.source << ")\n";

    json runs = json::array();
    int exit_code = kExitOk;

    for (std::size_t i = 0; i < alphas.size(); ++i) {
        RunConfig run_cfg = cfg;
        run_cfg.alpha = alphas[i];

        const std::string trace_name =
            "trace_alpha" + std::to_string(i) + ".csv";

        json entry;
        entry["alpha"] = alphas[i];
        entry["trace"] = trace_name;

        try {
            // eta re-derived for each alpha through the usual default
            const PplagParams params =
                pplag_params_from(run_cfg, bundle.problem);
            double max_z_ratio = 0.0;
            const SolverOutcome outcome = run_pplag(
                run_cfg, bundle, params, dir / trace_name, &max_z_ratio);

            entry["params"] = pplag_params_json(params);
            entry["result"] = outcome_json(outcome);
            entry["max_z_ratio"] = max_z_ratio;
            exit_code = std::max(exit_code, outcome.exit_code);

            log << "alpha=" << fmt17(alphas[i]) << " eta=" << fmt17(params.eta)
                << " -> " << outcome.termination
                << " stationarity=" << fmt17(outcome.stationarity)
                << " feasibility=" << fmt17(outcome.feasibility) << "\n";
        } catch (const std::exception& e) {
            // a broken run is recorded and the sweep moves on
            entry["error"] = e.what();
            exit_code = std::max(exit_code, kExitNumericalFailure);
            log << "alpha=" << fmt17(alphas[i]) << " -> error: " << e.what()
                << "\n";
        }
        runs.push_back(entry);
    }

    json j;
    j["schema_version"] = kSchemaVersion;
    j["instance"] = instance_json(bundle);
    j["stop"] = stop_json(cfg.stop);
    j["x0_seed"] = effective_x0_seed(cfg, bundle);
    j["runs"] = runs;
    write_json(dir / "sweep.json", j);

    return exit_code;
}

}  // namespace pplag::bench
