#include "pplag/bench.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using pplag::bench::RunConfig;

// Everything a subcommand can set. Option pointers let us tell "flag was
// given" apart from "default", which matters because a JSON config file
// fills the same fields first and explicit flags must win.
struct Cli {
    RunConfig cfg;
    std::vector<double> alphas;

    long long n = 0, m = 0;
    unsigned long long seed = 0;
    double lower = 0.0, upper = 5.0;
    std::string load;
    std::string out;
    long long max_iters = 200000;
    long long record_every = 1;
    unsigned long long x0_seed = 0;
    double gamma = 0.0;

    CLI::Option* opt_n = nullptr;
    CLI::Option* opt_m = nullptr;
    CLI::Option* opt_seed = nullptr;
    CLI::Option* opt_lower = nullptr;
    CLI::Option* opt_upper = nullptr;
    CLI::Option* opt_load = nullptr;
    CLI::Option* opt_out = nullptr;
    CLI::Option* opt_max_iters = nullptr;
    CLI::Option* opt_record = nullptr;
    CLI::Option* opt_x0 = nullptr;
    CLI::Option* opt_gamma = nullptr;
};

void add_generate_options(CLI::App* sub, Cli& c) {
    c.opt_n = sub->add_option("--n", c.n, "problem dimension n");
    c.opt_m = sub->add_option("--m", c.m, "constraint count m");
    c.opt_seed = sub->add_option("--seed", c.seed, "instance seed");
    c.opt_lower = sub->add_option("--lower", c.lower, "box lower bound (default 0)");
    c.opt_upper = sub->add_option("--upper", c.upper, "box upper bound (default 5)");
}

void add_source_options(CLI::App* sub, Cli& c) {
    add_generate_options(sub, c);
    c.opt_load = sub->add_option("--load", c.load, "instance directory to load");
}

void add_solver_options(CLI::App* sub, Cli& c) {
    sub->add_option("--alpha", c.cfg.alpha, "false-penalty weight (default 1e3)");
    sub->add_option("--beta", c.cfg.beta, "dual smoothing weight (default 0.5)");
    sub->add_option("--r-ratio", c.cfg.r_ratio, "delta decay ratio (default 1-1e-7)");
    sub->add_option("--delta0", c.cfg.delta0, "initial delta (default 0.5)");
    sub->add_option("--eta-safety", c.cfg.eta_safety,
                    "fraction of the eta stability bound (default 1.0)");
    c.opt_gamma = sub->add_option("--gamma", c.gamma,
                                  "baseline AL penalty (default 2*L_f)");
    c.opt_max_iters = sub->add_option("--max-iters", c.max_iters,
                                      "iteration cap (default 200000)");
    sub->add_option("--eps-stat", c.cfg.stop.eps_stat,
                    "stationarity threshold (default 1e-3)");
    sub->add_option("--eps-feas", c.cfg.stop.eps_feas,
                    "feasibility threshold (default 1e-3)");
    c.opt_record = sub->add_option("--record-every", c.record_every,
                                   "trace stride (default 1 for n<=100, else 10)");
    c.opt_x0 = sub->add_option("--x0-seed", c.x0_seed,
                               "start point seed (default derived from instance)");
    sub->add_flag("--timing", c.cfg.timing, "fill wallclock cells in trace CSVs");
}

void add_out_option(CLI::App* sub, Cli& c, bool required) {
    c.opt_out = sub->add_option("--out", c.out, "output directory");
    if (required) c.opt_out->required();
    sub->add_flag("--force", c.cfg.force, "overwrite an existing directory");
}

// Config file values land in the same RunConfig the flags write to; flags
// are applied after this, so they override.
void apply_config_file(const std::string& path, Cli& c) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);

    static const std::set<std::string> known = {
        "n", "m", "seed", "lower", "upper", "load", "solver",
        "alpha", "beta", "r_ratio", "delta0", "eta_safety", "gamma",
        "max_iters", "eps_stat", "eps_feas", "record_every", "x0_seed",
        "out", "force", "timing", "alphas"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key))
            throw std::runtime_error("unknown config key: " + key);
    }

    if (j.count("n") || j.count("m") || j.count("seed") || j.count("lower") ||
        j.count("upper")) {
        pplag::GeneratorConfig g = c.cfg.generate.value_or(pplag::GeneratorConfig{});
        if (j.count("n")) g.n = j["n"].get<long long>();
        if (j.count("m")) g.m = j["m"].get<long long>();
        if (j.count("seed")) g.seed = j["seed"].get<unsigned long long>();
        if (j.count("lower")) g.lower_value = j["lower"].get<double>();
        if (j.count("upper")) g.upper_value = j["upper"].get<double>();
        c.cfg.generate = g;
    }
    if (j.count("load")) c.cfg.load_path = j["load"].get<std::string>();
    if (j.count("solver")) c.cfg.solver = j["solver"].get<std::string>();
    if (j.count("alpha")) c.cfg.alpha = j["alpha"].get<double>();
    if (j.count("beta")) c.cfg.beta = j["beta"].get<double>();
    if (j.count("r_ratio")) c.cfg.r_ratio = j["r_ratio"].get<double>();
    if (j.count("delta0")) c.cfg.delta0 = j["delta0"].get<double>();
    if (j.count("eta_safety")) c.cfg.eta_safety = j["eta_safety"].get<double>();
    if (j.count("gamma")) c.cfg.gamma = j["gamma"].get<double>();
    if (j.count("max_iters")) c.cfg.stop.max_iters = j["max_iters"].get<long long>();
    if (j.count("eps_stat")) c.cfg.stop.eps_stat = j["eps_stat"].get<double>();
    if (j.count("eps_feas")) c.cfg.stop.eps_feas = j["eps_feas"].get<double>();
    if (j.count("record_every"))
        c.cfg.record_every = j["record_every"].get<long long>();
    if (j.count("x0_seed")) c.cfg.x0_seed = j["x0_seed"].get<unsigned long long>();
    if (j.count("out")) c.cfg.out_dir = j["out"].get<std::string>();
    if (j.count("force")) c.cfg.force = j["force"].get<bool>();
    if (j.count("timing")) c.cfg.timing = j["timing"].get<bool>();
    if (j.count("alphas")) c.alphas = j["alphas"].get<std::vector<double>>();
}

// Fold parsed flags into the RunConfig (presence-checked fields only; the
// direct bindings are already in place).
void finalize(Cli& c) {
    if (c.opt_n->count() || c.opt_m->count() || c.opt_seed->count() ||
        (c.opt_lower && c.opt_lower->count()) ||
        (c.opt_upper && c.opt_upper->count())) {
        pplag::GeneratorConfig g = c.cfg.generate.value_or(pplag::GeneratorConfig{});
        if (c.opt_n->count()) g.n = c.n;
        if (c.opt_m->count()) g.m = c.m;
        if (c.opt_seed->count()) g.seed = c.seed;
        if (c.opt_lower && c.opt_lower->count()) g.lower_value = c.lower;
        if (c.opt_upper && c.opt_upper->count()) g.upper_value = c.upper;
        c.cfg.generate = g;
    }
    if (c.opt_load && c.opt_load->count()) c.cfg.load_path = c.load;
    if (c.opt_out && c.opt_out->count()) c.cfg.out_dir = c.out;
    if (c.opt_max_iters && c.opt_max_iters->count())
        c.cfg.stop.max_iters = c.max_iters;
    if (c.opt_record && c.opt_record->count())
        c.cfg.record_every = c.record_every;
    if (c.opt_x0 && c.opt_x0->count()) c.cfg.x0_seed = c.x0_seed;
    if (c.opt_gamma && c.opt_gamma->count()) c.cfg.gamma = c.gamma;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark harness for the P-Lagrangian solver and the "
                 "SProx-ALM baseline on box-constrained QPs"};
    app.require_subcommand(1);

    std::string config_path;

    Cli gen_cli;
    CLI::App* gen = app.add_subcommand("gen", "generate and save an instance");
    gen->add_option("--config", config_path, "JSON config file (flags win)");
    add_generate_options(gen, gen_cli);
    add_out_option(gen, gen_cli, /*required=*/true);

    Cli solve_cli;
    CLI::App* solve = app.add_subcommand("solve", "run one solver (or both)");
    solve->add_option("--config", config_path, "JSON config file (flags win)");
    add_source_options(solve, solve_cli);
    solve->add_option("--solver", solve_cli.cfg.solver,
                      "pplag | sproxalm | both (default pplag)");
    add_solver_options(solve, solve_cli);
    add_out_option(solve, solve_cli, /*required=*/false);

    Cli cmp_cli;
    CLI::App* cmp =
        app.add_subcommand("compare", "run both solvers on one instance");
    cmp->add_option("--config", config_path, "JSON config file (flags win)");
    add_source_options(cmp, cmp_cli);
    add_solver_options(cmp, cmp_cli);
    add_out_option(cmp, cmp_cli, /*required=*/false);

    Cli sweep_cli;
    CLI::App* sweep = app.add_subcommand(
        "sweep-alpha", "one P-Lagrangian run per alpha on a shared instance");
    sweep->add_option("--config", config_path, "JSON config file (flags win)");
    add_source_options(sweep, sweep_cli);
    sweep->add_option("--alphas", sweep_cli.alphas, "alpha values")
        ->delimiter(',');
    add_solver_options(sweep, sweep_cli);
    add_out_option(sweep, sweep_cli, /*required=*/false);

    // the config file must be applied before flag parsing so flags override:
    // pre-scan argv for --config
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc)
            path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            path = arg.substr(std::strlen("--config="));
        if (!path.empty()) {
            try {
                apply_config_file(path, gen_cli);
                apply_config_file(path, solve_cli);
                apply_config_file(path, cmp_cli);
                apply_config_file(path, sweep_cli);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return pplag::bench::kExitConfigError;
            }
            break;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pplag::bench::kExitConfigError;
    }

    try {
        if (gen->parsed()) {
            finalize(gen_cli);
            return pplag::bench::cmd_gen(gen_cli.cfg, std::cout);
        }
        if (solve->parsed()) {
            finalize(solve_cli);
            return pplag::bench::cmd_solve(solve_cli.cfg, std::cout);
        }
        if (cmp->parsed()) {
            finalize(cmp_cli);
            return pplag::bench::cmd_compare(cmp_cli.cfg, std::cout);
        }
        finalize(sweep_cli);
        return pplag::bench::cmd_sweep_alpha(sweep_cli.cfg, sweep_cli.alphas,
                                             std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pplag::bench::kExitNumericalFailure;
    }
}
