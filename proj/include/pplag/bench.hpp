#pragma once

#include "pplag/problem.hpp"
#include "pplag/run.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pplag::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIterationCap = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitConfigError = 64;

// Relative output directories are resolved under this env var when set.
inline constexpr const char* kOutRootEnv = "PPLAG_OUT_ROOT";

// x0 is seeded from the instance seed xor this salt, so the start point is
// deterministic per instance but decorrelated from the instance data draws.
inline constexpr std::uint64_t kX0SeedSalt = 0x9E3779B97F4A7C15ull;

struct RunConfig {
    // exactly one instance source
    std::optional<GeneratorConfig> generate;
    std::optional<std::filesystem::path> load_path;

    std::string solver = "pplag";  // pplag | sproxalm | both

    // solver parameter overrides
    double alpha = 1e3;
    double beta = 0.5;
    double r_ratio = 1.0 - 1e-7;
    double delta0 = 0.5;
    double eta_safety = 1.0;
    std::optional<double> gamma;  // baseline AL penalty; defaulted to 2*L_f

    StoppingRule stop{200000, 1e-3, 1e-3};

    // default: 1 for n <= 100, 10 for larger traces
    std::optional<long> record_every;
    std::optional<std::uint64_t> x0_seed;

    std::filesystem::path out_dir = ".";
    bool force = false;
    bool timing = false;  // fill wallclock_ns cells in trace CSVs
};

struct SolverOutcome {
    std::string solver;
    int exit_code = kExitOk;
    std::string termination;  // "tolerance" | "iteration-cap" | "numerical-failure"
    long iterations = 0;
    double stationarity = 0.0;
    double feasibility = 0.0;
    double objective = 0.0;
    std::int64_t wallclock_ns = 0;
    std::string failure_step;  // set on numerical failure
};

struct ComparisonReport {
    SolverOutcome pplag;
    SolverOutcome sproxalm;
    double gamma = 0.0;  // stated explicitly, never implied
};

std::filesystem::path resolve_out_dir(const std::filesystem::path& dir);

// Subcommand entry points; each returns a process exit code and reports
// through `log` (stdout in the CLI, a capture buffer in tests).
int cmd_gen(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_compare(const RunConfig& cfg, std::ostream& log);
int cmd_sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas,
                    std::ostream& log);

}  // namespace pplag::bench
