#pragma once

#include "pplag/core.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace pplag {

struct StoppingRule {
    long max_iters = 200000;
    double eps_stat = 1e-3;
    double eps_feas = 1e-3;
};

void validate_stopping(const StoppingRule& stop);

enum class TerminationReason {
    kTolerance,
    kIterationCap,
};

const char* to_string(TerminationReason r);

struct SolveResult {
    TerminationReason reason = TerminationReason::kIterationCap;
    long iterations = 0;
    double stationarity = 0.0;
    double feasibility = 0.0;
    double objective = 0.0;
};

// One row of a solver trace. Fields that a given solver does not produce
// stay disengaged (the baseline has no delta schedule, no d vector, no
// descent certificate and no proximal dual mu).
struct IterationRecord {
    long k = 0;
    double objective = 0.0;      // f + h, finite part
    double stationarity = 0.0;
    double feasibility = 0.0;
    double lagrangian = 0.0;     // each solver's own merit function
    double dual_norm_lambda = 0.0;
    std::optional<double> dual_norm_mu;
    std::optional<double> delta;
    std::optional<double> d_norm;
    std::optional<bool> descent_ok;
    std::optional<double> z_ratio;  // ||z_{k+1}|| / ||z_{k+1} - z_k||, monitored only
    std::int64_t wallclock_ns = 0;
};

using TraceSink = std::function<void(const IterationRecord&)>;

}  // namespace pplag
