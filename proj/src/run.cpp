#include "pplag/run.hpp"

namespace pplag {

void validate_stopping(const StoppingRule& stop) {
    require(stop.max_iters >= 1, "stopping rule: max_iters must be at least 1");
    require(stop.eps_stat > 0.0, "stopping rule: eps_stat must be positive");
    require(stop.eps_feas > 0.0, "stopping rule: eps_feas must be positive");
}

const char* to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::kTolerance: return "tolerance";
        case TerminationReason::kIterationCap: return "iteration-cap";
    }
    return "unknown";
}

}  // namespace pplag
