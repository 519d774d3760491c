#include "pplag/sproxalm.hpp"

#include "pplag/diagnostics.hpp"
#include "pplag/rng.hpp"

#include <chrono>

namespace pplag {

SproxParams default_sprox_params(const CompositeProblem& p,
                                 std::optional<double> gamma) {
    SproxParams params;
    params.gamma = gamma.value_or(2.0 * p.L_f);
    params.alpha_t = params.gamma / 4.0;
    params.p_weight = 2.0 * p.L_f;
    params.beta_t = 0.5;
    params.c = 1.0 / (2.0 * (p.L_f + params.p_weight +
                             params.gamma * p.sigma_max * p.sigma_max));
    return params;
}

void validate_sprox_params(const SproxParams& params) {
    require(params.gamma > 0.0, "sprox params: gamma must be positive");
    require(params.alpha_t > 0.0, "sprox params: alpha_t must be positive");
    require(params.p_weight > 0.0, "sprox params: p must be positive");
    require(params.beta_t > 0.0 && params.beta_t <= 1.0,
            "sprox params: beta_t must lie in (0,1]");
    require(params.c > 0.0, "sprox params: c must be positive");
}

namespace {

const BoxSet& require_box(const CompositeProblem& p, const char* who) {
    const auto* bi = std::get_if<BoxIndicator>(&p.h_spec);
    if (!bi)
        throw std::invalid_argument(std::string(who) +
                                    ": baseline needs h = box indicator");
    return bi->box;
}

Vector project(const BoxSet& box, const Vector& v) {
    return v.cwiseMax(box.lower).cwiseMin(box.upper);
}

}  // namespace

SproxState make_sprox_initial_state(const CompositeProblem& p,
                                    const Vector& x0) {
    require(x0.size() == p.n, "sprox initial state: x0 has wrong length");
    const BoxSet& box = require_box(p, "make_sprox_initial_state");
    SproxState s;
    s.x = project(box, x0);
    s.z = s.x;
    s.lambda = Vector::Zero(p.m);
    return s;
}

SproxState make_sprox_initial_state(const CompositeProblem& p,
                                    std::uint64_t x0_seed) {
    NormalSampler sampler(x0_seed);
    Vector x0(p.n);
    sampler.fill(x0);
    return make_sprox_initial_state(p, x0);
}

Vector grad_K(const CompositeProblem& p, const SproxParams& params,
              const Vector& x, const Vector& z, const Vector& lambda) {
    require(x.size() == p.n && z.size() == p.n && lambda.size() == p.m,
            "grad_K: dimension mismatch");
    return p.f_grad(x) + p.A.transpose() * lambda +
           params.gamma * (p.A.transpose() * (p.A * x - p.b)) +
           params.p_weight * (x - z);
}

SproxState sprox_iterate(const CompositeProblem& p, const SproxParams& params,
                         const SproxState& s) {
    const BoxSet& box = require_box(p, "sprox_iterate");

    SproxState next;
    next.lambda = s.lambda + params.alpha_t * (p.A * s.x - p.b);
    if (!next.lambda.allFinite()) throw NumericalError("lambda-update", s.k);

    next.x = project(box, s.x - params.c * grad_K(p, params, s.x, s.z,
                                                  next.lambda));
    if (!next.x.allFinite()) throw NumericalError("x-update", s.k);

    next.z = s.z + params.beta_t * (next.x - s.z);
    if (!next.z.allFinite()) throw NumericalError("z-update", s.k);

    next.k = s.k + 1;
    return next;
}

double sprox_stationarity(const CompositeProblem& p, const SproxParams& params,
                          const Vector& x, const Vector& lambda) {
    // gradient of the augmented Lagrangian L(x, lambda), anchor term absent
    const Vector g = p.f_grad(x) + p.A.transpose() * lambda +
                     params.gamma * (p.A.transpose() * (p.A * x - p.b));
    return stationarity_residual(p.h_spec, x, g);
}

namespace {

double aug_lagrangian(const CompositeProblem& p, const SproxParams& params,
                      const Vector& x, const Vector& lambda) {
    const Vector resid = p.A * x - p.b;
    return p.f_value(x) + lambda.dot(resid) +
           0.5 * params.gamma * resid.squaredNorm();
}

}  // namespace

SolveResult sprox_solve(const CompositeProblem& p, const SproxParams& params,
                        SproxState& state, const StoppingRule& stop,
                        const TraceSink& sink, long record_every) {
    validate_problem(p);
    validate_sprox_params(params);
    validate_stopping(stop);
    require(record_every >= 1, "sprox_solve: record_every must be at least 1");
    require_box(p, "sprox_solve");

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ns = [&t0] {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    auto residuals = [&] {
        return std::pair<double, double>(
            sprox_stationarity(p, params, state.x, state.lambda),
            (p.A * state.x - p.b).norm());
    };

    SolveResult res;
    for (long i = 0; i < stop.max_iters; ++i) {
        state = sprox_iterate(p, params, state);

        const auto [stat, feas] = residuals();
        const bool done = stat <= stop.eps_stat && feas <= stop.eps_feas;
        const bool last = done || i + 1 == stop.max_iters;

        if (sink && (state.k % record_every == 0 || last)) {
            IterationRecord rec;
            rec.k = state.k;
            rec.objective = p.f_value(state.x);  // h = 0 on the box
            rec.stationarity = stat;
            rec.feasibility = feas;
            rec.lagrangian = aug_lagrangian(p, params, state.x, state.lambda);
            rec.dual_norm_lambda = state.lambda.norm();
            rec.wallclock_ns = elapsed_ns();
            sink(rec);
        }

        if (done) {
            res.reason = TerminationReason::kTolerance;
            break;
        }
    }

    const auto [stat, feas] = residuals();
    res.iterations = state.k;
    res.stationarity = stat;
    res.feasibility = feas;
    res.objective = p.f_value(state.x);
    return res;
}

}  // namespace pplag
