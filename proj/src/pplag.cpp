#include "pplag/pplag.hpp"

#include "pplag/diagnostics.hpp"
#include "pplag/rng.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

namespace pplag {

double derive_rho(double alpha, double beta) {
    require(alpha > 0.0, "derive_rho: alpha must be positive");
    require(beta > 0.0 && beta < 1.0, "derive_rho: beta must lie in (0,1)");
    return alpha / (1.0 + alpha * beta);
}

double eta_bound(double L_f, double sigma_max, double alpha, double beta) {
    const double rho = derive_rho(alpha, beta);
    const double coupling = 2.0 + 1.0 / (1.0 + alpha * beta);
    return 1.0 / (L_f + coupling * rho * sigma_max * sigma_max);
}

double default_eta(double L_f, double sigma_max, double alpha, double beta,
                   double safety) {
    require(L_f > 0.0, "default_eta: L_f must be positive");
    require(sigma_max >= 0.0, "default_eta: sigma_max must be nonnegative");
    require(safety > 0.0 && safety <= 1.0,
            "default_eta: safety must lie in (0,1]");
    return safety * eta_bound(L_f, sigma_max, alpha, beta);
}

PplagParams default_params(const CompositeProblem& p, double alpha,
                           double beta, double safety) {
    PplagParams params;
    params.alpha = alpha;
    params.beta = beta;
    params.eta = default_eta(p.L_f, p.sigma_max, alpha, beta, safety);
    return params;
}

void validate_params(const CompositeProblem& p, const PplagParams& params) {
    require(params.alpha > 0.0, "params: alpha must be positive");
    require(params.beta > 0.0 && params.beta < 1.0,
            "params: beta must lie in (0,1)");
    require(params.r_ratio > 0.9 && params.r_ratio < 1.0,
            "params: r_ratio must lie in (0.9,1)");
    require(params.delta0 > 0.0 && params.delta0 <= 1.0,
            "params: delta0 must lie in (0,1]");
    require(params.eta > 0.0, "params: eta must be positive");

    const double bound =
        eta_bound(p.L_f, p.sigma_max, params.alpha, params.beta);
    // eta == bound is the experimental choice; tolerate it (with a note)
    // but refuse anything genuinely above the bound.
    require(params.eta <= bound * (1.0 + 1e-9),
            "params: eta exceeds 1/(L_f + (2 + 1/(1+alpha*beta))*rho*sigma_max^2)");
    if (params.eta >= bound * (1.0 - 1e-12))
        std::cerr << "note: eta sits at its stability bound; "
                     "the descent guarantee margin is zero\n";
}

PplagState make_initial_state(const CompositeProblem& p,
                              const PplagParams& params, const Vector& x0) {
    require(x0.size() == p.n, "initial state: x0 has wrong length");
    PplagState s;
    // one prox pass guarantees h(x0) is finite whatever the caller handed in
    s.x = prox_apply(p.h_spec, 1.0, x0);
    s.z = Vector::Zero(p.m);
    s.lambda = Vector::Zero(p.m);
    s.mu = Vector::Zero(p.m);
    s.delta = params.delta0;
    return s;
}

PplagState make_initial_state(const CompositeProblem& p,
                              const PplagParams& params,
                              std::uint64_t x0_seed) {
    NormalSampler sampler(x0_seed);
    Vector x0(p.n);
    sampler.fill(x0);
    return make_initial_state(p, params, x0);
}

Vector grad_smooth(const CompositeProblem& p, const Vector& x,
                   const Vector& lambda) {
    require(x.size() == p.n && lambda.size() == p.m,
            "grad_smooth: dimension mismatch");
    return p.f_grad(x) + p.A.transpose() * lambda;
}

Vector step_x(const CompositeProblem& p, const PplagParams& params,
              const PplagState& s) {
    const Vector g = grad_smooth(p, s.x, s.lambda);
    return prox_apply(p.h_spec, params.eta, s.x - params.eta * g);
}

std::pair<Vector, double> step_mu(const PplagState& s) {
    const Vector dir = s.lambda - s.mu;
    const double tau = s.delta / (dir.squaredNorm() + 1.0);
    return {s.mu + tau * dir, tau};
}

Vector step_lambda(const CompositeProblem& p, const PplagParams& params,
                   const Vector& x_next, const Vector& mu_next) {
    return mu_next + params.rho() * (p.A * x_next - p.b);
}

Vector step_z(const PplagParams& params, const Vector& lambda_next,
              const Vector& mu_next) {
    return (lambda_next - mu_next) / params.alpha;
}

PplagState iterate(const CompositeProblem& p, const PplagParams& params,
                   const PplagState& s) {
    PplagState next;

    next.x = step_x(p, params, s);
    if (!next.x.allFinite()) throw NumericalError("x-update", s.k);

    auto [mu_next, tau] = step_mu(s);
    if (!mu_next.allFinite()) throw NumericalError("mu-update", s.k);
    next.mu = std::move(mu_next);
    next.tau_last = tau;

    next.lambda = step_lambda(p, params, next.x, next.mu);
    if (!next.lambda.allFinite()) throw NumericalError("lambda-update", s.k);

    next.z = step_z(params, next.lambda, next.mu);
    if (!next.z.allFinite()) throw NumericalError("z-update", s.k);

    next.delta = params.r_ratio * s.delta;
    next.k = s.k + 1;
    return next;
}

ExtendedReal lagrangian_value(const CompositeProblem& p,
                              const PplagParams& params, const PplagState& w) {
    const ExtendedReal hv = h_value(p.h_spec, w.x);
    if (!hv.is_finite()) return ExtendedReal::infinity();

    const Vector resid = p.A * w.x - p.b;
    const Vector dual_gap = w.lambda - w.mu;
    const double val = p.f_value(w.x) + w.lambda.dot(resid - w.z) +
                       w.mu.dot(w.z) + 0.5 * params.alpha * w.z.squaredNorm() -
                       0.5 * params.beta * dual_gap.squaredNorm() + hv.value();
    return val;
}

Vector lagrangian_grad_lambda(const CompositeProblem& p,
                              const PplagParams& params, const PplagState& w) {
    return (p.A * w.x - p.b) - w.z - params.beta * (w.lambda - w.mu);
}

Vector lagrangian_grad_z(const PplagParams& params, const PplagState& w) {
    return params.alpha * w.z - (w.lambda - w.mu);
}

namespace {

double finite_objective(const CompositeProblem& p, const Vector& x) {
    const ExtendedReal hv = h_value(p.h_spec, x);
    return p.f_value(x) + (hv.is_finite() ? hv.value() : 0.0);
}

IterationRecord make_record(const CompositeProblem& p,
                            const PplagParams& params, const PplagState& prev,
                            const PplagState& cur, double stat, double feas,
                            std::int64_t elapsed_ns) {
    IterationRecord rec;
    rec.k = cur.k;
    rec.objective = finite_objective(p, cur.x);
    rec.stationarity = stat;
    rec.feasibility = feas;
    rec.lagrangian = lagrangian_value(p, params, cur).as_double();
    rec.dual_norm_lambda = cur.lambda.norm();
    rec.dual_norm_mu = cur.mu.norm();
    rec.delta = cur.delta;
    rec.d_norm = subgradient_vector_d(p, params, prev, cur).norm;
    rec.descent_ok = descent_certificate(p, params, prev, cur, prev.delta).pass;
    const double dz = (cur.z - prev.z).norm();
    if (dz > 0.0) rec.z_ratio = cur.z.norm() / dz;
    rec.wallclock_ns = elapsed_ns;
    return rec;
}

}  // namespace

SolveResult solve(const CompositeProblem& p, const PplagParams& params,
                  PplagState& state, const StoppingRule& stop,
                  const TraceSink& sink, long record_every) {
    validate_problem(p);
    validate_params(p, params);
    validate_stopping(stop);
    require(record_every >= 1, "solve: record_every must be at least 1");

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ns = [&t0] {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    SolveResult res;
    PplagState prev;
    for (long i = 0; i < stop.max_iters; ++i) {
        prev = state;
        state = iterate(p, params, prev);

        const auto [stat, feas] = kkt_residual(p, state.x, state.lambda);
        const bool done = stat <= stop.eps_stat && feas <= stop.eps_feas;
        const bool last = done || i + 1 == stop.max_iters;

        if (sink && (state.k % record_every == 0 || last))
            sink(make_record(p, params, prev, state, stat, feas, elapsed_ns()));

        if (done) {
            res.reason = TerminationReason::kTolerance;
            res.iterations = state.k;
            res.stationarity = stat;
            res.feasibility = feas;
            res.objective = finite_objective(p, state.x);
            return res;
        }
    }

    const auto [stat, feas] = kkt_residual(p, state.x, state.lambda);
    res.reason = TerminationReason::kIterationCap;
    res.iterations = state.k;
    res.stationarity = stat;
    res.feasibility = feas;
    res.objective = finite_objective(p, state.x);
    return res;
}

}  // namespace pplag
