#pragma once

#include "pplag/problem.hpp"
#include "pplag/run.hpp"

#include <cstdint>
#include <utility>

namespace pplag {

// Parameters of the proximal-perturbed augmented Lagrangian iteration.
// rho is derived from (alpha, beta), never stored, so the coupling
// rho = alpha/(1 + alpha*beta) can not drift.
struct PplagParams {
    double alpha = 1e3;            // false-penalty weight on ||z||^2
    double beta = 0.5;             // dual smoothing weight
    double r_ratio = 1.0 - 1e-7;   // geometric decay of delta
    double delta0 = 0.5;
    double eta = 0.0;              // primal step, fill via default_eta

    double rho() const { return alpha / (1.0 + alpha * beta); }
};

double derive_rho(double alpha, double beta);

// 1 / (L_f + (2 + 1/(1+alpha*beta)) * rho * sigma_max^2), the largest
// admissible primal step.
double eta_bound(double L_f, double sigma_max, double alpha, double beta);

// safety * eta_bound. safety = 1 reproduces the experimental choice and is
// accepted with a warning (the convergence theory wants strict inequality).
double default_eta(double L_f, double sigma_max, double alpha, double beta,
                   double safety = 1.0);

PplagParams default_params(const CompositeProblem& p, double alpha = 1e3,
                           double beta = 0.5, double safety = 1.0);

void validate_params(const CompositeProblem& p, const PplagParams& params);

struct PplagState {
    Vector x;
    Vector z;       // length m
    Vector lambda;  // multiplier
    Vector mu;      // slow auxiliary multiplier
    double delta = 0.0;
    long k = 0;
    double tau_last = 0.0;  // most recent mu step size, diagnostic
};

// x0 drawn standard normal (seeded) and prox-mapped once so h(x0) is
// finite; z, lambda, mu start at zero, delta at delta0.
PplagState make_initial_state(const CompositeProblem& p,
                              const PplagParams& params, std::uint64_t x0_seed);
PplagState make_initial_state(const CompositeProblem& p,
                              const PplagParams& params, const Vector& x0);

// grad of the smooth part of the merit function in x: grad f(x) + A'lambda.
// Does not depend on z or mu.
Vector grad_smooth(const CompositeProblem& p, const Vector& x,
                   const Vector& lambda);

// The four update steps, exposed separately so each can be tested against
// its own first-order condition. iterate() chains them in the fixed order
// x, mu, lambda, z and then decays delta.
Vector step_x(const CompositeProblem& p, const PplagParams& params,
              const PplagState& s);
std::pair<Vector, double> step_mu(const PplagState& s);
Vector step_lambda(const CompositeProblem& p, const PplagParams& params,
                   const Vector& x_next, const Vector& mu_next);
Vector step_z(const PplagParams& params, const Vector& lambda_next,
              const Vector& mu_next);

PplagState iterate(const CompositeProblem& p, const PplagParams& params,
                   const PplagState& s);

// Full merit function
//   f(x) + <lambda, Ax-b-z> + <mu, z> + (alpha/2)||z||^2
//   - (beta/2)||lambda-mu||^2 + h(x)
ExtendedReal lagrangian_value(const CompositeProblem& p,
                              const PplagParams& params, const PplagState& w);

// Partial gradients in lambda and z; both vanish at every post-update
// iterate, which the tests pin down.
Vector lagrangian_grad_lambda(const CompositeProblem& p,
                              const PplagParams& params, const PplagState& w);
Vector lagrangian_grad_z(const PplagParams& params, const PplagState& w);

// Runs iterate() until both residuals pass or the cap is hit. Residuals are
// evaluated every iteration; records go to the sink at the record_every
// stride (the final iteration is always recorded). The state argument is
// advanced in place so callers keep full access to the terminal iterate.
SolveResult solve(const CompositeProblem& p, const PplagParams& params,
                  PplagState& state, const StoppingRule& stop,
                  const TraceSink& sink = nullptr, long record_every = 1);

}  // namespace pplag
