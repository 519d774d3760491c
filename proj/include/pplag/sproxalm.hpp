#pragma once

#include "pplag/problem.hpp"
#include "pplag/run.hpp"

#include <cstdint>
#include <optional>

namespace pplag {

// Smoothed proximal ALM baseline. Works on the augmented Lagrangian
//   L(x, lambda) = f(x) + <lambda, Ax-b> + (gamma/2)||Ax-b||^2
// proximally anchored at z:
//   K(x, z, lambda) = L(x, lambda) + (p/2)||x - z||^2.
struct SproxParams {
    double gamma = 0.0;    // AL penalty, no canonical value; always reported
    double alpha_t = 0.0;  // dual step
    double p_weight = 0.0; // proximal anchor weight
    double beta_t = 0.5;   // anchor relaxation in (0, 1]
    double c = 0.0;        // primal step
};

// gamma defaults to 2*L_f when not supplied; the rest follow the standard
// recipe alpha_t = gamma/4, p = 2*L_f, beta_t = 0.5,
// c = 1/(2(L_f + p + gamma*sigma_max^2)).
SproxParams default_sprox_params(const CompositeProblem& p,
                                 std::optional<double> gamma = std::nullopt);

void validate_sprox_params(const SproxParams& params);

struct SproxState {
    Vector x;
    Vector z;  // proximal anchor, same length as x
    Vector lambda;
    long k = 0;
};

// x0 = z0 standard normal projected onto the box, lambda0 = 0.
SproxState make_sprox_initial_state(const CompositeProblem& p,
                                    std::uint64_t x0_seed);
SproxState make_sprox_initial_state(const CompositeProblem& p,
                                    const Vector& x0);

Vector grad_K(const CompositeProblem& p, const SproxParams& params,
              const Vector& x, const Vector& z, const Vector& lambda);

// Update order is fixed: lambda first, then the projected gradient step on
// K, then the anchor relaxation. Requires h = BoxIndicator.
SproxState sprox_iterate(const CompositeProblem& p, const SproxParams& params,
                         const SproxState& s);

// Stationarity for the baseline is measured on its own augmented
// Lagrangian: || x - proj_X[x - (grad f + A'lambda + gamma A'(Ax-b))] ||.
double sprox_stationarity(const CompositeProblem& p, const SproxParams& params,
                          const Vector& x, const Vector& lambda);

SolveResult sprox_solve(const CompositeProblem& p, const SproxParams& params,
                        SproxState& state, const StoppingRule& stop,
                        const TraceSink& sink = nullptr, long record_every = 1);

}  // namespace pplag
