#pragma once

#include "pplag/pplag.hpp"
#include "pplag/problem.hpp"

#include <optional>
#include <utility>

namespace pplag {

// Prox-based stationarity measure || x - prox_{1*h}(x - g) || with unit
// step. For a box this is the classical projected-gradient residual
// || x - proj[l,u](x - g) ||. It is a computable surrogate for the
// set-distance dist(0, g + subdifferential h(x)): it vanishes exactly at
// stationary points and is continuous in (x, g), but it is not equal to
// the distance away from them.
double stationarity_residual(const ProxSpec& h, const Vector& x,
                             const Vector& g);

// (stationarity with g = grad f(x) + A'lambda, ||Ax - b||)
std::pair<double, double> kkt_residual(const CompositeProblem& p,
                                       const Vector& x, const Vector& lambda);

// The certified subgradient direction for a consecutive pair of iterates:
//   d1 = grad f(x+) - grad f(x) + A'(lambda+ - lambda) + (x - x+)/eta
//   d2 = (1 + alpha*beta) z+
// together with sqrt(||d1||^2 + ||d2||^2) and the a priori bound
//   c2 (||x+ - x|| + ||z+||) + sigma_max * delta_k,
// c2 = max{L_f + rho*sigma_max^2 + 1/eta, 1 + alpha*beta}. The bound is
// derived for transitions between generated iterates; it does not cover
// the step out of an arbitrary initialization.
struct SubgradientVector {
    Vector d1;
    Vector d2;
    double norm = 0.0;
    double bound = 0.0;
};

SubgradientVector subgradient_vector_d(const CompositeProblem& p,
                                       const PplagParams& params,
                                       const PplagState& w_k,
                                       const PplagState& w_next);

// One-iteration merit decrease test:
//   L(w+) - L(w) <= -gamma_d ||dx||^2 - (alpha/2)||dz||^2
//                   + delta_k/rho + delta_k^2/(8 rho) + slack,
// slack = 1e-9 (1 + |L(w)|). gap is LHS - RHS without the slack, so
// pass == (gap <= slack). The inequality itself holds for any sign of
// gamma_d; applicable flags whether the sufficient-decrease reading
// (gamma_d > 0) is in force.
struct DescentCertificate {
    bool pass = false;
    double gap = 0.0;
    double gamma = 0.0;
    bool applicable = false;
};

double descent_gamma(const CompositeProblem& p, const PplagParams& params);

DescentCertificate descent_certificate(const CompositeProblem& p,
                                       const PplagParams& params,
                                       const PplagState& w_k,
                                       const PplagState& w_next,
                                       double delta_k);

// delta0 / (2 (1 - r)): geometric-series bound on ||mu_k|| for all k.
double dual_bound(double delta0, double r_ratio);

struct EpsKktReport {
    double eps_stat = 0.0;
    double eps_feas = 0.0;
    double achieved_stat = 0.0;
    double achieved_feas = 0.0;
    bool satisfied = false;
    std::optional<long> iter_at;
};

}  // namespace pplag
