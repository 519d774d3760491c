#include "pplag/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace pplag {

double stationarity_residual(const ProxSpec& h, const Vector& x,
                             const Vector& g) {
    require(x.size() == g.size(), "stationarity_residual: dimension mismatch");
    return (x - prox_apply(h, 1.0, x - g)).norm();
}

std::pair<double, double> kkt_residual(const CompositeProblem& p,
                                       const Vector& x, const Vector& lambda) {
    const double stat =
        stationarity_residual(p.h_spec, x, grad_smooth(p, x, lambda));
    return {stat, (p.A * x - p.b).norm()};
}

namespace {

void require_consecutive(const PplagState& w_k, const PplagState& w_next,
                         const char* who) {
    if (w_next.k != w_k.k + 1)
        throw std::invalid_argument(std::string(who) +
                                    ": iterates are not consecutive");
}

}  // namespace

SubgradientVector subgradient_vector_d(const CompositeProblem& p,
                                       const PplagParams& params,
                                       const PplagState& w_k,
                                       const PplagState& w_next) {
    require_consecutive(w_k, w_next, "subgradient_vector_d");

    SubgradientVector d;
    d.d1 = p.f_grad(w_next.x) - p.f_grad(w_k.x) +
           p.A.transpose() * (w_next.lambda - w_k.lambda) +
           (w_k.x - w_next.x) / params.eta;
    d.d2 = (1.0 + params.alpha * params.beta) * w_next.z;
    d.norm = std::sqrt(d.d1.squaredNorm() + d.d2.squaredNorm());

    const double c2 =
        std::max(p.L_f + params.rho() * p.sigma_max * p.sigma_max +
                     1.0 / params.eta,
                 1.0 + params.alpha * params.beta);
    d.bound = c2 * ((w_next.x - w_k.x).norm() + w_next.z.norm()) +
              p.sigma_max * w_k.delta;
    return d;
}

double descent_gamma(const CompositeProblem& p, const PplagParams& params) {
    const double coupling = 2.0 + 1.0 / (1.0 + params.alpha * params.beta);
    return 0.5 * (1.0 / params.eta - p.L_f -
                  coupling * params.rho() * p.sigma_max * p.sigma_max);
}

DescentCertificate descent_certificate(const CompositeProblem& p,
                                       const PplagParams& params,
                                       const PplagState& w_k,
                                       const PplagState& w_next,
                                       double delta_k) {
    require_consecutive(w_k, w_next, "descent_certificate");
    require(delta_k >= 0.0, "descent_certificate: delta_k must be >= 0");

    const ExtendedReal l0 = lagrangian_value(p, params, w_k);
    const ExtendedReal l1 = lagrangian_value(p, params, w_next);
    require(l0.is_finite() && l1.is_finite(),
            "descent_certificate: iterates must be feasible for h");

    DescentCertificate cert;
    cert.gamma = descent_gamma(p, params);
    cert.applicable = cert.gamma > 0.0;

    const double rho = params.rho();
    const double lhs = l1.value() - l0.value();
    const double rhs = -cert.gamma * (w_next.x - w_k.x).squaredNorm() -
                       0.5 * params.alpha * (w_next.z - w_k.z).squaredNorm() +
                       delta_k / rho + delta_k * delta_k / (8.0 * rho);
    const double slack = 1e-9 * (1.0 + std::abs(l0.value()));
    cert.gap = lhs - rhs;
    cert.pass = cert.gap <= slack;
    return cert;
}

double dual_bound(double delta0, double r_ratio) {
    require(delta0 > 0.0 && delta0 <= 1.0,
            "dual_bound: delta0 must lie in (0,1]");
    require(r_ratio > 0.9 && r_ratio < 1.0,
            "dual_bound: r_ratio must lie in (0.9,1)");
    return delta0 / (2.0 * (1.0 - r_ratio));
}

}  // namespace pplag
