#include "pplag/prox.hpp"

#include <cmath>

namespace pplag {

namespace {
constexpr double kBoxTol = 1e-12;  // absolute membership tolerance
}

Vector prox_apply(const ProxSpec& spec, double eta, const Vector& v) {
    require(eta > 0.0, "prox_apply: eta must be positive");

    if (std::holds_alternative<ZeroTerm>(spec)) return v;

    if (const auto* bi = std::get_if<BoxIndicator>(&spec)) {
        require(bi->box.lower.size() == v.size(),
                "prox_apply: box dimension mismatch");
        return v.cwiseMax(bi->box.lower).cwiseMin(bi->box.upper);
    }

    const auto& l1 = std::get<L1Term>(spec);
    const double t = eta * l1.weight;
    Vector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]) - t;
        out[i] = a > 0.0 ? std::copysign(a, v[i]) : 0.0;
    }
    return out;
}

ExtendedReal h_value(const ProxSpec& spec, const Vector& x) {
    if (std::holds_alternative<ZeroTerm>(spec)) return 0.0;

    if (const auto* bi = std::get_if<BoxIndicator>(&spec)) {
        require(bi->box.lower.size() == x.size(),
                "h_value: box dimension mismatch");
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] < bi->box.lower[i] - kBoxTol ||
                x[i] > bi->box.upper[i] + kBoxTol)
                return ExtendedReal::infinity();
        }
        return 0.0;
    }

    return std::get<L1Term>(spec).weight * x.lpNorm<1>();
}

void validate_prox_spec(const ProxSpec& spec, Eigen::Index n) {
    if (const auto* bi = std::get_if<BoxIndicator>(&spec)) {
        require(bi->box.lower.size() == n && bi->box.upper.size() == n,
                "prox spec: box bounds must match the problem dimension");
        require(bi->box.lower.allFinite() && bi->box.upper.allFinite(),
                "prox spec: box bounds must be finite");
        require((bi->box.lower.array() <= bi->box.upper.array()).all(),
                "prox spec: lower bound exceeds upper bound");
    } else if (const auto* l1 = std::get_if<L1Term>(&spec)) {
        require(l1->weight >= 0.0 && std::isfinite(l1->weight),
                "prox spec: l1 weight must be nonnegative");
    }
}

}  // namespace pplag
