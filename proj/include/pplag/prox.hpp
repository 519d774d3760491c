#pragma once

#include "pplag/core.hpp"

#include <variant>

namespace pplag {

struct BoxSet {
    Vector lower;
    Vector upper;
};

// Nonsmooth term h in the composite objective f + h. Three supported
// choices: h = 0, the indicator of a box, and a weighted l1 norm.
struct ZeroTerm {};

struct BoxIndicator {
    BoxSet box;
};

struct L1Term {
    double weight = 1.0;
};

using ProxSpec = std::variant<ZeroTerm, BoxIndicator, L1Term>;

// argmin_x h(x) + (1/(2 eta)) ||x - v||^2
//   Zero: identity
//   BoxIndicator: componentwise clamp to [l, u]
//   L1(w): soft threshold, sign(v_i) * max(|v_i| - eta*w, 0)
Vector prox_apply(const ProxSpec& spec, double eta, const Vector& v);

// h(x) as an extended real. Box membership is checked with a small
// absolute tolerance so that points produced by the prox itself never
// evaluate to +infinity through rounding.
ExtendedReal h_value(const ProxSpec& spec, const Vector& x);

void validate_prox_spec(const ProxSpec& spec, Eigen::Index n);

}  // namespace pplag
