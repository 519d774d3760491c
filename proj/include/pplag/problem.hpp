#pragma once

#include "pplag/core.hpp"
#include "pplag/prox.hpp"

#include <cstdint>
#include <functional>

namespace pplag {

// Dense is the only representation in play at desk scale (n <= ~2000).
using LinearMap = Matrix;

// min f(x) + h(x)  s.t.  Ax = b, with f given by value/gradient oracles.
struct CompositeProblem {
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    std::function<double(const Vector&)> f_value;
    std::function<Vector(const Vector&)> f_grad;
    ProxSpec h_spec;
    LinearMap A;
    Vector b;
    double L_f = 0.0;       // Lipschitz constant of grad f
    double sigma_max = 0.0; // largest singular value of A
};

void validate_problem(const CompositeProblem& p);

// Box-constrained QP data: f(x) = 1/2 x'Qx + r'x over [l, u] with Ax = b.
struct LcqpInstance {
    Matrix Q;  // symmetric, indefinite allowed
    Vector r;
    LinearMap A;
    Vector b;
    BoxSet box;
    std::uint64_t seed = 0;
};

struct GeneratorConfig {
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    std::uint64_t seed = 0;
    double lower_value = 0.0;
    double upper_value = 5.0;
};

double lcqp_value(const LcqpInstance& inst, const Vector& x);
Vector lcqp_grad(const LcqpInstance& inst, const Vector& x);

// Draw order (fixed, see NormalSampler): Qtilde row-major, then r, then A
// row-major, then x_feas; Q = (Qtilde + Qtilde')/2 and b = A*x_feas.
// Same config gives a bit-identical instance.
LcqpInstance generate_lcqp(const GeneratorConfig& cfg);

// Eigenvalue of largest magnitude; rejects non-symmetric input.
double lipschitz_constant(const Matrix& Q);

double largest_singular_value(const LinearMap& A);

// ||Ax - b||
double feasibility_residual(const CompositeProblem& p, const Vector& x);

// Wrap an instance as a CompositeProblem. The instance is copied into the
// oracle closures. L_f gets a tiny floor so that a zero Q still yields a
// positive Lipschitz constant for step-size formulas.
CompositeProblem make_problem(const LcqpInstance& inst);

}  // namespace pplag
