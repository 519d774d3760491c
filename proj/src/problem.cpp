#include "pplag/problem.hpp"

#include "pplag/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <iostream>
#include <memory>

namespace pplag {

void validate_problem(const CompositeProblem& p) {
    require(p.n >= 1 && p.m >= 1, "problem: n and m must be at least 1");
    require(static_cast<bool>(p.f_value) && static_cast<bool>(p.f_grad),
            "problem: f_value and f_grad oracles are required");
    require(p.A.rows() == p.m && p.A.cols() == p.n,
            "problem: A must be m x n");
    require(p.b.size() == p.m, "problem: b must have length m");
    require(p.A.allFinite() && p.b.allFinite(),
            "problem: A and b must be finite");
    require(p.L_f > 0.0, "problem: L_f must be positive");
    require(p.sigma_max >= 0.0, "problem: sigma_max must be nonnegative");
    validate_prox_spec(p.h_spec, p.n);
}

double lcqp_value(const LcqpInstance& inst, const Vector& x) {
    require(x.size() == inst.Q.rows(), "lcqp_value: dimension mismatch");
    return 0.5 * x.dot(inst.Q * x) + inst.r.dot(x);
}

Vector lcqp_grad(const LcqpInstance& inst, const Vector& x) {
    require(x.size() == inst.Q.rows(), "lcqp_grad: dimension mismatch");
    return inst.Q * x + inst.r;
}

LcqpInstance generate_lcqp(const GeneratorConfig& cfg) {
    require(cfg.n >= 1 && cfg.m >= 1, "generator: n and m must be at least 1");
    require(cfg.lower_value <= cfg.upper_value,
            "generator: lower_value exceeds upper_value");
    if (cfg.m > cfg.n)
        std::cerr << "warning: generator called with m > n ("
                  << cfg.m << " > " << cfg.n
                  << "); the constraint system is likely inconsistent-prone\n";

    NormalSampler sampler(cfg.seed);

    Matrix qtilde(cfg.n, cfg.n);
    sampler.fill_row_major(qtilde);

    LcqpInstance inst;
    inst.seed = cfg.seed;
    inst.Q = 0.5 * (qtilde + qtilde.transpose());

    inst.r.resize(cfg.n);
    sampler.fill(inst.r);

    inst.A.resize(cfg.m, cfg.n);
    sampler.fill_row_major(inst.A);

    Vector x_feas(cfg.n);
    sampler.fill(x_feas);
    inst.b = inst.A * x_feas;

    inst.box.lower = Vector::Constant(cfg.n, cfg.lower_value);
    inst.box.upper = Vector::Constant(cfg.n, cfg.upper_value);
    return inst;
}

double lipschitz_constant(const Matrix& Q) {
    require(Q.rows() == Q.cols(), "lipschitz_constant: matrix must be square");
    require(Q == Q.transpose(), "lipschitz_constant: matrix must be symmetric");
    if (Q.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double largest_singular_value(const LinearMap& A) {
    if (A.size() == 0) return 0.0;
    // BDCSVD falls back to Jacobi at small sizes; values only, no vectors.
    Eigen::BDCSVD<Matrix> svd(A);
    return svd.singularValues()[0];
}

double feasibility_residual(const CompositeProblem& p, const Vector& x) {
    require(x.size() == p.n, "feasibility_residual: dimension mismatch");
    return (p.A * x - p.b).norm();
}

CompositeProblem make_problem(const LcqpInstance& inst) {
    auto shared = std::make_shared<LcqpInstance>(inst);

    CompositeProblem p;
    p.n = shared->Q.rows();
    p.m = shared->A.rows();
    p.f_value = [shared](const Vector& x) { return lcqp_value(*shared, x); };
    p.f_grad = [shared](const Vector& x) { return lcqp_grad(*shared, x); };
    p.h_spec = BoxIndicator{shared->box};
    p.A = shared->A;
    p.b = shared->b;
    // Floor keeps L_f positive for degenerate data (Q = 0), where the true
    // Lipschitz constant vanishes but step-size formulas divide by it.
    p.L_f = std::max(lipschitz_constant(shared->Q), 1e-12);
    p.sigma_max = largest_singular_value(shared->A);
    validate_problem(p);
    return p;
}

}  // namespace pplag
