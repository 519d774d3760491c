#include <doctest.h>

#include "pplag/prox.hpp"
#include "pplag/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace pplag;

namespace {

Vector vec(std::initializer_list<double> vals) {
    Vector v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

BoxSet box05(Eigen::Index n) {
    return {Vector::Zero(n), Vector::Constant(n, 5.0)};
}

// brute-force prox on a 1-D grid, the independent oracle for all variants
double grid_prox_1d(const ProxSpec& spec, double eta, double v) {
    double best_x = 0.0, best_val = std::numeric_limits<double>::infinity();
    for (double x = -10.0; x <= 10.0; x += 1e-4) {
        const ExtendedReal h = h_value(spec, vec({x}));
        if (!h.is_finite()) continue;
        const double val = h.value() + (x - v) * (x - v) / (2.0 * eta);
        if (val < best_val) {
            best_val = val;
            best_x = x;
        }
    }
    return best_x;
}

}  // namespace

TEST_CASE("zero term leaves the point alone") {
    NormalSampler s(1);
    Vector v(6);
    s.fill(v);
    CHECK(prox_apply(ZeroTerm{}, 0.3, v) == v);
    CHECK(prox_apply(ZeroTerm{}, 2.0, v) == v);
}

TEST_CASE("box prox clamps componentwise") {
    const ProxSpec spec = BoxIndicator{box05(3)};
    const Vector out = prox_apply(spec, 1.0, vec({-1.0, 2.5, 7.0}));
    CHECK(out == vec({0.0, 2.5, 5.0}));
}

TEST_CASE("l1 prox soft-thresholds") {
    const ProxSpec spec = L1Term{1.0};
    const Vector out = prox_apply(spec, 0.5, vec({0.3, -2.0}));
    CHECK(out[0] == 0.0);
    CHECK(out[1] == -1.5);
}

TEST_CASE("nonpositive eta is rejected") {
    const Vector v = vec({1.0});
    CHECK_THROWS_AS(prox_apply(ZeroTerm{}, 0.0, v), std::invalid_argument);
    CHECK_THROWS_AS(prox_apply(L1Term{1.0}, -1.0, v), std::invalid_argument);
}

TEST_CASE("h_value basics") {
    CHECK(h_value(ZeroTerm{}, vec({3.0, -4.0})) == ExtendedReal(0.0));

    const ProxSpec boxspec = BoxIndicator{box05(2)};
    CHECK(h_value(boxspec, vec({1.0, 2.0})).value() == 0.0);
    CHECK(!h_value(boxspec, vec({-1e-3, 2.0})).is_finite());
    // membership tolerance: 1e-13 past the bound is still inside
    CHECK(h_value(boxspec, vec({-1e-13, 2.0})).is_finite());
    CHECK(!h_value(boxspec, vec({0.0, 5.0 + 1e-3})).is_finite());

    CHECK(h_value(L1Term{2.0}, vec({1.0, -3.0})).value() == 8.0);
}

TEST_CASE("extended real refuses raw infinities") {
    CHECK_THROWS_AS(ExtendedReal(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        ExtendedReal(std::numeric_limits<double>::quiet_NaN()),
        std::invalid_argument);
    CHECK_THROWS_AS(ExtendedReal::infinity().value(), std::domain_error);
    CHECK(ExtendedReal::infinity().as_double() ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("prox is nonexpansive for every variant") {
    const ProxSpec variants[] = {ProxSpec(ZeroTerm{}),
                                 ProxSpec(BoxIndicator{box05(8)}),
                                 ProxSpec(L1Term{0.7})};
    NormalSampler s(20240501);
    for (const auto& spec : variants) {
        for (int trial = 0; trial < 100; ++trial) {
            Vector u(8), v(8);
            s.fill(u);
            s.fill(v);
            u *= 3.0;
            v *= 3.0;
            const double lhs =
                (prox_apply(spec, 0.8, u) - prox_apply(spec, 0.8, v)).norm();
            CHECK(lhs <= (u - v).norm() + 1e-12);
        }
    }
}

TEST_CASE("prox fixed points") {
    const ProxSpec boxspec = BoxIndicator{box05(4)};
    const Vector inside = vec({0.0, 1.0, 3.3, 5.0});
    CHECK(prox_apply(boxspec, 0.7, inside) == inside);

    const Vector zero = Vector::Zero(4);
    CHECK(prox_apply(L1Term{2.0}, 1.0, zero) == zero);
}

TEST_CASE("1-D prox agrees with the grid oracle") {
    const ProxSpec variants[] = {ProxSpec(ZeroTerm{}),
                                 ProxSpec(BoxIndicator{box05(1)}),
                                 ProxSpec(L1Term{1.3})};
    NormalSampler s(77);
    for (const auto& spec : variants) {
        for (int trial = 0; trial < 5; ++trial) {
            const double v = 4.0 * s.next();
            const double eta = 0.2 + std::abs(s.next());
            const double got = prox_apply(spec, eta, vec({v}))[0];
            CHECK(std::abs(got - grid_prox_1d(spec, eta, v)) <= 1e-3);
        }
    }
}

TEST_CASE("validate_prox_spec rejects broken boxes and weights") {
    BoxSet bad{vec({1.0}), vec({0.0})};  // lower above upper
    CHECK_THROWS_AS(validate_prox_spec(BoxIndicator{bad}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_prox_spec(BoxIndicator{box05(3)}, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_prox_spec(L1Term{-0.5}, 4),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_prox_spec(ZeroTerm{}, 4));
}
