#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pplag {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A value that is either a finite real or +infinity. Used for objective
// terms that act as indicator functions. Keeping the infinity out of
// ordinary double arithmetic avoids inf - inf = NaN surprises when
// merit functions are assembled from pieces.
class ExtendedReal {
public:
    ExtendedReal() = default;

    // Implicit on purpose: finite doubles should flow in naturally.
    ExtendedReal(double v) : v_(v) {
        if (!std::isfinite(v))
            throw std::invalid_argument(
                "ExtendedReal: nonfinite value (use ExtendedReal::infinity())");
    }

    static ExtendedReal infinity() {
        ExtendedReal e;
        e.v_ = std::numeric_limits<double>::infinity();
        e.inf_ = true;
        return e;
    }

    bool is_finite() const { return !inf_; }

    // The finite value. Throws rather than leaking +inf into arithmetic.
    double value() const {
        if (inf_) throw std::domain_error("ExtendedReal: value() on +infinity");
        return v_;
    }

    // For printing and comparisons only.
    double as_double() const {
        return inf_ ? std::numeric_limits<double>::infinity() : v_;
    }

    friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
        if (!a.is_finite() || !b.is_finite()) return infinity();
        return ExtendedReal(a.v_ + b.v_);
    }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }

private:
    double v_ = 0.0;
    bool inf_ = false;
};

// Raised when an iteration produces a nonfinite number. Carries which
// update step blew up and at what iteration, so a driver can report the
// failure and keep whatever trace was collected so far.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string step, long iteration)
        : std::runtime_error("numerical failure in step '" + step +
                             "' at iteration " + std::to_string(iteration)),
          step_(std::move(step)),
          iteration_(iteration) {}

    const std::string& step() const { return step_; }
    long iteration() const { return iteration_; }

private:
    std::string step_;
    long iteration_;
};

inline void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace pplag
