#include "pplag/rng.hpp"

#include <cmath>

namespace pplag {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double NormalSampler::next() {
    const std::uint64_t e1 = engine_();
    const std::uint64_t e2 = engine_();
    // 53-bit mantissas; the +1 keeps u1 away from 0 so log(u1) is finite.
    const double u1 = (static_cast<double>(e1 >> 11) + 1.0) * 0x1p-53;
    const double u2 = static_cast<double>(e2 >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

void NormalSampler::fill(Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = next();
}

void NormalSampler::fill_row_major(Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = next();
}

}  // namespace pplag
