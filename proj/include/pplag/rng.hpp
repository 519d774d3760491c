#pragma once

#include "pplag/core.hpp"

#include <cstdint>
#include <random>

namespace pplag {

// Deterministic standard-normal sampler used for instance generation.
//
// The recipe is fixed so that instances are bit-identical across platforms
// and across releases:
//   - engine: std::mt19937_64 seeded directly with the 64-bit seed
//     (the mt19937-64 stream is pinned by the C++ standard),
//   - each normal variate consumes exactly two engine outputs e1, e2:
//       u1 = ((e1 >> 11) + 1) * 2^-53   in (0, 1]
//       u2 = (e2 >> 11) * 2^-53         in [0, 1)
//       value = sqrt(-2 ln u1) * cos(2 pi u2)
//     i.e. the cosine branch of Box-Muller, sine branch discarded.
//
// std::normal_distribution is deliberately not used here: its algorithm is
// implementation-defined, which would break cross-platform reproducibility.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double next();

    // Fill order is part of the format: vectors front to back, matrices
    // row by row (row-major), regardless of Eigen's storage order.
    void fill(Vector& v);
    void fill_row_major(Matrix& m);

private:
    std::mt19937_64 engine_;
};

}  // namespace pplag
