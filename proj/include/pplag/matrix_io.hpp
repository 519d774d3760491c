#pragma once

#include "pplag/core.hpp"

#include <filesystem>

namespace pplag {

// Dense MatrixMarket array files:
//   %%MatrixMarket matrix array real general
//   <rows> <cols>
//   one entry per line, column-major, printed with 17 significant digits
// which round-trips doubles exactly.
void write_matrix_market(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_market(const std::filesystem::path& path);

// Plain text vectors, one value per line, same 17-digit format.
void write_vector(const std::filesystem::path& path, const Vector& v);
Vector read_vector(const std::filesystem::path& path);

}  // namespace pplag
