#pragma once

#include "pplag/problem.hpp"

#include <filesystem>

namespace pplag {

// On-disk layout of an instance directory:
//   Q.mtx, A.mtx        dense MatrixMarket array files
//   r.txt, b.txt        one value per line
//   box.txt             n lower bounds, then n upper bounds, one per line
//   meta.json           n, m, seed, generator_version, schema_version and
//                       the cached spectral constants (lipschitz, sigma_max)
void save_instance(const std::filesystem::path& dir, const LcqpInstance& inst);
LcqpInstance load_instance(const std::filesystem::path& dir);

// Bumped only if the generation recipe or the file layout changes.
inline constexpr const char* kGeneratorVersion = "1";
inline constexpr int kSchemaVersion = 1;

}  // namespace pplag
