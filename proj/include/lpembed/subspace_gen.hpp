#pragma once

#include <cstdint>
#include <string>

#include "lpembed/lift.hpp"

namespace lpembed {

/// Families of test subspaces the CLI can generate.
enum class SubspaceKind {
    Gaussian,   ///< i.i.d. standard normal basis entries
    L2k,        ///< Gaussian basis with l2-orthonormalized columns
    Coordinate, ///< first k standard basis vectors
};

SubspaceKind subspace_kind_from_string(const std::string& name);
std::string to_string(SubspaceKind kind);

/**
 * @brief Deterministic subspace generator.
 *
 * Gaussian bases are drawn column by column from NormalSampler(seed); the
 * l2k family orthonormalizes those columns (signs fixed so the R factor
 * has positive diagonal), giving a near-isometric copy of Euclidean space
 * inside l_p as m grows. Coordinate ignores the seed.
 */
Subspace gen_subspace(SubspaceKind kind, Eigen::Index k, Eigen::Index m, std::uint64_t seed);

} // namespace lpembed
