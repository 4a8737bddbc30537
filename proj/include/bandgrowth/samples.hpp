#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "bandgrowth/lazy_matrix.hpp"
#include "bandgrowth/window_matrix.hpp"

namespace bandgrowth {

using Rng = std::mt19937_64;

/// Uniform nonzero element: GF(p) residues 1..p-1, rationals a/b with
/// 1 <= |a| <= 9, 1 <= b <= 4.
Scalar random_nonzero(const Field& field, Rng& rng);

/// Random matrix with nonzeros only where |i-j| <= bandwidth, each present with
/// probability density.  The window is exact (valid_to = n).
WindowMatrix random_banded(const Field& field, std::size_t n, std::size_t bandwidth, double density, Rng& rng);

/// Random matrix whose profile follows floor(c k^s): row k carries a nonzero at
/// (k, k + floor(c k^s)) and a sparse sprinkle inside that band.  Columns are
/// symmetric.  Entries past the window are dropped, so valid_to = n.
WindowMatrix random_power_profile(const Field& field, std::size_t n, double c, double s, double density, Rng& rng);

/// Infinite counterpart of random_power_profile: entries are a pure function of
/// (seed, i, j), so every window agrees with every other.  Profile is exactly
/// floor(c k^s).
LazyMatrix random_power_lazy(const Field& field, double c, double s, double density, std::uint64_t seed,
                             std::string name = "power");

}  // namespace bandgrowth
