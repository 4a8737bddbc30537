#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bandgrowth/lazy_matrix.hpp"
#include "bandgrowth/linalg.hpp"
#include "bandgrowth/window_matrix.hpp"

namespace bandgrowth {

/// Multiplication table a_i a_j = sum_l c_{ij}^l a_l of an algebra with a
/// finite or countable basis (1-based indices).
struct StructureConstants {
  std::string name;
  Field field;
  std::optional<std::size_t> dimension;  // nullopt: countable basis a_1, a_2, ...
  std::function<SparseVector(std::size_t i, std::size_t j)> product;
  SparseVector identity;  // coordinates of the unit element
  /// Band declared for left multiplications in the countable case.
  std::optional<GrowthCurve> declared;

  /// Finite algebra from a dense table: table[(i-1)*d + (j-1)] = a_i a_j.
  static StructureConstants from_table(std::string name, Field field, std::size_t d, std::vector<SparseVector> table,
                                       SparseVector identity);
};

/// Checks (a_i a_j) a_l = a_i (a_j a_l) and 1*a_i = a_i*1 = a_i on sampled basis
/// triples (all triples when d^3 <= samples).
bool check_structure_constants(const StructureConstants& sc, std::size_t samples, std::uint64_t seed);

/// Left multiplication matrices L_g, (L_g)(l,j) = coefficient of a_l in g*a_j.
/// Finite algebras are repeated down the diagonal (x -> diag(L_x, L_x, ...)),
/// which is a unital embedding into B(F); a window of size d is L_g itself.
/// Throws NotColumnFinite when a row of L_g keeps growing across the probe window.
std::vector<LazyMatrix> regular_representation(const StructureConstants& sc, const std::vector<SparseVector>& generators,
                                               std::size_t probe_window = 64);

struct BlockViolation {
  std::size_t matrix;     // 0-based input index
  std::size_t row;        // entry position
  std::size_t col;
  std::size_t row_block;  // 1-based block indices
  std::size_t col_block;
};

struct FlagReport {
  std::size_t generators = 0;
  std::vector<std::size_t> block_dims;
  std::vector<std::size_t> cumulative_dims;
  WindowMatrix basis_change{Field::rationals(), 0};  // P, columns are the adapted basis
  WindowMatrix inverse{Field::rationals(), 0};       // P^{-1}
  bool strict = false;
  /// Every block had a nondegenerate Gram matrix, so blocks were chosen as
  /// orthogonal complements (the condition under which strictness is guaranteed).
  bool orthogonal = true;
  std::size_t exhaustion_insertions = 0;
  bool within_geometric_bound = true;  // dims(m) <= (2k+1)^{m-1}
  bool within_relative_bound = true;   // dims(m) <= (2k+1) * cumdim(m-1)
  bool similarity_exact = false;       // P * x~ = x * P on the valid region, every input
  std::vector<BlockViolation> violations;
};

struct TridiagResult {
  FlagReport report;
  std::vector<WindowMatrix> transformed;  // P^{-1} x_i P
};

/// Simultaneous block tridiagonalization of k window matrices.
///
/// The flag starts at span(e_1) and grows by V_{m+1} = V_m + sum x_i V_m + sum x_i^T V_m;
/// each new block is the orthogonal complement of V_m inside V_{m+1} (standard
/// bilinear form), put in reduced echelon form.  When the flag stalls the first
/// standard vector outside V is projected onto V^perp and opens the next stage.
/// Throws WindowExhausted if fewer than min_stages stages fit in the window.
TridiagResult block_tridiagonalize(std::span<const WindowMatrix> xs, std::size_t min_stages = 0);

std::vector<BlockViolation> block_tridiagonal_violations(const WindowMatrix& x, std::span<const std::size_t> dims,
                                                         std::size_t matrix_index = 0);
bool verify_block_tridiagonal(const WindowMatrix& x, std::span<const std::size_t> dims);

struct LinearGrowthCertificate {
  double c = 0;      // max_k profile(k)/k over the transformed windows
  double bound = 0;  // (2k+1)^2
  bool pass = false;
};

LinearGrowthCertificate linear_growth_certificate(const FlagReport& report, std::span<const WindowMatrix> transformed);

/// (2k+1)^{m-1} for m = 1..stages.
std::vector<std::size_t> geometric_block_bounds(std::size_t k, std::size_t stages);

}  // namespace bandgrowth
