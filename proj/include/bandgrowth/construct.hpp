#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bandgrowth/block_structure.hpp"
#include "bandgrowth/lazy_matrix.hpp"
#include "bandgrowth/linalg.hpp"

namespace bandgrowth {

/// Element of R = prod_k M_{n_k}(F), described block by block.  The block
/// function receives k and the block size and must be pure.
class BlockDiagonalElement {
 public:
  using BlockFn = std::function<DenseMatrix(std::size_t k, std::size_t size)>;

  BlockDiagonalElement(Field field, BlockFn fn) : field_(field), fn_(std::move(fn)) {}

  static BlockDiagonalElement identity(Field field);
  static BlockDiagonalElement zero(Field field);
  /// Sparse random element: each block has a random nonzero diagonal, last
  /// column and first row, so its corners are always occupied.  Block k is
  /// seeded from (seed, k) alone.
  static BlockDiagonalElement random(Field field, std::uint64_t seed);
  /// Matrix unit e_{ij} of block k.
  static BlockDiagonalElement unit(Field field, std::size_t k, std::size_t i, std::size_t j);

  const Field& field() const noexcept { return field_; }
  DenseMatrix block(std::size_t k, std::size_t size) const { return fn_(k, size); }
  /// The 1x1 entry of block 1 (the scalar part used to fill stretch gaps).
  Scalar scalar_part() const { return fn_(1, 1)(0, 0); }

  friend BlockDiagonalElement operator*(const BlockDiagonalElement& a, const BlockDiagonalElement& b);
  friend BlockDiagonalElement operator+(const BlockDiagonalElement& a, const BlockDiagonalElement& b);

 private:
  Field field_;
  BlockFn fn_;
};

/// R embedded block-diagonally along the structure, declared curve 2(t+1) n^r.
/// Windows beyond the laid-out blocks raise WindowExhausted; a block of the
/// wrong shape raises ShapeMismatch.
LazyMatrix embed_R(std::shared_ptr<const BlockStructure> bs, const BlockDiagonalElement& x, std::string name = "R");

/// Blocks of R re-placed at p_k = max(previous end + 1, ceil((n_k/c)^{1/s}))
/// with the gaps filled by the scalar part x_1, so that images lie in W_s(c).
class StretchEmbedding {
 public:
  /// NotAStretch unless 0 < s < r; OutOfRange unless c > 0.
  StretchEmbedding(std::shared_ptr<const BlockStructure> bs, double s, double c);

  double s() const noexcept { return s_; }
  double c() const noexcept { return c_; }
  const BlockStructure& structure() const noexcept { return *bs_; }

  std::size_t placement(std::size_t k) const { return placements_.at(k - 1); }
  std::size_t blocks_placed() const noexcept { return placements_.size(); }
  /// Last position whose content is determined by the placed blocks.
  std::size_t covered() const noexcept { return covered_; }
  /// Block occupying a position, or 0 for a gap.
  std::size_t block_at(std::size_t pos) const;

  LazyMatrix apply(const BlockDiagonalElement& x, std::string name = "stretched") const;

 private:
  std::shared_ptr<const BlockStructure> bs_;
  double s_;
  double c_;
  std::vector<std::size_t> placements_;
  std::size_t covered_ = 0;
};

/// Image of one slot of M_n(A): x placed on rows n(i-1)+a and columns n(j-1)+b.
struct SlotImage {
  LazyMatrix matrix;
  std::size_t degree;
  std::size_t a;
  std::size_t b;
};

SlotImage interleave_embedding(const LazyMatrix& x, std::size_t n, std::size_t a, std::size_t b);

/// Sum of slot images (the image of a matrix over A).  SlotCollision when two
/// images share a slot; ConfigMismatch on mixed degrees or fields.
LazyMatrix combine(std::span<const SlotImage> images, std::string name = "combined");

struct Generator {
  std::string name;
  LazyMatrix matrix;
  double constant;  // declared c for the exponent of the structure
};

/// Named generators over a padded block structure.
class GeneratorSet {
 public:
  GeneratorSet(std::shared_ptr<const BlockStructure> bs, Field field, std::vector<Generator> gens)
      : bs_(std::move(bs)), field_(field), gens_(std::move(gens)) {}

  const BlockStructure& structure() const noexcept { return *bs_; }
  std::shared_ptr<const BlockStructure> structure_ptr() const noexcept { return bs_; }
  const Field& field() const noexcept { return field_; }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  const Generator& find(const std::string& name) const;

  // Layout of the binary-search marker h within a block.
  std::size_t code_bits(std::size_t k) const;
  std::size_t code_index(std::size_t k) const;
  /// Whether block k carries its code in h (2*bits <= block size).
  bool addressable(std::size_t k) const;

 private:
  std::shared_ptr<const BlockStructure> bs_;
  Field field_;
  std::vector<Generator> gens_;
};

/// The eight generators s, s_bar, u, u_bar, B, B_bar, q, h.
///   s      one-step shift, s(i,i+1) = 1, and s_bar its transpose
///   u      one-step shift inside each block, u_bar its transpose
///   B      inside each block, local entries (j, 2j-1); B_bar its transpose
///   q      diagonal marker of the block starts
///   h      diagonal marker: in block k (size 2^a, index m among the blocks of
///          that size, w bits), local position 2j+1 if bit j of m is set and
///          2j+2 otherwise, for j < w; empty when 2w exceeds the block size
/// Throws PaddingRequired for an unpadded structure.
GeneratorSet default_generators(std::shared_ptr<const BlockStructure> bs, Field field);

}  // namespace bandgrowth
