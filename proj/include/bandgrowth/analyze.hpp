#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bandgrowth/construct.hpp"
#include "bandgrowth/growth.hpp"
#include "bandgrowth/recipes.hpp"

namespace bandgrowth {

inline constexpr const char* kEstimateLabel =
    "representation growth exponent (upper bound for this one representation, not a dimension)";

struct GrowthEstimate {
  std::size_t max_len = 0;
  std::size_t window = 0;
  std::vector<std::size_t> envelope;  // pointwise max of word profiles
  std::size_t exact_to = 0;           // envelope positions exact for the infinite words
  ExponentFit fit;
  std::size_t words = 0;
  bool sampled = false;  // more than word_cap words: a seeded random sample was used
};

/// Envelope of the band profiles of all words of length 1..L in the generators,
/// fitted on its exact part.  Beyond word_cap words a seeded sample of word_cap
/// words replaces the enumeration.
GrowthEstimate estimate_growth(std::span<const WindowMatrix> gens, std::size_t L, std::uint64_t seed = 0xB4AD,
                               std::size_t word_cap = 10000, std::size_t skip = kDefaultBurnIn);

/// An embedding theta of the matrix units of R into B(F), seen through windows.
class Embedding {
 public:
  virtual ~Embedding() = default;
  virtual std::string name() const = 0;
  virtual std::size_t block_size(std::size_t k) const = 0;
  virtual WindowMatrix unit_image(std::size_t k, std::size_t i, std::size_t j) const = 0;
  /// Image of the cross element from block k to block k+1, if defined.
  virtual std::optional<WindowMatrix> cross_image(std::size_t k) const { (void)k; return std::nullopt; }
};

/// Units placed at their block positions (the identity on the construction).
class PlacementEmbedding : public Embedding {
 public:
  PlacementEmbedding(std::shared_ptr<const BlockStructure> bs, Field field) : bs_(std::move(bs)), field_(field) {}
  std::string name() const override { return "placement"; }
  std::size_t block_size(std::size_t k) const override { return bs_->size(k); }
  WindowMatrix unit_image(std::size_t k, std::size_t i, std::size_t j) const override;
  std::optional<WindowMatrix> cross_image(std::size_t k) const override;

 private:
  std::shared_ptr<const BlockStructure> bs_;
  Field field_;
};

/// Units realized by evaluating generator recipes.
class RecipeEmbedding : public Embedding {
 public:
  /// Windows are sized for blocks up to max_k.
  RecipeEmbedding(const GeneratorSet& gs, std::size_t max_k);
  std::string name() const override { return "recipes"; }
  std::size_t block_size(std::size_t k) const override { return gs_.structure().size(k); }
  WindowMatrix unit_image(std::size_t k, std::size_t i, std::size_t j) const override;
  std::optional<WindowMatrix> cross_image(std::size_t k) const override;

 private:
  GeneratorSet gs_;
  std::shared_ptr<WordEvaluator> ev_;
};

/// Units of R pushed through a stretch embedding.
class StretchUnitsEmbedding : public Embedding {
 public:
  StretchUnitsEmbedding(StretchEmbedding stretch, Field field) : st_(std::move(stretch)), field_(field) {}
  std::string name() const override { return "stretch"; }
  std::size_t block_size(std::size_t k) const override { return st_.structure().size(k); }
  WindowMatrix unit_image(std::size_t k, std::size_t i, std::size_t j) const override;
  std::optional<WindowMatrix> cross_image(std::size_t k) const override;

 private:
  std::size_t window(std::size_t k) const;
  StretchEmbedding st_;
  Field field_;
};

/// Every image multiplied by a fixed nonzero scalar.
class ScaledEmbedding : public Embedding {
 public:
  ScaledEmbedding(std::shared_ptr<const Embedding> base, Scalar factor);
  std::string name() const override { return base_->name() + "*" + factor_.to_string(); }
  std::size_t block_size(std::size_t k) const override { return base_->block_size(k); }
  WindowMatrix unit_image(std::size_t k, std::size_t i, std::size_t j) const override;
  std::optional<WindowMatrix> cross_image(std::size_t k) const override;

 private:
  std::shared_ptr<const Embedding> base_;
  Scalar factor_;
};

struct ConstantsSeries {
  double s = 0;
  /// c_k: minimal constants over the diagonal units of block k and the
  /// k -> k+1 cross image.
  std::vector<double> raw;
  std::vector<double> running;      // running max of raw (nondecreasing)
  std::vector<double> consecutive;  // raw plus the units e_{i,i+1}, e_{i+1,i}
  std::vector<double> all_pairs;    // raw plus every unit e_{ij} of the block
  /// running / (log2(k+1))^{2/(1-s)}, informational.
  std::vector<double> ratio;
};

ConstantsSeries constants_series(const Embedding& theta, double s, std::size_t K);

struct ScatterReport {
  std::size_t k = 0;
  std::vector<std::size_t> first_rows;  // first nonzero row of each image
  std::size_t min_gap = 0;              // 0 when fewer than two images
  std::size_t max_position = 0;
  bool distinct = true;
};

/// Throws NotAnIdempotentImage when an image is zero on its window.
ScatterReport scatter_report(const Embedding& theta, std::size_t k);

struct FreenessResult {
  bool independent = false;
  std::size_t words = 0;  // 2^{L+1} - 1, the empty word included
  std::size_t rank = 0;
  std::size_t region = 0;  // words compared on positions (i,j) <= region
  /// When dependent: sum of coeff * word vanishes on the region.
  std::vector<std::pair<Scalar, Word>> witness;
  bool witness_vanishes = false;
};

/// Linear independence of all words of length <= L in x and y (named "x", "y"),
/// compared on the common valid region.  WindowExhausted below 2^{L+1}.
FreenessResult freeness_check(const WindowMatrix& x, const WindowMatrix& y, std::size_t L);

struct KeyPropertyRow {
  std::size_t k = 0;
  std::size_t size = 0;
  std::size_t recipes = 0;
  std::size_t inexact = 0;
  std::size_t max_length = 0;    // longest word over the block's recipes
  std::size_t max_products = 0;  // products spent by the costliest combination
  std::string route;
};

struct KeyPropertyReport {
  std::vector<KeyPropertyRow> rows;
  bool all_exact = true;
  /// Least C with max_length(k) <= C (log2(k+1))^2 over the tested k.
  double bound_constant = 0;
  /// Affine fit of max_length on (log2(k+1))^2, and on log2(k+1) for comparison.
  LineFit squared_log_fit;
  LineFit log_fit;
  std::size_t window = 0;
};

/// Builds and exactly verifies every matrix unit of blocks 1..K.
KeyPropertyReport key_property(const GeneratorSet& gs, std::size_t K);

struct CrossRow {
  std::size_t k = 0;
  std::size_t length = 0;
  CrossCheck check;
};

std::vector<CrossRow> cross_series(const GeneratorSet& gs, std::size_t K);

}  // namespace bandgrowth
