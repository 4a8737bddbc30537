#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "bandgrowth/construct.hpp"
#include "bandgrowth/window_matrix.hpp"

namespace bandgrowth {

/// Generator names, multiplied left to right; the empty word is the identity.
using Word = std::vector<std::string>;

struct Term {
  Scalar coeff;
  Word word;
  /// Evaluation hint: word[0:split] and word[split:] are evaluated (and
  /// cached) separately, then multiplied.  0 means no split.
  std::size_t split = 0;
};

struct Combination {
  std::vector<Term> terms;

  /// Longest word (the recorded length of the combination).
  std::size_t length() const;
  /// Products spent over all terms (sum of max(len-1, 0)).
  std::size_t products() const;
};

std::string to_string(const Word& w);

/// Evaluates words over the generator windows of a fixed size.
class WordEvaluator {
 public:
  WordEvaluator(const GeneratorSet& gs, std::size_t window);

  std::size_t window() const noexcept { return window_; }
  const WindowMatrix& generator(const std::string& name) const;
  WindowMatrix word(const Word& w);
  WindowMatrix eval(const Combination& c);
  void clear_cache() { cache_.clear(); }

 private:
  const WindowMatrix& cached(const Word& w);

  Field field_;
  std::size_t window_;
  std::unordered_map<std::string, WindowMatrix> gens_;
  std::unordered_map<std::string, WindowMatrix> cache_;
};

/// Single-entry matrix at absolute (row, col).
struct UnitTarget {
  std::size_t row;
  std::size_t col;
};

struct MatrixUnitRecipe {
  std::size_t k;
  std::size_t i;
  std::size_t j;
  Combination combination;
  std::size_t length;
  /// "addressed" (size filter, code walk and in-block addressing) or "global"
  /// (differences of shift powers).
  std::string route;
  UnitTarget target;
};

/// Recipe for e_{ij} of block k (1 <= i,j <= size(k)).  Needs block k+1 laid
/// out (WindowExhausted otherwise).
MatrixUnitRecipe matrix_unit_recipe(const GeneratorSet& gs, std::size_t k, std::size_t i, std::size_t j);

/// Window that keeps recipes and cross elements for block k exact through
/// block k+1 (the end of block k+3; needs k+3 laid out).
std::size_t recipe_window(const GeneratorSet& gs, std::size_t k);

/// True iff the combination evaluates to the unit at target on a valid region
/// reaching through block k+1.  WindowExhausted if the region is too short.
bool verify_unit(WordEvaluator& ev, const Combination& c, UnitTarget target, std::size_t need_valid);

struct CrossElement {
  std::size_t k;
  Combination gamma;        // unit at (start(k+1), start(k))
  Combination gamma_prime;  // unit at (start(k), start(k+1))
  std::size_t length;
};

CrossElement cross_element(const GeneratorSet& gs, std::size_t k);

struct CrossCheck {
  bool gamma_exact = false;        // gamma is the unit at (start(k+1), start(k))
  bool gamma_prime_exact = false;
  bool left_product = false;       // gamma' gamma = e^{(k)}_{11}
  bool right_product = false;      // gamma gamma' = e^{(k+1)}_{11}
  bool pass() const { return gamma_exact && gamma_prime_exact && left_product && right_product; }
};

CrossCheck verify_cross(WordEvaluator& ev, const GeneratorSet& gs, const CrossElement& ce);

/// The diagonal matrix units of block k, as absolute positions.
struct IdempotentFamily {
  std::size_t k;
  std::vector<std::size_t> positions;
};

IdempotentFamily idempotent_family(const BlockStructure& bs, std::size_t k);

}  // namespace bandgrowth
