#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bandgrowth/curve.hpp"
#include "bandgrowth/window_matrix.hpp"

namespace bandgrowth {

/// Tight absolute support of an infinite matrix: row i has no nonzero past
/// column row_reach(i), column j none past row col_reach(j).
struct Support {
  std::function<std::size_t(std::size_t)> row_reach;
  std::function<std::size_t(std::size_t)> col_reach;
};

/// An omega x omega row- and column-finite matrix given by a rule plus a
/// declared growth curve.  Rules must be pure.
class LazyMatrix {
 public:
  using EntryRule = std::function<Scalar(std::size_t row, std::size_t col)>;
  /// Appends every nonzero (i,j) with i,j <= n.
  using Emitter = std::function<void(std::size_t n, std::vector<Triplet>& out)>;

  LazyMatrix(std::string name, Field field, GrowthCurve declared, EntryRule rule,
             std::optional<Support> support = std::nullopt);

  static LazyMatrix from_emitter(std::string name, Field field, GrowthCurve declared, Emitter emit,
                                 std::optional<Support> support = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  const Field& field() const noexcept { return field_; }
  const GrowthCurve& declared_curve() const noexcept { return declared_; }

  std::size_t row_reach(std::size_t i) const;
  std::size_t col_reach(std::size_t j) const;

  Scalar entry(std::size_t i, std::size_t j) const;

  LazyMatrix renamed(std::string name) const;

 private:
  friend WindowMatrix make_window(const LazyMatrix& m, std::size_t n);

  LazyMatrix(std::string name, Field field, GrowthCurve declared) : name_(std::move(name)), field_(field), declared_(std::move(declared)) {}

  std::string name_;
  Field field_;
  GrowthCurve declared_;
  EntryRule rule_;
  Emitter emit_;
  std::optional<Support> support_;
};

/// Materializes the n x n window.  Throws DeclaredCurveViolation when the rule
/// produces a nonzero outside the declared band.
WindowMatrix make_window(const LazyMatrix& m, std::size_t n);

}  // namespace bandgrowth
