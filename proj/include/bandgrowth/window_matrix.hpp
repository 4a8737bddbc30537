#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bandgrowth/field.hpp"

namespace bandgrowth {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

struct Entry {
  std::size_t col;
  Scalar value;
};

/// Exact n x n truncation of an omega x omega matrix (1-based indices).
///
/// Besides the entries it tracks two pieces of bookkeeping that make products
/// of truncations trustworthy:
///   - valid_to: entries (i,j) with i,j <= valid_to agree with the infinite matrix;
///   - row/column reach: the largest column (row) that row i (column j) of the
///     infinite matrix may touch.  A reach of n+1 means "possibly past the window".
/// Immutable once built.
class WindowMatrix {
 public:
  /// Zero matrix, exact on the whole window.
  WindowMatrix(Field field, std::size_t n);

  /// General constructor.  Rows are sorted, duplicates summed and zeros dropped;
  /// reach vectors (size n, or empty to measure from the entries) are raised to
  /// cover the stored entries and capped at n+1.
  WindowMatrix(Field field, std::size_t n, std::vector<std::vector<Entry>> rows, std::size_t valid_to,
               std::vector<std::size_t> row_reach = {}, std::vector<std::size_t> col_reach = {});

  static WindowMatrix identity(Field field, std::size_t n);
  static WindowMatrix from_triplets(Field field, std::size_t n, std::vector<Triplet> triplets);
  /// The matrix unit with a single 1 at (i,j).
  static WindowMatrix unit(Field field, std::size_t n, std::size_t i, std::size_t j);

  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t valid_to() const noexcept { return valid_to_; }
  std::size_t nnz() const noexcept;

  std::span<const Entry> row(std::size_t i) const { return rows_[i - 1]; }
  Scalar at(std::size_t i, std::size_t j) const;
  std::vector<Triplet> triplets() const;

  std::size_t row_reach(std::size_t i) const { return row_reach_[i - 1]; }
  std::size_t col_reach(std::size_t j) const { return col_reach_[j - 1]; }
  const std::vector<std::size_t>& row_reaches() const noexcept { return row_reach_; }
  const std::vector<std::size_t>& col_reaches() const noexcept { return col_reach_; }

  /// Same entries with valid_to lowered to min(valid_to, m).
  WindowMatrix with_valid_to(std::size_t m) const;

  bool is_zero_on(std::size_t m) const;
  /// Entries with both indices <= m agree.
  bool equal_on(const WindowMatrix& other, std::size_t m) const;

 private:
  Field field_;
  std::size_t n_;
  std::size_t valid_to_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::size_t> row_reach_;
  std::vector<std::size_t> col_reach_;
};

/// Per-position bandwidth g(k) = max{ i-k : i>k, x(k,i) != 0 or x(i,k) != 0 } u {0},
/// measured on the window.  Positions k <= exact_to are exact for the infinite
/// matrix; beyond that the window edge may hide displacements.
struct BandProfile {
  std::vector<std::size_t> g;
  std::size_t exact_to = 0;

  std::size_t operator()(std::size_t k) const { return g[k - 1]; }
  std::size_t size() const noexcept { return g.size(); }
};

BandProfile band_profile(const WindowMatrix& w);

/// Drops every entry lying outside the band g (a no-op when g is w's own profile).
WindowMatrix mask_to_profile(const WindowMatrix& w, const BandProfile& g);

WindowMatrix add(const WindowMatrix& a, const WindowMatrix& b);
WindowMatrix subtract(const WindowMatrix& a, const WindowMatrix& b);
WindowMatrix scale(const Scalar& c, const WindowMatrix& w);
/// Exact product.  Rows i of the result are exact for the infinite product as
/// long as row i of a reaches no further than min(valid_to(a), valid_to(b)).
WindowMatrix mul(const WindowMatrix& a, const WindowMatrix& b);
WindowMatrix transpose(const WindowMatrix& w);

inline WindowMatrix operator+(const WindowMatrix& a, const WindowMatrix& b) { return add(a, b); }
inline WindowMatrix operator-(const WindowMatrix& a, const WindowMatrix& b) { return subtract(a, b); }
inline WindowMatrix operator*(const WindowMatrix& a, const WindowMatrix& b) { return mul(a, b); }

/// True iff band_profile(w)(k) <= c*k^s for every k <= valid_to.
bool verify_growth(const WindowMatrix& w, double c, double s);

/// Slack used when comparing integer profiles against real-valued bounds.
inline constexpr double kBoundSlack = 1e-9;

}  // namespace bandgrowth
