#include "bandgrowth/lazy_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace bandgrowth {

LazyMatrix::LazyMatrix(std::string name, Field field, GrowthCurve declared, EntryRule rule,
                       std::optional<Support> support)
    : name_(std::move(name)), field_(field), declared_(std::move(declared)), rule_(std::move(rule)),
      support_(std::move(support)) {}

LazyMatrix LazyMatrix::from_emitter(std::string name, Field field, GrowthCurve declared, Emitter emit,
                                    std::optional<Support> support) {
  LazyMatrix m(std::move(name), field, std::move(declared));
  m.emit_ = std::move(emit);
  m.support_ = std::move(support);
  return m;
}

std::size_t LazyMatrix::row_reach(std::size_t i) const {
  if (support_) return support_->row_reach(i);
  return i + static_cast<std::size_t>(std::floor(declared_(static_cast<double>(i)) + kBoundSlack));
}

std::size_t LazyMatrix::col_reach(std::size_t j) const {
  if (support_) return support_->col_reach(j);
  return j + static_cast<std::size_t>(std::floor(declared_(static_cast<double>(j)) + kBoundSlack));
}

Scalar LazyMatrix::entry(std::size_t i, std::size_t j) const {
  if (rule_) return rule_(i, j);
  const std::size_t n = std::max(i, j);
  std::vector<Triplet> out;
  emit_(n, out);
  Scalar v = field_.zero();
  for (const auto& t : out) {
    if (t.row == i && t.col == j) v += t.value;
  }
  return v;
}

LazyMatrix LazyMatrix::renamed(std::string name) const {
  LazyMatrix copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

namespace {

[[noreturn]] void violation(const LazyMatrix& m, std::size_t i, std::size_t j) {
  throw Error(ErrorKind::DeclaredCurveViolation, "'" + m.name() + "' has a nonzero at (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ") outside its declared band");
}

}  // namespace

WindowMatrix make_window(const LazyMatrix& m, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "window size must be at least 1");
  std::vector<std::size_t> rr(n), cr(n);
  for (std::size_t i = 1; i <= n; ++i) {
    rr[i - 1] = std::min(m.row_reach(i), n + 1);
    cr[i - 1] = std::min(m.col_reach(i), n + 1);
  }

  std::vector<std::vector<Entry>> rows(n);
  if (m.emit_) {
    std::vector<Triplet> out;
    m.emit_(n, out);
    for (auto& t : out) {
      if (t.row < 1 || t.row > n || t.col < 1 || t.col > n) continue;
      if (t.value.is_zero()) continue;
      if (t.col > rr[t.row - 1] || t.row > cr[t.col - 1]) violation(m, t.row, t.col);
      rows[t.row - 1].push_back({t.col, std::move(t.value)});
    }
  } else {
    // Column j can hold row i only if col_reach(j) >= i; the running max of
    // col_reach gives the first such column for each row.
    std::vector<std::size_t> cr_pm(n);
    std::size_t run = 0;
    for (std::size_t j = 0; j < n; ++j) cr_pm[j] = run = std::max(run, cr[j]);
    std::size_t lo = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      while (lo <= n && cr_pm[lo - 1] < i) ++lo;
      const std::size_t hi = std::min(rr[i - 1], n);
      for (std::size_t j = lo; j <= hi; ++j) {
        Scalar v = m.rule_(i, j);
        if (!v.is_zero()) {
          if (j < i && cr[j - 1] < i) violation(m, i, j);
          rows[i - 1].push_back({j, std::move(v)});
        }
      }
      // Spot checks just outside the band on both sides.
      if (hi + 1 <= n && !m.rule_(i, hi + 1).is_zero()) violation(m, i, hi + 1);
      if (lo > 1 && !m.rule_(i, lo - 1).is_zero()) violation(m, i, lo - 1);
    }
  }
  return WindowMatrix(m.field(), n, std::move(rows), n, std::move(rr), std::move(cr));
}

}  // namespace bandgrowth
