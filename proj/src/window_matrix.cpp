#include "bandgrowth/window_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace bandgrowth {

namespace {

void require_compatible(const WindowMatrix& a, const WindowMatrix& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::ConfigMismatch,
                "window sizes differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (!(a.field() == b.field())) {
    throw Error(ErrorKind::ConfigMismatch, "fields differ (" + a.field().to_string() + " vs " + b.field().to_string() + ")");
  }
}

// Running maximum of a reach vector; lookups past the window return n+1.
std::vector<std::size_t> prefix_max(const std::vector<std::size_t>& reach) {
  std::vector<std::size_t> pm(reach.size());
  std::size_t m = 0;
  for (std::size_t i = 0; i < reach.size(); ++i) {
    m = std::max(m, reach[i]);
    pm[i] = m;
  }
  return pm;
}

std::size_t compose_reach(std::size_t first, const std::vector<std::size_t>& second_pm, std::size_t n) {
  if (first == 0) return 0;
  if (first > n) return n + 1;
  return second_pm[first - 1];
}

}  // namespace

WindowMatrix::WindowMatrix(Field field, std::size_t n)
    : field_(field), n_(n), valid_to_(n), rows_(n), row_reach_(n, 0), col_reach_(n, 0) {}

WindowMatrix::WindowMatrix(Field field, std::size_t n, std::vector<std::vector<Entry>> rows, std::size_t valid_to,
                           std::vector<std::size_t> row_reach, std::vector<std::size_t> col_reach)
    : field_(field), n_(n), valid_to_(std::min(valid_to, n)), rows_(std::move(rows)) {
  if (rows_.size() != n_) throw Error(ErrorKind::ShapeMismatch, "row count does not match window size");
  if (row_reach.empty()) row_reach.assign(n_, 0);
  if (col_reach.empty()) col_reach.assign(n_, 0);
  if (row_reach.size() != n_ || col_reach.size() != n_) {
    throw Error(ErrorKind::ShapeMismatch, "reach vectors must have one slot per position");
  }
  row_reach_ = std::move(row_reach);
  col_reach_ = std::move(col_reach);
  for (std::size_t i = 0; i < n_; ++i) {
    auto& r = rows_[i];
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    std::vector<Entry> merged;
    merged.reserve(r.size());
    for (auto& e : r) {
      if (e.col < 1 || e.col > n_) throw Error(ErrorKind::OutOfRange, "column index outside window");
      if (!e.value.belongs_to(field_)) throw Error(ErrorKind::ConfigMismatch, "entry from a different field");
      if (!merged.empty() && merged.back().col == e.col) {
        merged.back().value += e.value;
      } else {
        merged.push_back(std::move(e));
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.value.is_zero(); });
    r = std::move(merged);
    for (const auto& e : r) {
      row_reach_[i] = std::max(row_reach_[i], e.col);
      col_reach_[e.col - 1] = std::max(col_reach_[e.col - 1], i + 1);
    }
  }
  for (auto& v : row_reach_) v = std::min(v, n_ + 1);
  for (auto& v : col_reach_) v = std::min(v, n_ + 1);
}

WindowMatrix WindowMatrix::identity(Field field, std::size_t n) {
  std::vector<std::vector<Entry>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].push_back({i + 1, field.one()});
  return WindowMatrix(field, n, std::move(rows), n);
}

WindowMatrix WindowMatrix::from_triplets(Field field, std::size_t n, std::vector<Triplet> triplets) {
  std::vector<std::vector<Entry>> rows(n);
  for (auto& t : triplets) {
    if (t.row < 1 || t.row > n || t.col < 1 || t.col > n) {
      throw Error(ErrorKind::OutOfRange,
                  "entry (" + std::to_string(t.row) + "," + std::to_string(t.col) + ") outside window " + std::to_string(n));
    }
    rows[t.row - 1].push_back({t.col, std::move(t.value)});
  }
  return WindowMatrix(field, n, std::move(rows), n);
}

WindowMatrix WindowMatrix::unit(Field field, std::size_t n, std::size_t i, std::size_t j) {
  return from_triplets(field, n, {Triplet{i, j, field.one()}});
}

std::size_t WindowMatrix::nnz() const noexcept {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

Scalar WindowMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_[i - 1];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) return it->value;
  return field_.zero();
}

std::vector<Triplet> WindowMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < n_; ++i) {
    for (const auto& e : rows_[i]) out.push_back({i + 1, e.col, e.value});
  }
  return out;
}

WindowMatrix WindowMatrix::with_valid_to(std::size_t m) const {
  WindowMatrix copy = *this;
  copy.valid_to_ = std::min(valid_to_, m);
  return copy;
}

bool WindowMatrix::is_zero_on(std::size_t m) const {
  m = std::min(m, n_);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : rows_[i]) {
      if (e.col <= m) return false;
    }
  }
  return true;
}

bool WindowMatrix::equal_on(const WindowMatrix& other, std::size_t m) const {
  require_compatible(*this, other);
  m = std::min(m, n_);
  for (std::size_t i = 0; i < m; ++i) {
    auto a = rows_[i].begin(), ae = rows_[i].end();
    auto b = other.rows_[i].begin(), be = other.rows_[i].end();
    while (true) {
      while (a != ae && a->col > m) ++a;
      while (b != be && b->col > m) ++b;
      if (a == ae || b == be) break;
      if (a->col != b->col || !(a->value == b->value)) return false;
      ++a;
      ++b;
    }
    for (; a != ae; ++a) {
      if (a->col <= m) return false;
    }
    for (; b != be; ++b) {
      if (b->col <= m) return false;
    }
  }
  return true;
}

BandProfile band_profile(const WindowMatrix& w) {
  const std::size_t n = w.size();
  BandProfile p;
  p.g.assign(n, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& e : w.row(i)) {
      if (e.col > i) {
        p.g[i - 1] = std::max(p.g[i - 1], e.col - i);
      } else if (e.col < i) {
        p.g[e.col - 1] = std::max(p.g[e.col - 1], i - e.col);
      }
    }
  }
  const std::size_t vt = w.valid_to();
  std::size_t k = 0;
  while (k < vt && w.row_reach(k + 1) <= vt && w.col_reach(k + 1) <= vt) ++k;
  p.exact_to = k;
  return p;
}

WindowMatrix mask_to_profile(const WindowMatrix& w, const BandProfile& g) {
  const std::size_t n = w.size();
  std::vector<std::vector<Entry>> rows(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& e : w.row(i)) {
      bool keep = e.col >= i ? e.col - i <= g(i) : i - e.col <= g(e.col);
      if (keep) rows[i - 1].push_back(e);
    }
  }
  return WindowMatrix(w.field(), n, std::move(rows), w.valid_to(), w.row_reaches(), w.col_reaches());
}

WindowMatrix add(const WindowMatrix& a, const WindowMatrix& b) {
  require_compatible(a, b);
  const std::size_t n = a.size();
  std::vector<std::vector<Entry>> rows(n);
  std::vector<std::size_t> rr(n), cr(n);
  for (std::size_t i = 1; i <= n; ++i) {
    auto& r = rows[i - 1];
    r.reserve(a.row(i).size() + b.row(i).size());
    r.insert(r.end(), a.row(i).begin(), a.row(i).end());
    r.insert(r.end(), b.row(i).begin(), b.row(i).end());
    rr[i - 1] = std::max(a.row_reach(i), b.row_reach(i));
    cr[i - 1] = std::max(a.col_reach(i), b.col_reach(i));
  }
  return WindowMatrix(a.field(), n, std::move(rows), std::min(a.valid_to(), b.valid_to()), std::move(rr), std::move(cr));
}

WindowMatrix scale(const Scalar& c, const WindowMatrix& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<Entry>> rows(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& e : w.row(i)) rows[i - 1].push_back({e.col, c * e.value});
  }
  return WindowMatrix(w.field(), n, std::move(rows), w.valid_to(), w.row_reaches(), w.col_reaches());
}

WindowMatrix subtract(const WindowMatrix& a, const WindowMatrix& b) { return add(a, scale(-b.field().one(), b)); }

namespace {

// Row-by-row product over GF(p) on raw residues.
std::vector<std::vector<Entry>> mul_rows_mod(const WindowMatrix& a, const WindowMatrix& b) {
  const std::size_t n = a.size();
  const std::uint64_t p = a.field().characteristic();
  const bool small = p < (std::uint64_t{1} << 32);
  auto mulmod = [p, small](std::uint64_t x, std::uint64_t y) -> std::uint64_t {
    if (small) return (x * y) % p;
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  };
  std::vector<std::uint64_t> acc(n, 0);
  std::vector<char> touched(n, 0);
  std::vector<std::size_t> cols;
  std::vector<std::vector<Entry>> rows(n);
  for (std::size_t i = 1; i <= n; ++i) {
    cols.clear();
    for (const auto& ea : a.row(i)) {
      const std::uint64_t va = ea.value.mod()->value;
      for (const auto& eb : b.row(ea.col)) {
        const std::size_t c = eb.col - 1;
        const std::uint64_t prod = mulmod(va, eb.value.mod()->value);
        if (!touched[c]) {
          touched[c] = 1;
          cols.push_back(c);
          acc[c] = prod;
        } else {
          acc[c] += prod;
          if (acc[c] >= p) acc[c] -= p;
        }
      }
    }
    std::sort(cols.begin(), cols.end());
    auto& r = rows[i - 1];
    r.reserve(cols.size());
    for (std::size_t c : cols) {
      if (acc[c] != 0) r.push_back({c + 1, Scalar(Scalar::Mod{acc[c], p})});
      touched[c] = 0;
    }
  }
  return rows;
}

}  // namespace

WindowMatrix mul(const WindowMatrix& a, const WindowMatrix& b) {
  require_compatible(a, b);
  const std::size_t n = a.size();
  const Scalar zero = a.field().zero();
  std::vector<std::vector<Entry>> rows;
  if (a.field().is_prime()) {
    rows = mul_rows_mod(a, b);
  } else {
    rows.resize(n);
    std::vector<Scalar> acc(n, zero);
    std::vector<char> touched(n, 0);
    std::vector<std::size_t> cols;
    for (std::size_t i = 1; i <= n; ++i) {
    cols.clear();
    for (const auto& ea : a.row(i)) {
      for (const auto& eb : b.row(ea.col)) {
        std::size_t c = eb.col - 1;
        if (!touched[c]) {
          touched[c] = 1;
          cols.push_back(c);
          acc[c] = ea.value * eb.value;
        } else {
          acc[c] += ea.value * eb.value;
        }
      }
    }
    std::sort(cols.begin(), cols.end());
    auto& r = rows[i - 1];
    r.reserve(cols.size());
    for (std::size_t c : cols) {
      if (!acc[c].is_zero()) r.push_back({c + 1, acc[c]});
      touched[c] = 0;
    }
    }
  }

  const std::size_t v = std::min(a.valid_to(), b.valid_to());
  std::size_t m = 0;
  while (m < v && a.row_reach(m + 1) <= v) ++m;

  const auto b_rows_pm = prefix_max(b.row_reaches());
  const auto a_cols_pm = prefix_max(a.col_reaches());
  std::vector<std::size_t> rr(n), cr(n);
  for (std::size_t i = 1; i <= n; ++i) {
    rr[i - 1] = compose_reach(a.row_reach(i), b_rows_pm, n);
    cr[i - 1] = compose_reach(b.col_reach(i), a_cols_pm, n);
  }
  return WindowMatrix(a.field(), n, std::move(rows), m, std::move(rr), std::move(cr));
}

WindowMatrix transpose(const WindowMatrix& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<Entry>> rows(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& e : w.row(i)) rows[e.col - 1].push_back({i, e.value});
  }
  return WindowMatrix(w.field(), n, std::move(rows), w.valid_to(), w.col_reaches(), w.row_reaches());
}

bool verify_growth(const WindowMatrix& w, double c, double s) {
  const auto p = band_profile(w);
  for (std::size_t k = 1; k <= w.valid_to(); ++k) {
    if (static_cast<double>(p(k)) > c * std::pow(static_cast<double>(k), s) + kBoundSlack) return false;
  }
  return true;
}

}  // namespace bandgrowth
