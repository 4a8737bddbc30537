#include "bandgrowth/linalg.hpp"

#include <algorithm>
#include <map>

namespace bandgrowth {

DenseMatrix::DenseMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

DenseMatrix DenseMatrix::identity(Field field, std::size_t n) {
  DenseMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::optional<DenseMatrix> DenseMatrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  DenseMatrix a = *this;
  DenseMatrix inv = identity(field_, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    const Scalar f = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const Scalar g = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= g * a(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

std::size_t DenseMatrix::rank() const {
  Echelon e(field_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Vec row(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    e.insert(row);
  }
  return e.rank();
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "dense product shape mismatch");
  DenseMatrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Scalar& x = a(i, l);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(l, j).is_zero()) c(i, j) += x * b(l, j);
      }
    }
  }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::ShapeMismatch, "dense sum shape mismatch");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

Vec Echelon::reduce(Vec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar f = v[pivots_[r]];
    if (f.is_zero()) continue;
    const Vec& row = rows_[r];
    for (std::size_t j = pivots_[r]; j < dim_; ++j) {
      if (!row[j].is_zero()) v[j] -= f * row[j];
    }
  }
  return v;
}

bool Echelon::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Echelon::insert(const Vec& v) {
  Vec r = reduce(v);
  std::size_t piv = 0;
  while (piv < dim_ && r[piv].is_zero()) ++piv;
  if (piv == dim_) return false;
  const Scalar inv = r[piv].inverse();
  for (std::size_t j = piv; j < dim_; ++j) {
    if (!r[j].is_zero()) r[j] *= inv;
  }
  // Keep existing rows reduced at the new pivot.
  for (auto& row : rows_) {
    const Scalar f = row[piv];
    if (f.is_zero()) continue;
    for (std::size_t j = piv; j < dim_; ++j) {
      if (!r[j].is_zero()) row[j] -= f * r[j];
    }
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  return true;
}

namespace {

// a += f * b on sorted sparse vectors.
void axpy(SparseVector& a, const Scalar& f, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, f * j->second);
      ++j;
    } else {
      Scalar s = i->second + f * j->second;
      if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

}  // namespace

IndependenceResult independence(const Field& field, const std::vector<SparseVector>& vectors) {
  IndependenceResult res;
  const std::size_t count = vectors.size();
  // Each stored row carries its expression in terms of the inputs (tag space).
  struct Row {
    SparseVector v;
    SparseVector tag;
  };
  std::map<std::size_t, Row> by_pivot;
  for (std::size_t idx = 0; idx < count; ++idx) {
    SparseVector v = vectors[idx];
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::erase_if(v, [](const auto& e) { return e.second.is_zero(); });
    SparseVector tag{{idx, field.one()}};
    while (!v.empty()) {
      auto it = by_pivot.find(v.front().first);
      if (it == by_pivot.end()) break;
      const Scalar f = -v.front().second;
      axpy(v, f, it->second.v);
      axpy(tag, f, it->second.tag);
    }
    if (v.empty()) {
      res.independent = false;
      res.relation.assign(count, field.zero());
      for (auto& [k, c] : tag) res.relation[k] = c;
      // Rank over the full family is still reported.
      for (std::size_t rest = idx + 1; rest < count; ++rest) {
        SparseVector w = vectors[rest];
        std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::erase_if(w, [](const auto& e) { return e.second.is_zero(); });
        SparseVector dummy;
        while (!w.empty()) {
          auto jt = by_pivot.find(w.front().first);
          if (jt == by_pivot.end()) break;
          axpy(w, -w.front().second, jt->second.v);
        }
        if (!w.empty()) {
          const Scalar inv = w.front().second.inverse();
          for (auto& e : w) e.second *= inv;
          const std::size_t piv = w.front().first;
          by_pivot.emplace(piv, Row{std::move(w), std::move(dummy)});
        }
      }
      res.rank = by_pivot.size();
      return res;
    }
    const Scalar inv = v.front().second.inverse();
    for (auto& e : v) e.second *= inv;
    for (auto& e : tag) e.second *= inv;
    const std::size_t piv = v.front().first;
    by_pivot.emplace(piv, Row{std::move(v), std::move(tag)});
  }
  res.rank = by_pivot.size();
  return res;
}

}  // namespace bandgrowth
