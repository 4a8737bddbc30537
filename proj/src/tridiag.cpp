#include "bandgrowth/tridiag.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <random>

namespace bandgrowth {

StructureConstants StructureConstants::from_table(std::string name, Field field, std::size_t d,
                                                  std::vector<SparseVector> table, SparseVector identity) {
  if (table.size() != d * d) throw Error(ErrorKind::ShapeMismatch, "structure table must have d*d products");
  auto shared = std::make_shared<const std::vector<SparseVector>>(std::move(table));
  StructureConstants sc{std::move(name), field, d, nullptr, std::move(identity), std::nullopt};
  sc.product = [shared, d](std::size_t i, std::size_t j) -> SparseVector {
    if (i < 1 || j < 1 || i > d || j > d) throw Error(ErrorKind::OutOfRange, "basis index outside the algebra");
    return (*shared)[(i - 1) * d + (j - 1)];
  };
  return sc;
}

namespace {

void accumulate(SparseVector& acc, const Scalar& f, const SparseVector& v) {
  for (const auto& [idx, c] : v) {
    auto it = std::find_if(acc.begin(), acc.end(), [idx = idx](const auto& e) { return e.first == idx; });
    if (it == acc.end()) {
      acc.emplace_back(idx, f * c);
    } else {
      it->second += f * c;
    }
  }
}

SparseVector normalized(SparseVector v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

// x * a_j for x a combination of basis elements.
SparseVector left_multiply(const StructureConstants& sc, const SparseVector& x, std::size_t j) {
  SparseVector acc;
  for (const auto& [i, c] : x) accumulate(acc, c, sc.product(i, j));
  return normalized(std::move(acc));
}

SparseVector multiply(const StructureConstants& sc, const SparseVector& x, const SparseVector& y) {
  SparseVector acc;
  for (const auto& [j, c] : y) accumulate(acc, c, left_multiply(sc, x, j));
  return normalized(std::move(acc));
}

}  // namespace

bool check_structure_constants(const StructureConstants& sc, std::size_t samples, std::uint64_t seed) {
  const std::size_t d = sc.dimension.value_or(32);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(1, d);
  auto basis = [&](std::size_t i) { return SparseVector{{i, sc.field.one()}}; };
  for (std::size_t i = 1; i <= d; ++i) {
    if (multiply(sc, sc.identity, basis(i)) != normalized(basis(i))) return false;
    if (multiply(sc, basis(i), sc.identity) != normalized(basis(i))) return false;
  }
  const bool exhaustive = d * d * d <= samples;
  const std::size_t total = exhaustive ? d * d * d : samples;
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t i, j, l;
    if (exhaustive) {
      i = t / (d * d) + 1;
      j = (t / d) % d + 1;
      l = t % d + 1;
    } else {
      i = pick(rng);
      j = pick(rng);
      l = pick(rng);
    }
    auto left = multiply(sc, multiply(sc, basis(i), basis(j)), basis(l));
    auto right = multiply(sc, basis(i), multiply(sc, basis(j), basis(l)));
    if (left != right) return false;
  }
  return true;
}

std::vector<LazyMatrix> regular_representation(const StructureConstants& sc, const std::vector<SparseVector>& generators,
                                               std::size_t probe_window) {
  std::vector<LazyMatrix> out;
  const Field field = sc.field;

  if (sc.dimension) {
    const std::size_t d = *sc.dimension;
    auto block_end = [d](std::size_t i) { return ((i - 1) / d + 1) * d; };
    Support support{block_end, block_end};
    auto make = [&](const SparseVector& g, std::string name) {
      auto table = std::make_shared<std::vector<Triplet>>();
      for (std::size_t j = 1; j <= d; ++j) {
        for (auto& [l, c] : left_multiply(sc, g, j)) table->push_back({l, j, c});
      }
      auto emit = [table, d](std::size_t n, std::vector<Triplet>& dst) {
        for (std::size_t base = 0; base < n; base += d) {
          for (const auto& t : *table) {
            if (base + t.row <= n && base + t.col <= n) dst.push_back({base + t.row, base + t.col, t.value});
          }
        }
      };
      return LazyMatrix::from_emitter(std::move(name), field, GrowthCurve::power(std::max<double>(1.0, double(d) - 1), 0),
                                      emit, support);
    };
    auto unit = make(sc.identity, sc.name + ":1");
    if (!make_window(unit, d).equal_on(WindowMatrix::identity(field, d), d)) {
      throw Error(ErrorKind::InvariantBreach, "identity element does not act as the identity");
    }
    for (std::size_t g = 0; g < generators.size(); ++g) out.push_back(make(generators[g], sc.name + ":g" + std::to_string(g + 1)));
    return out;
  }

  if (!sc.declared) throw Error(ErrorKind::ConfigMismatch, "countable algebras need a declared band for L_g");
  auto make = [&](const SparseVector& g, std::string name) {
    auto product = sc.product;
    SparseVector gen = g;
    auto sc_copy = std::make_shared<const StructureConstants>(sc);
    auto emit = [sc_copy, gen](std::size_t n, std::vector<Triplet>& dst) {
      for (std::size_t j = 1; j <= n; ++j) {
        for (auto& [l, c] : left_multiply(*sc_copy, gen, j)) {
          if (l <= n) dst.push_back({l, j, c});
        }
      }
    };
    return LazyMatrix::from_emitter(std::move(name), field, *sc.declared, emit);
  };

  const std::size_t P = std::max<std::size_t>(probe_window, 8);
  auto check_finite = [&](const SparseVector& g, const std::string& label) {
    // A row of L_g that already reaches the last quarter of the probe window
    // from the first quarter is treated as an infinite row.
    for (std::size_t j = 3 * P / 4 + 1; j <= P; ++j) {
      for (const auto& [l, c] : left_multiply(sc, g, j)) {
        if (l <= P / 4 && !c.is_zero()) {
          throw Error(ErrorKind::NotColumnFinite, label + ": row " + std::to_string(l) + " of the left action has a nonzero in column " +
                                                      std::to_string(j));
        }
      }
    }
  };
  check_finite(sc.identity, sc.name + ":1");
  auto unit = make(sc.identity, sc.name + ":1");
  if (!make_window(unit, P).equal_on(WindowMatrix::identity(field, P), P)) {
    throw Error(ErrorKind::InvariantBreach, "identity element does not act as the identity");
  }
  for (std::size_t g = 0; g < generators.size(); ++g) {
    std::string label = sc.name + ":g" + std::to_string(g + 1);
    check_finite(generators[g], label);
    out.push_back(make(generators[g], label));
    make_window(out.back(), P);  // surfaces DeclaredCurveViolation early
  }
  return out;
}

namespace {

Vec apply(const WindowMatrix& x, const Vec& v) {
  const std::size_t n = x.size();
  Vec out(n, x.field().zero());
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& e : x.row(i)) {
      const Scalar& vj = v[e.col - 1];
      if (!vj.is_zero()) out[i - 1] += e.value * vj;
    }
  }
  return out;
}

Scalar dot(const Vec& a, const Vec& b) {
  Scalar s = a.front().field().zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

struct Block {
  std::vector<Vec> basis;
  std::optional<DenseMatrix> gram_inverse;
};

std::optional<DenseMatrix> gram_inverse(const Field& field, const std::vector<Vec>& basis) {
  const std::size_t d = basis.size();
  DenseMatrix g(field, d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      g(a, b) = dot(basis[a], basis[b]);
      g(b, a) = g(a, b);
    }
  }
  return g.inverse();
}

// Removes the component of w along each listed block (w - B G^{-1} B^T w).
// Returns false if some block is degenerate and had to be skipped.
bool project_out(Vec& w, const std::vector<Block>& blocks, std::size_t first, std::size_t last) {
  bool ok = true;
  for (std::size_t a = first; a < last; ++a) {
    const Block& b = blocks[a];
    if (!b.gram_inverse) {
      ok = false;
      continue;
    }
    const std::size_t d = b.basis.size();
    std::vector<Scalar> ip;
    ip.reserve(d);
    bool any = false;
    for (const auto& v : b.basis) {
      ip.push_back(dot(v, w));
      any = any || !ip.back().is_zero();
    }
    if (!any) continue;
    for (std::size_t l = 0; l < d; ++l) {
      Scalar coeff = w.front().field().zero();
      for (std::size_t r = 0; r < d; ++r) coeff += (*b.gram_inverse)(l, r) * ip[r];
      if (coeff.is_zero()) continue;
      const Vec& v = b.basis[l];
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!v[i].is_zero()) w[i] -= coeff * v[i];
      }
    }
  }
  return ok;
}

std::vector<Vec> reduced_basis(const Field& field, std::size_t n, const std::vector<Vec>& vs) {
  std::vector<Vec> rows;
  Echelon fresh(field, n);
  for (const auto& v : vs) {
    if (fresh.insert(v)) rows.push_back(v);
  }
  // Gauss-Jordan on the collected rows for a canonical block basis.
  const std::size_t d = rows.size();
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t q = 0; q < r; ++q) {
      const Scalar f = rows[r][pivots[q]];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (!rows[q][i].is_zero()) rows[r][i] -= f * rows[q][i];
      }
    }
    std::size_t p = 0;
    while (rows[r][p].is_zero()) ++p;
    const Scalar inv = rows[r][p].inverse();
    for (auto& s : rows[r]) {
      if (!s.is_zero()) s *= inv;
    }
    for (std::size_t q = 0; q < r; ++q) {
      const Scalar f = rows[q][p];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (!rows[r][i].is_zero()) rows[q][i] -= f * rows[r][i];
      }
    }
    pivots.push_back(p);
  }
  std::vector<std::size_t> order(d);
  for (std::size_t i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
  std::vector<Vec> sorted;
  for (std::size_t i : order) sorted.push_back(std::move(rows[i]));
  return sorted;
}

WindowMatrix from_columns(const Field& field, std::size_t n, const std::vector<Vec>& cols) {
  std::vector<std::vector<Entry>> rows(n);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!cols[c][i].is_zero()) rows[i].push_back({c + 1, cols[c][i]});
    }
  }
  return WindowMatrix(field, n, std::move(rows), n);
}

}  // namespace

std::vector<std::size_t> geometric_block_bounds(std::size_t k, std::size_t stages) {
  std::vector<std::size_t> out;
  std::size_t v = 1;
  for (std::size_t m = 0; m < stages; ++m) {
    out.push_back(v);
    if (v < (std::size_t{1} << 60) / (2 * k + 1)) v *= 2 * k + 1;
  }
  return out;
}

TridiagResult block_tridiagonalize(std::span<const WindowMatrix> xs, std::size_t min_stages) {
  if (xs.empty()) throw Error(ErrorKind::OutOfRange, "need at least one matrix");
  const std::size_t n = xs.front().size();
  const Field field = xs.front().field();
  for (const auto& x : xs) {
    if (x.size() != n || !(x.field() == field)) throw Error(ErrorKind::ConfigMismatch, "inputs must share window and field");
  }
  std::vector<WindowMatrix> xts;
  for (const auto& x : xs) xts.push_back(transpose(x));

  FlagReport rep;
  rep.generators = xs.size();
  std::vector<Block> blocks;
  Echelon span(field, n);

  auto unit_vec = [&](std::size_t j) {
    Vec e(n, field.zero());
    e[j] = field.one();
    return e;
  };
  auto push_block = [&](std::vector<Vec> vs) {
    Block b;
    b.basis = reduced_basis(field, n, vs);
    b.gram_inverse = gram_inverse(field, b.basis);
    if (!b.gram_inverse) rep.orthogonal = false;
    blocks.push_back(std::move(b));
  };

  span.insert(unit_vec(0));
  push_block({unit_vec(0)});
  std::size_t next_free = 1;

  while (span.rank() < n) {
    const std::size_t m = blocks.size();
    std::vector<Vec> fresh;
    for (const Vec& v : blocks.back().basis) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (const WindowMatrix* x : std::array<const WindowMatrix*, 2>{&xs[i], &xts[i]}) {
          Vec w = apply(*x, v);
          if (!is_zero(w) && span.insert(w)) fresh.push_back(std::move(w));
        }
      }
    }
    std::size_t first = m >= 2 ? m - 2 : 0;
    if (fresh.empty()) {
      // Stall: V is invariant; open the next stage with the first standard
      // vector outside V, moved into V^perp.
      while (next_free < n && span.contains(unit_vec(next_free))) ++next_free;
      Vec e = unit_vec(next_free);
      span.insert(e);
      fresh.push_back(std::move(e));
      first = 0;
      ++rep.exhaustion_insertions;
    }
    for (auto& w : fresh) {
      if (!project_out(w, blocks, first, m)) rep.orthogonal = false;
    }
    push_block(std::move(fresh));
  }
  if (blocks.size() < min_stages) {
    throw Error(ErrorKind::WindowExhausted, "window of " + std::to_string(n) + " closes the flag after " +
                                                std::to_string(blocks.size()) + " stages, " + std::to_string(min_stages) +
                                                " requested");
  }

  std::vector<Vec> columns;
  std::size_t cum = 0;
  for (const auto& b : blocks) {
    rep.block_dims.push_back(b.basis.size());
    cum += b.basis.size();
    rep.cumulative_dims.push_back(cum);
    for (const auto& v : b.basis) columns.push_back(v);
  }
  const auto geo = geometric_block_bounds(xs.size(), blocks.size());
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    if (rep.block_dims[m] > geo[m]) rep.within_geometric_bound = false;
    if (m > 0 && rep.block_dims[m] > (2 * xs.size() + 1) * rep.cumulative_dims[m - 1]) rep.within_relative_bound = false;
  }

  rep.basis_change = from_columns(field, n, columns);
  if (rep.orthogonal) {
    // P^{-1} = diag(G_a^{-1}) P^T for mutually orthogonal blocks.
    std::vector<std::vector<Entry>> rows(n);
    std::size_t r = 0;
    for (const auto& b : blocks) {
      const std::size_t d = b.basis.size();
      for (std::size_t l = 0; l < d; ++l, ++r) {
        Vec row(n, field.zero());
        for (std::size_t q = 0; q < d; ++q) {
          const Scalar& g = (*b.gram_inverse)(l, q);
          if (g.is_zero()) continue;
          for (std::size_t i = 0; i < n; ++i) {
            if (!b.basis[q][i].is_zero()) row[i] += g * b.basis[q][i];
          }
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (!row[i].is_zero()) rows[r].push_back({i + 1, row[i]});
        }
      }
    }
    rep.inverse = WindowMatrix(field, n, std::move(rows), n);
  } else {
    DenseMatrix p(field, n, n);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0; i < n; ++i) p(i, c) = columns[c][i];
    }
    auto inv = p.inverse();
    if (!inv) throw Error(ErrorKind::InvariantBreach, "adapted basis is not invertible");
    std::vector<std::vector<Entry>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!(*inv)(i, j).is_zero()) rows[i].push_back({j + 1, (*inv)(i, j)});
      }
    }
    rep.inverse = WindowMatrix(field, n, std::move(rows), n);
  }
  if (!mul(rep.basis_change, rep.inverse).equal_on(WindowMatrix::identity(field, n), n)) {
    throw Error(ErrorKind::InvariantBreach, "P * P^{-1} != I");
  }

  TridiagResult res;
  rep.similarity_exact = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    WindowMatrix xt = mul(mul(rep.inverse, xs[i]), rep.basis_change);
    WindowMatrix lhs = mul(rep.basis_change, xt);
    WindowMatrix rhs = mul(xs[i], rep.basis_change);
    const std::size_t region = std::min(lhs.valid_to(), rhs.valid_to());
    if (!lhs.equal_on(rhs, region)) rep.similarity_exact = false;
    auto v = block_tridiagonal_violations(xt, rep.block_dims, i);
    rep.violations.insert(rep.violations.end(), v.begin(), v.end());
    res.transformed.push_back(std::move(xt));
  }
  rep.strict = rep.violations.empty();
  res.report = std::move(rep);
  return res;
}

std::vector<BlockViolation> block_tridiagonal_violations(const WindowMatrix& x, std::span<const std::size_t> dims,
                                                         std::size_t matrix_index) {
  std::vector<std::size_t> block_of(x.size() + 1, 0);
  std::size_t pos = 1;
  for (std::size_t b = 0; b < dims.size(); ++b) {
    for (std::size_t t = 0; t < dims[b] && pos <= x.size(); ++t) block_of[pos++] = b + 1;
  }
  // Positions not covered by dims count as one trailing block each.
  std::size_t extra = dims.size();
  while (pos <= x.size()) block_of[pos++] = ++extra;

  std::vector<BlockViolation> out;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (const auto& e : x.row(i)) {
      std::size_t bi = block_of[i], bj = block_of[e.col];
      if ((bi > bj ? bi - bj : bj - bi) > 1) out.push_back({matrix_index, i, e.col, bi, bj});
    }
  }
  return out;
}

bool verify_block_tridiagonal(const WindowMatrix& x, std::span<const std::size_t> dims) {
  return block_tridiagonal_violations(x, dims).empty();
}

LinearGrowthCertificate linear_growth_certificate(const FlagReport& report, std::span<const WindowMatrix> transformed) {
  LinearGrowthCertificate cert;
  const double k = static_cast<double>(report.generators);
  cert.bound = (2 * k + 1) * (2 * k + 1);
  for (const auto& x : transformed) {
    const auto p = band_profile(x);
    for (std::size_t pos = 1; pos <= p.size(); ++pos) {
      cert.c = std::max(cert.c, static_cast<double>(p(pos)) / static_cast<double>(pos));
    }
  }
  cert.pass = cert.c <= cert.bound + kBoundSlack;
  return cert;
}

}  // namespace bandgrowth
