#include "bandgrowth/construct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <random>
#include <set>

#include "bandgrowth/samples.hpp"

namespace bandgrowth {

BlockDiagonalElement BlockDiagonalElement::identity(Field field) {
  return BlockDiagonalElement(field, [field](std::size_t, std::size_t n) { return DenseMatrix::identity(field, n); });
}

BlockDiagonalElement BlockDiagonalElement::zero(Field field) {
  return BlockDiagonalElement(field, [field](std::size_t, std::size_t n) { return DenseMatrix(field, n, n); });
}

BlockDiagonalElement BlockDiagonalElement::random(Field field, std::uint64_t seed) {
  return BlockDiagonalElement(field, [field, seed](std::size_t k, std::size_t n) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    Rng rng(seq);
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = random_nonzero(field, rng);
      m(i, n - 1) = random_nonzero(field, rng);
      m(0, i) = random_nonzero(field, rng);
    }
    return m;
  });
}

BlockDiagonalElement BlockDiagonalElement::unit(Field field, std::size_t k, std::size_t i, std::size_t j) {
  return BlockDiagonalElement(field, [field, k, i, j](std::size_t kk, std::size_t n) {
    DenseMatrix m(field, n, n);
    if (kk == k) {
      if (i < 1 || j < 1 || i > n || j > n) throw Error(ErrorKind::OutOfRange, "matrix unit outside its block");
      m(i - 1, j - 1) = field.one();
    }
    return m;
  });
}

BlockDiagonalElement operator*(const BlockDiagonalElement& a, const BlockDiagonalElement& b) {
  if (!(a.field_ == b.field_)) throw Error(ErrorKind::ConfigMismatch, "elements over different fields");
  return BlockDiagonalElement(a.field_, [fa = a.fn_, fb = b.fn_](std::size_t k, std::size_t n) { return fa(k, n) * fb(k, n); });
}

BlockDiagonalElement operator+(const BlockDiagonalElement& a, const BlockDiagonalElement& b) {
  if (!(a.field_ == b.field_)) throw Error(ErrorKind::ConfigMismatch, "elements over different fields");
  return BlockDiagonalElement(a.field_, [fa = a.fn_, fb = b.fn_](std::size_t k, std::size_t n) { return fa(k, n) + fb(k, n); });
}

namespace {

DenseMatrix checked_block(const BlockDiagonalElement& x, std::size_t k, std::size_t n) {
  DenseMatrix b = x.block(k, n);
  if (b.rows() != n || b.cols() != n) {
    throw Error(ErrorKind::ShapeMismatch, "block " + std::to_string(k) + " is " + std::to_string(b.rows()) + "x" +
                                              std::to_string(b.cols()) + ", expected " + std::to_string(n) + "x" +
                                              std::to_string(n));
  }
  return b;
}

void emit_block(const DenseMatrix& b, std::size_t offset, std::size_t window, std::vector<Triplet>& out) {
  for (std::size_t i = 0; i < b.rows() && offset + i <= window; ++i) {
    for (std::size_t j = 0; j < b.cols() && offset + j <= window; ++j) {
      if (!b(i, j).is_zero()) out.push_back({offset + i, offset + j, b(i, j)});
    }
  }
}

Support block_support(std::shared_ptr<const BlockStructure> bs) {
  auto reach = [bs](std::size_t i) { return bs->end(bs->block_of(i)); };
  return Support{reach, reach};
}

}  // namespace

LazyMatrix embed_R(std::shared_ptr<const BlockStructure> bs, const BlockDiagonalElement& x, std::string name) {
  const double t = bs->t().value();
  auto emit = [bs, x](std::size_t n, std::vector<Triplet>& out) {
    bs->require_position(n);
    for (std::size_t k = 1; k <= bs->blocks() && bs->start(k) <= n; ++k) {
      emit_block(checked_block(x, k, bs->size(k)), bs->start(k), n, out);
    }
  };
  return LazyMatrix::from_emitter(std::move(name), x.field(), GrowthCurve::power(2 * (t + 1), bs->r().value()), emit,
                                  block_support(bs));
}

StretchEmbedding::StretchEmbedding(std::shared_ptr<const BlockStructure> bs, double s, double c)
    : bs_(std::move(bs)), s_(s), c_(c) {
  if (!(s > 0 && s < bs_->r().value())) {
    throw Error(ErrorKind::NotAStretch, "stretching needs 0 < s < r (s=" + std::to_string(s) + ", r=" +
                                            bs_->r().to_string() + ")");
  }
  if (!(c > 0)) throw Error(ErrorKind::OutOfRange, "stretch constant must be positive");
  std::size_t prev_end = 0;
  for (std::size_t k = 1; k <= bs_->blocks(); ++k) {
    const double n = static_cast<double>(bs_->size(k));
    const double target = std::pow(n / c, 1.0 / s);
    if (target > 1e15) break;
    auto p = static_cast<std::size_t>(std::max(1.0, std::ceil(target - 1e-9)));
    while (c * std::pow(static_cast<double>(p), s) + kBoundSlack < n) ++p;
    p = std::max(p, prev_end + 1);
    placements_.push_back(p);
    prev_end = p + bs_->size(k) - 1;
  }
  covered_ = prev_end;
}

std::size_t StretchEmbedding::block_at(std::size_t pos) const {
  if (pos < 1 || pos > covered_) {
    throw Error(ErrorKind::WindowExhausted, "position " + std::to_string(pos) + " lies beyond the " +
                                                std::to_string(placements_.size()) + " placed blocks");
  }
  auto it = std::upper_bound(placements_.begin(), placements_.end(), pos);
  const std::size_t k = static_cast<std::size_t>(it - placements_.begin());
  if (k == 0) return 0;
  return pos <= placements_[k - 1] + bs_->size(k) - 1 ? k : 0;
}

LazyMatrix StretchEmbedding::apply(const BlockDiagonalElement& x, std::string name) const {
  auto self = std::make_shared<const StretchEmbedding>(*this);
  auto emit = [self, x](std::size_t n, std::vector<Triplet>& out) {
    if (n > self->covered_) self->block_at(n);
    const Scalar fill = x.scalar_part();
    std::size_t pos = 1;
    for (std::size_t k = 1; k <= self->placements_.size() && pos <= n; ++k) {
      const std::size_t p = self->placements_[k - 1];
      for (; pos < p && pos <= n; ++pos) {
        if (!fill.is_zero()) out.push_back({pos, pos, fill});
      }
      if (p > n) break;
      const std::size_t size = self->bs_->size(k);
      emit_block(checked_block(x, k, size), p, n, out);
      pos = p + size;
    }
  };
  auto reach = [self](std::size_t i) {
    const std::size_t k = self->block_at(i);
    return k == 0 ? i : self->placements_[k - 1] + self->bs_->size(k) - 1;
  };
  return LazyMatrix::from_emitter(std::move(name), x.field(), GrowthCurve::power(c_, s_), emit, Support{reach, reach});
}

SlotImage interleave_embedding(const LazyMatrix& x, std::size_t n, std::size_t a, std::size_t b) {
  if (n < 1 || a < 1 || b < 1 || a > n || b > n) {
    throw Error(ErrorKind::OutOfRange, "slot (" + std::to_string(a) + "," + std::to_string(b) + ") outside degree " +
                                           std::to_string(n));
  }
  // The base window is reused while the requested size stays the same.
  struct Cache {
    std::mutex lock;
    std::size_t m = 0;
    std::vector<Triplet> triplets;
  };
  auto cache = std::make_shared<Cache>();
  auto emit = [x, n, a, b, cache](std::size_t window, std::vector<Triplet>& out) {
    const std::size_t m = (window + n - 1) / n;
    std::vector<Triplet> base;
    {
      std::lock_guard<std::mutex> guard(cache->lock);
      if (cache->m != m) {
        cache->triplets = make_window(x, m).triplets();
        cache->m = m;
      }
      base = cache->triplets;
    }
    for (auto& t : base) {
      const std::size_t r = n * (t.row - 1) + a;
      const std::size_t c = n * (t.col - 1) + b;
      if (r <= window && c <= window) out.push_back({r, c, std::move(t.value)});
    }
  };
  auto rr = [x, n](std::size_t p) { return n * (x.row_reach((p + n - 1) / n) - 1) + n; };
  auto cr = [x, n](std::size_t p) { return n * (x.col_reach((p + n - 1) / n) - 1) + n; };
  const GrowthCurve& g = x.declared_curve();
  GrowthCurve declared = GrowthCurve::power(1, 0);
  const double dn = static_cast<double>(n);
  if (g.kind() == GrowthCurve::Kind::power) {
    declared = GrowthCurve::power(dn * (g.constant() * std::pow(3.0, g.exponent()) + 1), g.exponent());
  } else {
    std::vector<double> table;
    for (std::size_t p = 1; p <= 4096; ++p) table.push_back(dn * g(std::ceil(p / dn) + 1) + dn);
    for (std::size_t i = 1; i < table.size(); ++i) table[i] = std::max(table[i], table[i - 1]);
    declared = GrowthCurve::table(std::move(table));
  }
  std::string name = x.name() + "@" + std::to_string(a) + "," + std::to_string(b);
  return SlotImage{LazyMatrix::from_emitter(std::move(name), x.field(), declared, emit, Support{rr, cr}), n, a, b};
}

LazyMatrix combine(std::span<const SlotImage> images, std::string name) {
  if (images.empty()) throw Error(ErrorKind::OutOfRange, "nothing to combine");
  const std::size_t n = images.front().degree;
  const Field field = images.front().matrix.field();
  std::set<std::pair<std::size_t, std::size_t>> slots;
  double c = 0, s = 0;
  bool all_power = true;
  for (const auto& im : images) {
    if (im.degree != n || !(im.matrix.field() == field)) {
      throw Error(ErrorKind::ConfigMismatch, "slot images of different degree or field");
    }
    if (!slots.insert({im.a, im.b}).second) {
      throw Error(ErrorKind::SlotCollision, "slot (" + std::to_string(im.a) + "," + std::to_string(im.b) + ") used twice");
    }
    const GrowthCurve& g = im.matrix.declared_curve();
    if (g.kind() == GrowthCurve::Kind::power) {
      c = std::max(c, g.constant());
      s = std::max(s, g.exponent());
    } else {
      all_power = false;
    }
  }
  std::vector<LazyMatrix> parts;
  for (const auto& im : images) parts.push_back(im.matrix);
  auto emit = [parts](std::size_t window, std::vector<Triplet>& out) {
    for (const auto& p : parts) {
      for (auto& t : make_window(p, window).triplets()) out.push_back(std::move(t));
    }
  };
  auto rr = [parts](std::size_t i) {
    std::size_t r = i;
    for (const auto& p : parts) r = std::max(r, p.row_reach(i));
    return r;
  };
  auto cr = [parts](std::size_t j) {
    std::size_t r = j;
    for (const auto& p : parts) r = std::max(r, p.col_reach(j));
    return r;
  };
  GrowthCurve declared = all_power ? GrowthCurve::power(c, s) : images.front().matrix.declared_curve();
  return LazyMatrix::from_emitter(std::move(name), field, declared, emit, Support{rr, cr});
}

const Generator& GeneratorSet::find(const std::string& name) const {
  for (const auto& g : gens_) {
    if (g.name == name) return g;
  }
  throw Error(ErrorKind::RecipeNotFound, "no generator named '" + name + "'");
}

namespace {

std::size_t bits_for(std::uint64_t count) { return count <= 1 ? 0 : std::bit_width(count - 1); }

}  // namespace

std::size_t GeneratorSet::code_bits(std::size_t k) const { return bits_for(bs_->class_count(bs_->size_class(k))); }

std::size_t GeneratorSet::code_index(std::size_t k) const { return k - bs_->class_first(bs_->size_class(k)); }

bool GeneratorSet::addressable(std::size_t k) const { return 2 * code_bits(k) <= bs_->size(k); }

GeneratorSet default_generators(std::shared_ptr<const BlockStructure> bs, Field field) {
  if (!bs->padded()) throw Error(ErrorKind::PaddingRequired, "the default generators need power-of-two blocks");
  const double r = bs->r().value();
  const double wide = 2 * (bs->t().value() + 1);

  // Marker positions of h, block by block (local, 1-based).
  auto marks = std::make_shared<std::vector<std::vector<std::size_t>>>();
  {
    GeneratorSet probe(bs, field, {});
    for (std::size_t k = 1; k <= bs->blocks(); ++k) {
      std::vector<std::size_t> m;
      if (probe.addressable(k)) {
        const std::size_t w = probe.code_bits(k);
        const std::size_t idx = probe.code_index(k);
        for (std::size_t j = 0; j < w; ++j) m.push_back(((idx >> j) & 1) ? 2 * j + 1 : 2 * j + 2);
      }
      marks->push_back(std::move(m));
    }
  }

  using LocalFn = std::function<void(std::size_t k, std::size_t size, std::vector<std::pair<std::size_t, std::size_t>>&)>;
  auto local = [&](std::string name, double c, double s, LocalFn fn) {
    auto emit = [bs, fn, field](std::size_t n, std::vector<Triplet>& out) {
      bs->require_position(n);
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t k = 1; k <= bs->blocks() && bs->start(k) <= n; ++k) {
        cells.clear();
        fn(k, bs->size(k), cells);
        const std::size_t off = bs->start(k) - 1;
        for (auto [i, j] : cells) {
          if (off + i <= n && off + j <= n) out.push_back({off + i, off + j, field.one()});
        }
      }
    };
    return Generator{name, LazyMatrix::from_emitter(name, field, GrowthCurve::power(c, s), emit, block_support(bs)), c};
  };

  std::vector<Generator> gens;
  {
    auto emit_s = [field](std::size_t n, std::vector<Triplet>& out) {
      for (std::size_t i = 1; i < n; ++i) out.push_back({i, i + 1, field.one()});
    };
    auto emit_sbar = [field](std::size_t n, std::vector<Triplet>& out) {
      for (std::size_t i = 1; i < n; ++i) out.push_back({i + 1, i, field.one()});
    };
    auto next = [](std::size_t i) { return i + 1; };
    gens.push_back({"s", LazyMatrix::from_emitter("s", field, GrowthCurve::power(1, 0), emit_s, Support{next, next}), 1});
    gens.push_back(
        {"s_bar", LazyMatrix::from_emitter("s_bar", field, GrowthCurve::power(1, 0), emit_sbar, Support{next, next}), 1});
  }
  gens.push_back(local("u", 1, 0, [](std::size_t, std::size_t n, auto& cells) {
    for (std::size_t i = 1; i < n; ++i) cells.push_back({i, i + 1});
  }));
  gens.push_back(local("u_bar", 1, 0, [](std::size_t, std::size_t n, auto& cells) {
    for (std::size_t i = 1; i < n; ++i) cells.push_back({i + 1, i});
  }));
  gens.push_back(local("B", wide, r, [](std::size_t, std::size_t n, auto& cells) {
    for (std::size_t j = 1; 2 * j - 1 <= n; ++j) cells.push_back({j, 2 * j - 1});
  }));
  gens.push_back(local("B_bar", wide, r, [](std::size_t, std::size_t n, auto& cells) {
    for (std::size_t j = 1; 2 * j - 1 <= n; ++j) cells.push_back({2 * j - 1, j});
  }));
  gens.push_back(local("q", 1, 0, [](std::size_t, std::size_t, auto& cells) { cells.push_back({1, 1}); }));
  gens.push_back(local("h", 1, 0, [marks](std::size_t k, std::size_t, auto& cells) {
    for (std::size_t p : (*marks)[k - 1]) cells.push_back({p, p});
  }));
  return GeneratorSet(bs, field, std::move(gens));
}

}  // namespace bandgrowth
