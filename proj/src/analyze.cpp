#include "bandgrowth/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bandgrowth/samples.hpp"

namespace bandgrowth {

namespace {

void absorb(GrowthEstimate& est, const WindowMatrix& w) {
  const BandProfile p = band_profile(w);
  for (std::size_t k = 0; k < p.g.size(); ++k) est.envelope[k] = std::max(est.envelope[k], p.g[k]);
  est.exact_to = std::min(est.exact_to, p.exact_to);
  ++est.words;
}

void enumerate(GrowthEstimate& est, std::span<const WindowMatrix> gens, const WindowMatrix& prefix, std::size_t depth,
               std::size_t L) {
  absorb(est, prefix);
  if (depth == L) return;
  for (const auto& g : gens) enumerate(est, gens, mul(prefix, g), depth + 1, L);
}

}  // namespace

GrowthEstimate estimate_growth(std::span<const WindowMatrix> gens, std::size_t L, std::uint64_t seed,
                               std::size_t word_cap, std::size_t skip) {
  if (L < 1) throw Error(ErrorKind::OutOfRange, "word length must be at least 1");
  if (gens.empty()) throw Error(ErrorKind::OutOfRange, "need at least one generator");
  const std::size_t n = gens.front().size();
  for (const auto& g : gens) {
    if (g.size() != n || !(g.field() == gens.front().field())) {
      throw Error(ErrorKind::ConfigMismatch, "generators must share window and field");
    }
  }
  GrowthEstimate est;
  est.max_len = L;
  est.window = n;
  est.envelope.assign(n, 0);
  est.exact_to = n;

  // Total number of words of length 1..L, saturating at word_cap + 1.
  std::size_t total = 0, layer = 1;
  for (std::size_t l = 1; l <= L && total <= word_cap; ++l) {
    layer = layer > word_cap ? layer : layer * gens.size();
    total += layer;
  }
  if (total <= word_cap) {
    for (const auto& g : gens) enumerate(est, gens, g, 1, L);
  } else {
    est.sampled = true;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> len(1, L), pick(0, gens.size() - 1);
    for (std::size_t w = 0; w < word_cap; ++w) {
      const std::size_t l = len(rng);
      WindowMatrix acc = gens[pick(rng)];
      for (std::size_t i = 1; i < l; ++i) acc = mul(acc, gens[pick(rng)]);
      absorb(est, acc);
    }
  }
  std::vector<double> values(est.envelope.begin(), est.envelope.begin() + static_cast<std::ptrdiff_t>(est.exact_to));
  est.fit = fit_exponent(values, skip);
  return est;
}

WindowMatrix PlacementEmbedding::unit_image(std::size_t k, std::size_t i, std::size_t j) const {
  bs_->require_block(k + 1);
  return WindowMatrix::unit(field_, bs_->end(k + 1), bs_->start(k) + i - 1, bs_->start(k) + j - 1);
}

std::optional<WindowMatrix> PlacementEmbedding::cross_image(std::size_t k) const {
  bs_->require_block(k + 1);
  return WindowMatrix::unit(field_, bs_->end(k + 1), bs_->start(k + 1), bs_->start(k));
}

RecipeEmbedding::RecipeEmbedding(const GeneratorSet& gs, std::size_t max_k)
    : gs_(gs), ev_(std::make_shared<WordEvaluator>(gs, recipe_window(gs, max_k))) {}

WindowMatrix RecipeEmbedding::unit_image(std::size_t k, std::size_t i, std::size_t j) const {
  const auto recipe = matrix_unit_recipe(gs_, k, i, j);
  return ev_->eval(recipe.combination);
}

std::optional<WindowMatrix> RecipeEmbedding::cross_image(std::size_t k) const {
  return ev_->eval(cross_element(gs_, k).gamma);
}

std::size_t StretchUnitsEmbedding::window(std::size_t k) const {
  if (k + 1 > st_.blocks_placed()) {
    throw Error(ErrorKind::WindowExhausted, "block " + std::to_string(k + 1) + " is not placed");
  }
  return st_.placement(k + 1) + st_.structure().size(k + 1) - 1;
}

WindowMatrix StretchUnitsEmbedding::unit_image(std::size_t k, std::size_t i, std::size_t j) const {
  return make_window(st_.apply(BlockDiagonalElement::unit(field_, k, i, j)), window(k));
}

std::optional<WindowMatrix> StretchUnitsEmbedding::cross_image(std::size_t k) const {
  return WindowMatrix::unit(field_, window(k), st_.placement(k + 1), st_.placement(k));
}

ScaledEmbedding::ScaledEmbedding(std::shared_ptr<const Embedding> base, Scalar factor)
    : base_(std::move(base)), factor_(std::move(factor)) {
  if (factor_.is_zero()) throw Error(ErrorKind::DivisionByZero, "scaling an embedding by zero");
}

WindowMatrix ScaledEmbedding::unit_image(std::size_t k, std::size_t i, std::size_t j) const {
  return scale(factor_, base_->unit_image(k, i, j));
}

std::optional<WindowMatrix> ScaledEmbedding::cross_image(std::size_t k) const {
  auto c = base_->cross_image(k);
  if (!c) return c;
  return scale(factor_, *c);
}

ConstantsSeries constants_series(const Embedding& theta, double s, std::size_t K) {
  ConstantsSeries out;
  out.s = s;
  double run = 0;
  for (std::size_t k = 1; k <= K; ++k) {
    const std::size_t n = theta.block_size(k);
    double raw = 0, consecutive = 0, all = 0;
    for (std::size_t i = 1; i <= n; ++i) raw = std::max(raw, minimal_constant(theta.unit_image(k, i, i), s));
    if (auto c = theta.cross_image(k)) raw = std::max(raw, minimal_constant(*c, s));
    consecutive = all = raw;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (i == j) continue;
        const double m = minimal_constant(theta.unit_image(k, i, j), s);
        all = std::max(all, m);
        if (i + 1 == j || j + 1 == i) consecutive = std::max(consecutive, m);
      }
    }
    run = std::max(run, raw);
    out.raw.push_back(raw);
    out.running.push_back(run);
    out.consecutive.push_back(consecutive);
    out.all_pairs.push_back(all);
    const double scale_k = std::pow(std::log2(static_cast<double>(k) + 1), 2 / (1 - s));
    out.ratio.push_back(run / scale_k);
  }
  return out;
}

ScatterReport scatter_report(const Embedding& theta, std::size_t k) {
  ScatterReport rep;
  rep.k = k;
  for (std::size_t i = 1; i <= theta.block_size(k); ++i) {
    const WindowMatrix w = theta.unit_image(k, i, i);
    std::size_t first = 0;
    for (std::size_t r = 1; r <= w.size() && first == 0; ++r) {
      if (!w.row(r).empty()) first = r;
    }
    if (first == 0) {
      throw Error(ErrorKind::NotAnIdempotentImage, "image of e_" + std::to_string(i) + std::to_string(i) + " in block " +
                                                       std::to_string(k) + " is zero");
    }
    rep.first_rows.push_back(first);
    rep.max_position = std::max(rep.max_position, first);
  }
  std::vector<std::size_t> sorted = rep.first_rows;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const std::size_t gap = sorted[i] - sorted[i - 1];
    if (gap == 0) rep.distinct = false;
    rep.min_gap = i == 1 ? gap : std::min(rep.min_gap, gap);
  }
  return rep;
}

FreenessResult freeness_check(const WindowMatrix& x, const WindowMatrix& y, std::size_t L) {
  if (x.size() != y.size() || !(x.field() == y.field())) {
    throw Error(ErrorKind::ConfigMismatch, "freeness check needs matrices of one window and field");
  }
  if (L >= 30 || x.size() < (std::size_t{1} << (L + 1))) {
    throw Error(ErrorKind::WindowExhausted, "window " + std::to_string(x.size()) + " is below 2^(L+1) for L=" +
                                                std::to_string(L));
  }
  const Field& f = x.field();
  const std::size_t n = x.size();
  // Shortlex order: empty word, then by length with x < y.
  std::vector<Word> words{Word{}};
  std::vector<WindowMatrix> values{WindowMatrix::identity(f, n)};
  std::size_t layer_begin = 0;
  for (std::size_t l = 1; l <= L; ++l) {
    const std::size_t layer_end = words.size();
    for (std::size_t w = layer_begin; w < layer_end; ++w) {
      for (int g = 0; g < 2; ++g) {
        Word next = words[w];
        next.push_back(g == 0 ? "x" : "y");
        values.push_back(mul(values[w], g == 0 ? x : y));
        words.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  FreenessResult res;
  res.words = words.size();
  res.region = n;
  for (const auto& v : values) res.region = std::min(res.region, v.valid_to());

  const std::size_t m = res.region;
  std::vector<SparseVector> flat;
  for (const auto& v : values) {
    SparseVector sv;
    for (std::size_t i = 1; i <= m; ++i) {
      for (const auto& e : v.row(i)) {
        if (e.col <= m) sv.emplace_back((i - 1) * m + (e.col - 1), e.value);
      }
    }
    flat.push_back(std::move(sv));
  }
  const IndependenceResult ind = independence(f, flat);
  res.rank = ind.rank;
  res.independent = ind.independent;
  if (!ind.independent) {
    WindowMatrix sum(f, n);
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (ind.relation[w].is_zero()) continue;
      res.witness.emplace_back(ind.relation[w], words[w]);
      sum = add(sum, scale(ind.relation[w], values[w]));
    }
    res.witness_vanishes = sum.is_zero_on(m);
  }
  return res;
}

}  // namespace bandgrowth

namespace bandgrowth {

KeyPropertyReport key_property(const GeneratorSet& gs, std::size_t K) {
  if (K < 1) throw Error(ErrorKind::OutOfRange, "need K >= 1");
  KeyPropertyReport rep;
  WordEvaluator ev(gs, recipe_window(gs, K));
  rep.window = ev.window();
  const BlockStructure& bs = gs.structure();
  std::vector<double> x2, x1, len;
  for (std::size_t k = 1; k <= K; ++k) {
    ev.clear_cache();
    KeyPropertyRow row;
    row.k = k;
    row.size = bs.size(k);
    for (std::size_t i = 1; i <= row.size; ++i) {
      for (std::size_t j = 1; j <= row.size; ++j) {
        const auto r = matrix_unit_recipe(gs, k, i, j);
        row.route = r.route;
        row.max_length = std::max(row.max_length, r.length);
        row.max_products = std::max(row.max_products, r.combination.products());
        ++row.recipes;
        if (!verify_unit(ev, r.combination, r.target, bs.end(k + 1))) ++row.inexact;
      }
    }
    rep.all_exact = rep.all_exact && row.inexact == 0;
    const double lg = std::log2(static_cast<double>(k) + 1);
    rep.bound_constant = std::max(rep.bound_constant, static_cast<double>(row.max_length) / (lg * lg));
    x2.push_back(lg * lg);
    x1.push_back(lg);
    len.push_back(static_cast<double>(row.max_length));
    rep.rows.push_back(std::move(row));
  }
  if (K >= 2) {
    rep.squared_log_fit = fit_line(x2, len);
    rep.log_fit = fit_line(x1, len);
  }
  return rep;
}

std::vector<CrossRow> cross_series(const GeneratorSet& gs, std::size_t K) {
  WordEvaluator ev(gs, recipe_window(gs, K));
  std::vector<CrossRow> out;
  for (std::size_t k = 1; k <= K; ++k) {
    ev.clear_cache();
    const CrossElement ce = cross_element(gs, k);
    out.push_back({k, ce.length, verify_cross(ev, gs, ce)});
  }
  return out;
}

}  // namespace bandgrowth
