#include "doctest.h"

#include <memory>
#include <vector>

#include "bandgrowth/analyze.hpp"
#include "bandgrowth/io.hpp"
#include "bandgrowth/samples.hpp"

using namespace bandgrowth;

namespace {

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

// Window of the infinite shift, so the edge row is known to be cut.
WindowMatrix shift_window(const Field& f, std::size_t n) {
  auto next = [](std::size_t i) { return i + 1; };
  const LazyMatrix s("S", f, GrowthCurve::power(1, 0),
                     [f](std::size_t i, std::size_t j) { return j == i + 1 ? f.one() : f.zero(); }, Support{next, next});
  return make_window(s, n);
}

class ZeroEmbedding : public Embedding {
 public:
  explicit ZeroEmbedding(std::shared_ptr<const BlockStructure> bs) : bs_(std::move(bs)) {}
  std::string name() const override { return "zero"; }
  std::size_t block_size(std::size_t k) const override { return bs_->size(k); }
  WindowMatrix unit_image(std::size_t, std::size_t, std::size_t) const override { return WindowMatrix(F7, 20); }

 private:
  std::shared_ptr<const BlockStructure> bs_;
};

std::shared_ptr<const BlockStructure> structure(std::int64_t num, std::int64_t den, bool padded, std::size_t cover,
                                                std::size_t min_blocks = 1) {
  return std::make_shared<const BlockStructure>(Ratio::make(num, den), padded, cover, min_blocks);
}

// Evaluates a witness relation on the leading region.
bool witness_vanishes(const std::vector<std::pair<Scalar, Word>>& rel, const WindowMatrix& x, const WindowMatrix& y,
                      std::size_t region) {
  WindowMatrix sum(x.field(), x.size());
  for (const auto& [c, w] : rel) {
    WindowMatrix term = WindowMatrix::identity(x.field(), x.size());
    for (const auto& name : w) term = mul(term, name == "x" ? x : y);
    sum = add(sum, scale(c, term));
  }
  return sum.is_zero_on(region);
}

}  // namespace

TEST_CASE("growth estimate of simple generators") {
  std::vector<Triplet> ts;
  for (std::size_t i = 1; i <= 100; ++i) ts.push_back({i, i, F7.from_int(long(i % 6 + 1))});
  const std::vector<WindowMatrix> diag{WindowMatrix::from_triplets(F7, 100, ts)};
  try {
    const GrowthEstimate e = estimate_growth(diag, 3);
    CHECK(e.fit.s == doctest::Approx(0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroProfile);
  }

  const std::vector<WindowMatrix> s{shift_window(F7, 200)};
  const GrowthEstimate e = estimate_growth(s, 4);
  CHECK(e.words == 4);
  REQUIRE(e.exact_to >= 150);
  for (std::size_t k = 1; k <= e.exact_to; ++k) CHECK(e.envelope[k - 1] == 4);
  CHECK(e.fit.s == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("growth envelope dominates words and grows with L") {
  Rng rng(8);
  const std::vector<WindowMatrix> gens{random_power_profile(F7, 150, 1, 0.4, 0.3, rng), random_banded(F7, 150, 2, 0.5, rng)};
  const GrowthEstimate e1 = estimate_growth(gens, 1, 0xB4AD, 10000, 4);
  const GrowthEstimate e3 = estimate_growth(gens, 3, 0xB4AD, 10000, 4);
  CHECK(e3.words == 2 + 4 + 8);
  for (const auto& g : gens) {
    const BandProfile p = band_profile(g);
    for (std::size_t k = 1; k <= e1.exact_to; ++k) CHECK(e1.envelope[k - 1] >= p(k));
  }
  const BandProfile xy = band_profile(mul(gens[0], gens[1]));
  for (std::size_t k = 1; k <= std::min(e3.exact_to, xy.exact_to); ++k) CHECK(e3.envelope[k - 1] >= xy(k));
  for (std::size_t k = 1; k <= std::min(e1.exact_to, e3.exact_to); ++k) CHECK(e3.envelope[k - 1] >= e1.envelope[k - 1]);

  const GrowthEstimate sampled = estimate_growth(gens, 6, 5, 20, 4);
  CHECK(sampled.sampled);
  CHECK(sampled.words == 20);
  const GrowthEstimate again = estimate_growth(gens, 6, 5, 20, 4);
  CHECK(again.envelope == sampled.envelope);
}

TEST_CASE("freeness examples") {
  const WindowMatrix s = shift_window(Q, 16), st = transpose(s);
  const FreenessResult r = freeness_check(s, st, 2);
  CHECK_FALSE(r.independent);
  CHECK(r.words == 7);
  REQUIRE_FALSE(r.witness.empty());
  CHECK(r.witness_vanishes);
  CHECK(witness_vanishes(r.witness, s, st, r.region));
  bool has_xy = false;
  for (const auto& [c, w] : r.witness) has_xy = has_xy || w == Word{"x", "y"};
  CHECK(has_xy);

  const FreenessResult same = freeness_check(s, s, 1);
  CHECK_FALSE(same.independent);
  CHECK(witness_vanishes(same.witness, s, s, same.region));

  try {
    freeness_check(shift_window(Q, 7), transpose(shift_window(Q, 7)), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowExhausted);
  }
}

TEST_CASE("freeness witness always vanishes") {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const WindowMatrix x = random_banded(F7, 64, 1, 0.3, rng), y = random_banded(F7, 64, 1, 0.3, rng);
    const FreenessResult r = freeness_check(x, y, 3);
    CHECK(r.words == 15);
    if (!r.independent) CHECK(witness_vanishes(r.witness, x, y, r.region));
  }
}

TEST_CASE("scatter report") {
  const auto bs = structure(1, 2, false, 200);
  const PlacementEmbedding theta(bs, F7);
  const ScatterReport r3 = scatter_report(theta, 3);
  CHECK(r3.first_rows == std::vector<std::size_t>{4, 5, 6});
  CHECK(r3.distinct);
  CHECK(r3.min_gap == 1);
  CHECK(r3.max_position == 6);
  CHECK(scatter_report(theta, 1).first_rows == std::vector<std::size_t>{1});

  const StretchEmbedding st(bs, 0.25, 1);
  const StretchUnitsEmbedding stretched(st, F7);
  const ScatterReport rs = scatter_report(stretched, 3);
  CHECK(rs.first_rows.front() == st.placement(3));
  CHECK(rs.distinct);

  CHECK_THROWS_AS(ScaledEmbedding(std::make_shared<PlacementEmbedding>(bs, F7), F7.zero()), Error);
  const ZeroEmbedding zero(bs);
  try {
    scatter_report(zero, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnIdempotentImage);
  }
}

TEST_CASE("constants series") {
  const auto bs = structure(1, 2, true, 4000, 20);
  const auto theta = std::make_shared<PlacementEmbedding>(bs, F7);
  const ConstantsSeries cs = constants_series(*theta, 0.5, 16);
  REQUIRE(cs.raw.size() == 16);
  for (std::size_t k = 1; k < 16; ++k) CHECK(cs.running[k] >= cs.running[k - 1]);
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(cs.all_pairs[k] >= cs.consecutive[k]);
    CHECK(cs.consecutive[k] >= cs.raw[k]);
  }

  const ScaledEmbedding scaled(theta, F7.from_int(3));
  const ConstantsSeries cs3 = constants_series(scaled, 0.5, 16);
  CHECK(cs3.raw == cs.raw);
  CHECK(cs3.all_pairs == cs.all_pairs);

  const GeneratorSet gs = default_generators(bs, F7);
  const RecipeEmbedding recipes(gs, 6);
  const ConstantsSeries cr = constants_series(recipes, 0.5, 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(cr.raw[k] == doctest::Approx(cs.raw[k]));
}

TEST_CASE("key property and cross series on a small range") {
  const auto bs = structure(1, 2, true, 2000, 12);
  const GeneratorSet gs = default_generators(bs, F7);
  const KeyPropertyReport kp = key_property(gs, 6);
  CHECK(kp.all_exact);
  REQUIRE(kp.rows.size() == 6);
  for (const auto& row : kp.rows) {
    CHECK(row.inexact == 0);
    CHECK(row.recipes == row.size * row.size);
  }
  CHECK(kp.bound_constant > 0);
  for (const auto& row : cross_series(gs, 6)) CHECK(row.check.pass());
}

TEST_CASE("report serialization is deterministic") {
  Rng a(77), b(77);
  const WindowMatrix x1 = random_banded(Q, 64, 2, 0.6, a), y1 = random_banded(Q, 64, 2, 0.6, a);
  const WindowMatrix x2 = random_banded(Q, 64, 2, 0.6, b), y2 = random_banded(Q, 64, 2, 0.6, b);
  CHECK(to_json(freeness_check(x1, y1, 4)).dump() == to_json(freeness_check(x2, y2, 4)).dump());
}
