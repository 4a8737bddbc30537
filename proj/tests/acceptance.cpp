// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bandgrowth/analyze.hpp"
#include "bandgrowth/growth.hpp"
#include "bandgrowth/io.hpp"
#include "bandgrowth/recipes.hpp"
#include "bandgrowth/samples.hpp"
#include "bandgrowth/tridiag.hpp"

using namespace bandgrowth;

namespace {

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> table;  // extra lines printed under the verdict
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::shared_ptr<const BlockStructure> structure(Ratio r, bool padded, std::size_t cover, std::size_t min_blocks = 1) {
  return std::make_shared<const BlockStructure>(r, padded, cover, min_blocks);
}

LazyMatrix shift(const Field& f) {
  auto next = [](std::size_t i) { return i + 1; };
  return LazyMatrix("S", f, GrowthCurve::power(1, 0),
                    [f](std::size_t i, std::size_t j) { return j == i + 1 ? f.one() : f.zero(); }, Support{next, next});
}

// floor(k^(p/q)) from a floating estimate corrected by exact integer comparison.
std::uint64_t brute_size(std::uint64_t k, std::int64_t p, std::int64_t q) {
  auto ipow = [](unsigned __int128 b, std::int64_t e) {
    unsigned __int128 r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= b;
    return r;
  };
  const unsigned __int128 kp = ipow(k, p);
  auto m = static_cast<std::uint64_t>(std::pow(double(k), double(p) / double(q)));
  while (m > 0 && ipow(m, q) > kp) --m;
  while (ipow(m + 1, q) <= kp) ++m;
  return m;
}

Outcome composition_soundness() {
  Rng rng(0xB4AD);
  std::size_t violations = 0, filtration_failures = 0, positions = 0;
  for (int t = 0; t < 500; ++t) {
    WindowMatrix x(F7, 1), y(F7, 1);
    if (t % 2 == 0) {
      std::uniform_real_distribution<double> cd(0.5, 3), sd(0.1, 0.9);
      x = random_power_profile(F7, 256, cd(rng), sd(rng), 0.3, rng);
      y = random_power_profile(F7, 256, cd(rng), sd(rng), 0.3, rng);
    } else {
      x = random_banded(F7, 256, 1 + t % 4, 0.5, rng);
      y = random_banded(F7, 256, 1 + (t / 4) % 4, 0.5, rng);
    }
    const WindowMatrix xy = mul(x, y);
    const BandProfile p = band_profile(xy);
    const GrowthCurve f = compose_product(GrowthCurve::from_profile(band_profile(x)), GrowthCurve::from_profile(band_profile(y)));
    for (std::size_t k = 1; k <= p.exact_to; ++k, ++positions) {
      if (double(p(k)) > f(double(k)) + kBoundSlack) ++violations;
    }
    if (t % 2 == 1) {
      const double cx = minimal_constant(x, 0), cy = minimal_constant(y, 0);
      if (!membership(xy, FiltrationLevel(0, std::max(cx + cy, 1e-9)))) ++filtration_failures;
    }
  }
  return {violations == 0 && filtration_failures == 0,
          std::to_string(positions) + " positions, " + std::to_string(violations) + " bound violations, " +
              std::to_string(filtration_failures) + " W_0 filtration failures",
          {}};
}

Outcome step1_bound() {
  const std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<double> doubled;
  for (double n : grid) doubled.push_back(2 * n);
  bool ok = true;
  std::string detail;
  for (double s : {0.25, 0.5, 0.75}) {
    const PowerGrowthReport a = power_growth_check(1, s, 64, grid);
    const PowerGrowthReport b = power_growth_check(1, s, 64, doubled);
    const double drift = std::abs(a.d - b.d) / a.d;
    ok = ok && a.pass && b.pass && drift <= 0.05;
    detail += "s=" + fmt("%.2f", s) + " d=" + fmt("%.4f", a.d) + " drift=" + fmt("%.4f", drift) + "; ";
  }
  return {ok, detail, {}};
}

Outcome block_structure_and_R() {
  bool ok = true;
  std::string detail;
  for (const Ratio r : {Ratio::make(1, 3), Ratio::make(1, 2), Ratio::make(2, 3)}) {
    const auto bs = structure(r, false, 1, 10000);
    const Ratio t = bs->t();
    std::uint64_t start = 1;
    std::size_t mismatches = 0;
    for (std::size_t k = 1; k <= 10000; ++k) {
      const std::uint64_t n = brute_size(k, t.num, t.den);
      if (bs->size(k) != n || bs->start(k) != start || bs->exact_size(k) != n) ++mismatches;
      start += n;
    }
    const auto cover = structure(r, false, 10000);
    const double c = 2 * (t.value() + 1);
    std::size_t growth_failures = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const WindowMatrix w = make_window(embed_R(cover, BlockDiagonalElement::random(F7, seed)), 10000);
      if (!verify_growth(w, c, r.value())) ++growth_failures;
    }
    ok = ok && mismatches == 0 && growth_failures == 0;
    detail += "r=" + r.to_string() + ": " + std::to_string(mismatches) + " layout mismatches, " +
              std::to_string(growth_failures) + "/5 outside W_r(" + fmt("%g", c) + "); ";
  }
  return {ok, detail, {}};
}

Outcome stretch_embedding() {
  const auto bs = structure(Ratio::make(1, 2), false, 200);
  const StretchEmbedding st(bs, 0.25, 1);
  const std::size_t n = 10000;
  std::size_t placement_failures = 0;
  for (std::size_t k = 1; k <= st.blocks_placed(); ++k) {
    if (st.placement(k) < k * k * k * k) ++placement_failures;
  }
  bool ok = placement_failures == 0 && st.covered() >= n;

  const bool unital = make_window(st.apply(BlockDiagonalElement::identity(F7)), n).equal_on(WindowMatrix::identity(F7, n), n);
  std::size_t hom_failures = 0, growth_failures = 0, distinct_failures = 0, min_valid = n;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto x = BlockDiagonalElement::random(F7, 1000 + 2 * t), y = BlockDiagonalElement::random(F7, 1001 + 2 * t);
    const WindowMatrix sx = make_window(st.apply(x), n), sy = make_window(st.apply(y), n);
    const WindowMatrix p = mul(sx, sy);
    min_valid = std::min(min_valid, p.valid_to());
    if (!p.equal_on(make_window(st.apply(x * y), n), p.valid_to())) ++hom_failures;
    if (!membership(sx, FiltrationLevel(0.25, 1)) || !membership(sy, FiltrationLevel(0.25, 1))) ++growth_failures;
    if (sx.equal_on(sy, n)) ++distinct_failures;
  }
  // Injectivity on the unit basis of every block inside the window.
  std::size_t unit_failures = 0;
  for (std::size_t k = 1; k <= st.blocks_placed() && st.placement(k) + bs->size(k) - 1 <= n; ++k) {
    for (std::size_t i = 1; i <= bs->size(k); ++i) {
      for (std::size_t j = 1; j <= bs->size(k); ++j) {
        const WindowMatrix u = make_window(st.apply(BlockDiagonalElement::unit(F7, k, i, j)), n);
        const auto ts = u.triplets();
        if (k == 1) {
          // The scalar part also fills every gap position.
          std::size_t expected = 0;
          for (std::size_t pos = 1; pos <= n; ++pos) expected += pos == 1 || st.block_at(pos) == 0;
          bool diagonal = ts.size() == expected;
          for (const auto& e : ts) diagonal = diagonal && e.row == e.col && (e.row == 1 || st.block_at(e.row) == 0);
          unit_failures += !diagonal;
          continue;
        }
        if (ts.size() != 1 || ts[0].row != st.placement(k) + i - 1 || ts[0].col != st.placement(k) + j - 1) ++unit_failures;
      }
    }
  }
  ok = ok && unital && hom_failures == 0 && growth_failures == 0 && distinct_failures == 0 && unit_failures == 0;
  return {ok,
          std::to_string(st.blocks_placed()) + " placements (p_2=" + std::to_string(st.placement(2)) +
              "), unital=" + (unital ? "yes" : "no") + ", homomorphism failures " + std::to_string(hom_failures) +
              "/100 (valid >= " + std::to_string(min_valid) + "), W_1/4(1) failures " + std::to_string(growth_failures) +
              ", injectivity failures " + std::to_string(distinct_failures + unit_failures),
          {}};
}

Outcome key_property_check() {
  const std::size_t K = 32;
  const auto bs = structure(Ratio::make(1, 2), true, 1, K + 4);
  const GeneratorSet gs = default_generators(bs, F7);
  const KeyPropertyReport kp = key_property(gs, K);
  Outcome out;
  std::size_t recipes = 0, inexact = 0;
  bool bounded = true;
  for (const auto& row : kp.rows) {
    recipes += row.recipes;
    inexact += row.inexact;
    const double l2 = std::log2(double(row.k) + 1);
    if (double(row.max_length) > kp.bound_constant * l2 * l2 + kBoundSlack) bounded = false;
  }
  const bool fit_ok = kp.squared_log_fit.r2 >= 0.9;
  out.pass = kp.all_exact && inexact == 0 && bounded;
  out.detail = std::to_string(recipes) + " recipes, " + std::to_string(inexact) + " inexact, C=" +
               fmt("%.3f", kp.bound_constant) + ", R2(len ~ log2(k+1)^2)=" + fmt("%.3f", kp.squared_log_fit.r2) +
               ", R2(len ~ log2(k+1))=" + fmt("%.3f", kp.log_fit.r2) + ", window " + std::to_string(kp.window);
  if (!fit_ok) {
    out.detail += "; R2 below 0.9, per-k table follows";
    out.table.push_back("k  size  recipes  inexact  max_len  max_products  C*log2(k+1)^2  route");
    for (const auto& row : kp.rows) {
      const double l2 = std::log2(double(row.k) + 1);
      std::ostringstream line;
      line << row.k << "  " << row.size << "  " << row.recipes << "  " << row.inexact << "  " << row.max_length << "  "
           << row.max_products << "  " << fmt("%.1f", kp.bound_constant * l2 * l2) << "  " << row.route;
      out.table.push_back(line.str());
    }
  }
  return out;
}

Outcome cross_elements() {
  const std::size_t K = 31;
  const auto bs = structure(Ratio::make(1, 2), true, 1, K + 4);
  const GeneratorSet gs = default_generators(bs, F7);
  std::size_t failures = 0, longest = 0;
  for (const auto& row : cross_series(gs, K)) {
    if (!row.check.pass()) ++failures;
    longest = std::max(longest, row.length);
  }
  return {failures == 0, std::to_string(K) + " cross elements, " + std::to_string(failures) + " failures, longest word " +
                             std::to_string(longest), {}};
}

Outcome tridiagonalization() {
  Rng rng(0xB4AD);
  std::uniform_int_distribution<std::size_t> bw(1, 3);
  const int runs = 50;
  int similar = 0, geometric = 0, strict = 0, certified = 0;
  double worst_c = 0;
  Outcome out;
  for (int t = 0; t < runs; ++t) {
    const std::vector<WindowMatrix> xs{random_banded(F7, 300, bw(rng), 0.6, rng), random_banded(F7, 300, bw(rng), 0.6, rng)};
    const TridiagResult r = block_tridiagonalize(xs);
    const FlagReport& rep = r.report;
    similar += rep.similarity_exact;
    geometric += rep.within_geometric_bound;
    if (rep.strict) {
      ++strict;
      const auto cert = linear_growth_certificate(rep, r.transformed);
      worst_c = std::max(worst_c, cert.c);
      certified += cert.c <= 25 + kBoundSlack;
    } else {
      const auto& v = rep.violations.front();
      out.table.push_back("run " + std::to_string(t) + ": Hessenberg only, " + std::to_string(rep.violations.size()) +
                          " entries outside the band, first in matrix " + std::to_string(v.matrix) + " at (" +
                          std::to_string(v.row) + "," + std::to_string(v.col) + ") blocks (" + std::to_string(v.row_block) +
                          "," + std::to_string(v.col_block) + ")");
    }
  }
  out.pass = similar == runs && geometric == runs && strict * 10 >= runs * 9 && certified == strict;
  out.detail = "similarity " + std::to_string(similar) + "/50, geometric bound " + std::to_string(geometric) +
               "/50, strict " + std::to_string(strict) + "/50, certificate c<=25 on " + std::to_string(certified) + "/" +
               std::to_string(strict) + " (worst c=" + fmt("%.3f", worst_c) + ")";
  return out;
}

Outcome estimator_calibration() {
  const std::size_t n = 100000;
  const auto bs = structure(Ratio::make(1, 3), false, n);
  const std::vector<WindowMatrix> gens{make_window(embed_R(bs, BlockDiagonalElement::random(F7, 1)), n),
                                       make_window(embed_R(bs, BlockDiagonalElement::random(F7, 2)), n)};
  const GrowthEstimate e = estimate_growth(gens, 3);
  const double err = std::abs(e.fit.s - 1.0 / 3.0);
  return {err <= 0.05,
          "fitted s=" + fmt("%.4f", e.fit.s) + " (|s-1/3|=" + fmt("%.4f", err) + ") from " + std::to_string(e.words) +
              " words, exact to " + std::to_string(e.exact_to),
          {}};
}

Outcome freeness() {
  const WindowMatrix s = make_window(shift(Q), 32), st = transpose(s);
  const FreenessResult a = freeness_check(s, st, 2);
  Rng rng(3);
  const WindowMatrix x = random_banded(Q, 32, 2, 0.6, rng);
  const FreenessResult b = freeness_check(x, x, 1);

  auto generic = [] {
    Rng g(0xB4AD);
    const WindowMatrix gx = random_banded(Q, 128, 2, 0.7, g), gy = random_banded(Q, 128, 2, 0.7, g);
    return to_json(freeness_check(gx, gy, 5)).dump();
  };
  const std::string first = generic(), second = generic();
  const Json parsed = Json::parse(first);
  const bool ok = !a.independent && a.witness_vanishes && !b.independent && b.witness_vanishes && first == second;
  return {ok,
          std::string("(S,S^T) L=2 ") + (a.independent ? "free" : "dependent") + ", witness zero " +
              (a.witness_vanishes ? "yes" : "no") + "; (x,x) L=1 " + (b.independent ? "free" : "dependent") +
              "; generic Q pair L=5 rank " + std::to_string(parsed["rank"].get<std::size_t>()) + "/" +
              std::to_string(parsed["words"].get<std::size_t>()) + " (" +
              (parsed["independent"].get<bool>() ? "free" : "dependent") + "), reproducible " +
              (first == second ? "yes" : "no"),
          {}};
}

// Window of the image of a 2x2 matrix over A, assembled from base windows.
WindowMatrix interleaved(const std::vector<std::vector<WindowMatrix>>& blocks, std::size_t n) {
  std::vector<Triplet> ts;
  std::size_t valid = n;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const WindowMatrix& w = blocks[a][b];
      valid = std::min(valid, 2 * w.valid_to());
      for (const auto& t : w.triplets()) {
        const std::size_t i = 2 * (t.row - 1) + a + 1, j = 2 * (t.col - 1) + b + 1;
        if (i <= n && j <= n) ts.push_back({i, j, t.value});
      }
    }
  }
  return WindowMatrix::from_triplets(F7, n, ts).with_valid_to(valid);
}

Outcome interleave() {
  std::vector<LazyMatrix> samples;
  Rng rng(0xB4AD);
  std::uniform_real_distribution<double> cd(0.5, 1.5), sd(0.3, 0.7);
  for (std::uint64_t i = 0; i < 20; ++i) samples.push_back(random_power_lazy(F7, cd(rng), sd(rng), 0.3, 500 + i));

  const std::size_t n = 1600, half = n / 2;
  auto identity = LazyMatrix("I", F7, GrowthCurve::power(1, 0), [](std::size_t i, std::size_t j) {
    return i == j ? Field::prime(7).one() : Field::prime(7).zero();
  });
  std::vector<SlotImage> unit{interleave_embedding(identity, 2, 1, 1), interleave_embedding(identity, 2, 2, 2)};
  const bool unital = make_window(combine(unit), n).equal_on(WindowMatrix::identity(F7, n), n);

  // Products of random 2x2 matrices over the samples.
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::size_t hom_failures = 0, min_valid = n;
  std::vector<WindowMatrix> base;
  for (const auto& s : samples) base.push_back(make_window(s, half));
  std::vector<std::vector<SlotImage>> slots(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t a = 1; a <= 2; ++a)
      for (std::size_t b = 1; b <= 2; ++b) slots[i].push_back(interleave_embedding(samples[i], 2, a, b));
  for (int t = 0; t < 50; ++t) {
    std::size_t ix[2][2], iy[2][2];
    std::vector<SlotImage> xs, ys;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        ix[a][b] = pick(rng);
        iy[a][b] = pick(rng);
        xs.push_back(slots[ix[a][b]][2 * a + b]);
        ys.push_back(slots[iy[a][b]][2 * a + b]);
      }
    }
    const WindowMatrix prod = mul(make_window(combine(xs), n), make_window(combine(ys), n));
    std::vector<std::vector<WindowMatrix>> z(2);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t c = 0; c < 2; ++c) {
        z[a].push_back(add(mul(base[ix[a][0]], base[iy[0][c]]), mul(base[ix[a][1]], base[iy[1][c]])));
      }
    }
    const WindowMatrix expected = interleaved(z, n);
    const std::size_t region = std::min(prod.valid_to(), expected.valid_to());
    min_valid = std::min(min_valid, region);
    if (region < n / 2 || !prod.equal_on(expected, region)) ++hom_failures;
  }

  double worst = 0;
  for (const auto& s : samples) {
    const double base_s = fit_exponent(band_profile(make_window(s, half)), kDefaultBurnIn, true).s;
    std::vector<SlotImage> all;
    for (std::size_t a = 1; a <= 2; ++a)
      for (std::size_t b = 1; b <= 2; ++b) all.push_back(interleave_embedding(s, 2, a, b));
    const double image_s = fit_exponent(band_profile(make_window(combine(all), n)), kDefaultBurnIn, true).s;
    worst = std::max(worst, std::abs(image_s - base_s));
  }
  return {unital && hom_failures == 0 && worst <= 0.05,
          std::string("unital ") + (unital ? "yes" : "no") + ", homomorphism failures " + std::to_string(hom_failures) +
              "/50 (region >= " + std::to_string(min_valid) + "), worst exponent shift " + fmt("%.4f", worst),
          {}};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "composition soundness", 30, composition_soundness},
      {2, "step 1 power bound", 5, step1_bound},
      {3, "block structure and R in G(r)", 30, block_structure_and_R},
      {4, "stretch embedding", 60, stretch_embedding},
      {5, "key property", 120, key_property_check},
      {6, "cross elements", 30, cross_elements},
      {7, "block tridiagonalization", 120, tridiagonalization},
      {8, "estimator calibration", 60, estimator_calibration},
      {9, "freeness checker", 60, freeness},
      {10, "interleave embedding", 30, interleave},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), {}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << ")  " << fmt("%.2f", secs) << "s/"
              << c.budget_seconds << "s  " << o.detail << (in_time ? "" : "  [over time budget]") << "\n";
    for (const auto& line : o.table) std::cout << "      " << line << "\n";
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
