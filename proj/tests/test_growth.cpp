#include "doctest.h"

#include <cmath>
#include <vector>

#include "bandgrowth/growth.hpp"
#include "bandgrowth/samples.hpp"

using namespace bandgrowth;

namespace {

const Field F7 = Field::prime(7);

WindowMatrix shift_window(std::size_t n) {
  std::vector<Triplet> ts;
  for (std::size_t i = 1; i < n; ++i) ts.push_back({i, i + 1, F7.one()});
  return WindowMatrix::from_triplets(F7, n, ts);
}

}  // namespace

TEST_CASE("curve evaluation") {
  CHECK(GrowthCurve::power(1, 0)(100) == doctest::Approx(1));
  CHECK(GrowthCurve::power(3, 0.5)(100) == doctest::Approx(30));
  CHECK(GrowthCurve::table({1, 2, 2, 5})(9) == doctest::Approx(5));
  CHECK(GrowthCurve::table({1, 2, 2, 5})(2) == doctest::Approx(2));
}

TEST_CASE("compose_product examples") {
  const GrowthCurve c0 = compose_product(GrowthCurve::power(2.5, 0), GrowthCurve::power(2.5, 0));
  for (double n : {1.0, 7.0, 1000.0}) CHECK(c0(n) == doctest::Approx(5));

  const GrowthCurve lin = compose_product(GrowthCurve::power(1, 1), GrowthCurve::power(1, 1));
  for (double n : {1.0, 10.0, 333.0}) CHECK(lin(n) == doctest::Approx(3 * n));

  const GrowthCurve half = compose_product(GrowthCurve::power(1, 0.5), GrowthCurve::power(1, 0.5));
  CHECK(half(100) == doctest::Approx(10 + std::sqrt(110.0)));
  CHECK(half(100) == doctest::Approx(20.488).epsilon(1e-4));
}

TEST_CASE("compose_product is monotone in both arguments") {
  Rng rng(2);
  std::uniform_real_distribution<double> cd(0.1, 3), sd(0, 0.9), bump(0, 1);
  for (int t = 0; t < 200; ++t) {
    const double c = cd(rng), s = sd(rng), c2 = cd(rng), s2 = sd(rng);
    const GrowthCurve g = GrowthCurve::power(c, s), h = GrowthCurve::power(c2, s2);
    const GrowthCurve g2 = GrowthCurve::power(c + bump(rng), s), h2 = GrowthCurve::power(c2 + bump(rng), s2);
    const GrowthCurve f = compose_product(g, h), f2 = compose_product(g2, h2);
    for (double n = 1; n <= 4096; n *= 2) CHECK(f(n) <= f2(n) + kBoundSlack);
  }
}

TEST_CASE("membership and the s=0 filtration") {
  CHECK(membership(WindowMatrix::identity(F7, 10), FiltrationLevel(0, 1)));
  CHECK_FALSE(membership(shift_window(10), FiltrationLevel(0, 0.5)));
  CHECK_THROWS_AS(FiltrationLevel(0, 0), Error);
  CHECK_THROWS_AS(FiltrationLevel(1.5, 1), Error);

  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const std::size_t bx = t % 4, by = (t / 4) % 4;
    const WindowMatrix x = random_banded(F7, 40, bx, 0.6, rng), y = random_banded(F7, 40, by, 0.6, rng);
    const double cx = minimal_constant(x, 0), cy = minimal_constant(y, 0);
    CHECK(membership(mul(x, y), FiltrationLevel(0, std::max(cx + cy, 1e-6))));
  }
}

TEST_CASE("minimal_constant examples and argmin property") {
  CHECK(minimal_constant(WindowMatrix(F7, 6), 0.5) == 0);
  CHECK(minimal_constant(shift_window(8), 0) == doctest::Approx(1));
  CHECK(minimal_constant(WindowMatrix::unit(F7, 5, 1, 5), 0.5) == doctest::Approx(4));

  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    const WindowMatrix w = random_power_profile(F7, 80, 1 + 0.2 * (t % 5), 0.25 + 0.1 * (t % 6), 0.3, rng);
    for (double s : {0.0, 0.5, 0.9}) {
      const double c = minimal_constant(w, s);
      CHECK(verify_growth(w, c, s));
      CHECK_FALSE(verify_growth(w, c * (1 - 1e-6) - 1e-6, s));
    }
  }
}

TEST_CASE("power growth check") {
  const std::vector<double> ns{1e2, 1e3, 1e4, 1e5};
  const PowerGrowthReport r0 = power_growth_check(1, 0, 32, ns);
  CHECK(r0.d == doctest::Approx(1));
  CHECK(r0.pass);

  // b_2(100) for s=1/2, c=1.
  const std::vector<double> one{100};
  const PowerGrowthReport r = power_growth_check(1, 0.5, 2, one);
  bool found = false;
  for (const auto& smp : r.samples) {
    if (smp.m == 2) {
      found = true;
      CHECK(smp.bound == doctest::Approx(10 + std::sqrt(110.0)));
      CHECK(smp.bound <= r.d * 4 * 10 + kBoundSlack);
    }
  }
  CHECK(found);

  CHECK_THROWS_AS(power_growth_check(1, 1, 8, ns), Error);
  CHECK_THROWS_AS(power_growth_check(1, -0.1, 8, ns), Error);
  const PowerGrowthReport ex = power_growth_check(1, 1, 8, ns, true);
  CHECK(ex.exponential_regime);
}

TEST_CASE("power growth constant is stable when n doubles") {
  const std::vector<double> a{1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<double> b;
  for (double n : a) b.push_back(2 * n);
  for (double s : {0.25, 0.5, 0.75}) {
    const double da = power_growth_check(1, s, 64, a).d;
    const double db = power_growth_check(1, s, 64, b).d;
    CHECK(std::abs(da - db) <= 0.05 * da);
  }
}

TEST_CASE("fit_exponent examples") {
  std::vector<double> g;
  for (int k = 1; k <= 400; ++k) g.push_back(3 * std::sqrt(double(k)));
  const ExponentFit f = fit_exponent(g);
  CHECK(f.c == doctest::Approx(3));
  CHECK(f.s == doctest::Approx(0.5));
  CHECK(f.residual == doctest::Approx(0).epsilon(1e-9));

  const std::vector<double> ones(100, 1.0);
  CHECK(fit_exponent(ones).s == doctest::Approx(0).epsilon(1e-12));

  const std::vector<double> zeros(100, 0.0);
  try {
    fit_exponent(zeros);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroProfile);
  }
  const std::vector<double> few(10, 1.0);
  CHECK_THROWS_AS(fit_exponent(few), Error);
}

TEST_CASE("fit_line") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.intercept == doctest::Approx(1));
  CHECK(f.r2 == doctest::Approx(1));
  const std::vector<double> one{1};
  CHECK_THROWS_AS(fit_line(one, one), Error);
}
