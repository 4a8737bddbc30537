#include "bandgrowth/samples.hpp"

#include <cmath>

namespace bandgrowth {

Scalar random_nonzero(const Field& field, Rng& rng) {
  if (field.is_prime()) {
    std::uniform_int_distribution<std::uint64_t> d(1, field.characteristic() - 1);
    return field.from_int(static_cast<long long>(d(rng)));
  }
  std::uniform_int_distribution<int> num(1, 9), den(1, 4), sign(0, 1);
  const int a = num(rng) * (sign(rng) ? -1 : 1);
  const int b = den(rng);
  return field.from_int(a) / field.from_int(b);
}

WindowMatrix random_banded(const Field& field, std::size_t n, std::size_t bandwidth, double density, Rng& rng) {
  std::bernoulli_distribution keep(density);
  std::vector<Triplet> ts;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > bandwidth ? i - bandwidth : 1;
    const std::size_t hi = std::min(n, i + bandwidth);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (keep(rng)) ts.push_back({i, j, random_nonzero(field, rng)});
    }
  }
  return WindowMatrix::from_triplets(field, n, std::move(ts));
}

WindowMatrix random_power_profile(const Field& field, std::size_t n, double c, double s, double density, Rng& rng) {
  std::bernoulli_distribution keep(density);
  std::vector<Triplet> ts;
  auto width = [&](std::size_t k) {
    return static_cast<std::size_t>(std::floor(c * std::pow(static_cast<double>(k), s) + kBoundSlack));
  };
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t w = width(k);
    if (k + w <= n && w > 0) {
      ts.push_back({k, k + w, random_nonzero(field, rng)});
    }
    for (std::size_t d = 0; d < w && k + d <= n; ++d) {
      if (keep(rng)) ts.push_back({k, k + d, random_nonzero(field, rng)});
      if (d > 0 && keep(rng)) ts.push_back({k + d, k, random_nonzero(field, rng)});
    }
  }
  return WindowMatrix::from_triplets(field, n, std::move(ts));
}

}  // namespace bandgrowth

namespace bandgrowth {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Scalar hashed_nonzero(const Field& field, std::uint64_t h) {
  if (field.is_prime()) return field.from_int(static_cast<long long>(1 + h % (field.characteristic() - 1)));
  const long long a = static_cast<long long>(1 + h % 9) * ((h >> 8) & 1 ? -1 : 1);
  const long long b = static_cast<long long>(1 + (h >> 16) % 4);
  return field.from_int(a) / field.from_int(b);
}

}  // namespace

LazyMatrix random_power_lazy(const Field& field, double c, double s, double density, std::uint64_t seed,
                             std::string name) {
  auto width = [c, s](std::size_t k) {
    return static_cast<std::size_t>(std::floor(c * std::pow(static_cast<double>(k), s) + kBoundSlack));
  };
  auto rule = [=](std::size_t i, std::size_t j) -> Scalar {
    const std::size_t k = std::min(i, j);
    const std::size_t d = std::max(i, j) - k;
    const std::size_t w = width(k);
    if (d > w) return field.zero();
    const std::uint64_t h = splitmix(splitmix(seed ^ (static_cast<std::uint64_t>(i) << 32)) ^ j);
    const bool forced = i == k && d == w && w > 0;
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    if (!forced && !(u < density)) return field.zero();
    return hashed_nonzero(field, splitmix(h));
  };
  auto reach = [width](std::size_t i) { return i + width(i); };
  return LazyMatrix(std::move(name), field, GrowthCurve::power(c, s), rule, Support{reach, reach});
}

}  // namespace bandgrowth
