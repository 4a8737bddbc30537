#include "bandgrowth/block_structure.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "bandgrowth/error.hpp"

namespace bandgrowth {

Ratio Ratio::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ParseError, "not a ratio: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Ratio Ratio::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15) throw Error(ErrorKind::ParseError, "too many decimals in '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t ip = dot == 0 ? 0 : parse_int(text.substr(0, dot), text);
    const std::int64_t fp = frac.empty() ? 0 : parse_int(frac, text);
    if (fp < 0) throw Error(ErrorKind::ParseError, "not a ratio: '" + std::string(text) + "'");
    return make(ip * den + (text.front() == '-' ? -fp : fp), den);
  }
  return make(parse_int(text, text), 1);
}

std::string Ratio::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::uint64_t floor_power(std::uint64_t k, Ratio t) {
  mpz_class base(static_cast<unsigned long>(k));
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(t.num));
  mpz_class root;
  mpz_root(root.get_mpz_t(), pw.get_mpz_t(), static_cast<unsigned long>(t.den));
  if (!root.fits_ulong_p()) return ~std::uint64_t{0};
  return root.get_ui();
}

std::uint64_t next_power_of_two(std::uint64_t v) { return v <= 1 ? 1 : std::bit_ceil(v); }

BlockStructure::BlockStructure(Ratio r, bool padded, std::size_t cover_positions, std::size_t min_blocks)
    : r_(r), padded_(padded) {
  if (!(r.num > 0 && r.num < r.den)) throw Error(ErrorKind::OutOfRange, "r must lie in (0,1), got " + r.to_string());
  if (cover_positions > 100'000'000) {
    throw Error(ErrorKind::ResourceLimit, "refusing to lay out more than 10^8 positions");
  }
  t_ = Ratio::make(r.num, r.den - r.num);
  std::size_t pos = 1;
  for (std::size_t k = 1; pos <= cover_positions || sizes_.size() < min_blocks; ++k) {
    std::uint64_t n = floor_power(k, t_);
    if (padded_) n = next_power_of_two(n);
    if (n > 100'000'000) throw Error(ErrorKind::ResourceLimit, "block size beyond 10^8");
    sizes_.push_back(n);
    starts_.push_back(pos);
    pos += n;
  }
}

std::size_t BlockStructure::block_of(std::size_t pos) const {
  require_position(pos);
  auto it = std::upper_bound(starts_.begin(), starts_.end(), pos);
  return static_cast<std::size_t>(it - starts_.begin());
}

void BlockStructure::require_block(std::size_t k) const {
  if (k < 1 || k > sizes_.size()) {
    throw Error(ErrorKind::WindowExhausted, "block " + std::to_string(k) + " lies beyond the laid-out " +
                                                std::to_string(sizes_.size()) + " blocks");
  }
}

void BlockStructure::require_position(std::size_t pos) const {
  if (pos < 1 || pos > covered()) {
    throw Error(ErrorKind::WindowExhausted, "position " + std::to_string(pos) + " lies beyond the laid-out " +
                                                std::to_string(covered()) + " positions");
  }
}

std::size_t BlockStructure::size_class(std::size_t k) const {
  if (!padded_) throw Error(ErrorKind::PaddingRequired, "size classes need a padded structure");
  return static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(size(k))));
}

std::uint64_t BlockStructure::last_with_size_at_most(std::uint64_t x) const {
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  // floor(k^t) <= x  <=>  k^num < (x+1)^den.
  mpz_class bound(static_cast<unsigned long>(x + 1));
  mpz_pow_ui(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(t_.den));
  auto fits = [&](std::uint64_t k) {
    mpz_class v(static_cast<unsigned long>(k));
    mpz_pow_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(t_.num));
    return v < bound;
  };
  std::uint64_t lo = 1, hi = 2;
  if (!fits(lo)) return 0;
  while (hi < cap && fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (hi >= cap && fits(cap)) return cap;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::uint64_t BlockStructure::class_first(std::size_t a) const {
  if (!padded_) throw Error(ErrorKind::PaddingRequired, "size classes need a padded structure");
  return a == 0 ? 1 : last_with_size_at_most(std::uint64_t{1} << (a - 1)) + 1;
}

std::uint64_t BlockStructure::class_count(std::size_t a) const {
  if (!padded_) throw Error(ErrorKind::PaddingRequired, "size classes need a padded structure");
  const std::uint64_t last = last_with_size_at_most(std::uint64_t{1} << a);
  return last + 1 - class_first(a);
}

}  // namespace bandgrowth
