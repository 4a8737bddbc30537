#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "bandgrowth/error.hpp"

namespace bandgrowth {

class Scalar;

/// The coefficient field: GF(p) for a prime p < 2^61, or the rationals.
class Field {
 public:
  enum class Kind { prime, rational };

  static Field prime(std::uint64_t p);
  static Field rationals() { return Field(Kind::rational, 0); }

  /// Accepts "gfp:7", "gf7", "q" or "Q".
  static Field parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  std::uint64_t characteristic() const noexcept { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  /// Decimal integer or "a/b" fraction; GF(p) reduces numerator and denominator.
  Scalar parse_scalar(std::string_view text) const;

  std::string to_string() const;

  bool operator==(const Field&) const = default;

 private:
  friend class Scalar;
  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);

class Scalar {
 public:
  struct Mod {
    std::uint64_t value;
    std::uint64_t p;
  };

  explicit Scalar(Mod m) : v_(m) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }

  bool is_zero() const;
  bool is_one() const;
  Field field() const;
  bool belongs_to(const Field& f) const noexcept;

  Scalar inverse() const;

  /// The residue for GF(p) scalars, nullptr for rationals.
  const Mod* mod() const noexcept { return std::get_if<Mod>(&v_); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Canonical text: residue in [0,p) for GF(p), reduced "a/b" or "a" for Q.
  std::string to_string() const;

 private:
  std::variant<Mod, mpq_class> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace bandgrowth
