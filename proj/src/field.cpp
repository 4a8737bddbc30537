#include "bandgrowth/field.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace bandgrowth {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::DeclaredCurveViolation: return "DeclaredCurveViolation";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroProfile: return "ZeroProfile";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorKind::NotColumnFinite: return "NotColumnFinite";
    case ErrorKind::WindowExhausted: return "WindowExhausted";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotAStretch: return "NotAStretch";
    case ErrorKind::PaddingRequired: return "PaddingRequired";
    case ErrorKind::RecipeNotFound: return "RecipeNotFound";
    case ErrorKind::SlotCollision: return "SlotCollision";
    case ErrorKind::NotAnIdempotentImage: return "NotAnIdempotentImage";
    case ErrorKind::InvariantBreach: return "InvariantBreach";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
  }
  return "Unknown";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_signed(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic witness set for all 64-bit integers.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 61)) throw Error(ErrorKind::OutOfRange, "GF(p) requires p < 2^61");
  if (!is_prime_u64(p)) throw Error(ErrorKind::OutOfRange, std::to_string(p) + " is not prime");
  return Field(Kind::prime, p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  std::string_view digits;
  if (text.starts_with("gfp:")) {
    digits = text.substr(4);
  } else if (text.starts_with("gf")) {
    digits = text.substr(2);
  } else {
    throw Error(ErrorKind::ParseError, "unknown field '" + std::string(text) + "'");
  }
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorKind::ParseError, "bad characteristic in '" + std::string(text) + "'");
  }
  return prime(p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (kind_ == Kind::rational) return Scalar(mpq_class(static_cast<long>(v)));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar(Scalar::Mod{static_cast<std::uint64_t>(r), p_});
}

Scalar Field::parse_scalar(std::string_view text) const {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::ParseError, "bad scalar '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
  q.canonicalize();
  if (kind_ == Kind::rational) return Scalar(q);
  std::uint64_t num = reduce_signed(q.get_num(), p_);
  std::uint64_t den = reduce_signed(q.get_den(), p_);
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "denominator vanishes mod p in '" + s + "'");
  return Scalar(Scalar::Mod{mulmod(num, powmod(den, p_ - 2, p_), p_), p_});
}

std::string Field::to_string() const {
  return kind_ == Kind::rational ? std::string("q") : "gfp:" + std::to_string(p_);
}

bool Scalar::is_zero() const {
  if (auto m = std::get_if<Mod>(&v_)) return m->value == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
  if (auto m = std::get_if<Mod>(&v_)) return m->value == 1;
  return std::get<mpq_class>(v_) == 1;
}

Field Scalar::field() const {
  if (auto m = std::get_if<Mod>(&v_)) return Field(Field::Kind::prime, m->p);
  return Field::rationals();
}

bool Scalar::belongs_to(const Field& f) const noexcept {
  if (auto m = std::get_if<Mod>(&v_)) return f.is_prime() && f.characteristic() == m->p;
  return !f.is_prime();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (auto m = std::get_if<Mod>(&v_)) return Scalar(Mod{powmod(m->value, m->p - 2, m->p), m->p});
  mpq_class inv = 1 / std::get<mpq_class>(v_);
  return Scalar(std::move(inv));
}

namespace {

[[noreturn]] void mismatch() { throw Error(ErrorKind::ConfigMismatch, "scalars from different fields"); }

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (auto a = std::get_if<Mod>(&v_)) {
    auto b = std::get_if<Mod>(&o.v_);
    if (!b || b->p != a->p) mismatch();
    std::uint64_t s = a->value + b->value;
    a->value = s >= a->p ? s - a->p : s;
    return *this;
  }
  auto b = std::get_if<mpq_class>(&o.v_);
  if (!b) mismatch();
  std::get<mpq_class>(v_) += *b;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (auto a = std::get_if<Mod>(&v_)) {
    auto b = std::get_if<Mod>(&o.v_);
    if (!b || b->p != a->p) mismatch();
    a->value = a->value >= b->value ? a->value - b->value : a->value + a->p - b->value;
    return *this;
  }
  auto b = std::get_if<mpq_class>(&o.v_);
  if (!b) mismatch();
  std::get<mpq_class>(v_) -= *b;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (auto a = std::get_if<Mod>(&v_)) {
    auto b = std::get_if<Mod>(&o.v_);
    if (!b || b->p != a->p) mismatch();
    a->value = mulmod(a->value, b->value, a->p);
    return *this;
  }
  auto b = std::get_if<mpq_class>(&o.v_);
  if (!b) mismatch();
  std::get<mpq_class>(v_) *= *b;
  return *this;
}

Scalar Scalar::operator-() const {
  if (auto a = std::get_if<Mod>(&v_)) return Scalar(Mod{a->value == 0 ? 0 : a->p - a->value, a->p});
  mpq_class n = -std::get<mpq_class>(v_);
  return Scalar(std::move(n));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (auto x = std::get_if<Scalar::Mod>(&a.v_)) {
    auto y = std::get_if<Scalar::Mod>(&b.v_);
    return y && x->p == y->p && x->value == y->value;
  }
  auto y = std::get_if<mpq_class>(&b.v_);
  return y && std::get<mpq_class>(a.v_) == *y;
}

std::string Scalar::to_string() const {
  if (auto m = std::get_if<Mod>(&v_)) return std::to_string(m->value);
  return std::get<mpq_class>(v_).get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace bandgrowth
