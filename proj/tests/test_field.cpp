#include "doctest.h"

#include "bandgrowth/field.hpp"
#include "bandgrowth/samples.hpp"

using namespace bandgrowth;

TEST_CASE("prime field construction") {
  CHECK(Field::prime(7).characteristic() == 7);
  CHECK_THROWS_AS(Field::prime(8), Error);
  CHECK_THROWS_AS(Field::prime(1), Error);
  CHECK_THROWS_AS(Field::prime(std::uint64_t{1} << 61), Error);
  // 2^61 - 1 is a Mersenne prime just below the limit.
  CHECK(Field::prime((std::uint64_t{1} << 61) - 1).is_prime());
  CHECK(Field::parse("gfp:11") == Field::prime(11));
  CHECK(Field::parse("gf5") == Field::prime(5));
  CHECK(Field::parse("q") == Field::rationals());
  CHECK_THROWS_AS(Field::parse("reals"), Error);
}

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 3000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    CHECK(is_prime_u64(n) == prime);
  }
  CHECK(is_prime_u64(1'000'000'007ULL));
  CHECK_FALSE(is_prime_u64(3'215'031'751ULL));  // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("scalar arithmetic in GF(7)") {
  const Field f = Field::prime(7);
  const Scalar a = f.from_int(3), b = f.from_int(5);
  CHECK((a + b) == f.from_int(1));
  CHECK((a - b) == f.from_int(5));
  CHECK((a * b) == f.from_int(1));
  CHECK((a / b) == f.from_int(2));  // 3 * 5^{-1} = 3 * 3 = 9 = 2
  CHECK(f.from_int(-1) == f.from_int(6));
  CHECK(f.parse_scalar("1/2") == f.from_int(4));
  CHECK_THROWS_AS(f.zero().inverse(), Error);
  CHECK_THROWS_AS(f.parse_scalar("1/7"), Error);
}

TEST_CASE("scalar arithmetic in Q") {
  const Field q = Field::rationals();
  const Scalar a = q.parse_scalar("2/3"), b = q.parse_scalar("-5/4");
  CHECK((a + b).to_string() == "-7/12");
  CHECK((a * b).to_string() == "-5/6");
  CHECK((a / b).to_string() == "-8/15");
  CHECK(q.parse_scalar("6/4").to_string() == "3/2");
  CHECK_THROWS_AS(q.parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(q.parse_scalar("x"), Error);
}

TEST_CASE("mixing fields is rejected") {
  const Scalar a = Field::prime(7).one(), b = Field::prime(11).one(), c = Field::rationals().one();
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a * c, Error);
}

TEST_CASE("field axioms on sampled triples") {
  for (const Field& f : {Field::prime(7), Field::prime(1'000'000'007ULL), Field::rationals()}) {
    Rng rng(42);
    for (int t = 0; t < 200; ++t) {
      const Scalar a = random_nonzero(f, rng), b = random_nonzero(f, rng), c = random_nonzero(f, rng);
      CHECK((a + b) == (b + a));
      CHECK((a * b) == (b * a));
      CHECK(((a + b) + c) == (a + (b + c)));
      CHECK(((a * b) * c) == (a * (b * c)));
      CHECK((a * (b + c)) == (a * b + a * c));
      CHECK((a * a.inverse()).is_one());
      CHECK((a - a).is_zero());
      CHECK(((a / b) * b) == a);
    }
  }
}
