#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "exact.hpp"
#include "padyn/errors.hpp"
#include "padyn/padic.hpp"

using namespace padyn;
using padyn::testing::BigInt;

TEST_CASE("make canonicalizes into Z/p^K") {
  auto a = PadicInt::make(2, 4, 13);
  CHECK(a.digits() == std::vector<Digit>{1, 0, 1, 1});

  auto b = PadicInt::make(3, 3, 30);
  CHECK(b.value() == 3);
  CHECK(b.digits() == std::vector<Digit>{0, 1, 0});

  CHECK(PadicInt::make(2, 4, -1).value() == 15);
  CHECK(PadicInt::make(5, 2, -26).value() == 24);
}

TEST_CASE("make rejects bad parameters") {
  CHECK_THROWS_AS(PadicInt::make(4, 3, 1), InputError);
  CHECK_THROWS_AS(PadicInt::make(1, 3, 1), InputError);
  CHECK_THROWS_AS(PadicInt::make(2, 0, 1), InputError);
  CHECK_THROWS_AS(PadicInt::make(2, 80, 1), PrecisionError);
}

TEST_CASE("ring operations") {
  const auto seven = PadicInt::make(2, 4, 7);
  const auto nine = PadicInt::make(2, 4, 9);
  CHECK((seven + nine).value() == 0);
  CHECK((PadicInt::make(2, 4, 3) * PadicInt::make(2, 4, 5)).value() == 15);
  CHECK((-PadicInt::make(2, 4, 0)).value() == 0);
  CHECK((seven - nine).value() == 14);

  SUBCASE("precision is the minimum of the operands") {
    const auto wide = PadicInt::make(3, 6, 400);
    const auto narrow = PadicInt::make(3, 2, 5);
    const auto sum = wide + narrow;
    CHECK(sum.precision() == 2);
    CHECK(sum.value() == (400 + 5) % 9);
  }

  SUBCASE("mismatched primes") {
    CHECK_THROWS_AS(PadicInt::make(2, 3, 1) + PadicInt::make(3, 3, 1), InputError);
  }
}

TEST_CASE("valuation") {
  CHECK(PadicInt::make(2, 8, 12).valuation() == Valuation::exact(2));
  CHECK(PadicInt::make(2, 6, 0).valuation() == Valuation::at_least(6));
  CHECK(PadicInt::make(3, 4, 18).valuation() == Valuation::exact(2));
  CHECK(Valuation::at_least(3) > Valuation::exact(50));
  CHECK(Valuation::at_least(6).to_string() == ">=6");
}

TEST_CASE("floor_log uses exact integer steps") {
  CHECK(floor_log(1, 2) == 0);
  CHECK(floor_log(7, 2) == 2);
  CHECK(floor_log(8, 2) == 3);
  CHECK(floor_log(15, 4) == 1);
  CHECK(floor_log(16, 4) == 2);
  CHECK(floor_log(242, 3) == 4);
  CHECK(floor_log(243, 3) == 5);
  CHECK(floor_log(~std::uint64_t{0}, 2) == 63);
}

TEST_CASE("ring laws on random triples") {
  std::mt19937_64 rng(101);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int K = 1; K <= 16; ++K) {
      if (p == 5 && K > 16) continue;
      for (int trial = 0; trial < 40; ++trial) {
        const auto a = PadicInt::from_residue(p, K, rng());
        const auto b = PadicInt::from_residue(p, K, rng());
        const auto c = PadicInt::from_residue(p, K, rng());
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == PadicInt::from_residue(p, K, 0));
      }
    }
  }
}

TEST_CASE("ultrametric inequality") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const int K = 1 + static_cast<int>(rng() % 12);
      // Bias towards small values so high valuations show up.
      const Residue pk = checked_pow(p, K);
      const auto a = PadicInt::from_residue(p, K, (rng() % pk) * checked_pow(p, rng() % 3));
      const auto b = PadicInt::from_residue(p, K, (rng() % pk) * checked_pow(p, rng() % 3));
      CHECK((a + b).valuation() >= std::min(a.valuation(), b.valuation()));
    }
  }
}

TEST_CASE("binomial_eval examples") {
  CHECK(binomial_eval(PadicInt::make(2, 8, 5), 2, 5).value() == 10);
  for (std::int64_t x : {0, 1, 17, 255}) {
    CHECK(binomial_eval(PadicInt::make(2, 8, x), 0, 8).value() == 1);
  }
  // C(7, 2) = 21, and 21 mod 4 = 1; confirmed against the exact product.
  CHECK(padyn::testing::mod_residue(padyn::testing::exact_binomial(BigInt(7), 2), BigInt(4)) == 1);
  CHECK(binomial_eval(PadicInt::make(2, 3, 7), 2, 2).value() == 1);
}

TEST_CASE("binomial_eval refuses short inputs") {
  // C(x, 4) mod 2^3 needs 3 + 2 digits.
  CHECK_THROWS_AS(binomial_eval(PadicInt::make(2, 4, 9), 4, 3), PrecisionError);
  CHECK_NOTHROW(binomial_eval(PadicInt::make(2, 5, 9), 4, 3));
}

TEST_CASE("binomial_eval matches exact big-integer binomials") {
  std::mt19937_64 rng(33);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint64_t i = rng() % 40;
      const int K = 1 + static_cast<int>(rng() % 10);
      const int digits = K + (i == 0 ? 0 : floor_log(i, p));
      if (digits > 25) continue;
      const auto x = PadicInt::from_residue(p, digits, rng());
      const auto expected = padyn::testing::mod_residue(
          padyn::testing::exact_binomial(BigInt(x.value()), i), padyn::testing::big_pow(p, K));
      CHECK(binomial_eval(x, i, K).value() == expected);
    }
  }
}

TEST_CASE("binomial Lipschitz bound, exhaustive at p = 2") {
  // a == b mod 2^(K + floor(log2 i)) implies C(a, i) == C(b, i) mod 2^K,
  // checked on exact integers without using binomial_eval.
  for (std::uint64_t i = 1; i <= 16; ++i) {
    for (unsigned K = 1; K <= 6; ++K) {
      const unsigned L = K + static_cast<unsigned>(floor_log(i, 2));
      const BigInt mod_in = padyn::testing::big_pow(2, L);
      const BigInt mod_out = padyn::testing::big_pow(2, K);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << L); ++a) {
        const auto base = padyn::testing::mod_residue(padyn::testing::exact_binomial(BigInt(a), i), mod_out);
        for (int lift = 1; lift <= 2; ++lift) {
          const BigInt b = BigInt(a) + lift * mod_in;
          REQUIRE(padyn::testing::mod_residue(padyn::testing::exact_binomial(b, i), mod_out) == base);
        }
      }
    }
  }
}

TEST_CASE("truncate and zero_extend") {
  const auto x = PadicInt::make(3, 5, 200);
  CHECK(x.truncate(2).value() == 200 % 9);
  CHECK(x.zero_extend(8).value() == 200);
  CHECK(x.zero_extend(8).precision() == 8);
  CHECK_THROWS_AS(x.truncate(6), PrecisionError);
}
