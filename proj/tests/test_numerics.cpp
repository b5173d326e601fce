#include <doctest.h>

#include <cmath>
#include <random>

#include "harmsum/errors.hpp"
#include "harmsum/numerics.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace harmsum;
using testutil::ulps;

TEST_SUITE("numerics") {

TEST_CASE("harmonic numbers are exact fractions") {
  CHECK(harmonic(1) == BigRational(1));
  CHECK(harmonic(2) == BigRational(3, 2));
  CHECK(harmonic(12).to_string() == "86021/27720");
  CHECK(harmonic(10) == BigRational(7381, 2520));
  CHECK_THROWS_AS(harmonic(0), DomainError);
  CHECK_THROWS_AS(harmonic(-3), DomainError);
}

TEST_CASE("consecutive harmonic numbers differ by 1/(n+1)") {
  BigRational prev = harmonic(1);
  for (std::int64_t n = 1; n <= 300; ++n) {
    const BigRational next = harmonic(n + 1);
    CHECK(next - prev == BigRational(1, n + 1));
    prev = next;
  }
  for (std::int64_t n : {1000, 4096, 99999}) {
    CHECK(harmonic(n + 1) - harmonic(n) == BigRational(1, n + 1));
  }
}

TEST_CASE("harmonic ranges match differences of harmonic numbers") {
  CHECK(harmonic_range(2, 6) == BigRational(19, 20));
  CHECK(harmonic_range(0, 12) == harmonic(12));
  CHECK(harmonic_range(7, 7).is_zero());
  CHECK(harmonic_range(5, 40) == harmonic(40) - harmonic(5));
}

TEST_CASE("harmonic_real rounds the exact value") {
  CHECK(harmonic_real(2) == 1.5L);
  CHECK(static_cast<double>(harmonic_real(10)) == 2.9289682539682538);
  std::mt19937_64 rng(7);
  std::vector<std::int64_t> ns{1, 2, 3, 10, 100, 1000, 12345, 100000};
  for (int i = 0; i < 40; ++i) ns.push_back(1 + static_cast<std::int64_t>(rng() % 100000));
  for (std::int64_t n : ns) {
    CAPTURE(n);
    CHECK(ulps(harmonic_real(n), harmonic(n).to_real()) <= 2);
  }
}

TEST_CASE("asymptotic harmonic path agrees with the exact path") {
  const Real exact = harmonic(100000).to_real();
  CHECK(std::fabs(harmonic_asymptotic(100000) - exact) < 1e-12L);
  CHECK(std::fabs(harmonic_real(100000, 1000) - exact) < 1e-12L);
  const Real reference = oracle::harmonic(10'000'000).ld();
  CHECK(std::fabs(harmonic_real(10'000'000) - reference) < 1e-12L);
}

TEST_CASE("BigRational round trip and rounding") {
  CHECK(BigRational::parse("-6/8").to_string() == "-3/4");
  CHECK(BigRational::parse("5").to_string() == "5");
  CHECK(BigRational(1, 3).to_real() == 1.0L / 3.0L);
  CHECK(BigRational(-2, 7).to_real() == -2.0L / 7.0L);
  CHECK(BigRational(1, 3) < BigRational(1, 2));
  CHECK((BigRational(1, 6) + BigRational(1, 3)) == BigRational(1, 2));
}

TEST_CASE("log_2sin special values") {
  CHECK(log_2sin(constants::pi / 2) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(std::fabs(log_2sin(constants::pi / 6)) < 1e-18L);
  const long double expected = oracle::log(2 * oracle::sin(oracle::pi() / 5)).ld();
  CHECK(expected == doctest::Approx(0.1617543).epsilon(1e-6));
  CHECK(ulps(log_2sin(constants::pi / 5), expected) <= 4);
  CHECK(log_2sin_pi({1, 6}) == 0);
  CHECK(log_2sin_pi({1, 2}) == constants::ln2);
  CHECK_THROWS_AS(log_2sin(0), DomainError);
  CHECK_THROWS_AS(log_2sin(constants::pi), DomainError);
  CHECK_THROWS_AS(log_2sin(-1), DomainError);
}

TEST_CASE("cot special values") {
  CHECK(std::fabs(cot(constants::pi / 2)) < 1e-18L);
  CHECK(ulps(cot(constants::pi / 4), 1.0L) <= 4);
  const long double expected = (1 + oracle::sqrt(2)).ld();
  CHECK(ulps(cot(constants::pi / 8), expected) <= 4);
  CHECK(cot_pi({1, 4}) == 1);
  CHECK(cot_pi({1, 2}) == 0);
  CHECK_THROWS_AS(cot(0), DomainError);
  CHECK_THROWS_AS(cot(4), DomainError);
}

TEST_CASE("trigonometric helpers against the MPFR oracle") {
  for (std::int64_t k = 2; k <= 40; ++k) {
    for (std::int64_t j = 1; j < k; ++j) {
      CAPTURE(j);
      CAPTURE(k);
      const oracle::Mp theta = oracle::pi() * oracle::Mp(j) / oracle::Mp(k);
      const long double ls = oracle::log(2 * oracle::sin(theta)).ld();
      if (std::fabs(ls) > 1e-3L) CHECK(ulps(log_2sin_pi({j, k}), ls) <= 4);
      const long double c = (oracle::cos(theta) / oracle::sin(theta)).ld();
      if (std::fabs(c) > 1e-3L) CHECK(ulps(cot_pi({j, k}), c) <= 4);
    }
  }
}

TEST_CASE("reflection symmetries") {
  // For theta in (pi/2, pi) the reflection pi - theta is exact in floating point.
  for (int i = 101; i < 200; ++i) {
    const Real theta = constants::pi * i / 200;
    CAPTURE(i);
    CHECK(ulps(-cot(constants::pi - theta), cot(theta)) <= 4);
    CHECK(ulps(log_2sin(constants::pi - theta), log_2sin(theta)) <= 4);
  }
}

TEST_CASE("PiFraction is kept in lowest terms") {
  const PiFraction a(6, 8);
  CHECK(a.num == 3);
  CHECK(a.den == 4);
  CHECK(PiFraction(1, 3) < PiFraction(1, 2));
  CHECK_THROWS_AS(PiFraction(1, 0), DomainError);
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1.0L);
  for (int i = 0; i < 10000; ++i) s.add(1e-20L);
  s.add(-1.0L);
  CHECK(s.value() == doctest::Approx(1e-16).epsilon(1e-9));
}

}  // TEST_SUITE
