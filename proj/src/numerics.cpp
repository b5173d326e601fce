#include "harmsum/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "harmsum/errors.hpp"

namespace harmsum {

BigRational::BigRational(long num, long den) : q_(num, den) {
  if (den == 0) throw DomainError("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational::BigRational(mpq_class q) : q_(std::move(q)) {
  if (q_.get_den() == 0) throw DomainError("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational BigRational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw DomainError("BigRational: cannot parse '" + text + "'");
  return BigRational(std::move(q));
}

std::string BigRational::to_string() const {
  if (q_.get_den() == 1) return numerator();
  return numerator() + "/" + denominator();
}

Real BigRational::to_real() const { return ratio_to_real(q_.get_num(), q_.get_den()); }

BigRational& BigRational::operator+=(const BigRational& o) {
  q_ += o.q_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  q_ -= o.q_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  q_ *= o.q_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

Real ratio_to_real(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("ratio_to_real: zero denominator");
  if (num == 0) return 0;
  const bool negative = (sgn(num) < 0) != (sgn(den) < 0);
  const mpz_class p = abs(num);
  const mpz_class q = abs(den);

  // Scale so the integer quotient carries at least 66 significant bits.
  const long shift = 66 - static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) +
                     static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
  mpz_class scaled = p;
  mpz_class divisor = q;
  if (shift > 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else if (shift < 0) {
    mpz_mul_2exp(divisor.get_mpz_t(), divisor.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  mpz_class quot;
  mpz_class rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), divisor.get_mpz_t());
  const bool sticky = rem != 0;

  const long bits = static_cast<long>(mpz_sizeinbase(quot.get_mpz_t(), 2));
  const long drop = bits - 64;
  mpz_class kept;
  mpz_tdiv_q_2exp(kept.get_mpz_t(), quot.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
  mpz_class tail;
  mpz_tdiv_r_2exp(tail.get_mpz_t(), quot.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
  mpz_class half = 1;
  half <<= static_cast<mp_bitcnt_t>(drop - 1);

  const int c = cmp(tail, half);
  const bool round_up = c > 0 || (c == 0 && (sticky || mpz_odd_p(kept.get_mpz_t())));
  if (round_up) kept += 1;

  // kept has at most 65 bits; split to stay within 64-bit limbs.
  long exponent = drop - shift;
  if (mpz_sizeinbase(kept.get_mpz_t(), 2) > 64) {
    kept >>= 1;
    exponent += 1;
  }
  const auto mantissa = static_cast<std::uint64_t>(mpz_getlimbn(kept.get_mpz_t(), 0));
  const Real value = std::ldexp(static_cast<Real>(mantissa), static_cast<int>(exponent));
  return negative ? -value : value;
}

PiFraction::PiFraction(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) throw DomainError("PiFraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Real PiFraction::radians() const {
  return static_cast<Real>(num) / static_cast<Real>(den) * constants::pi;
}

namespace {

void check_range_args(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < a) throw DomainError("harmonic_range: need 0 <= a <= b");
}

// sum_{j=a+1}^{b} 1/j = p/q, unreduced, by binary splitting.
void split_reciprocals(std::int64_t a, std::int64_t b, mpz_class& p, mpz_class& q) {
  if (b - a <= 8) {
    p = 0;
    q = 1;
    for (std::int64_t j = a + 1; j <= b; ++j) {
      // p/q + 1/j = (p*j + q) / (q*j)
      p *= static_cast<unsigned long>(j);
      p += q;
      q *= static_cast<unsigned long>(j);
    }
    return;
  }
  const std::int64_t mid = a + (b - a) / 2;
  mpz_class p2;
  mpz_class q2;
  split_reciprocals(a, mid, p, q);
  split_reciprocals(mid, b, p2, q2);
  p = p * q2 + p2 * q;
  q *= q2;
}

}  // namespace

BigRational harmonic(std::int64_t n) {
  if (n < 1) throw DomainError("harmonic: n must be >= 1");
  return harmonic_range(0, n);
}

BigRational harmonic_range(std::int64_t a, std::int64_t b) {
  check_range_args(a, b);
  if (a == b) return BigRational();
  mpz_class p;
  mpz_class q;
  split_reciprocals(a, b, p, q);
  return BigRational(mpq_class(p, q));
}

Real harmonic_range_real(std::int64_t a, std::int64_t b) {
  check_range_args(a, b);
  if (a == b) return 0;
  mpz_class p;
  mpz_class q;
  split_reciprocals(a, b, p, q);
  return ratio_to_real(p, q);
}

Real harmonic_real(std::int64_t n, std::int64_t crossover) {
  if (n < 1) throw DomainError("harmonic_real: n must be >= 1");
  if (n <= crossover) return harmonic_range_real(0, n);
  return harmonic_asymptotic(n);
}

Real harmonic_asymptotic(std::int64_t n) {
  if (n < 1) throw DomainError("harmonic_asymptotic: n must be >= 1");
  const Real x = static_cast<Real>(n);
  const Real inv2 = 1 / (x * x);
  return std::log(x) + constants::euler_gamma + 1 / (2 * x) -
         inv2 * (Real{1} / 12 - inv2 / 120);
}

namespace {

void check_open_angle(Real theta, const char* who) {
  if (!(theta > 0 && theta < constants::pi)) {
    throw DomainError(std::string(who) + ": angle must lie in (0, pi)");
  }
}

void check_open_angle(PiFraction a, const char* who) {
  if (!(a.num > 0 && a.num < a.den)) {
    throw DomainError(std::string(who) + ": angle must lie in (0, pi)");
  }
}

}  // namespace

// Both trigonometric helpers fold theta > pi/2 onto pi - theta, which is
// exact there (Sterbenz), so the reflection symmetries hold bit-for-bit.
Real log_2sin(Real theta) {
  check_open_angle(theta, "log_2sin");
  const Real folded = theta > constants::pi / 2 ? constants::pi - theta : theta;
  return std::log(2 * std::sin(folded));
}

Real cot(Real theta) {
  check_open_angle(theta, "cot");
  if (theta > constants::pi / 2) {
    const Real folded = constants::pi - theta;
    return -std::cos(folded) / std::sin(folded);
  }
  return std::cos(theta) / std::sin(theta);
}

namespace {

// sin and cos of (num/den) pi for 0 <= num/den <= 1/4, where both are well conditioned.
Real sin_quarter(std::int64_t num, std::int64_t den) { return std::sin(PiFraction(num, den).radians()); }
Real cos_quarter(std::int64_t num, std::int64_t den) { return std::cos(PiFraction(num, den).radians()); }

// Reflects an angle in (0, pi) onto (0, pi/2].
PiFraction fold_half(PiFraction a) { return 2 * a.num > a.den ? PiFraction(a.den - a.num, a.den) : a; }

}  // namespace

Real sin_pi(PiFraction a) {
  check_open_angle(a, "sin_pi");
  a = fold_half(a);
  if (2 * a.num == a.den) return 1;
  if (6 * a.num == a.den) return Real{1} / 2;
  if (4 * a.num <= a.den) return sin_quarter(a.num, a.den);
  return cos_quarter(a.den - 2 * a.num, 2 * a.den);
}

Real log_2sin_pi(PiFraction a) {
  check_open_angle(a, "log_2sin_pi");
  a = fold_half(a);
  if (2 * a.num == a.den) return constants::ln2;
  if (6 * a.num == a.den) return 0;
  const Real s = sin_pi(a);
  if (4 * s < 1) return std::log(2 * s);
  // Near the zero at pi/6: 2 sin x - 1 = 4 cos((x + pi/6)/2) sin((x - pi/6)/2).
  const Real c = std::cos(PiFraction(6 * a.num + a.den, 12 * a.den).radians());
  const Real d = std::sin(PiFraction(6 * a.num - a.den, 12 * a.den).radians());
  return std::log1p(4 * c * d);
}

Real cot_pi(PiFraction a) {
  check_open_angle(a, "cot_pi");
  if (2 * a.num > a.den) return -cot_pi(PiFraction(a.den - a.num, a.den));
  if (2 * a.num == a.den) return 0;
  if (4 * a.num == a.den) return 1;
  if (4 * a.num < a.den) return cos_quarter(a.num, a.den) / sin_quarter(a.num, a.den);
  // cot x = tan(pi/2 - x), with pi/2 - x kept exact.
  const std::int64_t num = a.den - 2 * a.num;
  const std::int64_t den = 2 * a.den;
  return sin_quarter(num, den) / cos_quarter(num, den);
}

void CompensatedSum::add(Real x) {
  const Real t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace harmsum
