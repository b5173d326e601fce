#pragma once

// Shared numeric vocabulary: the working floating type, exact rationals,
// harmonic numbers and the two trigonometric helpers the closed forms need.

#include <compare>
#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace harmsum {

/// Working floating type. On x86-64 this is the 80-bit extended format
/// (64-bit significand).
using Real = long double;
using Complex = std::complex<Real>;

namespace constants {
inline constexpr Real pi = 3.14159265358979323846264338327950288L;
inline constexpr Real pi_squared = 9.86960440108935861883449099987615114L;
inline constexpr Real ln2 = 0.693147180559945309417232121458176568L;
/// Euler-Mascheroni constant; used only by the asymptotic harmonic path.
inline constexpr Real euler_gamma = 0.577215664901532860606512090082402431L;
}  // namespace constants

/// Above this n, harmonic_real switches from exact summation to the
/// asymptotic expansion.
inline constexpr std::int64_t kHarmonicCrossover = 1'000'000;

/// Exact rational, always kept in lowest terms with a positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long num) : q_(num) {}  // NOLINT(google-explicit-constructor)
  BigRational(long num, long den);
  explicit BigRational(mpq_class q);

  static BigRational parse(const std::string& text);

  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }
  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Correctly rounded (nearest-even) conversion.
  Real to_real() const;

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  const mpq_class& raw() const { return q_; }

  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

/// Correctly rounded value of num/den (den != 0).
Real ratio_to_real(const mpz_class& num, const mpz_class& den);

/// An exact rational multiple of pi, num/den * pi, in lowest terms, den > 0.
struct PiFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  PiFraction() = default;
  PiFraction(std::int64_t n, std::int64_t d);

  Real radians() const;
  bool operator==(const PiFraction&) const = default;
  auto operator<=>(const PiFraction& o) const {
    // Compare num/den without overflow for the small values used here.
    return static_cast<__int128>(num) * o.den <=> static_cast<__int128>(o.num) * den;
  }
};

/// H_n, exactly. Throws DomainError for n < 1.
BigRational harmonic(std::int64_t n);

/// H_b - H_a = sum_{j=a+1}^{b} 1/j, exactly; requires 0 <= a <= b.
BigRational harmonic_range(std::int64_t a, std::int64_t b);

/// H_b - H_a rounded once from the exact value; requires 0 <= a <= b.
Real harmonic_range_real(std::int64_t a, std::int64_t b);

/// H_n as a Real. Exact-then-rounded up to `crossover`, asymptotic above.
Real harmonic_real(std::int64_t n, std::int64_t crossover = kHarmonicCrossover);

/// ln n + gamma + 1/(2n) - 1/(12n^2) + 1/(120n^4); absolute error below 1/(252 n^6).
Real harmonic_asymptotic(std::int64_t n);

/// log(2 sin theta) for theta in (0, pi).
Real log_2sin(Real theta);

/// cos(theta)/sin(theta) for theta in (0, pi).
Real cot(Real theta);

/// Exact-angle variants; the angle must lie strictly inside (0, pi).
Real sin_pi(PiFraction angle);
Real log_2sin_pi(PiFraction angle);
Real cot_pi(PiFraction angle);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(Real x);
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

}  // namespace harmsum
