#include "harmsum/bbp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

using u128 = unsigned __int128;

// Moduli below this bound take the floating-reciprocal multiply; the
// quotient estimate is then off by at most 2, so the signed remainder fits.
constexpr std::uint64_t kFastModulusBound = std::uint64_t{1} << 61;

struct Modulus {
  std::uint64_t m;
  long double inv;

  explicit Modulus(std::uint64_t modulus) : m(modulus), inv(1.0L / static_cast<long double>(modulus)) {}

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (m >= kFastModulusBound) return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
    // Signed conversions map onto single x87 load/store instructions.
    const long double prod = static_cast<long double>(static_cast<std::int64_t>(a)) *
                             static_cast<long double>(static_cast<std::int64_t>(b));
    const auto q = static_cast<std::uint64_t>(static_cast<std::int64_t>(prod * inv));
    auto r = static_cast<std::int64_t>(a * b - q * m);
    const auto sm = static_cast<std::int64_t>(m);
    while (r < 0) r += sm;
    while (r >= sm) r -= sm;
    return static_cast<std::uint64_t>(r);
  }

  // floor(rem * 2^64 / m) and the matching remainder, for rem < m < 2^61.
  std::pair<std::uint64_t, std::uint64_t> shifted_divide(std::uint64_t rem) const {
    const u128 num = static_cast<u128>(rem) << 64;
    if (m >= kFastModulusBound) return {static_cast<std::uint64_t>(num / m), static_cast<std::uint64_t>(num % m)};
    const long double est = static_cast<long double>(static_cast<std::int64_t>(rem)) * inv * 0x1p64L;
    auto q = static_cast<std::uint64_t>(est);  // est < 2^64
    auto r = static_cast<__int128>(num) - static_cast<__int128>(static_cast<u128>(q) * m);
    const auto wide_m = static_cast<__int128>(m);
    while (r < 0) {
      r += wide_m;
      --q;
    }
    while (r >= wide_m) {
      r -= wide_m;
      ++q;
    }
    return {q, static_cast<std::uint64_t>(r)};
  }
};

// Montgomery arithmetic modulo an odd M < 2^63 with R = 2^64.
class OddModulus {
 public:
  explicit OddModulus(std::uint64_t m) : m_(m) {
    std::uint64_t inv = m;  // correct to 3 bits for odd m
    for (int i = 0; i < 5; ++i) inv *= 2 - m * inv;
    neg_inv_ = ~inv + 1;
  }

  std::uint64_t reduce(u128 t) const {
    const std::uint64_t q = static_cast<std::uint64_t>(t) * neg_inv_;
    const u128 sum = t + static_cast<u128>(q) * m_;  // < 2 m R < 2^128
    auto r = static_cast<std::uint64_t>(sum >> 64);
    return r >= m_ ? r - m_ : r;
  }

  /// 2^e mod m by left-to-right squaring; doubling steps need no multiply.
  std::uint64_t pow2(std::uint64_t e) const {
    if (m_ == 1) return 0;
    std::uint64_t x = (0 - m_) % m_;  // R mod m, i.e. 1 in Montgomery form
    for (int bit = 63 - std::countl_zero(e | 1); bit >= 0; --bit) {
      x = reduce(static_cast<u128>(x) * x);
      if ((e >> bit) & 1) {
        x += x;
        if (x >= m_) x -= m_;
      }
    }
    return reduce(x);
  }

 private:
  std::uint64_t m_;
  std::uint64_t neg_inv_;
};

// Splits m = 2^s * odd.
std::pair<int, std::uint64_t> split_two_power(std::uint64_t m) {
  const int s = std::countr_zero(m);
  return {s, m >> s};
}

std::uint64_t pow16(std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  const auto [s, odd] = split_two_power(m);
  // 16^e = 2^{4e}; once 4e >= s, 16^e mod 2^s M = 2^s (2^{4e-s} mod M).
  if (e < 16 && 4 * e < static_cast<std::uint64_t>(s)) return (std::uint64_t{1} << (4 * e)) % m;
  return OddModulus(odd).pow2(4 * e - static_cast<std::uint64_t>(s)) << s;
}

// floor(rem * 2^128 / m) for rem < m.
u128 fixed_point_fraction(std::uint64_t rem, const Modulus& mod) {
  const auto [hi, carry] = mod.shifted_divide(rem);
  const auto lo = mod.shifted_divide(carry).first;
  return (static_cast<u128>(hi) << 64) | lo;
}

Real weighted_bracket(std::int64_t n, auto&& weight, int count, int stride) {
  Real s = 0;
  for (int r = 1; r <= count; ++r) {
    const Real denom = static_cast<Real>(8 * n + stride * r);
    s += weight(r) / (denom * denom);
  }
  return s;
}

template <typename Bracket>
Real base16_series(std::int64_t N, Bracket&& bracket) {
  if (N < 0) throw DomainError("series partial sums need N >= 0");
  Real s = 0;
  for (std::int64_t n = N; n >= 0; --n) {
    s += std::ldexp(bracket(n), static_cast<int>(-4 * std::min<std::int64_t>(n, 5000)));
  }
  return s;
}

}  // namespace

std::string HexDigitRun::to_string() const {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string s;
  s.reserve(digits.size());
  for (int d : digits) s.push_back(kHex[d]);
  return s;
}

Real pi2_series_partial(std::int64_t N) {
  return base16_series(N, [](std::int64_t n) {
    return weighted_bracket(
        n, [](int r) { return static_cast<Real>(kPi2Coefficients[r - 1]); }, 7, 1);
  });
}

Real eq1_partial(std::int64_t N) {
  return base16_series(N, [](std::int64_t n) {
    return weighted_bracket(
        n, [](int r) { return std::ldexp(Real{1}, 2 - r); }, 4, 2);
  });
}

std::array<std::pair<int, int>, 8> eq2_weights() {
  // 2^{-r/2} cos(r pi / 4), r = 1..8
  return {{{1, 2}, {0, 1}, {-1, 4}, {-1, 4}, {-1, 8}, {0, 1}, {1, 16}, {1, 16}}};
}

Real eq2_partial(std::int64_t N) {
  const auto w = eq2_weights();
  return base16_series(N, [&w](std::int64_t n) {
    return weighted_bracket(
        n, [&w](int r) { return static_cast<Real>(w[r - 1].first) / w[r - 1].second; }, 8, 1);
  });
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m == 0 || m >= (std::uint64_t{1} << 63)) throw DomainError("mul_mod: modulus must lie in [1, 2^63)");
  return Modulus(m).mul(a % m, b % m);
}

std::uint64_t pow16_mod(std::uint64_t e, std::uint64_t m) {
  if (m == 0 || m >= (std::uint64_t{1} << 63)) throw DomainError("pow16_mod: modulus must lie in [1, 2^63)");
  return pow16(e, m);
}

HexDigitRun hex_digits(std::int64_t start, int count) {
  if (count < 1 || count > kMaxHexCount) throw DomainError("hex_digits: count must lie in [1, 16]");
  if (start < 0 || start > kMaxHexPosition) throw DomainError("hex_digits: start must lie in [0, 10^8]");

  // frac(16^d pi^2) accumulated as a 128-bit binary fraction; wraparound is
  // reduction mod 1. Each stored term is truncated by < 2^-128.
  const auto d = static_cast<std::uint64_t>(start);
  u128 total = 0;
  for (int r = 1; r <= 7; ++r) {
    u128 s = 0;
    for (std::uint64_t n = 0; n <= d; ++n) {
      // 16^e mod 2^s M over 2^s M equals (2^{4e-s} mod M) / M whenever 4e >= s;
      // s <= 4 here, so only e = 0 needs the direct fraction 1/m.
      const std::uint64_t base = 8 * n + static_cast<std::uint64_t>(r);
      const std::uint64_t e = d - n;
      if (e == 0) {
        const Modulus mod(base * base);
        s += fixed_point_fraction(1 % mod.m, mod);
        continue;
      }
      const auto [twos, odd] = split_two_power(base * base);
      if (odd == 1) continue;
      const Modulus mod(odd);
      s += fixed_point_fraction(OddModulus(odd).pow2(4 * e - static_cast<std::uint64_t>(twos)), mod);
    }
    for (int j = 1; j < 32; ++j) {
      const std::uint64_t base = 8 * (d + static_cast<std::uint64_t>(j)) + static_cast<std::uint64_t>(r);
      const u128 term = (static_cast<u128>(1) << (128 - 4 * j)) / (static_cast<u128>(base) * base);
      if (term == 0) break;
      s += term;
    }
    total += s * static_cast<u128>(static_cast<__int128>(kPi2Coefficients[r - 1]));
  }

  HexDigitRun run;
  run.start_position = start;
  for (int i = 0; i < count; ++i) {
    run.digits.push_back(static_cast<int>((total >> (124 - 4 * i)) & 0xF));
  }
  const u128 rest = total << (4 * count);
  const auto top = static_cast<unsigned>(rest >> 120);
  run.near_carry = top == 0x00 || top == 0xFF;
  return run;
}

}  // namespace harmsum
