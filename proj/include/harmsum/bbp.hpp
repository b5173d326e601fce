#pragma once

// Base-16 series for pi^2,
//   pi^2 = sum_{n>=0} 16^{-n} sum_{r=1}^{7} a_r / (8n + r)^2,
//   a = (16, -16, -8, -16, -4, -4, 2),
// its two component series, and hexadecimal digit extraction at an
// arbitrary position.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "harmsum/numerics.hpp"

namespace harmsum {

inline constexpr std::array<int, 7> kPi2Coefficients{16, -16, -8, -16, -4, -4, 2};

/// Largest digit position accepted by hex_digits.
inline constexpr std::int64_t kMaxHexPosition = 100'000'000;
/// Most digits hex_digits returns per call.
inline constexpr int kMaxHexCount = 16;

struct HexDigitRun {
  std::int64_t start_position = 0;  // 0 = first hex digit after the point of frac(pi^2)
  std::vector<int> digits;          // each in [0, 15]
  /// The remainder after the returned digits is within 16^-2 of a carry
  /// boundary; neighbouring windows should be cross-checked.
  bool near_carry = false;

  /// Upper-case hex string, e.g. "DE9E".
  std::string to_string() const;
};

/// sum_{n=0}^{N} 16^{-n} sum_{r=1}^{7} a_r / (8n + r)^2.
Real pi2_series_partial(std::int64_t N);

/// sum_{n=0}^{N} 16^{-n} sum_{r=1}^{4} 2^{2-r} / (8n + 2r)^2; limit pi^2/12 - log^2(2)/2.
Real eq1_partial(std::int64_t N);

/// sum_{n=0}^{N} 16^{-n} sum_{r=1}^{8} 2^{-r/2} cos(r pi/4) / (8n + r)^2;
/// limit 5 pi^2/96 - log^2(2)/8.
Real eq2_partial(std::int64_t N);

/// 2^{-r/2} cos(r pi/4) for r = 1..8 as exact rationals {num, den}.
std::array<std::pair<int, int>, 8> eq2_weights();

/// 16^e mod m, exact for 1 <= m < 2^63.
std::uint64_t pow16_mod(std::uint64_t e, std::uint64_t m);

/// a*b mod m for a, b < m < 2^63.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

/// Leading `count` hex digits of frac(16^start * pi^2).
/// Requires 0 <= start <= kMaxHexPosition and 1 <= count <= kMaxHexCount.
HexDigitRun hex_digits(std::int64_t start, int count);

}  // namespace harmsum
