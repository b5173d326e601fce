#pragma once

// Term generation, partial sums and convergence acceleration for
//   S(k):  sum (-1)^{n-1} (log k - (H_{kn} - H_n))
//   T(k):  sum (log k - (H_{kn} - H_n)) / n
//   U(k):  sum (-1)^{n-1} H_{kn} / n
//   DerivedQuad: sum (-1)^{n-1} (H_{4n} + H_n - 2 H_{2n})

#include <cstdint>
#include <map>
#include <string>

#include "harmsum/numerics.hpp"

namespace harmsum {

class SeriesFamily {
 public:
  enum class Kind { S, T, U, DerivedQuad };

  static SeriesFamily s(std::int64_t k) { return {Kind::S, k}; }
  static SeriesFamily t(std::int64_t k) { return {Kind::T, k}; }
  static SeriesFamily u(std::int64_t k) { return {Kind::U, k}; }
  static SeriesFamily derived_quad() { return {Kind::DerivedQuad, 0}; }

  Kind kind() const { return kind_; }
  std::int64_t k() const { return k_; }
  bool alternating() const { return kind_ != Kind::T; }
  std::string name() const;

 private:
  SeriesFamily(Kind kind, std::int64_t k);
  Kind kind_;
  std::int64_t k_;
};

enum class SumMethod { Direct, Accelerated };

struct SumResult {
  Real value = 0;
  Real error_estimate = 0;
  std::int64_t terms_used = 0;
  SumMethod method = SumMethod::Direct;
};

/// Harmonic differences H_{kn} - H_n are taken from exact rationals while
/// kn stays at or below this bound.
inline constexpr std::int64_t kExactHarmonicLimit = 1'000'000;
inline constexpr std::int64_t kDefaultTermBudget = 10'000;

/// H_{kn} - H_n as a Real: exact rational then rounded when kn <= exact_limit,
/// otherwise a compensated sum of 1/j over j = n+1..kn.
Real harmonic_gap(std::int64_t n, std::int64_t k, std::int64_t exact_limit = kExactHarmonicLimit);

/// n-th summand (n >= 1), sign included.
Real term(const SeriesFamily& family, std::int64_t n);

/// A summand written exactly as rational + sum_p c_p log(p) over primes p.
struct ExactTerm {
  BigRational rational;
  std::map<std::int64_t, BigRational> log_primes;

  ExactTerm& operator+=(const ExactTerm& o);
  friend ExactTerm operator+(ExactTerm a, const ExactTerm& b) { return a += b; }
  friend ExactTerm operator-(ExactTerm a, const ExactTerm& b) { return a += (BigRational(-1) * b); }
  friend ExactTerm operator*(const BigRational& c, ExactTerm a);
  bool operator==(const ExactTerm&) const = default;
};

ExactTerm exact_term(const SeriesFamily& family, std::int64_t n);

/// Plain partial sum of the first max_terms summands.
SumResult sum_direct(const SeriesFamily& family, std::int64_t max_terms);

/// Chebyshev-weighted acceleration for the alternating families, repeated
/// Richardson extrapolation over doubled partial sums for T.
SumResult sum_accelerated(const SeriesFamily& family, Real target_error,
                          std::int64_t term_budget = kDefaultTermBudget);

/// The truncation bound for S(k): |sum_{n<m} term - S_k| <= m_k / (k m + 1),
/// with m_k = sup_{[0,1]} Q_k'(t) / ((1 + t^k) Q_k(t)).
class TailBound {
 public:
  TailBound(std::int64_t k, Real m_k, Real argmax) : k_(k), m_k_(m_k), argmax_(argmax) {}
  Real m_k() const { return m_k_; }
  Real argmax() const { return argmax_; }
  Real bound_at(std::int64_t m) const;

 private:
  std::int64_t k_;
  Real m_k_;
  Real argmax_;
};

TailBound tail_bound(std::int64_t k);

/// Q_k'(t)/Q_k(t) with Q_k = 1 + t + ... + t^{k-1}, by Horner.
Real log_derivative_q(std::int64_t k, Real t);
/// Q_k(t) by Horner.
Real q_poly(std::int64_t k, Real t);

}  // namespace harmsum
