#pragma once

// Closed-form right-hand sides for the S_k, T_k, U_k families and the two
// log(1-t) integral evaluations they are built from.
//
// A closed form is kept as a list of (exact rational coefficient, constant
// atom) pairs together with its evaluated Real. Atoms are never simplified
// symbolically beyond exact rational bookkeeping: log(m) is split over the
// prime factors of m, log^2(2 sin x) folds x onto (0, pi/2], and
// pi*cot(pi/4) collapses to pi.

#include <cstdint>
#include <string>
#include <vector>

#include "harmsum/numerics.hpp"

namespace harmsum {

struct ConstantAtom {
  enum class Kind {
    Pi2,        // pi^2
    Pi,         // pi
    LogInt,     // log(m), m prime once inside a ClosedFormValue
    LogSq,      // log(m)^2
    Log2SinSq,  // log(2 sin(angle))^2
    CotTerm,    // pi * cot(angle)
  };

  Kind kind = Kind::Pi2;
  std::int64_t arg = 0;  // m for LogInt / LogSq
  PiFraction angle;      // for Log2SinSq / CotTerm

  static ConstantAtom pi2() { return {Kind::Pi2, 0, {}}; }
  static ConstantAtom pi() { return {Kind::Pi, 0, {}}; }
  static ConstantAtom log_int(std::int64_t m);
  static ConstantAtom log_sq(std::int64_t m);
  static ConstantAtom log_2sin_sq(PiFraction angle);
  static ConstantAtom cot_term(PiFraction angle);

  Real value() const;
  /// Stable textual form: pi^2, pi, log(3), log(3)^2, log2sin(2,7)^2, pi*cot(1,8).
  /// Angle pairs (j,k) stand for j*pi/k.
  std::string to_string() const;

  bool operator==(const ConstantAtom&) const = default;
  std::strong_ordering operator<=>(const ConstantAtom& o) const;
};

struct ClosedFormTerm {
  BigRational coefficient;
  ConstantAtom atom;
  bool operator==(const ClosedFormTerm&) const = default;
};

class ClosedFormValue {
 public:
  ClosedFormValue() = default;

  const std::vector<ClosedFormTerm>& terms() const { return terms_; }
  Real value() const { return value_; }
  bool empty() const { return terms_.empty(); }

  /// Human-readable sum, e.g. "3/4*log(2) - 1/8*pi"; "0" when empty.
  std::string to_string() const;

  friend ClosedFormValue operator+(const ClosedFormValue& a, const ClosedFormValue& b);
  friend ClosedFormValue operator-(const ClosedFormValue& a, const ClosedFormValue& b);
  friend ClosedFormValue operator*(const BigRational& c, const ClosedFormValue& a);

 private:
  friend class ClosedFormBuilder;
  std::vector<ClosedFormTerm> terms_;
  Real value_ = 0;
};

/// Accumulates coefficient*atom contributions, merging equal atoms.
class ClosedFormBuilder {
 public:
  ClosedFormBuilder& add(const BigRational& coefficient, const ConstantAtom& atom);
  /// coefficient * log(m), distributed over the prime factorisation of m.
  ClosedFormBuilder& add_log(const BigRational& coefficient, std::int64_t m);
  ClosedFormBuilder& add(const ClosedFormValue& other, const BigRational& scale = 1);
  ClosedFormValue build() const;

 private:
  std::vector<ClosedFormTerm> pending_;
};

/// Multiset of unit-circle roots e^{i theta}, theta in (0, 2pi), closed under
/// conjugation (so the polynomial with these roots is real).
class RootSet {
 public:
  /// Throws DomainError if an angle is 0 (mod 2pi), outside (0, 2pi), or if
  /// the multiset is not conjugate-closed (tolerance kConjugateTolerance).
  static RootSet from_angles(std::vector<Real> angles);
  /// Roots of 1 + X + ... + X^{k-1}: theta_j = 2 pi j / k, j = 1..k-1.
  static RootSet cyclotomic_quotient(std::int64_t k);
  /// Roots of X^k + 1: theta_j = (2j+1) pi / k, j = 0..k-1.
  static RootSet negacyclic(std::int64_t k);

  static constexpr Real kConjugateTolerance = 1e-12L;

  const std::vector<Real>& angles() const { return angles_; }
  std::size_t size() const { return angles_.size(); }
  /// Multiset union; the product polynomial.
  RootSet merged(const RootSet& other) const;

 private:
  explicit RootSet(std::vector<Real> angles) : angles_(std::move(angles)) {}
  std::vector<Real> angles_;
};

/// S_k = sum (-1)^{n-1} (log k - (H_{kn} - H_n)); k >= 1.
ClosedFormValue s_closed(std::int64_t k);
/// T_k = sum (log k - (H_{kn} - H_n)) / n; k >= 1.
ClosedFormValue t_closed(std::int64_t k);
/// U_k = sum (-1)^{n-1} H_{kn} / n; k >= 1.
ClosedFormValue u_closed(std::int64_t k);
/// J_k = -int_0^1 Q_k'/Q_k log(1-t) dt; k >= 2. T_k = J_k - log^2(k)/2.
ClosedFormValue j_closed(std::int64_t k);

/// int_0^1 (alpha - t) log(1-t) / (1 - 2 alpha t + t^2) dt for alpha in [-1, 1).
Real alpha_integral_closed(Real alpha);

/// int_0^1 P'(t)/P(t) log(1-t) dt where P has the given roots.
Real root_integral_closed(const RootSet& roots);

}  // namespace harmsum
