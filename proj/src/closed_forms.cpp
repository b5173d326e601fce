#include "harmsum/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "harmsum/errors.hpp"

namespace harmsum {

namespace {

void require_k(std::int64_t k, std::int64_t min, const char* who) {
  if (k < min) {
    throw DomainError(std::string(who) + ": k must be >= " + std::to_string(min));
  }
}

int kind_rank(ConstantAtom::Kind k) { return static_cast<int>(k); }

}  // namespace

ConstantAtom ConstantAtom::log_int(std::int64_t m) {
  if (m < 2) throw DomainError("log_int: argument must be >= 2");
  return {Kind::LogInt, m, {}};
}

ConstantAtom ConstantAtom::log_sq(std::int64_t m) {
  if (m < 2) throw DomainError("log_sq: argument must be >= 2");
  return {Kind::LogSq, m, {}};
}

ConstantAtom ConstantAtom::log_2sin_sq(PiFraction angle) {
  if (!(angle.num > 0 && angle.num < angle.den)) {
    throw DomainError("log_2sin_sq: angle must lie in (0, pi)");
  }
  // sin(pi - x) = sin(x)
  if (2 * angle.num > angle.den) angle = PiFraction(angle.den - angle.num, angle.den);
  return {Kind::Log2SinSq, 0, angle};
}

ConstantAtom ConstantAtom::cot_term(PiFraction angle) {
  if (!(angle.num > 0 && angle.num < angle.den)) {
    throw DomainError("cot_term: angle must lie in (0, pi)");
  }
  return {Kind::CotTerm, 0, angle};
}

Real ConstantAtom::value() const {
  switch (kind) {
    case Kind::Pi2:
      return constants::pi_squared;
    case Kind::Pi:
      return constants::pi;
    case Kind::LogInt:
      return std::log(static_cast<Real>(arg));
    case Kind::LogSq: {
      const Real l = std::log(static_cast<Real>(arg));
      return l * l;
    }
    case Kind::Log2SinSq: {
      const Real l = log_2sin_pi(angle);
      return l * l;
    }
    case Kind::CotTerm:
      return constants::pi * cot_pi(angle);
  }
  return 0;
}

std::string ConstantAtom::to_string() const {
  switch (kind) {
    case Kind::Pi2:
      return "pi^2";
    case Kind::Pi:
      return "pi";
    case Kind::LogInt:
      return "log(" + std::to_string(arg) + ")";
    case Kind::LogSq:
      return "log(" + std::to_string(arg) + ")^2";
    case Kind::Log2SinSq:
      return "log2sin(" + std::to_string(angle.num) + "," + std::to_string(angle.den) + ")^2";
    case Kind::CotTerm:
      return "pi*cot(" + std::to_string(angle.num) + "," + std::to_string(angle.den) + ")";
  }
  return "?";
}

std::strong_ordering ConstantAtom::operator<=>(const ConstantAtom& o) const {
  if (auto c = kind_rank(kind) <=> kind_rank(o.kind); c != 0) return c;
  if (auto c = arg <=> o.arg; c != 0) return c;
  if (auto c = angle <=> o.angle; c != 0) return c;
  // Equal value, distinct representation cannot occur: PiFraction is reduced.
  return std::strong_ordering::equal;
}

std::string ClosedFormValue::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [coef, atom] : terms_) {
    const bool negative = coef.sign() < 0;
    const BigRational mag = negative ? -coef : coef;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    if (mag == BigRational(1)) {
      out << atom.to_string();
    } else {
      out << mag.to_string() << "*" << atom.to_string();
    }
    first = false;
  }
  return out.str();
}

ClosedFormValue operator+(const ClosedFormValue& a, const ClosedFormValue& b) {
  return ClosedFormBuilder().add(a).add(b).build();
}

ClosedFormValue operator-(const ClosedFormValue& a, const ClosedFormValue& b) {
  return ClosedFormBuilder().add(a).add(b, BigRational(-1)).build();
}

ClosedFormValue operator*(const BigRational& c, const ClosedFormValue& a) {
  return ClosedFormBuilder().add(a, c).build();
}

ClosedFormBuilder& ClosedFormBuilder::add(const BigRational& coefficient,
                                          const ConstantAtom& atom) {
  if (coefficient.is_zero()) return *this;
  if (atom.kind == ConstantAtom::Kind::LogInt) return add_log(coefficient, atom.arg);
  if (atom.kind == ConstantAtom::Kind::CotTerm && 4 * atom.angle.num == atom.angle.den) {
    pending_.push_back({coefficient, ConstantAtom::pi()});  // cot(pi/4) = 1
    return *this;
  }
  if (atom.kind == ConstantAtom::Kind::CotTerm && 2 * atom.angle.num == atom.angle.den) {
    return *this;  // cot(pi/2) = 0
  }
  pending_.push_back({coefficient, atom});
  return *this;
}

ClosedFormBuilder& ClosedFormBuilder::add_log(const BigRational& coefficient, std::int64_t m) {
  if (m < 1) throw DomainError("add_log: argument must be >= 1");
  if (coefficient.is_zero()) return *this;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    long e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) pending_.push_back({coefficient * BigRational(e), ConstantAtom{ConstantAtom::Kind::LogInt, p, {}}});
  }
  if (m > 1) pending_.push_back({coefficient, ConstantAtom{ConstantAtom::Kind::LogInt, m, {}}});
  return *this;
}

ClosedFormBuilder& ClosedFormBuilder::add(const ClosedFormValue& other, const BigRational& scale) {
  for (const auto& t : other.terms()) add(t.coefficient * scale, t.atom);
  return *this;
}

ClosedFormValue ClosedFormBuilder::build() const {
  std::map<ConstantAtom, BigRational> merged;
  for (const auto& t : pending_) merged[t.atom] += t.coefficient;

  ClosedFormValue out;
  CompensatedSum sum;
  for (const auto& [atom, coef] : merged) {
    if (coef.is_zero()) continue;
    out.terms_.push_back({coef, atom});
    sum.add(coef.to_real() * atom.value());
  }
  out.value_ = sum.value();
  return out;
}

RootSet RootSet::from_angles(std::vector<Real> angles) {
  const Real two_pi = 2 * constants::pi;
  for (Real a : angles) {
    if (!std::isfinite(a) || a <= 0 || a >= two_pi) {
      throw DomainError("RootSet: angles must lie in (0, 2pi); a root at 1 is not allowed");
    }
  }
  std::vector<Real> sorted = angles;
  std::sort(sorted.begin(), sorted.end());
  // Pair the smallest remaining angle with its mirror 2pi - theta.
  std::vector<bool> used(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (std::fabs(sorted[i] - constants::pi) <= kConjugateTolerance) continue;
    const Real mirror = two_pi - sorted[i];
    bool found = false;
    for (std::size_t j = sorted.size(); j-- > 0;) {
      if (!used[j] && std::fabs(sorted[j] - mirror) <= kConjugateTolerance) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) throw DomainError("RootSet: angles are not closed under conjugation");
  }
  if (angles.empty()) throw DomainError("RootSet: at least one root is required");
  return RootSet(std::move(angles));
}

RootSet RootSet::cyclotomic_quotient(std::int64_t k) {
  require_k(k, 2, "cyclotomic_quotient");
  std::vector<Real> a;
  for (std::int64_t j = 1; j < k; ++j) a.push_back(2 * PiFraction(j, k).radians());
  return from_angles(std::move(a));
}

RootSet RootSet::negacyclic(std::int64_t k) {
  require_k(k, 1, "negacyclic");
  std::vector<Real> a;
  for (std::int64_t j = 0; j < k; ++j) a.push_back(PiFraction(2 * j + 1, k).radians());
  return from_angles(std::move(a));
}

RootSet RootSet::merged(const RootSet& other) const {
  std::vector<Real> a = angles_;
  a.insert(a.end(), other.angles_.begin(), other.angles_.end());
  return RootSet(std::move(a));
}

ClosedFormValue s_closed(std::int64_t k) {
  require_k(k, 1, "s_closed");
  ClosedFormBuilder b;
  b.add_log(BigRational(k - 1, 2 * k), 2);
  b.add_log(BigRational(1, 2), k);
  for (std::int64_t l = 1; l <= k / 2; ++l) {
    const BigRational coef = BigRational(-(k + 1 - 2 * l), 2 * k * k);
    b.add(coef, ConstantAtom::cot_term(PiFraction(2 * l - 1, 2 * k)));
  }
  return b.build();
}

ClosedFormValue j_closed(std::int64_t k) {
  require_k(k, 2, "j_closed");
  ClosedFormBuilder b;
  b.add(BigRational((k - 1) * (k + 2), 24 * k), ConstantAtom::pi2());
  for (std::int64_t j = 1; j < k; ++j) {
    b.add(BigRational(-1, 2), ConstantAtom::log_2sin_sq(PiFraction(j, k)));
  }
  return b.build();
}

ClosedFormValue t_closed(std::int64_t k) {
  require_k(k, 1, "t_closed");
  if (k == 1) return ClosedFormValue();
  ClosedFormBuilder b;
  b.add(j_closed(k));
  b.add(BigRational(-1, 2), ConstantAtom::log_sq(k));
  return b.build();
}

ClosedFormValue u_closed(std::int64_t k) {
  require_k(k, 1, "u_closed");
  ClosedFormBuilder b;
  b.add(BigRational(k * k + 1, 24 * k), ConstantAtom::pi2());
  for (std::int64_t j = 0; j < k; ++j) {
    b.add(BigRational(-1, 2), ConstantAtom::log_2sin_sq(PiFraction(2 * j + 1, 2 * k)));
  }
  return b.build();
}

Real alpha_integral_closed(Real alpha) {
  if (!(alpha >= -1 && alpha < 1)) throw DomainError("alpha_integral_closed: alpha must lie in [-1, 1)");
  const Real shifted = std::acos(alpha) - constants::pi;
  const Real l = std::log(2 * (1 - alpha));
  return constants::pi_squared / 12 - shifted * shifted / 8 - l * l / 8;
}

Real root_integral_closed(const RootSet& roots) {
  // |1 - e^{i theta}| = 2 sin(theta/2), Arg(1 - e^{i theta}) = (theta - pi)/2.
  CompensatedSum sum;
  sum.add(-static_cast<Real>(roots.size()) * constants::pi_squared / 12);
  for (Real theta : roots.angles()) {
    const Real l = log_2sin(theta / 2);
    const Real arg = (theta - constants::pi) / 2;
    sum.add(l * l / 2);
    sum.add(arg * arg / 2);
  }
  return sum.value();
}

}  // namespace harmsum
