#include "harmsum/series.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "harmsum/errors.hpp"

namespace harmsum {

SeriesFamily::SeriesFamily(Kind kind, std::int64_t k) : kind_(kind), k_(k) {
  if (kind != Kind::DerivedQuad && k < 1) throw DomainError("SeriesFamily: k must be >= 1");
}

std::string SeriesFamily::name() const {
  switch (kind_) {
    case Kind::S:
      return "S(" + std::to_string(k_) + ")";
    case Kind::T:
      return "T(" + std::to_string(k_) + ")";
    case Kind::U:
      return "U(" + std::to_string(k_) + ")";
    case Kind::DerivedQuad:
      return "DerivedQuad";
  }
  return "?";
}

namespace {

constexpr Real kEps = std::numeric_limits<Real>::epsilon();

Real alternating_sign(std::int64_t n) { return (n % 2 == 1) ? Real{1} : Real{-1}; }

void require_positive_n(std::int64_t n) {
  if (n < 1) throw DomainError("term index n must be >= 1");
}

// sum_{j=a+1}^{b} 1/j in increasing j, compensated.
Real float_reciprocal_sum(std::int64_t a, std::int64_t b) {
  CompensatedSum s;
  for (std::int64_t j = a + 1; j <= b; ++j) s.add(Real{1} / static_cast<Real>(j));
  return s.value();
}

// Each family's harmonic content is sum_i c_i H_{m_i n}.
struct HarmonicCombo {
  struct Part {
    std::int64_t multiplier;
    int coefficient;
  };
  std::vector<Part> parts;
};

HarmonicCombo combo_for(const SeriesFamily& f) {
  switch (f.kind()) {
    case SeriesFamily::Kind::S:
    case SeriesFamily::Kind::T:
      return {{{f.k(), 1}, {1, -1}}};
    case SeriesFamily::Kind::U:
      return {{{f.k(), 1}}};
    case SeriesFamily::Kind::DerivedQuad:
      return {{{4, 1}, {1, 1}, {2, -2}}};
  }
  return {};
}

// Running value of the family's harmonic combination, advanced one n at a time.
class RunningCombo {
 public:
  explicit RunningCombo(const SeriesFamily& f) : combo_(combo_for(f)) {}

  // Moves from n to n+1 and returns the combination at n+1.
  Real advance() {
    for (const auto& p : combo_.parts) {
      const std::int64_t lo = p.multiplier * n_;
      const std::int64_t hi = p.multiplier * (n_ + 1);
      for (std::int64_t j = lo + 1; j <= hi; ++j) {
        acc_.add(static_cast<Real>(p.coefficient) / static_cast<Real>(j));
      }
    }
    ++n_;
    return acc_.value();
  }
  std::int64_t n() const { return n_; }

 private:
  HarmonicCombo combo_;
  CompensatedSum acc_;
  std::int64_t n_ = 0;
};

Real term_from_combo(const SeriesFamily& f, std::int64_t n, Real combo) {
  const Real nn = static_cast<Real>(n);
  switch (f.kind()) {
    case SeriesFamily::Kind::S:
      return alternating_sign(n) * (std::log(static_cast<Real>(f.k())) - combo);
    case SeriesFamily::Kind::T:
      return (std::log(static_cast<Real>(f.k())) - combo) / nn;
    case SeriesFamily::Kind::U:
      return alternating_sign(n) * combo / nn;
    case SeriesFamily::Kind::DerivedQuad:
      return alternating_sign(n) * combo;
  }
  return 0;
}

// Total variation of the measure whose moments are the unsigned summands of
// an alternating family; bounds the Chebyshev acceleration error.
Real moment_mass(const SeriesFamily& f) {
  switch (f.kind()) {
    case SeriesFamily::Kind::S:
      return std::fabs(term(f, 1));
    case SeriesFamily::Kind::U:
      return std::fabs(term(f, 1));
    case SeriesFamily::Kind::DerivedQuad:
      return 2 * std::fabs(term(SeriesFamily::s(2), 1)) + std::fabs(term(SeriesFamily::s(4), 1));
    case SeriesFamily::Kind::T:
      break;
  }
  return 0;
}

SumResult accelerate_alternating(const SeriesFamily& f, Real target, std::int64_t budget) {
  const Real mass = moment_mass(f);
  if (mass == 0) return {0, 0, 1, SumMethod::Accelerated};

  // Error of the order-n scheme is at most mass / d_n, d_n = cosh(n log(3 + sqrt 8)).
  const Real rate = std::log(3 + std::sqrt(Real{8}));
  std::int64_t order = 1;
  while (mass / std::cosh(rate * static_cast<Real>(order)) > target / 2) {
    if (++order > budget) {
      throw ConvergenceError(f.name() + ": acceleration needs more than " +
                             std::to_string(budget) + " terms");
    }
  }
  const Real rounding = 8 * static_cast<Real>(order) * kEps * mass;
  if (rounding > target) {
    throw ConvergenceError(f.name() + ": target error is below the rounding floor");
  }

  const Real nn = static_cast<Real>(order);
  Real d = std::pow(3 + std::sqrt(Real{8}), nn);
  d = (d + 1 / d) / 2;
  Real b = -1;
  Real c = -d;
  Real s = 0;
  for (std::int64_t i = 0; i < order; ++i) {
    const Real a = alternating_sign(i + 1) * term(f, i + 1);
    c = b - c;
    s += c * a;
    const Real ii = static_cast<Real>(i);
    b = (ii + nn) * (ii - nn) * b / ((ii + Real{0.5}) * (ii + 1));
  }
  return {s / d, mass / d + rounding, order, SumMethod::Accelerated};
}

SumResult richardson_t(const SeriesFamily& f, Real target, std::int64_t budget) {
  if (f.k() == 1) return {0, 0, 1, SumMethod::Accelerated};

  constexpr std::int64_t kFirst = 8;
  RunningCombo running(f);
  CompensatedSum partial;
  std::vector<std::vector<Real>> table;
  for (std::int64_t checkpoint = kFirst; checkpoint <= budget; checkpoint *= 2) {
    while (running.n() < checkpoint) {
      const Real combo = running.advance();
      partial.add(term_from_combo(f, running.n(), combo));
    }
    std::vector<Real> row{partial.value()};
    const std::size_t i = table.size();
    for (std::size_t j = 1; j <= i; ++j) {
      const Real factor = std::ldexp(Real{1}, static_cast<int>(j)) - 1;
      row.push_back(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / factor);
    }
    table.push_back(std::move(row));
    if (i >= 2) {
      const Real est = std::fabs(table[i][i] - table[i - 1][i - 1]);
      const Real rounding = 64 * static_cast<Real>(checkpoint) * kEps;
      if (est <= target / 2 && rounding <= target) {
        return {table[i][i], est + rounding, checkpoint, SumMethod::Accelerated};
      }
    }
  }
  throw ConvergenceError(f.name() + ": Richardson extrapolation did not reach target within " +
                         std::to_string(budget) + " terms");
}

}  // namespace

Real harmonic_gap(std::int64_t n, std::int64_t k, std::int64_t exact_limit) {
  require_positive_n(n);
  if (k < 1) throw DomainError("harmonic_gap: k must be >= 1");
  if (k == 1) return 0;
  if (k * n <= exact_limit) return harmonic_range_real(n, k * n);
  return float_reciprocal_sum(n, k * n);
}

Real term(const SeriesFamily& f, std::int64_t n) {
  require_positive_n(n);
  const Real nn = static_cast<Real>(n);
  switch (f.kind()) {
    case SeriesFamily::Kind::S:
      return alternating_sign(n) * (std::log(static_cast<Real>(f.k())) - harmonic_gap(n, f.k()));
    case SeriesFamily::Kind::T:
      return (std::log(static_cast<Real>(f.k())) - harmonic_gap(n, f.k())) / nn;
    case SeriesFamily::Kind::U:
      return alternating_sign(n) * harmonic_real(f.k() * n) / nn;
    case SeriesFamily::Kind::DerivedQuad: {
      Real combo = 0;
      if (4 * n <= kExactHarmonicLimit) {
        combo = (harmonic_range(2 * n, 4 * n) - harmonic_range(n, 2 * n)).to_real();
      } else {
        combo = harmonic_gap(2 * n, 2) - harmonic_gap(n, 2);
      }
      return alternating_sign(n) * combo;
    }
  }
  return 0;
}

ExactTerm& ExactTerm::operator+=(const ExactTerm& o) {
  rational += o.rational;
  for (const auto& [p, c] : o.log_primes) {
    auto& slot = log_primes[p];
    slot += c;
    if (slot.is_zero()) log_primes.erase(p);
  }
  return *this;
}

ExactTerm operator*(const BigRational& c, ExactTerm a) {
  a.rational *= c;
  for (auto it = a.log_primes.begin(); it != a.log_primes.end();) {
    it->second *= c;
    it = it->second.is_zero() ? a.log_primes.erase(it) : std::next(it);
  }
  return a;
}

ExactTerm exact_term(const SeriesFamily& f, std::int64_t n) {
  require_positive_n(n);
  const BigRational sign(n % 2 == 1 ? 1 : -1);
  auto log_k = [&](const BigRational& scale) {
    ExactTerm t;
    std::int64_t m = f.k();
    for (std::int64_t p = 2; p * p <= m; ++p) {
      long e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e > 0) t.log_primes[p] = scale * BigRational(e);
    }
    if (m > 1) t.log_primes[m] = scale;
    return t;
  };

  ExactTerm t;
  switch (f.kind()) {
    case SeriesFamily::Kind::S:
      t = log_k(sign);
      t.rational = -sign * harmonic_range(n, f.k() * n);
      break;
    case SeriesFamily::Kind::T: {
      const BigRational inv(1, static_cast<long>(n));
      t = log_k(inv);
      t.rational = -inv * harmonic_range(n, f.k() * n);
      break;
    }
    case SeriesFamily::Kind::U:
      t.rational = sign * harmonic(f.k() * n) / BigRational(static_cast<long>(n));
      break;
    case SeriesFamily::Kind::DerivedQuad:
      t.rational = sign * (harmonic(4 * n) + harmonic(n) - BigRational(2) * harmonic(2 * n));
      break;
  }
  return t;
}

SumResult sum_direct(const SeriesFamily& f, std::int64_t max_terms) {
  if (max_terms < 1) throw DomainError("sum_direct: max_terms must be >= 1");
  RunningCombo running(f);
  CompensatedSum partial;
  Real last = 0;
  while (running.n() < max_terms) {
    const Real combo = running.advance();
    last = term_from_combo(f, running.n(), combo);
    partial.add(last);
  }
  Real error = 0;
  if (f.alternating()) {
    const Real combo = running.advance();
    error = std::fabs(term_from_combo(f, running.n(), combo));
  } else {
    const Real m = static_cast<Real>(max_terms);
    error = std::fabs(m * m * last) / m;
  }
  return {partial.value(), error, max_terms, SumMethod::Direct};
}

SumResult sum_accelerated(const SeriesFamily& f, Real target_error, std::int64_t term_budget) {
  if (!(target_error > 0)) throw DomainError("sum_accelerated: target_error must be > 0");
  if (term_budget < 1) throw DomainError("sum_accelerated: term budget must be >= 1");
  if (f.alternating()) return accelerate_alternating(f, target_error, term_budget);
  return richardson_t(f, target_error, term_budget);
}

Real q_poly(std::int64_t k, Real t) {
  Real v = 0;
  for (std::int64_t j = 0; j < k; ++j) v = v * t + 1;
  return v;
}

Real log_derivative_q(std::int64_t k, Real t) {
  // numerator: sum_{j=1}^{k-1} j t^{j-1}
  Real num = 0;
  for (std::int64_t j = k - 1; j >= 1; --j) num = num * t + static_cast<Real>(j);
  return num / q_poly(k, t);
}

Real TailBound::bound_at(std::int64_t m) const {
  if (m < 1) throw DomainError("TailBound::bound_at: m must be >= 1");
  return m_k_ / (static_cast<Real>(k_) * static_cast<Real>(m) + 1);
}

TailBound tail_bound(std::int64_t k) {
  if (k < 2) throw DomainError("tail_bound: k must be >= 2");
  auto f = [k](Real t) {
    return log_derivative_q(k, t) / (1 + std::pow(t, static_cast<Real>(k)));
  };

  constexpr int kGrid = 10'000;
  int best = 0;
  Real best_value = f(0);
  for (int i = 1; i <= kGrid; ++i) {
    const Real v = f(static_cast<Real>(i) / kGrid);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  // Golden-section refinement on the neighbouring grid cells.
  Real lo = static_cast<Real>(std::max(best - 1, 0)) / kGrid;
  Real hi = static_cast<Real>(std::min(best + 1, kGrid)) / kGrid;
  const Real inv_phi = (std::sqrt(Real{5}) - 1) / 2;
  Real x1 = hi - inv_phi * (hi - lo);
  Real x2 = lo + inv_phi * (hi - lo);
  Real f1 = f(x1);
  Real f2 = f(x2);
  while (hi - lo > 1e-12L) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const Real refined_t = (lo + hi) / 2;
  const Real refined = f(refined_t);
  const Real grid_t = static_cast<Real>(best) / kGrid;
  if (refined > best_value) return TailBound(k, refined, refined_t);
  return TailBound(k, best_value, grid_t);
}

}  // namespace harmsum
