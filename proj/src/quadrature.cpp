#include "harmsum/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "harmsum/errors.hpp"
#include "harmsum/series.hpp"

namespace harmsum {

namespace {

// Beyond this the right-hand abscissae round to exactly 1 in extended precision.
constexpr Real kMaxAbscissa = 3.5L;

struct Node {
  Real t;       // abscissa
  Real weight;  // dt/dx
};

// Abscissa pair for +x and -x: t(x) = 1 / (1 + exp(-pi sinh x)).
std::pair<Node, Node> node_pair(Real x) {
  const Real u = constants::pi * std::sinh(x);
  const Real e = std::exp(-u);
  const Real t = 1 / (1 + e);
  const Real c = e / (1 + e);  // 1 - t without cancellation
  const Real w = constants::pi * std::cosh(x) * t * c;
  return {{t, w}, {c, w}};
}

class Accumulator {
 public:
  Accumulator(const Integrand& f, const QuadOptions& opts) : f_(f), opts_(opts) {}

  Real weighted(const Node& n) {
    if (n.t <= 0 || n.t >= 1 || n.weight == 0) return 0;
    const Real v = f_(n.t);
    ++evaluations_;
    if (std::isnan(v)) throw DomainError("integrate_01: integrand returned NaN");
    if (!std::isfinite(v)) {
      const Real gap = std::min(n.t, 1 - n.t);
      if (opts_.allow_log_endpoints && gap < 1e-15L) return 0;
      throw DomainError("integrate_01: integrand is not finite at t = " + std::to_string(static_cast<double>(n.t)));
    }
    return n.weight * v;
  }

  std::int64_t evaluations() const { return evaluations_; }

 private:
  const Integrand& f_;
  const QuadOptions& opts_;
  std::int64_t evaluations_ = 0;
};

void require_k(std::int64_t k, std::int64_t min, const char* who) {
  if (k < min) throw DomainError(std::string(who) + ": k must be >= " + std::to_string(min));
}

}  // namespace

QuadResult integrate_01(const Integrand& f, const QuadOptions& opts) {
  if (!(opts.tolerance > 0)) throw DomainError("integrate_01: tolerance must be > 0");
  Accumulator acc(f, opts);

  // Level 0: step 1, nodes at integer x.
  CompensatedSum level0;
  level0.add(acc.weighted(node_pair(0).first));
  for (int i = 1; i <= static_cast<int>(kMaxAbscissa); ++i) {
    const auto [right, left] = node_pair(static_cast<Real>(i));
    level0.add(acc.weighted(right));
    level0.add(acc.weighted(left));
  }
  Real estimate = level0.value();
  Real sum_all = estimate;  // sum of weighted values over every node so far
  Real error = 0;

  for (int level = 1; level <= opts.max_level; ++level) {
    const Real h = std::ldexp(Real{1}, -level);
    CompensatedSum fresh;
    for (Real x = h; x <= kMaxAbscissa; x += 2 * h) {
      const auto [right, left] = node_pair(x);
      fresh.add(acc.weighted(right));
      fresh.add(acc.weighted(left));
    }
    sum_all += fresh.value();
    const Real next = h * sum_all;
    error = std::fabs(next - estimate);
    estimate = next;
    if (level >= 3 && error <= opts.tolerance / 2) {
      return {estimate, error, acc.evaluations()};
    }
  }
  throw ConvergenceError("integrate_01: no convergence after " + std::to_string(opts.max_level) +
                         " levels (last difference " + std::to_string(static_cast<double>(error)) + ")");
}

ComplexQuadResult eval_F(Complex z, const QuadOptions& opts) {
  const Real x = z.real();
  const Real y = z.imag();
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("eval_F: z must be finite");
  if (y == 0 && x >= 0) throw DomainError("eval_F: z lies on the cut [0, +inf)");
  // log(1-t) / (z - t) = log(1-t) (conj(z) - t) / |z - t|^2
  const QuadResult re = integrate_01(
      [x, y](Real t) {
        const Real dx = x - t;
        return std::log1p(-t) * dx / (dx * dx + y * y);
      },
      opts);
  QuadResult im{0, 0, 0};
  if (y != 0) {
    im = integrate_01(
        [x, y](Real t) {
          const Real dx = x - t;
          return -std::log1p(-t) * y / (dx * dx + y * y);
        },
        opts);
  }
  return {Complex(re.value, im.value), std::hypot(re.error_estimate, im.error_estimate),
          re.evaluations + im.evaluations};
}

Real check_functional_equation(Complex z, const QuadOptions& opts) {
  if (z == Complex(0, 0)) throw DomainError("check_functional_equation: z must be nonzero");
  const Complex inv = Complex(1, 0) / z;
  const Complex lhs = eval_F(z, opts).value + eval_F(inv, opts).value;
  const Complex one(1, 0);
  const Complex rhs = Complex(constants::pi_squared / 6, 0) - std::log(one - z) * std::log(one - inv);
  return std::abs(lhs - rhs);
}

Real check_lemma25(std::int64_t k, std::int64_t n, const QuadOptions& opts) {
  require_k(k, 2, "check_lemma25");
  if (n < 1) throw DomainError("check_lemma25: n must be >= 1");
  if (n * k > 10'000) throw DomainError("check_lemma25: n*k must be <= 10^4");
  const Real power = static_cast<Real>(n * k);
  const QuadResult lhs = integrate_01(
      [k, power](Real t) { return log_derivative_q(k, t) * std::pow(t, power); }, opts);
  const Real rhs = std::log(static_cast<Real>(k)) - harmonic_range(n, k * n).to_real();
  return std::fabs(lhs.value - rhs);
}

Real check_lemma26(std::int64_t n, const QuadOptions& opts) {
  if (n < 1) throw DomainError("check_lemma26: n must be >= 1");
  const Real nn = static_cast<Real>(n);
  // (1 - x^n) / (n (1 - x)) = sum_{j=1}^{n} x^{j-1} / n
  const QuadResult lhs = integrate_01(
      [n, nn](Real x) {
        Real v = 0;
        for (std::int64_t j = 0; j < n; ++j) v = v * x + 1;
        return v / nn;
      },
      opts);
  const Real rhs = (harmonic(n) / BigRational(static_cast<long>(n))).to_real();
  return std::fabs(lhs.value - rhs);
}

QuadResult s_integral(std::int64_t k, SIntegralForm form, const QuadOptions& opts) {
  require_k(k, 2, "s_integral");
  const Real kk = static_cast<Real>(k);
  if (form == SIntegralForm::Eq3) {
    return integrate_01(
        [k, kk](Real t) {
          const Real tk = std::pow(t, kk);
          return log_derivative_q(k, t) * tk / (1 + tk);
        },
        opts);
  }
  QuadResult r = integrate_01(
      [k, kk](Real t) { return q_poly(k, t) / (1 + std::pow(t, kk)); }, opts);
  r.value = std::log(2 * kk) / 2 - r.value / 2;
  r.error_estimate /= 2;
  return r;
}

QuadResult u_integral(std::int64_t k, const QuadOptions& opts) {
  require_k(k, 1, "u_integral");
  const Real kk = static_cast<Real>(k);
  return integrate_01(
      [kk](Real y) {
        const Real ykm1 = std::pow(y, kk - 1);
        return -kk * ykm1 / (1 + ykm1 * y) * std::log1p(-y);
      },
      opts);
}

QuadResult t_integral(std::int64_t k, const QuadOptions& opts) {
  require_k(k, 2, "t_integral");
  // log(1 - t^k) = log(1 - t) + log Q_k(t)
  return integrate_01(
      [k](Real t) { return -log_derivative_q(k, t) * (std::log1p(-t) + std::log(q_poly(k, t))); },
      opts);
}

QuadResult alpha_integral_quad(Real alpha, const QuadOptions& opts) {
  if (!(alpha >= -1 && alpha < 1)) throw DomainError("alpha_integral_quad: alpha must lie in [-1, 1)");
  return integrate_01(
      [alpha](Real t) { return (alpha - t) * std::log1p(-t) / (1 - 2 * alpha * t + t * t); }, opts);
}

QuadResult root_integral_quad(const RootSet& roots, const QuadOptions& opts) {
  std::vector<Real> cosines;
  cosines.reserve(roots.size());
  for (Real theta : roots.angles()) cosines.push_back(std::cos(theta));
  return integrate_01(
      [&cosines](Real t) {
        // Re 1/(t - e^{i theta}) = (t - cos theta) / (t^2 - 2 t cos theta + 1)
        Real s = 0;
        for (Real c : cosines) s += (t - c) / (t * t - 2 * t * c + 1);
        return s * std::log1p(-t);
      },
      opts);
}

}  // namespace harmsum
