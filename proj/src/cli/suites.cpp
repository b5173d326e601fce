#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "harmsum/cli.hpp"
#include "harmsum/closed_forms.hpp"
#include "harmsum/quadrature.hpp"
#include "harmsum/series.hpp"

namespace harmsum::cli {

namespace {

class Tally {
 public:
  Tally(std::string suite, double tolerance_scale) : scale_(tolerance_scale) {
    report_.suite = std::move(suite);
  }

  void check(Real residual, Real tolerance) {
    const double r = static_cast<double>(std::fabs(residual));
    report_.max_residual = std::max(report_.max_residual, r);
    report_.worst_ratio = std::max(report_.worst_ratio, r / (scale_ * static_cast<double>(tolerance)));
    if (std::isnan(r)) report_.worst_ratio = INFINITY;
    ++report_.checks;
  }

  SuiteReport report() const { return report_; }

 private:
  double scale_;
  SuiteReport report_;
};

SuiteReport functional_equation_suite(const SuiteOptions& opts) {
  Tally t("functional-eq", opts.tolerance_scale);
  for (Real r : {0.3L, 1.0L, 3.0L, 10.0L}) {
    for (Real phi : {constants::pi / 6, constants::pi / 2, 3 * constants::pi / 4, constants::pi,
                     5 * constants::pi / 4}) {
      t.check(check_functional_equation(std::polar(r, phi)), 1e-9L);
    }
  }
  return t.report();
}

SuiteReport lemma25_suite(const SuiteOptions& opts) {
  Tally t("lemma25", opts.tolerance_scale);
  for (std::int64_t k = 2; k <= 6; ++k) {
    for (std::int64_t n = 1; n <= 4; ++n) t.check(check_lemma25(k, n), 1e-10L);
  }
  return t.report();
}

SuiteReport lemma26_suite(const SuiteOptions& opts) {
  Tally t("lemma26", opts.tolerance_scale);
  for (std::int64_t n = 1; n <= 50; ++n) t.check(check_lemma26(n), 1e-12L);
  return t.report();
}

SuiteReport cor23_suite(const SuiteOptions& opts) {
  Tally t("cor23", opts.tolerance_scale);
  const Real pi2 = constants::pi_squared;
  const Real l2 = constants::ln2;
  const Real l3 = std::log(Real{3});
  // The three rescaled kernels: (1+2t)/(1+t+t^2), t/(1+t^2), (1-2t)/(1-t+t^2).
  const QuadResult a = integrate_01(
      [](Real x) { return (1 + 2 * x) * std::log1p(-x) / (1 + x + x * x); });
  const QuadResult b = integrate_01([](Real x) { return x * std::log1p(-x) / (1 + x * x); });
  const QuadResult c = integrate_01(
      [](Real x) { return (1 - 2 * x) * std::log1p(-x) / (1 - x + x * x); });
  t.check(a.value - (-5 * pi2 / 36 + l3 * l3 / 4), 1e-9L);
  t.check(b.value - (-5 * pi2 / 96 + l2 * l2 / 8), 1e-9L);
  t.check(c.value - pi2 / 18, 1e-9L);
  for (Real alpha : {-1.0L, -0.5L, 0.0L, 0.5L, 0.9L}) {
    t.check(alpha_integral_quad(alpha).value - alpha_integral_closed(alpha), 1e-8L);
  }
  return t.report();
}

Real unit_uniform(std::mt19937_64& rng) { return static_cast<Real>(rng() >> 11) * 0x1.0p-53L; }

SuiteReport cor24_suite(const SuiteOptions& opts) {
  Tally t("cor24", opts.tolerance_scale);
  std::mt19937_64 rng(opts.seed);
  constexpr Real kMinAngle = 0.2L;
  for (int c = 0; c < opts.cases; ++c) {
    const int size = 1 + static_cast<int>(rng() % 6);
    std::vector<Real> angles;
    if (size % 2 == 1) angles.push_back(constants::pi);
    for (int p = 0; p < size / 2; ++p) {
      const Real theta = kMinAngle + (constants::pi - kMinAngle) * unit_uniform(rng);
      angles.push_back(theta);
      angles.push_back(2 * constants::pi - theta);
    }
    const RootSet roots = RootSet::from_angles(angles);
    t.check(root_integral_quad(roots).value - root_integral_closed(roots), 1e-7L);
  }
  return t.report();
}

SuiteReport cross_suite(const SuiteOptions& opts) {
  Tally t("cross", opts.tolerance_scale);
  auto accel_check = [&t](const SeriesFamily& f, Real closed) {
    const SumResult s = sum_accelerated(f, 1e-10L);
    const Real allowed = std::max(1e-8L, s.error_estimate);
    t.check(s.value - closed, allowed);
  };
  for (std::int64_t k = 1; k <= 8; ++k) {
    const Real s = s_closed(k).value();
    const Real tv = t_closed(k).value();
    const Real u = u_closed(k).value();
    accel_check(SeriesFamily::s(k), s);
    accel_check(SeriesFamily::t(k), tv);
    accel_check(SeriesFamily::u(k), u);
    t.check(u_integral(k).value - u, 1e-9L);
    if (k >= 2) {
      t.check(s_integral(k, SIntegralForm::Eq3).value - s, 1e-9L);
      t.check(s_integral(k, SIntegralForm::Eq5).value - s, 1e-9L);
      t.check(t_integral(k).value - tv, 1e-9L);
    }
  }
  return t.report();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"functional-eq", "lemma25", "lemma26",
                                              "cor23",         "cor24",   "cross"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "functional-eq") return functional_equation_suite(opts);
  if (name == "lemma25") return lemma25_suite(opts);
  if (name == "lemma26") return lemma26_suite(opts);
  if (name == "cor23") return cor23_suite(opts);
  if (name == "cor24") return cor24_suite(opts);
  if (name == "cross") return cross_suite(opts);
  throw std::invalid_argument("unknown verification suite '" + name + "'");
}

}  // namespace harmsum::cli
