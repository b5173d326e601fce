// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "expected.hpp"
#include "harmsum/bbp.hpp"
#include "harmsum/cli.hpp"
#include "harmsum/closed_forms.hpp"
#include "harmsum/quadrature.hpp"
#include "harmsum/series.hpp"
#include "oracle.hpp"

using namespace harmsum;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Worst observed |residual| / tolerance, plus any hard failures.
class Criterion {
 public:
  void check(long double residual, long double tolerance) {
    const long double r = std::fabs(residual);
    if (!(r <= tolerance)) ok_ = false;
    worst_ = std::max(worst_, static_cast<double>(r / tolerance));
  }
  void require(bool condition) { ok_ = ok_ && condition; }
  void within_time(double elapsed, double limit) {
    require(elapsed < limit);
    slowest_ = std::max(slowest_, elapsed / limit);
  }
  bool ok() const { return ok_; }
  double worst() const { return worst_; }
  double slowest() const { return slowest_; }

 private:
  bool ok_ = true;
  double worst_ = 0;
  double slowest_ = 0;
};

int failures = 0;

void report(int id, const char* title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    std::printf("  exception: %s\n", e.what());
    c.require(false);
  }
  const double elapsed = seconds_since(start);
  if (!c.ok()) ++failures;
  std::printf("%s %2d  %-46s worst residual/tol %.2e  time/limit %.2f  (%.3f s)\n", c.ok() ? "PASS" : "FAIL", id,
              title, c.worst(), c.slowest(), elapsed);
  std::fflush(stdout);
}

template <typename F>
double timed(F&& f) {
  const auto start = Clock::now();
  f();
  return seconds_since(start);
}

}  // namespace

int main() {
  report(1, "S_k closed forms, k = 2..4", [](Criterion& c) {
    for (std::int64_t k = 2; k <= 4; ++k) {
      ClosedFormValue v;
      c.within_time(timed([&] { v = s_closed(k); }), 1e-3);
      c.check(v.value() - expected::s_value(k), 1e-13L);
    }
  });

  report(2, "T_k closed forms, k = 2..6", [](Criterion& c) {
    for (std::int64_t k = 2; k <= 6; ++k) c.check(t_closed(k).value() - expected::t_value(k), 1e-12L);
  });

  report(3, "U_k closed forms, k = 1..6", [](Criterion& c) {
    for (std::int64_t k = 1; k <= 6; ++k) c.check(u_closed(k).value() - expected::u_value(k), 1e-12L);
  });

  report(4, "closed / accelerated / quadrature, k <= 8", [](Criterion& c) {
    const double elapsed = timed([&] {
      for (std::int64_t k = 1; k <= 8; ++k) {
        const Real s = s_closed(k).value();
        const Real t = t_closed(k).value();
        const Real u = u_closed(k).value();
        for (const auto& [family, closed] : {std::pair{SeriesFamily::s(k), s}, std::pair{SeriesFamily::t(k), t},
                                             std::pair{SeriesFamily::u(k), u}}) {
          const SumResult r = sum_accelerated(family, 1e-10L);
          c.check(r.value - closed, std::max(1e-8L, r.error_estimate));
        }
        c.check(u_integral(k).value - u, 1e-9L);
        if (k >= 2) {
          c.check(s_integral(k, SIntegralForm::Eq3).value - s, 1e-9L);
          c.check(s_integral(k, SIntegralForm::Eq5).value - s, 1e-9L);
          c.check(t_integral(k).value - t, 1e-9L);
        }
      }
    });
    c.within_time(elapsed, 30);
  });

  report(5, "S_k tail bound, k = 2..4, m = 10, 100, 1000", [](Criterion& c) {
    for (std::int64_t k = 2; k <= 4; ++k) {
      const TailBound bound = tail_bound(k);
      for (std::int64_t m : {10, 100, 1000}) {
        const Real partial = sum_direct(SeriesFamily::s(k), m - 1).value;
        c.check(partial - s_closed(k).value(), bound.bound_at(m));
      }
    }
  });

  report(6, "derived series: value and exact term identity", [](Criterion& c) {
    const SumResult r = sum_accelerated(SeriesFamily::derived_quad(), 1e-9L);
    c.check(r.value - expected::derived_value(), 1e-9L);
    for (std::int64_t n = 1; n <= 200; ++n) {
      const ExactTerm combo =
          BigRational(2) * exact_term(SeriesFamily::s(2), n) - exact_term(SeriesFamily::s(4), n);
      c.require(combo == exact_term(SeriesFamily::derived_quad(), n));
    }
  });

  report(7, "functional equation on the 20-point grid", [](Criterion& c) {
    const double elapsed = timed([&] {
      for (Real r : {0.3L, 1.0L, 3.0L, 10.0L}) {
        for (Real phi : {constants::pi / 6, constants::pi / 2, 3 * constants::pi / 4, constants::pi,
                         5 * constants::pi / 4}) {
          c.check(check_functional_equation(std::polar(r, phi)), 1e-9L);
        }
      }
    });
    c.within_time(elapsed, 5);
  });

  report(8, "integral representations of harmonic gaps", [](Criterion& c) {
    for (std::int64_t k = 2; k <= 6; ++k) {
      for (std::int64_t n = 1; n <= 4; ++n) c.check(check_lemma25(k, n), 1e-10L);
    }
    for (std::int64_t n = 1; n <= 50; ++n) c.check(check_lemma26(n), 1e-12L);
  });

  report(9, "alpha-family integrals", [](Criterion& c) {
    const oracle::Mp pi2 = oracle::sq(oracle::pi());
    const long double a = (-5 * pi2 / 36 + oracle::sq(oracle::log(3)) / 4).ld();
    const long double b = (-5 * pi2 / 96 + oracle::sq(oracle::log(2)) / 8).ld();
    const long double e = (pi2 / 18).ld();
    c.check(integrate_01([](Real t) { return (1 + 2 * t) * std::log1p(-t) / (1 + t + t * t); }).value - a, 1e-9L);
    c.check(integrate_01([](Real t) { return t * std::log1p(-t) / (1 + t * t); }).value - b, 1e-9L);
    c.check(integrate_01([](Real t) { return (1 - 2 * t) * std::log1p(-t) / (1 - t + t * t); }).value - e, 1e-9L);
    for (Real alpha : {-1.0L, -0.5L, 0.0L, 0.5L, 0.9L}) {
      c.check(alpha_integral_quad(alpha).value - alpha_integral_closed(alpha), 1e-8L);
    }
  });

  report(10, "random root sets, 100 cases, seed 42", [](Criterion& c) {
    cli::SuiteReport r;
    c.within_time(timed([&] { r = cli::run_suite("cor24", {42, 100}); }), 20);
    c.require(r.checks == 100);
    c.check(r.worst_ratio, 1);
  });

  report(11, "pi^2 series and hex digit extraction", [](Criterion& c) {
    c.check(pi2_series_partial(12) - oracle::sq(oracle::pi()).ld(), 1e-14L);
    c.require(hex_digits(0, 8).to_string() == oracle::pi2_hex(0, 8));
    c.require(hex_digits(1000, 4).to_string() == oracle::pi2_hex(1000, 4));
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
      const auto pos = static_cast<std::int64_t>(rng() % 100'000);
      c.require(hex_digits(pos, 2).digits[1] == hex_digits(pos + 1, 1).digits[0]);
    }
    HexDigitRun far;
    c.within_time(timed([&] { far = hex_digits(1'000'000, 1); }), 2);
    c.require(far.to_string() == oracle::pi2_hex(1'000'000, 1));
  });

  report(12, "component series limits and reconstruction", [](Criterion& c) {
    const oracle::Mp p2 = oracle::sq(oracle::pi());
    const oracle::Mp l22 = oracle::sq(oracle::log(2));
    c.check(eq1_partial(12) - (p2 / 12 - l22 / 2).ld(), 1e-12L);
    c.check(eq2_partial(12) - (5 * p2 / 96 - l22 / 8).ld(), 1e-12L);
    c.check(32 * eq2_partial(12) - 8 * eq1_partial(12) - p2.ld(), 1e-12L);
  });

  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
