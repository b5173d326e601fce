#pragma once

// Double-exponential (tanh-sinh) quadrature on (0, 1) and the integral
// representations it is used to check.

#include <cstdint>
#include <functional>

#include "harmsum/closed_forms.hpp"
#include "harmsum/numerics.hpp"

namespace harmsum {

struct QuadResult {
  Real value = 0;
  Real error_estimate = 0;
  std::int64_t evaluations = 0;
};

struct ComplexQuadResult {
  Complex value;
  Real error_estimate = 0;
  std::int64_t evaluations = 0;
};

struct QuadOptions {
  Real tolerance = 1e-12L;
  int max_level = 12;
  /// Permit integrands that blow up (to +-inf, never NaN) at the endpoints,
  /// e.g. log(1-t) at t = 1. Nodes that round onto such a point are dropped.
  bool allow_log_endpoints = true;
};

using Integrand = std::function<Real(Real)>;

/// int_0^1 f(t) dt. Error estimate is |I_L - I_{L-1}|; converged once it is
/// below tolerance / 2. Throws ConvergenceError past max_level, DomainError on
/// a NaN (or, without allow_log_endpoints, any non-finite) integrand value.
QuadResult integrate_01(const Integrand& f, const QuadOptions& opts = {});

/// F(z) = int_0^1 log(1-t) / (z - t) dt for z off the ray [0, +inf).
ComplexQuadResult eval_F(Complex z, const QuadOptions& opts = {});

/// |F(z) + F(1/z) - (pi^2/6 - Log(1-z) Log(1-1/z))|.
Real check_functional_equation(Complex z, const QuadOptions& opts = {});

/// |int_0^1 (Q_k'/Q_k) t^{nk} dt - (log k - (H_{kn} - H_n))|; k >= 2, n >= 1, nk <= 10^4.
Real check_lemma25(std::int64_t k, std::int64_t n, const QuadOptions& opts = {});

/// |int_0^1 (1 - x^n) / (n (1 - x)) dx - H_n / n|; n >= 1.
Real check_lemma26(std::int64_t n, const QuadOptions& opts = {});

enum class SIntegralForm {
  Eq3,  // int_0^1 (Q_k'/Q_k) t^k / (1 + t^k) dt
  Eq5,  // log(2k)/2 - (1/2) int_0^1 Q_k / (1 + t^k) dt
};

QuadResult s_integral(std::int64_t k, SIntegralForm form, const QuadOptions& opts = {});
/// U_k = -int_0^1 k y^{k-1} / (1 + y^k) log(1 - y) dy; k >= 1.
QuadResult u_integral(std::int64_t k, const QuadOptions& opts = {});
/// T_k = -int_0^1 (Q_k'/Q_k) log(1 - t^k) dt; k >= 2.
QuadResult t_integral(std::int64_t k, const QuadOptions& opts = {});

/// int_0^1 (alpha - t) log(1-t) / (1 - 2 alpha t + t^2) dt by quadrature.
QuadResult alpha_integral_quad(Real alpha, const QuadOptions& opts = {});

/// int_0^1 sum_j Re(1/(t - e^{i theta_j})) log(1-t) dt by quadrature.
QuadResult root_integral_quad(const RootSet& roots, const QuadOptions& opts = {});

}  // namespace harmsum
