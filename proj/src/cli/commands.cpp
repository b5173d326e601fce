#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "harmsum/bbp.hpp"
#include "harmsum/cli.hpp"
#include "harmsum/closed_forms.hpp"
#include "harmsum/errors.hpp"
#include "harmsum/quadrature.hpp"
#include "harmsum/series.hpp"

namespace harmsum::cli {

namespace {

constexpr const char* kAtomHelp =
    "Decomposition atoms: pi^2, pi, log(m), log(m)^2, log2sin(j,k)^2 = log(2 sin(j pi/k))^2,\n"
    "pi*cot(j,k) = pi cot(j pi/k). Coefficients are exact fractions.";

// Raised for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string format = "plain";
  double tol = 1e-12;
  std::int64_t terms = 0;  // 0 = per-method default
  std::uint64_t seed = 42;
  int cases = 100;
  double tolerance_scale = 1.0;
  int parallel = 0;
  std::string form = "eq5";
};

std::vector<std::pair<std::string, std::string>> decomposition_of(const ClosedFormValue& v) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& t : v.terms()) out.emplace_back(t.coefficient.to_string(), t.atom.to_string());
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::int64_t parse_k(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw UsageError("k must be an integer, got '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("k must be an integer, got '" + s + "'");
  }
}

SIntegralForm parse_form(const std::string& form) {
  return form == "eq3" ? SIntegralForm::Eq3 : SIntegralForm::Eq5;
}

OutputRecord cmd_sum(const std::vector<std::string>& positional, const Settings& st) {
  if (positional.empty()) throw UsageError("sum: expected <S|T|U> <k> <method> or derived <method>");
  const std::string family = lower(positional[0]);
  std::int64_t k = 0;
  std::string method;
  if (family == "derived") {
    if (positional.size() != 2) throw UsageError("sum derived: expected exactly one method argument");
    method = lower(positional[1]);
  } else if (family == "s" || family == "t" || family == "u") {
    if (positional.size() != 3) throw UsageError("sum: expected <S|T|U> <k> <method>");
    k = parse_k(positional[1]);
    method = lower(positional[2]);
  } else {
    throw UsageError("sum: unknown family '" + positional[0] + "' (expected S, T, U or derived)");
  }

  OutputRecord rec;
  rec.command = "sum";
  rec.inputs["family"] = family == "derived" ? "derived" : std::string(1, static_cast<char>(std::toupper(family[0])));
  if (family != "derived") rec.inputs["k"] = k;
  rec.inputs["method"] = method;

  auto series_family = [&]() {
    if (family == "s") return SeriesFamily::s(k);
    if (family == "t") return SeriesFamily::t(k);
    if (family == "u") return SeriesFamily::u(k);
    return SeriesFamily::derived_quad();
  };

  if (method == "closed") {
    ClosedFormValue v;
    if (family == "s") v = s_closed(k);
    if (family == "t") v = t_closed(k);
    if (family == "u") v = u_closed(k);
    if (family == "derived") v = BigRational(2) * s_closed(2) - s_closed(4);
    rec.value = static_cast<double>(v.value());
    rec.decomposition = decomposition_of(v);
    rec.method = "closed";
  } else if (method == "direct") {
    const std::int64_t terms = st.terms > 0 ? st.terms : 1000;
    rec.inputs["terms"] = terms;
    const SumResult r = sum_direct(series_family(), terms);
    rec.value = static_cast<double>(r.value);
    rec.error_estimate = static_cast<double>(r.error_estimate);
    rec.method = "direct";
  } else if (method == "accel") {
    const std::int64_t budget = st.terms > 0 ? st.terms : kDefaultTermBudget;
    rec.inputs["tol"] = st.tol;
    rec.inputs["terms"] = budget;
    const SumResult r = sum_accelerated(series_family(), st.tol, budget);
    rec.value = static_cast<double>(r.value);
    rec.error_estimate = static_cast<double>(r.error_estimate);
    rec.method = "accelerated";
  } else if (method == "integral") {
    QuadOptions opts;
    opts.tolerance = st.tol;
    rec.inputs["tol"] = st.tol;
    QuadResult q;
    if (family == "s" || family == "derived") {
      rec.inputs["form"] = st.form;
      const SIntegralForm form = parse_form(st.form);
      if (family == "s") {
        q = s_integral(k, form, opts);
      } else {
        const QuadResult two = s_integral(2, form, opts);
        const QuadResult four = s_integral(4, form, opts);
        q = {2 * two.value - four.value, 2 * two.error_estimate + four.error_estimate,
             two.evaluations + four.evaluations};
      }
    } else if (family == "t") {
      q = t_integral(k, opts);
    } else {
      q = u_integral(k, opts);
    }
    rec.value = static_cast<double>(q.value);
    rec.error_estimate = static_cast<double>(q.error_estimate);
    rec.method = "quadrature";
  } else {
    throw UsageError("sum: unknown method '" + method + "' (expected closed, direct, accel, integral)");
  }
  return rec;
}

OutputRecord cmd_verify(const std::string& suite, const Settings& st, std::ostream& err,
                        bool& passed) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw UsageError("verify: unknown suite '" + suite + "'");
  }
  SuiteOptions opts;
  opts.seed = st.seed;
  opts.cases = st.cases;
  opts.tolerance_scale = st.tolerance_scale;
  const SuiteReport report = run_suite(suite, opts);
  passed = report.passed();

  OutputRecord rec;
  rec.command = "verify";
  rec.inputs["suite"] = suite;
  if (suite == "cor24") {
    rec.inputs["seed"] = st.seed;
    rec.inputs["cases"] = st.cases;
  }
  if (st.tolerance_scale != 1.0) rec.inputs["tolerance_scale"] = st.tolerance_scale;
  rec.inputs["checks"] = report.checks;
  rec.value = report.max_residual;
  rec.method = passed ? "pass" : "fail";
  err << "verify " << suite << ": " << (passed ? "PASS" : "FAIL") << " (" << report.checks
      << " checks, worst residual/tolerance " << report.worst_ratio << ")\n";
  return rec;
}

OutputRecord cmd_pi2(std::int64_t start, std::int64_t count, int workers, std::ostream& err) {
  if (count < 1) throw UsageError("pi2: count must be >= 1");

  constexpr std::int64_t kWindow = 8;
  const std::int64_t windows = (count + kWindow - 1) / kWindow;
  std::vector<HexDigitRun> runs(static_cast<std::size_t>(windows));
  auto compute = [&](std::int64_t w) {
    const std::int64_t len = std::min(kWindow, count - w * kWindow);
    runs[static_cast<std::size_t>(w)] = hex_digits(start + w * kWindow, static_cast<int>(len));
  };

  if (workers <= 1) {
    for (std::int64_t w = 0; w < windows; ++w) compute(w);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> pool;
      for (int i = 0; i < workers; ++i) {
        pool.emplace_back([&, i] {
          try {
            for (std::int64_t w = next++; w < windows; w = next++) compute(w);
          } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  std::string digits;
  for (const auto& r : runs) {
    digits += r.to_string();
    if (r.near_carry) {
      err << "warning: digits at position " << r.start_position
          << " lie near a carry boundary; cross-check with an overlapping window\n";
    }
  }
  OutputRecord rec;
  rec.command = "pi2";
  rec.inputs["start"] = start;
  rec.inputs["count"] = count;
  rec.value = digits;
  rec.method = "bbp";
  return rec;
}

void emit(const OutputRecord& rec, const Settings& st, std::ostream& out) {
  if (st.format == "json") {
    out << rec.to_json().dump() << "\n";
  } else {
    out << rec.to_plain();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic-number series sums, integral checks and hex digits of pi^2",
               "harmonic-sums"};
  app.footer(kAtomHelp);
  app.require_subcommand(1);
  Settings st;

  auto add_format = [&st](CLI::App* sub) {
    sub->add_option("--format", st.format, "Output format")->check(CLI::IsMember({"plain", "json"}));
  };

  std::vector<std::string> sum_args;
  CLI::App* sum = app.add_subcommand("sum", "Evaluate S_k, T_k, U_k or the derived series");
  sum->add_option("args", sum_args, "<S|T|U> <k> <closed|direct|accel|integral>  or  derived <method>")
      ->required();
  sum->add_option("--tol", st.tol, "Target error (accel) or quadrature tolerance (integral)")
      ->check(CLI::PositiveNumber);
  sum->add_option("--terms", st.terms, "Terms (direct) or term budget (accel)")->check(CLI::PositiveNumber);
  sum->add_option("--form", st.form, "Integral form for S")->check(CLI::IsMember({"eq3", "eq5"}));
  add_format(sum);

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "Run a quadrature/identity verification suite");
  verify->add_option("suite", suite, "functional-eq | lemma25 | lemma26 | cor23 | cor24 | cross")->required();
  verify->add_option("--seed", st.seed, "Random seed (cor24)");
  verify->add_option("--cases", st.cases, "Random cases (cor24)")->check(CLI::PositiveNumber);
  verify->add_option("--tolerance-scale", st.tolerance_scale, "Multiply every check tolerance by this factor")
      ->check(CLI::PositiveNumber);
  add_format(verify);

  std::int64_t start = 0;
  std::int64_t count = 0;
  CLI::App* pi2 = app.add_subcommand("pi2", "Hexadecimal digits of pi^2 from a given position");
  pi2->add_option("start", start, "0-based position after the hex point")->required();
  pi2->add_option("count", count, "Number of digits")->required();
  pi2->add_option("--parallel", st.parallel, "Worker threads (digit windows are split across them)")
      ->check(CLI::NonNegativeNumber);
  add_format(pi2);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (sum->parsed()) {
      try {
        emit(cmd_sum(sum_args, st), st, out);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      return kSuccess;
    }
    if (verify->parsed()) {
      bool passed = false;
      emit(cmd_verify(suite, st, err, passed), st, out);
      return passed ? kSuccess : kVerificationFailed;
    }
    if (pi2->parsed()) {
      emit(cmd_pi2(start, count, st.parallel, err), st, out);
      return kSuccess;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << "\n";
    return kNumericFailure;
  }
  err << "usage error: no command\n";
  return kUsage;
}

}  // namespace harmsum::cli
