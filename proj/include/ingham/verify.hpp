#pragma once

// Finite-scale checks of the Tauberian statements: residuals between mean
// values and g(1 + 1/log n), the Euler-product error against mu_n(alpha),
// the hypotheses (cond 1), (cond 2), Wintner and Axer, and report assembly.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ingham/arith_core.hpp"
#include "ingham/dirichlet.hpp"
#include "ingham/error.hpp"
#include "ingham/numeric.hpp"
#include "ingham/sequences.hpp"
#include "ingham/summation.hpp"

namespace ingham {

// residual / denominator, with the zero-denominator case made explicit.
struct Ratio {
  double value = 0.0;
  bool unbounded = false;

  static constexpr double zero_residual = 1e-12;

  static Ratio of(double residual, double denominator) {
    if (denominator > 0.0) return {residual / denominator, false};
    if (residual <= zero_residual) return {0.0, false};
    return {0.0, true};
  }

  bool within(double bound) const { return !unbounded && value <= bound; }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

inline Ratio max_ratio(const Ratio& a, const Ratio& b) {
  if (a.unbounded) return a;
  if (b.unbounded) return b;
  return a.value >= b.value ? a : b;
}

struct ReportRow {
  std::uint64_t n = 0;
  cplx mean{};                        // A(n)/n
  std::optional<double> s_ratio;      // |S(n)|/(n log n)
  std::optional<cplx> g;              // g(1 + 1/log n)
  std::optional<cplx> euler_at_1;     // prod_{p<=n} (1-1/p)/(1-f(p)/p)
  std::optional<double> residual_t1;  // |A(n)/n - g(1 + 1/log n)|
  std::optional<double> residual_t3;  // |A(n)/n - euler_at_1|
  std::optional<double> mu_alpha;
  std::optional<Ratio> ratio_t3;      // residual_t3 / mu_alpha
  bool pass = true;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SigmaRow {
  double sigma = 0.0;
  cplx g{};

  friend bool operator==(const SigmaRow&, const SigmaRow&) = default;
};

struct ReportSummary {
  double max_residual = 0.0;
  std::optional<Ratio> ratio_estimate;
  std::map<std::string, double> thresholds;
  std::map<std::string, bool> checks;
  bool pass = true;
  std::optional<double> wall_seconds;  // kept out of serialized output unless requested

  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct VerificationReport {
  std::string experiment_id;
  std::optional<cplx> target;
  std::vector<ReportRow> rows;
  std::vector<SigmaRow> sigma_rows;
  ReportSummary summary;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// What a check runs on: coefficients, plus the multiplicative spec they came
// from when there is one (then g is an exact finite Euler product).
struct Subject {
  std::string name;
  CoefficientSequence<cplx> a;
  std::optional<MultiplicativeSpec> spec;
};

inline Subject subject_from_spec(std::string name, const MultiplicativeSpec& spec, const SieveTable& table,
                                 std::uint64_t n) {
  return {std::move(name), coefficients_from_spec(spec, table, n), spec};
}

inline double sigma_for(std::uint64_t n) {
  if (n < 2) throw argument_error("sigma_n needs n >= 2");
  return 1.0 + 1.0 / std::log(static_cast<double>(n));
}

// g(sigma) of a spec: the product over primes up to the cutoff. Exact once the
// sieve covers every prime whose value differs from 1.
inline cplx spec_g(const MultiplicativeSpec& spec, const SieveTable& table, double sigma) {
  const std::uint64_t need = spec.support_bound();
  if (need > table.limit())
    throw capacity_error("spec differs from 1 at primes up to " + std::to_string(need) + ", sieve covers " +
                         std::to_string(table.limit()));
  return euler_product(spec, table, sigma, std::min<std::uint64_t>(std::max<std::uint64_t>(need, 2), table.limit()));
}

inline cplx subject_g(const Subject& s, const SieveTable* table, double sigma, const EvalParams& params) {
  if (s.spec) {
    if (!table) throw argument_error("spec subject needs a sieve");
    return spec_g(*s.spec, *table, sigma);
  }
  EvalParams p = params;
  p.sigma = sigma;
  p.truncation = std::min<std::uint64_t>(params.truncation, s.a.length());
  return g_eval(s.a, p).value;
}

namespace detail {

inline void require_grid(std::span<const std::uint64_t> grid, std::uint64_t lowest, std::uint64_t limit) {
  if (grid.empty()) throw argument_error("empty n-grid");
  if (!std::is_sorted(grid.begin(), grid.end()) || std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw argument_error("n-grid must be strictly ascending");
  if (grid.front() < lowest) throw argument_error("n-grid starts below " + std::to_string(lowest));
  if (grid.back() > limit)
    throw capacity_error("n-grid reaches " + std::to_string(grid.back()) + " beyond available " +
                         std::to_string(limit));
}

// Nonincreasing with a rounding allowance.
inline bool nonincreasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1e-12 * std::max(1.0, std::abs(v[i - 1]))) return false;
  return true;
}

template <class Fn>
void parallel_rows(std::size_t count, unsigned workers, Fn&& fn) {
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
  if (w == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t r = 0; r < w; ++r)
    pool.emplace_back([&, r] {
      for (std::size_t i = r; i < count; i += w) fn(i);
    });
  for (auto& t : pool) t.join();
}

inline double log_n(std::uint64_t n) { return std::log(static_cast<double>(n)); }

}  // namespace detail

// |A(n)/n - g(1 + 1/log n)| with g truncated at params.truncation.
template <Coefficient T>
double theorem1_residual(const CoefficientSequence<T>& a, std::uint64_t n, const EvalParams& params) {
  if (n < 2) throw argument_error("theorem1_residual requires n >= 2");
  if (n > a.length()) throw capacity_error("n exceeds sequence length");
  EvalParams p = params;
  p.sigma = sigma_for(n);
  p.truncation = std::min<std::uint64_t>(params.truncation, a.length());
  const auto mean = static_cast<weighted_t<T>>(ingham_A(a, n)) / static_cast<double>(n);
  return abs_value(mean - g_eval(a, p).value);
}

// Same residual for a spec: exact mean of f and the exact finite product.
inline double theorem1_residual(const MultiplicativeSpec& spec, const SieveTable& table, std::uint64_t n) {
  if (n < 2) throw argument_error("theorem1_residual requires n >= 2");
  const auto f = extend_completely_multiplicative(spec, table, n);
  CompensatedSum<cplx> s;
  for (const auto& v : f) s += v;
  return std::abs(s.value() / static_cast<double>(n) - spec_g(spec, table, sigma_for(n)));
}

struct Theorem3Result {
  double residual = 0.0;
  double mu = 0.0;
  Ratio ratio;
  cplx mean{};
  cplx product{};
};

inline cplx mean_value(const MultiplicativeSpec& spec, const SieveTable& table, std::uint64_t n) {
  const auto f = extend_completely_multiplicative(spec, table, n);
  CompensatedSum<cplx> s;
  for (const auto& v : f) s += v;
  return s.value() / static_cast<double>(n);
}

inline Theorem3Result theorem3_check(const MultiplicativeSpec& spec, const SieveTable& table, std::uint64_t n,
                                     double alpha) {
  if (n < 3) throw argument_error("theorem3_check requires n >= 3");
  if (!(alpha > 1.0)) throw argument_error("alpha must exceed 1");
  MultiplicativeSpec bounded = spec;
  bounded.bound_check = true;
  bounded.validate();
  Theorem3Result r;
  r.mean = mean_value(spec, table, n);
  r.product = euler_product(spec, table, 1.0, n);
  r.residual = std::abs(r.mean - r.product);
  r.mu = mu_n_alpha(spec, table, n, alpha);
  r.ratio = Ratio::of(r.residual, r.mu);
  return r;
}

// (1/log n) sum_{p<=n} |f(p) - 1| log p / p.
inline double cond1_ratio(const MultiplicativeSpec& spec, const SieveTable& table, std::uint64_t n) {
  if (n < 2) throw argument_error("cond1_ratio requires n >= 2");
  if (n > table.limit()) throw capacity_error("n exceeds sieve limit");
  return detail::prime_deviation_sum(spec, table, n, 1.0) / detail::log_n(n);
}

// (1/(n log n)) sum_{m<=n} |theta_f(n/m) - n/m|, theta_f(y) = sum_{p<=y} f(p) log p.
inline double cond2_ratio(const MultiplicativeSpec& spec, const SieveTable& table, std::uint64_t n) {
  if (n < 2) throw argument_error("cond2_ratio requires n >= 2");
  if (n > table.limit()) throw capacity_error("n exceeds sieve limit");
  std::vector<cplx> theta(n + 1, 0.0);
  CompensatedSum<cplx> run;
  std::size_t next = 0;
  const auto primes = table.primes();
  for (std::uint64_t y = 1; y <= n; ++y) {
    if (next < primes.size() && primes[next] == y) {
      run += spec.value(y) * std::log(static_cast<double>(y));
      ++next;
    }
    theta[y] = run.value();
  }
  CompensatedSum<double> s;
  const double nd = static_cast<double>(n);
  for (std::uint64_t m = 1; m <= n; ++m) s += std::abs(theta[n / m] - nd / static_cast<double>(m));
  return s.value() / (nd * detail::log_n(n));
}

struct WintnerResult {
  double abs_sum_over_k = 0.0;  // sum_{k<=n} |a_k|/k
  cplx target{};                // sum_{k<=n} a_k/k
  cplx mean{};                  // A(n)/n
  double residual = 0.0;
};

template <Coefficient T>
WintnerResult check_wintner(const CoefficientSequence<T>& a, std::uint64_t n) {
  if (n < 1 || n > a.length()) throw capacity_error("n outside sequence");
  CompensatedSum<double> abs_sum;
  CompensatedSum<cplx> target;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const cplx ak = static_cast<cplx>(a.a(k));
    abs_sum += std::abs(ak) / static_cast<double>(k);
    target += ak / static_cast<double>(k);
  }
  WintnerResult r;
  r.abs_sum_over_k = abs_sum.value();
  r.target = target.value();
  r.mean = static_cast<cplx>(ingham_A(a, n)) / static_cast<double>(n);
  r.residual = std::abs(r.mean - r.target);
  return r;
}

struct AxerPoint {
  std::uint64_t n = 0;
  double ratio = 0.0;  // sum_{k<=n} |a_k| / n
};

struct AxerResult {
  std::vector<AxerPoint> points;
  double bound = 0.0;
  bool pass = true;
};

template <Coefficient T>
AxerResult check_axer(const CoefficientSequence<T>& a, std::span<const std::uint64_t> grid, double bound = 2.0) {
  detail::require_grid(grid, 1, a.length());
  AxerResult r;
  r.bound = bound;
  CompensatedSum<double> s;
  std::uint64_t k = 0;
  for (auto n : grid) {
    for (; k < n; ++k) s += abs_value(a.a(k + 1));
    r.points.push_back({n, s.value() / static_cast<double>(n)});
    r.pass = r.pass && r.points.back().ratio <= bound;
  }
  return r;
}

struct Theorem1Options {
  double residual_coefficient = 0.6;  // pass when residual <= c / log n
  double alpha = 2.0;
  unsigned workers = 1;
};

// Rows of A(n)/n against g(1 + 1/log n); for spec subjects also the Euler
// product at 1 and mu_n(alpha).
inline VerificationReport theorem1_report(const Subject& s, const SieveTable& table,
                                          std::span<const std::uint64_t> grid, const EvalParams& params,
                                          const Theorem1Options& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require_grid(grid, 2, s.a.length());
  VerificationReport rep;
  rep.experiment_id = "theorem1:" + s.name;
  rep.rows.resize(grid.size());
  detail::parallel_rows(grid.size(), opt.workers, [&](std::size_t i) {
    const std::uint64_t n = grid[i];
    ReportRow& r = rep.rows[i];
    r.n = n;
    const auto v = summation_value(s.a, n);
    r.mean = v.normalized_A;
    r.s_ratio = std::abs(v.S) / (static_cast<double>(n) * detail::log_n(n));
    r.g = subject_g(s, &table, sigma_for(n), params);
    r.residual_t1 = std::abs(r.mean - *r.g);
    r.pass = *r.residual_t1 <= opt.residual_coefficient / detail::log_n(n);
    if (s.spec && n >= 3) {
      r.euler_at_1 = euler_product(*s.spec, table, 1.0, n);
      r.residual_t3 = std::abs(r.mean - *r.euler_at_1);
      r.mu_alpha = mu_n_alpha(*s.spec, table, n, opt.alpha);
      r.ratio_t3 = Ratio::of(*r.residual_t3, *r.mu_alpha);
    }
  });
  std::vector<double> res;
  bool rows_ok = true;
  for (const auto& r : rep.rows) {
    res.push_back(*r.residual_t1);
    rows_ok = rows_ok && r.pass;
    rep.summary.max_residual = std::max(rep.summary.max_residual, *r.residual_t1);
    if (r.ratio_t3)
      rep.summary.ratio_estimate =
          rep.summary.ratio_estimate ? max_ratio(*rep.summary.ratio_estimate, *r.ratio_t3) : *r.ratio_t3;
  }
  rep.target = rep.rows.back().g;
  rep.summary.thresholds["residual_coefficient"] = opt.residual_coefficient;
  rep.summary.checks["rows_within_bound"] = rows_ok;
  rep.summary.checks["residual_nonincreasing"] = detail::nonincreasing(res);
  rep.summary.pass = rows_ok && rep.summary.checks["residual_nonincreasing"];
  rep.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct Theorem3Options {
  double alpha = 2.0;
  std::optional<double> envelope;  // pass when residual / mu_n(alpha) <= envelope
  unsigned workers = 1;
};

// Mean values of a spec against the Euler product at 1, with mu_n(alpha).
inline VerificationReport theorem3_report(const std::string& name, const MultiplicativeSpec& spec,
                                          const SieveTable& table, std::span<const std::uint64_t> grid,
                                          const Theorem3Options& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require_grid(grid, 3, table.limit());
  VerificationReport rep;
  rep.experiment_id = "theorem3:" + name;
  rep.rows.resize(grid.size());
  detail::parallel_rows(grid.size(), opt.workers, [&](std::size_t i) {
    const auto c = theorem3_check(spec, table, grid[i], opt.alpha);
    ReportRow& r = rep.rows[i];
    r.n = grid[i];
    r.mean = c.mean;
    r.euler_at_1 = c.product;
    r.residual_t3 = c.residual;
    r.mu_alpha = c.mu;
    r.ratio_t3 = c.ratio;
    r.pass = !opt.envelope || c.ratio.within(*opt.envelope);
  });
  bool ok = true;
  for (const auto& r : rep.rows) {
    ok = ok && r.pass;
    rep.summary.max_residual = std::max(rep.summary.max_residual, *r.residual_t3);
    rep.summary.ratio_estimate =
        rep.summary.ratio_estimate ? max_ratio(*rep.summary.ratio_estimate, *r.ratio_t3) : *r.ratio_t3;
  }
  rep.target = rep.rows.back().euler_at_1;
  rep.summary.thresholds["alpha"] = opt.alpha;
  if (opt.envelope) rep.summary.thresholds["envelope"] = *opt.envelope;
  rep.summary.checks["rows_within_envelope"] = ok;
  rep.summary.pass = ok;
  rep.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct Theorem2Options {
  double s_threshold = 0.2;  // last |S(n)|/(n log n) must fall below this
  double burn_in = 0.5;      // trends are judged on the grid past this fraction
};

// Condition 1 along the n-grid, g(sigma) along a descending sigma-grid.
// Magnitude convention: |S(n)| is used when S oscillates in sign.
inline VerificationReport theorem2_conditions(const Subject& s, const SieveTable* table,
                                              std::span<const std::uint64_t> grid, std::span<const double> sigma_grid,
                                              const EvalParams& params, const Theorem2Options& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require_grid(grid, 2, s.a.length());
  if (!(opt.burn_in >= 0.0 && opt.burn_in < 1.0)) throw argument_error("burn-in must lie in [0, 1)");
  std::vector<double> sig(sigma_grid.begin(), sigma_grid.end());
  if (sig.empty())
    for (auto n : grid) sig.push_back(sigma_for(n));
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (!(sig[i] > 1.0)) throw argument_error("sigma-grid values must exceed 1");
    if (i && !(sig[i] < sig[i - 1])) throw argument_error("sigma-grid must be strictly descending");
  }
  VerificationReport rep;
  rep.experiment_id = "theorem2:" + s.name;
  std::vector<double> s_mag;
  for (auto n : grid) {
    const auto v = summation_value(s.a, n);
    ReportRow r;
    r.n = n;
    r.mean = v.normalized_A;
    r.s_ratio = std::abs(v.S) / (static_cast<double>(n) * detail::log_n(n));
    r.pass = *r.s_ratio <= opt.s_threshold;
    s_mag.push_back(*r.s_ratio);
    rep.rows.push_back(r);
  }
  for (double x : sig) rep.sigma_rows.push_back({x, subject_g(s, table, x, params)});
  std::vector<double> steps;
  for (std::size_t i = 1; i < rep.sigma_rows.size(); ++i)
    steps.push_back(std::abs(rep.sigma_rows[i].g - rep.sigma_rows[i - 1].g));

  const auto tail = [&](const std::vector<double>& v) {
    const std::size_t from = static_cast<std::size_t>(std::floor(opt.burn_in * static_cast<double>(v.size())));
    return std::span<const double>(v).subspan(std::min(from, v.size()));
  };
  rep.target = rep.sigma_rows.back().g;
  rep.summary.max_residual = *std::max_element(s_mag.begin(), s_mag.end());
  rep.summary.thresholds["s_threshold"] = opt.s_threshold;
  rep.summary.thresholds["burn_in"] = opt.burn_in;
  rep.summary.checks["s_last_below_threshold"] = rep.rows.back().pass;
  rep.summary.checks["s_nonincreasing"] = detail::nonincreasing(tail(s_mag));
  rep.summary.checks["g_steps_nonincreasing"] = detail::nonincreasing(tail(steps));
  rep.summary.pass = rep.summary.checks["s_last_below_threshold"] && rep.summary.checks["s_nonincreasing"] &&
                     rep.summary.checks["g_steps_nonincreasing"];
  rep.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Mean values only: A(n)/n and |S(n)|/(n log n), plus the Euler product at 1
// when the subject is a spec.
inline VerificationReport mean_report(const Subject& s, const SieveTable& table, std::span<const std::uint64_t> grid,
                                      double alpha = 2.0, unsigned workers = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require_grid(grid, 1, s.a.length());
  VerificationReport rep;
  rep.experiment_id = "mean:" + s.name;
  rep.rows.resize(grid.size());
  detail::parallel_rows(grid.size(), workers, [&](std::size_t i) {
    const std::uint64_t n = grid[i];
    ReportRow& r = rep.rows[i];
    r.n = n;
    const auto v = summation_value(s.a, n);
    r.mean = v.normalized_A;
    if (n >= 2) r.s_ratio = std::abs(v.S) / (static_cast<double>(n) * detail::log_n(n));
    if (s.spec && n >= 2) {
      r.euler_at_1 = euler_product(*s.spec, table, 1.0, n);
      r.residual_t3 = std::abs(r.mean - *r.euler_at_1);
      r.mu_alpha = mu_n_alpha(*s.spec, table, n, alpha);
      r.ratio_t3 = Ratio::of(*r.residual_t3, *r.mu_alpha);
    }
  });
  for (const auto& r : rep.rows) {
    if (r.residual_t3) rep.summary.max_residual = std::max(rep.summary.max_residual, *r.residual_t3);
    if (r.ratio_t3)
      rep.summary.ratio_estimate =
          rep.summary.ratio_estimate ? max_ratio(*rep.summary.ratio_estimate, *r.ratio_t3) : *r.ratio_t3;
  }
  if (s.spec) rep.summary.thresholds["alpha"] = alpha;
  rep.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ingham
