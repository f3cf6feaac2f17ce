#pragma once

// Real-argument zeta, truncated Dirichlet series g(sigma) = sum a_m m^-sigma,
// Euler products of completely multiplicative functions, the family
// f_t(m) = prod_{p|m} (1 - p^-t) with partial sums F_t, L_t(s) = zeta(s)/zeta(s+t),
// and the prime deviation mu_n(alpha).

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ingham/arith_core.hpp"
#include "ingham/error.hpp"
#include "ingham/numeric.hpp"
#include "ingham/sequences.hpp"
#include "ingham/summation.hpp"

namespace ingham {

struct EvalParams {
  double sigma = 2.0;
  std::uint64_t truncation = 1'000'000;
  double quad_tol = 1e-8;
  double tail_tol = 1e-12;
  double alpha = 2.0;

  void validate() const {
    if (!(sigma > 1.0)) throw argument_error("sigma must exceed 1");
    if (truncation < 1) throw argument_error("truncation must be at least 1");
    if (!(quad_tol > 0.0 && quad_tol < 1.0)) throw argument_error("quad_tol must lie in (0, 1)");
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw argument_error("tail_tol must lie in (0, 1)");
    if (!(alpha > 1.0)) throw argument_error("alpha must exceed 1");
  }
};

namespace detail {

// B_{2j} / (2j)! for j = 1..6.
inline constexpr std::array<double, 6> bernoulli_over_factorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
};

// Euler-Maclaurin tail sum_{m>=N} m^-s for s > 1 and N >= 1.
inline double em_tail(double s, double N) {
  const double nps = std::pow(N, -s);
  double tail = N * nps / (s - 1.0) + 0.5 * nps;
  double rising = s;        // s (s+1) ... (s+2j-2)
  double npow = nps / N;    // N^{-s-2j+1}
  for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
    tail += bernoulli_over_factorial[j] * rising * npow;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    npow /= N * N;
  }
  return tail;
}

inline constexpr std::uint64_t em_cut = 64;

}  // namespace detail

// Hurwitz-type tail sum_{m>=q} m^-s for integer q >= 1.
inline double hurwitz_zeta(double s, std::uint64_t q) {
  if (!(s > 1.0)) throw argument_error("hurwitz_zeta requires s > 1");
  if (q < 1) throw argument_error("hurwitz_zeta requires q >= 1");
  CompensatedSum<double> head;
  std::uint64_t m = q;
  for (; m < detail::em_cut; ++m) head += inv_pow(m, s);
  head += detail::em_tail(s, static_cast<double>(m));
  return head.value();
}

// zeta(sigma) for real sigma > 1: direct sum below 64 plus an Euler-Maclaurin
// tail with six Bernoulli corrections (relative error well below 1e-14).
inline double zeta_real(double sigma) {
  if (!(sigma > 1.0)) throw argument_error("zeta_real requires sigma > 1");
  return hurwitz_zeta(sigma, 1);
}

// g(sigma) truncated at params.truncation terms; no claim about the tail.
template <Coefficient T>
TruncatedValue<weighted_t<T>> g_eval(const CoefficientSequence<T>& a, const EvalParams& params) {
  if (!(params.sigma > 1.0)) throw argument_error("g_eval requires sigma > 1");
  if (params.truncation > a.length())
    throw capacity_error("truncation " + std::to_string(params.truncation) + " exceeds available coefficients " +
                         std::to_string(a.length()));
  using W = weighted_t<T>;
  CompensatedSum<W> s;
  for (std::uint64_t m = 1; m <= params.truncation; ++m) {
    const T am = a.a(m);
    if (am == T{}) continue;
    s += static_cast<W>(am) * inv_pow(m, params.sigma);
  }
  return {s.value(), params.truncation};
}

// prod_{p<=limit} (1 - p^-sigma) / (1 - f(p) p^-sigma), ascending primes.
// Factors with f(p) = 1 are exactly 1 and skipped.
inline cplx euler_product(const MultiplicativeSpec& spec, const SieveTable& table, double sigma,
                          std::uint64_t limit) {
  if (!(sigma >= 1.0)) throw argument_error("euler_product requires sigma >= 1");
  if (limit > table.limit()) throw capacity_error("product limit exceeds sieve limit");
  const cplx one(1.0, 0.0);
  cplx prod = one;
  auto factor = [&](std::uint64_t p, cplx fp) {
    const double ps = inv_pow(p, sigma);
    const cplx den = one - fp * ps;
    if (den == cplx(0.0, 0.0) || std::abs(den) < std::numeric_limits<double>::min())
      throw singular_factor_error("Euler factor vanishes at p = " + std::to_string(p));
    prod *= (1.0 - ps) / den;
  };
  if (spec.default_value == one || spec.cutoff < 2) {
    for (const auto& [p, v] : spec.prime_values)
      if (p <= limit && p <= spec.cutoff && v != one) factor(p, v);
  } else {
    for (std::uint32_t p : table.primes()) {
      if (p > limit || p > spec.cutoff) break;
      const cplx v = spec.value(p);
      if (v != one) factor(p, v);
    }
  }
  return prod;
}

// f_t(1..N) with running sums F_t(0..N).
struct FtEvaluation {
  double t = 0.0;
  std::vector<double> values;  // values[m-1] = f_t(m)
  std::vector<double> prefix;  // prefix[x] = F_t(x), prefix[0] = 0

  std::uint64_t size() const noexcept { return values.size(); }

  double f(std::uint64_t m) const { return values.at(m - 1); }

  // F_t(x) for real x in [0, N].
  double F(double x) const {
    if (!(x >= 0.0)) throw argument_error("F_t requires x >= 0");
    const double fl = std::floor(x);
    if (fl > static_cast<double>(values.size())) throw capacity_error("F_t argument beyond table");
    return prefix[static_cast<std::size_t>(fl)];
  }
};

inline FtEvaluation f_t_table(const SieveTable& table, double t, std::uint64_t n) {
  if (!(t > 0.0)) throw argument_error("f_t requires t > 0");
  if (n > table.limit()) throw capacity_error("f_t table exceeds sieve limit");
  FtEvaluation e;
  e.t = t;
  e.values.assign(n, 0.0);
  e.prefix.assign(n + 1, 0.0);
  if (n == 0) return e;
  std::vector<double> factor(n + 1, 0.0);
  e.values[0] = 1.0;
  for (std::uint64_t m = 2; m <= n; ++m) {
    const std::uint32_t p = table.spf(m);
    if (p == m) factor[m] = one_minus_pow_neg(std::log(static_cast<double>(p)), t);
    const std::uint64_t r = m / p;
    e.values[m - 1] = (r % p == 0) ? e.values[r - 1] : e.values[r - 1] * factor[p];
  }
  CompensatedSum<double> s;
  for (std::uint64_t m = 1; m <= n; ++m) {
    s += e.values[m - 1];
    e.prefix[m] = s.value();
  }
  return e;
}

// L_t(s) = zeta(s) / zeta(s + t).
inline double L_t(double s, double t) {
  if (!(s > 1.0)) throw argument_error("L_t requires s > 1");
  if (!(t > 0.0)) throw argument_error("L_t requires t > 0");
  return zeta_real(s) / zeta_real(s + t);
}

namespace detail {

// sum_{p<=n} |f(p) - 1|^alpha log p / p, ascending primes.
inline double prime_deviation_sum(const MultiplicativeSpec& spec, const SieveTable& table, std::uint64_t n,
                                  double alpha) {
  const cplx one(1.0, 0.0);
  CompensatedSum<double> s;
  for (std::uint32_t p : table.primes()) {
    if (p > n) break;
    const cplx v = spec.value(p);
    if (v == one) continue;
    const double lp = std::log(static_cast<double>(p));
    s += std::pow(std::abs(v - one), alpha) * lp / static_cast<double>(p);
  }
  return s.value();
}

}  // namespace detail

// mu_n(alpha) = ((1/log n) sum_{p<=n} |f(p)-1|^alpha log p / p)^{1/alpha}.
inline double mu_n_alpha(const MultiplicativeSpec& spec, const SieveTable& table, std::uint64_t n, double alpha) {
  if (n < 2) throw argument_error("mu_n_alpha requires n >= 2");
  if (n > table.limit()) throw capacity_error("n exceeds sieve limit");
  if (!(alpha > 0.0)) throw argument_error("alpha must be positive");
  const double s = detail::prime_deviation_sum(spec, table, n, alpha);
  return std::pow(s / std::log(static_cast<double>(n)), 1.0 / alpha);
}

}  // namespace ingham
