#pragma once

// Exact identities between the summation quantities, each computed along two
// independent paths: the S-difference divisor sum, the S-decomposition over
// A(k) and Lambda, the multiplicative form of S(m), and the closed formula for
// A(n) - n g(sigma_n) - S(n)/log n in terms of S(k), F_t and 1/zeta.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ingham/arith_core.hpp"
#include "ingham/dirichlet.hpp"
#include "ingham/error.hpp"
#include "ingham/numeric.hpp"
#include "ingham/quadrature.hpp"
#include "ingham/sequences.hpp"
#include "ingham/summation.hpp"
#include "ingham/verify.hpp"

namespace ingham {

struct IdentityError {
  double absolute = 0.0;
  double scale = 1.0;

  double relative() const { return absolute / std::max(1.0, scale); }
};

// max_{2<=m<=M} |S(m) - S(m-1) - sum_{k|m} a_k log k|; S by block decomposition,
// the right side by divisor enumeration. Scale: max |S(m)|.
template <Coefficient T>
IdentityError s_difference_identity(const CoefficientSequence<T>& a, const SieveTable& table, std::uint64_t M) {
  using W = weighted_t<T>;
  if (M < 2) throw argument_error("s_difference_identity requires M >= 2");
  if (M > a.length() || M > table.limit()) throw capacity_error("M exceeds sequence or sieve");
  IdentityError e;
  e.scale = 0.0;
  W prev = ingham_S(a, 1);
  for (std::uint64_t m = 2; m <= M; ++m) {
    const W cur = ingham_S(a, m);
    CompensatedSum<W> d;
    for (auto k : table.divisors(m))
      if (k > 1) d += static_cast<W>(a.a(k)) * std::log(static_cast<double>(k));
    e.absolute = std::max(e.absolute, abs_value(cur - prev - d.value()));
    e.scale = std::max(e.scale, abs_value(cur));
    prev = cur;
  }
  return e;
}

// S(n) against A(n) log n - sum_{k<n} A(k) log(1+1/k) - sum_{k<=n} Lambda(k) A(n/k).
// Scale: n log n.
template <Coefficient T>
IdentityError s_decomposition_identity(const CoefficientSequence<T>& a, const SieveTable& table, std::uint64_t n) {
  using W = weighted_t<T>;
  if (n < 2) throw argument_error("s_decomposition_identity requires n >= 2");
  if (n > a.length() || n > table.limit()) throw capacity_error("n exceeds sequence or sieve");
  std::vector<std::uint64_t> grid(n);
  for (std::uint64_t k = 1; k <= n; ++k) grid[k - 1] = k;
  const auto rows = batch_sums(a, std::span<const std::uint64_t>(grid));
  const auto A = [&](std::uint64_t k) { return static_cast<W>(rows[k - 1].A); };
  CompensatedSum<W> rhs(A(n) * std::log(static_cast<double>(n)));
  for (std::uint64_t k = 1; k < n; ++k) rhs -= A(k) * std::log1p(1.0 / static_cast<double>(k));
  for (std::uint64_t k = 2; k <= n; ++k) {
    const double lam = table.mangoldt(k);
    if (lam != 0.0) rhs -= A(n / k) * lam;
  }
  const double nl = static_cast<double>(n) * std::log(static_cast<double>(n));
  return {abs_value(rows[n - 1].S - rhs.value()), nl};
}

// S(m) of the coefficients of f against sum_{k<=m} (f(k) - 1) Lambda(k) sum_{l<=m/k} f(l).
// Scale: m log m.
inline IdentityError s_multiplicative_identity(const MultiplicativeSpec& spec, const SieveTable& table,
                                               std::uint64_t m) {
  if (m < 2) throw argument_error("s_multiplicative_identity requires m >= 2");
  if (m > table.limit()) throw capacity_error("m exceeds sieve limit");
  const auto f = extend_completely_multiplicative(spec, table, m);
  const auto a = a_from_f(table, f);
  std::vector<cplx> pre(m + 1, 0.0);
  CompensatedSum<cplx> run;
  for (std::uint64_t l = 1; l <= m; ++l) {
    run += f[l - 1];
    pre[l] = run.value();
  }
  CompensatedSum<cplx> rhs;
  for (std::uint64_t k = 2; k <= m; ++k) {
    const double lam = table.mangoldt(k);
    if (lam == 0.0) continue;
    rhs += (f[k - 1] - 1.0) * lam * pre[m / k];
  }
  const double ml = static_cast<double>(m) * std::log(static_cast<double>(m));
  return {std::abs(ingham_S(a, m) - rhs.value()), ml};
}

struct DifferenceIdentity {
  std::uint64_t n = 0;
  double sigma = 0.0;
  std::uint64_t truncation = 0;  // K: S(k) summed explicitly for k <= K
  cplx lhs{};
  cplx rhs{};
  cplx first_term{};   // sum_{k=2}^{n-1} S(k) int_0^inf [...] dt
  cplx second_term{};  // n sum_{k>=2} S(k) int_sigma^inf [...] du / zeta(u)
  double error = 0.0;  // |lhs - rhs|
  double slack = 0.0;  // quadrature disagreement plus dropped integral tails
};

namespace detail {

// F_t(y) for y < table size, from distinct prime factors of each m <= y.
class SmallFt {
public:
  SmallFt(const SieveTable& table, std::uint64_t top) : logs_(top + 1) {
    for (std::uint64_t m = 2; m <= top; ++m)
      for (const auto& pp : table.factorize(m)) logs_[m].push_back(std::log(static_cast<double>(pp.prime)));
  }

  double F(double t, std::uint64_t y) const {
    double s = 0.0;
    for (std::uint64_t m = 1; m <= y; ++m) {
      double v = 1.0;
      for (double lp : logs_[m]) v *= one_minus_pow_neg(lp, t);
      s += v;
    }
    return s;
  }

private:
  std::vector<std::vector<double>> logs_;
};

}  // namespace detail

// Both sides of the closed formula for R_n = A(n) - n g(sigma) - S(n)/log n,
// sigma = 1 + 1/log n, treating a as zero beyond its length L (so g is exact).
// The series over k is summed explicitly to K = params.truncation; the part
// beyond K is folded into Hurwitz tails via S(k) - S(k-1) = sum_{j|k} a_j log j.
template <Coefficient T>
DifferenceIdentity difference_identity_check(const CoefficientSequence<T>& a, const SieveTable& table,
                                             std::uint64_t n, const EvalParams& params) {
  using W = weighted_t<T>;
  if (n < 2 || n > 50) throw argument_error("difference_identity_check requires 2 <= n <= 50");
  const std::uint64_t L = a.length();
  const std::uint64_t K = params.truncation;
  if (K < n) throw argument_error("truncation must be at least n");
  if (n > L) throw capacity_error("n exceeds sequence length");
  if (n > table.limit()) throw capacity_error("n exceeds sieve limit");

  DifferenceIdentity r;
  r.n = n;
  r.truncation = K;
  const double nd = static_cast<double>(n);
  const double logn = std::log(nd);
  const double sigma = 1.0 + 1.0 / logn;
  r.sigma = sigma;

  const auto sweep = ingham_sweep(a, K + 1);
  const auto S = [&](std::uint64_t k) { return static_cast<cplx>(sweep.S[k]); };

  EvalParams gp = params;
  gp.sigma = sigma;
  gp.truncation = L;
  r.lhs = static_cast<cplx>(static_cast<W>(sweep.A[n])) - nd * static_cast<cplx>(g_eval(a, gp).value) - S(n) / logn;

  // First term: one integral in t per k, adaptive Simpson on [0, T_k].
  const detail::SmallFt ft(table, n / 2);
  CompensatedSum<cplx> first;
  for (std::uint64_t k = 2; k + 1 <= n; ++k) {
    const cplx sk = S(k);
    if (sk == cplx(0.0)) continue;
    const std::uint64_t y0 = n / k, y1 = n / (k + 1);
    const double lk = std::log(static_cast<double>(k)), lk1 = std::log(static_cast<double>(k + 1));
    auto integrand = [&](double t) {
      return ft.F(t, y0) * std::exp(-t * lk) - (y1 ? ft.F(t, y1) * std::exp(-t * lk1) : 0.0);
    };
    // Integrand below 2 (n/k) k^-t; the tail past t_end is under tail_tol / |S(k)|.
    const double scale = std::max(1.0, std::abs(sk));
    const double t_end = std::max(1.0, std::log(2.0 * nd * scale / (static_cast<double>(k) * lk * params.tail_tol)) / lk);
    const auto est = quad::adaptive_simpson(integrand, 0.0, t_end, params.quad_tol / (nd * scale));
    first += sk * est.value;
    r.slack += std::abs(sk) * (est.error + params.tail_tol / scale);
  }
  r.first_term = first.value();

  // Second term: h(u) = sum_{k>=2} S(k) (k^-u - (k+1)^-u), integrated against 1/zeta(u).
  std::vector<double> logk(K + 3, 0.0);
  for (std::uint64_t k = 2; k < logk.size(); ++k) logk[k] = std::log(static_cast<double>(k));
  std::vector<W> b(L + 1, W{});  // b_j = a_j log j
  double B1 = 0.0, B2 = 0.0;
  for (std::uint64_t j = 2; j <= L; ++j) {
    b[j] = static_cast<W>(a.a(j)) * std::log(static_cast<double>(j));
    B1 += abs_value(a.a(j)) / static_cast<double>(j);
    B2 += abs_value(b[j]) * 4.0 / (static_cast<double>(j) * static_cast<double>(j));
  }
  // For u >= 2: |h(u)| <= zeta(2) B2 2^-u, so the integral past U is below tail_tol / n.
  const double U = std::max(sigma + 2.0, std::log2(std::max(1.0, nd * zeta_real(2.0) * B2 /
                                                                      (std::numbers::ln2 * params.tail_tol))));
  std::vector<double> pw(K + 3, 0.0);
  const double cut_eps = 1e-3 * params.tail_tol / nd;
  auto h = [&](double u) -> cplx {
    pw[1] = 1.0;
    std::uint64_t top = K + 2;
    for (std::uint64_t k = 2; k <= K + 2; ++k) {
      pw[k] = std::exp(-u * logk[k]);
      // Remaining terms bounded by B1 u log k k^{1-u} / (u - 1).
      if ((k & 1023u) == 0 &&
          B1 * u * (1.0 + logk[k]) * pw[k] * static_cast<double>(k) / (u - 1.0) < cut_eps) {
        top = k;
        break;
      }
    }
    CompensatedSum<cplx> s;
    const std::uint64_t kmax = std::min<std::uint64_t>(K, top - 1);
    for (std::uint64_t k = 2; k <= kmax; ++k) {
      const cplx sk = S(k);
      if (sk != cplx(0.0)) s += sk * (pw[k] - pw[k + 1]);
    }
    if (top == K + 2) {
      s += S(K + 1) * pw[K + 1];
      // sum_j b_j j^-u zeta(u, ceil((K+2)/j)), one Hurwitz value per distinct quotient.
      std::uint64_t j = 2;
      while (j <= L) {
        const std::uint64_t q = (K + 2 + j - 1) / j;
        const std::uint64_t jhi = (q == 1) ? L : std::min<std::uint64_t>(L, (K + 1) / (q - 1));
        CompensatedSum<cplx> block;
        for (std::uint64_t i = j; i <= jhi; ++i)
          if (b[i] != W{}) block += static_cast<cplx>(b[i]) * (i < pw.size() ? pw[i] : std::exp(-u * std::log(static_cast<double>(i))));
        if (block.value() != cplx(0.0)) s += block.value() * hurwitz_zeta(u, q);
        j = jhi + 1;
      }
    }
    return s.value() / zeta_real(u);
  };

  const auto integrate = [&](std::size_t order) {
    const auto nodes = quad::geometric_panels(sigma, U, 0.1, 1.35, order);
    CompensatedSum<cplx> s;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) s += nodes.w[i] * h(nodes.x[i]);
    return s.value();
  };
  const cplx coarse = integrate(12);
  const cplx fine = integrate(16);
  r.second_term = nd * fine;
  r.slack += nd * std::abs(fine - coarse) + params.tail_tol;

  r.rhs = r.first_term - r.second_term;
  r.error = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace ingham
