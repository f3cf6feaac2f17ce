#pragma once

// Empirical ratios for the five estimates on sums of f_t(m):
//   (1) sum_{m<=x} f_t(m)/m                 against 1 + t log x
//   (2) |F_t(x) - x/zeta(1+t)|              against x^{1-t} + sum_{d<=x} d^-t
//   (3) |sum f_t(m)/m - sum mu(d) d^{-1-t} log(x/d)|     (absolute)
//   (4) F_t(x) - F_t(x/2)                   against x (1/log x + t)
//   (5) |int F_t(x) w_k(t) dt - x int w_k(t)/zeta(1+t) dt| against x / (k log^2(xk)),
//       w_k(t) = k^-t - (k+1)^-t.
// Each ratio is expected to stay bounded; the suite records the suprema.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ingham/arith_core.hpp"
#include "ingham/dirichlet.hpp"
#include "ingham/error.hpp"
#include "ingham/numeric.hpp"
#include "ingham/quadrature.hpp"

namespace ingham {

struct LemmaRatio {
  int family = 0;         // 1..5
  double t = 0.0;         // unused (NaN) for family 5
  std::uint64_t x = 0;
  std::uint64_t k = 0;    // family 5 only
  double value = 0.0;
};

struct LemmaGrid {
  std::vector<double> t{1e-3, 1e-2, 1e-1, 1.0, 10.0};
  std::vector<std::uint64_t> x{100, 1'000, 10'000, 100'000, 1'000'000};
  std::vector<std::uint64_t> k{2, 10, 100};
  std::vector<std::uint64_t> x5{1'000, 10'000};
};

struct LemmaSuite {
  std::vector<LemmaRatio> ratios;
  std::array<double, 5> supremum{};  // per family

  double max() const { return *std::max_element(supremum.begin(), supremum.end()); }
};

namespace detail {

// int_0^inf F_t(x) w_k(t) dt and x int_0^inf w_k(t)/zeta(1+t) dt, with
// F_t(x) = sum_{d<=x} mu(d) [x/d] d^-t.
inline std::pair<double, double> lemma5_integrals(const std::vector<int>& mu, std::uint64_t x, std::uint64_t k,
                                                  double quad_tol) {
  std::vector<double> coef, logd;
  for (std::uint64_t d = 1; d <= x; ++d)
    if (mu[d] != 0) {
      coef.push_back(static_cast<double>(mu[d]) * static_cast<double>(x / d));
      logd.push_back(std::log(static_cast<double>(d)));
    }
  const double lk = std::log(static_cast<double>(k)), lk1 = std::log(static_cast<double>(k + 1));
  const auto w = [&](double t) { return std::exp(-t * lk) - std::exp(-t * lk1); };
  const auto Ft = [&](double t) {
    CompensatedSum<double> s;
    for (std::size_t i = 0; i < coef.size(); ++i) s += coef[i] * std::exp(-t * logd[i]);
    return s.value();
  };
  const double xd = static_cast<double>(x);
  // Both integrands are below x k^-t; cut where the remainder drops under tol.
  const double tol = quad_tol * xd / (static_cast<double>(k) * std::pow(std::log(xd * static_cast<double>(k)), 2));
  const double t_end = std::log(xd / (lk * tol * 1e-3)) / lk;
  const auto a = quad::adaptive_simpson([&](double t) { return Ft(t) * w(t); }, 0.0, t_end, tol);
  const auto b = quad::adaptive_simpson(
      [&](double t) { return t > 0.0 ? w(t) / zeta_real(1.0 + t) : 0.0; }, 0.0, t_end, tol / xd);
  return {a.value, xd * b.value};
}

}  // namespace detail

inline LemmaSuite lemma1_ratios(const SieveTable& table, const LemmaGrid& grid = {}, double quad_tol = 1e-8) {
  std::uint64_t xmax = 0;
  for (auto x : grid.x) xmax = std::max(xmax, x);
  for (auto x : grid.x5) xmax = std::max(xmax, x);
  if (xmax > table.limit()) throw capacity_error("lemma grid exceeds sieve limit");
  for (auto x : grid.x)
    if (x < 2) throw argument_error("lemma grid needs x >= 2");
  const auto mu = mobius_table(table, xmax);

  LemmaSuite out;
  const auto push = [&](LemmaRatio r) {
    out.supremum[r.family - 1] = std::max(out.supremum[r.family - 1], r.value);
    out.ratios.push_back(r);
  };

  std::vector<std::uint64_t> xs(grid.x);
  std::sort(xs.begin(), xs.end());
  const std::uint64_t top = xs.empty() ? 0 : xs.back();
  for (double t : grid.t) {
    const auto ft = f_t_table(table, t, top);
    const double inv_zeta = 1.0 / zeta_real(1.0 + t);
    CompensatedSum<double> over_m, dpow;
    std::uint64_t m = 0;
    for (auto x : xs) {
      for (; m < x; ++m) {
        over_m += ft.values[m] / static_cast<double>(m + 1);
        dpow += std::exp(-t * std::log(static_cast<double>(m + 1)));
      }
      const double xd = static_cast<double>(x), lx = std::log(xd);
      push({1, t, x, 0, over_m.value() / (1.0 + t * lx)});
      push({2, t, x, 0, std::abs(ft.F(xd) - xd * inv_zeta) / (std::pow(xd, 1.0 - t) + dpow.value())});
      CompensatedSum<double> mu_log;
      for (std::uint64_t d = 1; d <= x; ++d)
        if (mu[d] != 0) {
          const double ld = std::log(static_cast<double>(d));
          mu_log += static_cast<double>(mu[d]) * std::exp(-(1.0 + t) * ld) * (lx - ld);
        }
      push({3, t, x, 0, std::abs(over_m.value() - mu_log.value())});
      push({4, t, x, 0, (ft.F(xd) - ft.F(xd / 2.0)) / (xd * (1.0 / lx + t))});
    }
  }
  for (auto k : grid.k)
    for (auto x : grid.x5) {
      const auto [lhs, main] = detail::lemma5_integrals(mu, x, k, quad_tol);
      const double xd = static_cast<double>(x);
      const double l = std::log(xd * static_cast<double>(k));
      push({5, std::numeric_limits<double>::quiet_NaN(), x, k, std::abs(lhs - main) / (xd / (static_cast<double>(k) * l * l))});
    }
  return out;
}

}  // namespace ingham
