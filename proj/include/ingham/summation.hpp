#pragma once

// Ingham sums A(n) = sum a_k [n/k], the log-weighted S(n) = sum a_k [n/k] log k,
// Ingham partial sums of formal series, Tauber and Abel-type sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ingham/error.hpp"
#include "ingham/numeric.hpp"
#include "ingham/sequences.hpp"

namespace ingham {

namespace detail {

template <class T>
T times_count(const T& x, std::uint64_t q) {
  if constexpr (std::is_integral_v<T>)
    return x * static_cast<T>(q);
  else
    return x * static_cast<double>(q);
}

template <class T>
void require_range(const CoefficientSequence<T>& seq, std::uint64_t n, std::uint64_t lowest) {
  if (n < lowest || n > seq.length())
    throw argument_error("n = " + std::to_string(n) + " outside [" + std::to_string(lowest) + ", " +
                         std::to_string(seq.length()) + "]");
}

}  // namespace detail

// sum_{k<=n} a_k [n/k] over maximal blocks of constant [n/k]; O(sqrt n).
template <Coefficient T>
T ingham_A(const CoefficientSequence<T>& seq, std::uint64_t n) {
  detail::require_range(seq, n, 0);
  CompensatedSum<T> s;
  for (std::uint64_t lo = 1; lo <= n;) {
    const std::uint64_t q = n / lo;
    const std::uint64_t hi = n / q;
    s += detail::times_count(seq.prefix_a(hi) - seq.prefix_a(lo - 1), q);
    lo = hi + 1;
  }
  return s.value();
}

// sum_{k<=n} a_k [n/k] log k, same block decomposition over the log prefix.
template <Coefficient T>
weighted_t<T> ingham_S(const CoefficientSequence<T>& seq, std::uint64_t n) {
  detail::require_range(seq, n, 1);
  CompensatedSum<weighted_t<T>> s;
  for (std::uint64_t lo = 2; lo <= n;) {
    const std::uint64_t q = n / lo;
    const std::uint64_t hi = n / q;
    s += (seq.prefix_alog(hi) - seq.prefix_alog(lo - 1)) * static_cast<double>(q);
    lo = hi + 1;
  }
  return s.value();
}

template <Coefficient T>
struct SummationValue {
  using W = weighted_t<T>;
  std::uint64_t n = 0;
  T A{};
  W S{};
  W normalized_A{};
  std::optional<W> normalized_S;  // S/(n log n); not applicable at n = 1
};

template <Coefficient T>
SummationValue<T> summation_value(const CoefficientSequence<T>& seq, std::uint64_t n) {
  SummationValue<T> v;
  v.n = n;
  v.A = ingham_A(seq, n);
  v.S = ingham_S(seq, n);
  v.normalized_A = static_cast<weighted_t<T>>(v.A) / static_cast<double>(n);
  if (n >= 2) v.normalized_S = v.S / (static_cast<double>(n) * std::log(static_cast<double>(n)));
  return v;
}

// One SummationValue per grid point, in grid order. Workers split the grid
// into contiguous chunks; each point is computed exactly as a single call.
template <Coefficient T>
std::vector<SummationValue<T>> batch_sums(const CoefficientSequence<T>& seq, std::span<const std::uint64_t> grid,
                                          unsigned workers = 1) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw argument_error("grid must be ascending");
  if (!grid.empty()) detail::require_range(seq, grid.back(), 1);
  if (!grid.empty()) detail::require_range(seq, grid.front(), 1);
  std::vector<SummationValue<T>> out(grid.size());
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, grid.size()));
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = summation_value(seq, grid[i]);
  };
  if (w == 1) {
    run(0, grid.size());
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (grid.size() + w - 1) / w;
  for (std::size_t b = 0; b < grid.size(); b += chunk) pool.emplace_back(run, b, std::min(grid.size(), b + chunk));
  for (auto& t : pool) t.join();
  return out;
}

// A(k) and S(k) for every k = 0..K in one divisor-lattice sweep, O(K log K).
// Coefficients beyond the sequence length count as zero, so K may exceed it.
template <Coefficient T>
struct InghamSweep {
  std::vector<T> A;
  std::vector<weighted_t<T>> S;
};

template <Coefficient T>
InghamSweep<T> ingham_sweep(const CoefficientSequence<T>& seq, std::uint64_t K) {
  using W = weighted_t<T>;
  std::vector<T> f(K + 1, T{});
  std::vector<W> d(K + 1, W{});
  const std::uint64_t top = std::min<std::uint64_t>(K, seq.length());
  const auto a = seq.values();
  for (std::uint64_t j = 1; j <= top; ++j) {
    const T aj = a[j - 1];
    if (aj == T{}) continue;
    const W bj = static_cast<W>(aj) * std::log(static_cast<double>(j));
    for (std::uint64_t m = j; m <= K; m += j) {
      f[m] += aj;
      d[m] += bj;
    }
  }
  InghamSweep<T> out{std::vector<T>(K + 1, T{}), std::vector<W>(K + 1, W{})};
  CompensatedSum<T> sa;
  CompensatedSum<W> ss;
  for (std::uint64_t k = 1; k <= K; ++k) {
    sa += f[k];
    ss += d[k];
    out.A[k] = sa.value();
    out.S[k] = ss.value();
  }
  return out;
}

// Ingham partial sum sum_{m<=n} (m/n) [n/m] c_m.
template <Coefficient T>
weighted_t<T> ingham_series_partial(const CoefficientSequence<T>& c, std::uint64_t n) {
  detail::require_range(c, n, 1);
  using W = weighted_t<T>;
  CompensatedSum<W> s;
  const double nd = static_cast<double>(n);
  for (std::uint64_t m = 1; m <= n; ++m) {
    const double w = static_cast<double>(m * (n / m)) / nd;
    s += static_cast<W>(c.a(m)) * w;
  }
  return s.value();
}

// Tauber's weighted sum sum_{k<=n} k a_k.
template <Coefficient T>
T tauber_weighted(const CoefficientSequence<T>& a, std::uint64_t n) {
  detail::require_range(a, n, 0);
  CompensatedSum<T> s;
  for (std::uint64_t k = 1; k <= n; ++k) s += detail::times_count(a.a(k), k);
  return s.value();
}

// A finite-prefix series value together with the number of terms used.
template <class V>
struct TruncatedValue {
  V value{};
  std::uint64_t truncation = 0;
};

// sum_{k<=N} a_k x^k with N the sequence length.
template <Coefficient T>
TruncatedValue<weighted_t<T>> abel_power_sum(const CoefficientSequence<T>& a, double x) {
  if (!(x > 0.0 && x < 1.0)) throw argument_error("abel_power_sum requires 0 < x < 1");
  using W = weighted_t<T>;
  CompensatedSum<W> s;
  double xk = 1.0;
  for (std::uint64_t k = 1; k <= a.length(); ++k) {
    xk *= x;
    if (xk == 0.0) break;
    s += static_cast<W>(a.a(k)) * xk;
  }
  return {s.value(), a.length()};
}

// Weights lambda_1 < lambda_2 < ... of an (A, lambda_n) summation.
class WeightSequence {
public:
  enum class Kind { log, explicit_values };

  static WeightSequence log_weights() { return WeightSequence(Kind::log, {}); }

  static WeightSequence explicit_weights(std::vector<double> w) {
    if (w.empty()) throw argument_error("weight sequence is empty");
    if (!(w.front() >= 0.0)) throw argument_error("weights must be nonnegative");
    for (std::size_t i = 1; i < w.size(); ++i)
      if (!(w[i] > w[i - 1])) throw argument_error("weights must be strictly increasing");
    return WeightSequence(Kind::explicit_values, std::move(w));
  }

  Kind kind() const noexcept { return kind_; }

  // lambda_1 = 0 sits on the boundary of the definition.
  bool boundary_first() const noexcept { return kind_ == Kind::log || weights_.front() == 0.0; }

  bool covers(std::uint64_t n) const noexcept { return kind_ == Kind::log || n <= weights_.size(); }

  double operator()(std::uint64_t m) const {
    if (kind_ == Kind::log) return std::log(static_cast<double>(m));
    if (m < 1 || m > weights_.size()) throw argument_error("weight index out of range");
    return weights_[m - 1];
  }

private:
  WeightSequence(Kind k, std::vector<double> w) : kind_(k), weights_(std::move(w)) {}
  Kind kind_;
  std::vector<double> weights_;
};

// m^{-s}; shared with the Dirichlet-series evaluators so the log-weight Abel
// sum and g(sigma) agree term by term.
inline double inv_pow(std::uint64_t m, double s) { return std::pow(static_cast<double>(m), -s); }

// sum_{m<=N} c_m exp(-lambda_m x).
template <Coefficient T>
TruncatedValue<weighted_t<T>> abel_lambda_sum(const CoefficientSequence<T>& c, const WeightSequence& w, double x) {
  if (!(x > 0.0)) throw argument_error("abel_lambda_sum requires x > 0");
  if (!w.covers(c.length())) throw argument_error("weights do not cover the sequence");
  using W = weighted_t<T>;
  CompensatedSum<W> s;
  for (std::uint64_t m = 1; m <= c.length(); ++m) {
    const double e = w.kind() == WeightSequence::Kind::log ? inv_pow(m, x) : std::exp(-w(m) * x);
    s += static_cast<W>(c.a(m)) * e;
  }
  return {s.value(), c.length()};
}

}  // namespace ingham
