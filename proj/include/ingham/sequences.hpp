#pragma once

// Coefficient sequences a_1..a_N, the pairing f(m) = sum_{d|m} a_d and its
// Moebius inverse, and completely multiplicative functions built from
// their values on primes.

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ingham/arith_core.hpp"
#include "ingham/error.hpp"
#include "ingham/numeric.hpp"

namespace ingham {

// Finite prefix a_1..a_N with running sums of a_k and a_k log k.
// Index 0 of the internal arrays is the empty prefix.
template <Coefficient T = cplx>
class CoefficientSequence {
public:
  using value_type = T;
  using weighted_type = weighted_t<T>;

  CoefficientSequence() = default;

  // values[i] holds a_{i+1}.
  explicit CoefficientSequence(std::vector<T> values) : a_(values.size() + 1, T{}) {
    std::copy(values.begin(), values.end(), a_.begin() + 1);
    build_prefixes();
  }

  std::uint64_t length() const noexcept { return a_.empty() ? 0 : a_.size() - 1; }

  T a(std::uint64_t k) const {
    check(k, 1);
    return a_[k];
  }

  T prefix_a(std::uint64_t k) const {
    check(k, 0);
    return prefix_a_[k];
  }

  weighted_type prefix_alog(std::uint64_t k) const {
    check(k, 0);
    return prefix_alog_[k];
  }

  // a_1..a_N
  std::span<const T> values() const noexcept {
    return a_.empty() ? std::span<const T>{} : std::span<const T>(a_).subspan(1);
  }

private:
  void check(std::uint64_t k, std::uint64_t lowest) const {
    if (k < lowest || k > length())
      throw argument_error("index " + std::to_string(k) + " outside [" + std::to_string(lowest) + ", " +
                           std::to_string(length()) + "]");
  }

  void build_prefixes() {
    const std::size_t n = a_.size();
    prefix_a_.assign(n, T{});
    prefix_alog_.assign(n, weighted_type{});
    CompensatedSum<T> sa;
    CompensatedSum<weighted_type> sl;
    for (std::size_t k = 1; k < n; ++k) {
      sa += a_[k];
      prefix_a_[k] = sa.value();
      // log 1 = 0: a_1 never enters the log-weighted prefix.
      if (k > 1) sl += static_cast<weighted_type>(a_[k]) * std::log(static_cast<double>(k));
      prefix_alog_[k] = sl.value();
    }
  }

  std::vector<T> a_;
  std::vector<T> prefix_a_;
  std::vector<weighted_type> prefix_alog_;
};

// f(m) = sum_{d|m} a_d for m = 1..N, returned as f[m-1].
template <Coefficient T>
std::vector<T> f_from_a(const SieveTable& table, const CoefficientSequence<T>& seq) {
  const std::uint64_t n = seq.length();
  if (n > table.limit()) throw capacity_error("sequence longer than sieve limit");
  std::vector<T> f(n, T{});
  const auto a = seq.values();
  for (std::uint64_t d = 1; d <= n; ++d) {
    const T ad = a[d - 1];
    if (ad == T{}) continue;
    for (std::uint64_t m = d; m <= n; m += d) f[m - 1] += ad;
  }
  return f;
}

// a_m = sum_{d|m} mu(m/d) f(d), the Moebius inverse of f_from_a.
template <Coefficient T>
CoefficientSequence<T> a_from_f(const SieveTable& table, std::span<const T> f) {
  const std::uint64_t n = f.size();
  if (n > table.limit()) throw capacity_error("sequence longer than sieve limit");
  const std::vector<int> mu = mobius_table(table, n);
  std::vector<T> a(n, T{});
  for (std::uint64_t q = 1; q <= n; ++q) {
    const int mq = mu[q];
    if (mq == 0) continue;
    for (std::uint64_t d = 1, m = q; m <= n; ++d, m += q) {
      if (mq > 0)
        a[m - 1] += f[d - 1];
      else
        a[m - 1] -= f[d - 1];
    }
  }
  return CoefficientSequence<T>(std::move(a));
}

template <Coefficient T>
CoefficientSequence<T> a_from_f(const SieveTable& table, const std::vector<T>& f) {
  return a_from_f(table, std::span<const T>(f));
}

// Completely multiplicative f given on primes. Primes without an explicit
// entry take `default_value` up to `cutoff` and 1 beyond it.
struct MultiplicativeSpec {
  std::map<std::uint64_t, cplx> prime_values;
  std::uint64_t cutoff = 0;
  cplx default_value{1.0, 0.0};
  bool bound_check = true;

  static constexpr double bound_tolerance = 1e-12;

  cplx value(std::uint64_t p) const {
    if (p > cutoff) return {1.0, 0.0};
    const auto it = prime_values.find(p);
    return it == prime_values.end() ? default_value : it->second;
  }

  // f(p) = 1 for every prime; the product and all deviations vanish.
  bool is_identity() const {
    if (cutoff >= 2 && default_value != cplx(1.0, 0.0)) return false;
    for (const auto& [p, v] : prime_values)
      if (v != cplx(1.0, 0.0)) return false;
    return true;
  }

  // Largest prime whose value can differ from 1 when the default is 1;
  // otherwise the cutoff.
  std::uint64_t support_bound() const {
    if (default_value != cplx(1.0, 0.0)) return cutoff;
    std::uint64_t b = 0;
    for (const auto& [p, v] : prime_values)
      if (v != cplx(1.0, 0.0)) b = p;
    return b;
  }

  // Throws argument_error naming the first offending prime.
  void validate() const {
    for (const auto& [p, v] : prime_values) {
      if (!is_prime_trial(p)) throw argument_error("key " + std::to_string(p) + " is not prime");
      if (p > cutoff)
        throw argument_error("prime " + std::to_string(p) + " exceeds cutoff " + std::to_string(cutoff));
      if (bound_check && std::abs(v) > 1.0 + bound_tolerance) {
        std::ostringstream os;
        os << "prime " << p << ": |f(p)| = " << std::abs(v) << " exceeds 1";
        throw argument_error(os.str());
      }
    }
    if (bound_check && std::abs(default_value) > 1.0 + bound_tolerance) {
      std::ostringstream os;
      os << "default value: |f(p)| = " << std::abs(default_value) << " exceeds 1";
      throw argument_error(os.str());
    }
  }

  static bool is_prime_trial(std::uint64_t m) {
    if (m < 2) return false;
    if (m % 2 == 0) return m == 2;
    for (std::uint64_t d = 3; d * d <= m; d += 2)
      if (m % d == 0) return false;
    return true;
  }

  static MultiplicativeSpec liouville(std::uint64_t cutoff) {
    MultiplicativeSpec s;
    s.cutoff = cutoff;
    s.default_value = {-1.0, 0.0};
    return s;
  }
};

// f(1..N) for a completely multiplicative spec, returned as f[m-1].
inline std::vector<cplx> extend_completely_multiplicative(const MultiplicativeSpec& spec, const SieveTable& table,
                                                          std::uint64_t n) {
  if (n > table.limit()) throw capacity_error("length exceeds sieve limit");
  std::vector<cplx> f(n);
  if (n == 0) return f;
  f[0] = 1.0;
  for (std::uint64_t m = 2; m <= n; ++m) {
    const std::uint32_t p = table.spf(m);
    f[m - 1] = f[m / p - 1] * spec.value(p);
  }
  return f;
}

// The coefficients a with sum_{d|m} a_d equal to the spec's f(m).
inline CoefficientSequence<cplx> coefficients_from_spec(const MultiplicativeSpec& spec, const SieveTable& table,
                                                        std::uint64_t n) {
  return a_from_f(table, extend_completely_multiplicative(spec, table, n));
}

}  // namespace ingham
