#pragma once

// Sieve-backed arithmetic functions: primes, Moebius, von Mangoldt,
// Chebyshev psi, divisor enumeration and partial sums of mu(d)/d.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ingham/error.hpp"
#include "ingham/numeric.hpp"

namespace ingham {

struct PrimePower {
  std::uint32_t prime;
  std::uint32_t exponent;
};

// Smallest-prime-factor table for 2..limit built by a linear sieve.
// Immutable after construction; share freely between threads.
class SieveTable {
public:
  static constexpr std::uint64_t default_capacity = 100'000'000;

  explicit SieveTable(std::uint64_t limit, std::uint64_t capacity = default_capacity) {
    if (limit < 2 || limit > capacity)
      throw capacity_error("sieve limit " + std::to_string(limit) + " outside [2, " + std::to_string(capacity) + "]");
    limit_ = limit;
    spf_.assign(limit + 1, 0);
    primes_.reserve(static_cast<std::size_t>(1.3 * static_cast<double>(limit) / std::log(static_cast<double>(limit))) + 8);
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(static_cast<std::uint32_t>(i));
      }
      const std::uint32_t si = spf_[i];
      for (std::uint32_t p : primes_) {
        if (p > si || i * p > limit) break;
        spf_[i * p] = p;
      }
    }
  }

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  std::uint32_t spf(std::uint64_t m) const {
    check(m, 2);
    return spf_[m];
  }

  bool is_prime(std::uint64_t m) const {
    check(m, 1);
    return m >= 2 && spf_[m] == m;
  }

  // Prime factorization in ascending prime order; empty for m = 1.
  std::vector<PrimePower> factorize(std::uint64_t m) const {
    check(m, 1);
    std::vector<PrimePower> out;
    while (m > 1) {
      const std::uint32_t p = spf_[m];
      std::uint32_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      out.push_back({p, e});
    }
    return out;
  }

  int mobius(std::uint64_t m) const {
    check(m, 1);
    int sign = 1;
    while (m > 1) {
      const std::uint32_t p = spf_[m];
      m /= p;
      if (m % p == 0) return 0;
      sign = -sign;
    }
    return sign;
  }

  double mangoldt(std::uint64_t m) const {
    check(m, 1);
    if (m == 1) return 0.0;
    const std::uint32_t p = spf_[m];
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }

  std::vector<std::uint64_t> divisors(std::uint64_t m) const {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(m)) {
      const std::size_t base = out.size();
      std::uint64_t pk = 1;
      for (std::uint32_t k = 1; k <= e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Throws capacity_error above the limit, argument_error below `lowest`.
  void check(std::uint64_t m, std::uint64_t lowest) const {
    if (m < lowest) throw argument_error("argument " + std::to_string(m) + " below " + std::to_string(lowest));
    if (m > limit_)
      throw capacity_error("argument " + std::to_string(m) + " exceeds sieve limit " + std::to_string(limit_));
  }

private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

inline SieveTable build_sieve(std::uint64_t n, std::uint64_t capacity = SieveTable::default_capacity) {
  return SieveTable(n, capacity);
}

inline int mobius(const SieveTable& t, std::uint64_t m) { return t.mobius(m); }
inline double mangoldt(const SieveTable& t, std::uint64_t m) { return t.mangoldt(m); }
inline std::vector<std::uint64_t> divisors(const SieveTable& t, std::uint64_t m) { return t.divisors(m); }

namespace detail {

inline std::uint64_t floor_index(double x, const SieveTable& t) {
  if (!(x >= 0.0)) throw argument_error("negative argument");
  const double fl = std::floor(x);
  if (fl > static_cast<double>(t.limit()))
    throw capacity_error("argument exceeds sieve limit " + std::to_string(t.limit()));
  return static_cast<std::uint64_t>(fl);
}

}  // namespace detail

// Psi(x) = sum of Lambda(m) over m <= x, summed directly in ascending m.
inline double chebyshev_psi(const SieveTable& t, double x) {
  const std::uint64_t n = detail::floor_index(x, t);
  CompensatedSum<double> s;
  for (std::uint64_t m = 2; m <= n; ++m) {
    const double lam = t.mangoldt(m);
    if (lam != 0.0) s += lam;
  }
  return s.value();
}

// Prefix table of Lambda for many Psi queries.
class PsiTable {
public:
  explicit PsiTable(const SieveTable& t) : limit_(t.limit()), prefix_(t.limit() + 1, 0.0) {
    CompensatedSum<double> s;
    for (std::uint64_t m = 2; m <= limit_; ++m) {
      s += t.mangoldt(m);
      prefix_[m] = s.value();
    }
  }

  double operator()(double x) const {
    if (!(x >= 0.0)) throw argument_error("negative argument");
    const double fl = std::floor(x);
    if (fl > static_cast<double>(limit_)) throw capacity_error("psi argument exceeds table limit");
    return prefix_[static_cast<std::size_t>(fl)];
  }

  std::uint64_t limit() const noexcept { return limit_; }

private:
  std::uint64_t limit_;
  std::vector<double> prefix_;
};

// Delta(x, y) = Psi(y) - Psi(x) - (y - x).
inline double delta(const SieveTable& t, double x, double y) {
  if (x > y) throw argument_error("delta requires x <= y");
  if (x < 0.0) throw argument_error("delta requires x >= 0");
  if (x == y) return 0.0;
  return chebyshev_psi(t, y) - chebyshev_psi(t, x) - (y - x);
}

inline double mu_over_d_partial(const SieveTable& t, std::uint64_t x) {
  if (x > t.limit()) throw capacity_error("argument exceeds sieve limit");
  CompensatedSum<double> s;
  for (std::uint64_t d = 1; d <= x; ++d) {
    const int mu = t.mobius(d);
    if (mu != 0) s += mu / static_cast<double>(d);
  }
  return s.value();
}

// All partial sums sum_{d<=x} mu(d)/d for x = 0..n in one sweep.
inline std::vector<double> mu_over_d_prefix(const SieveTable& t, std::uint64_t n) {
  if (n > t.limit()) throw capacity_error("argument exceeds sieve limit");
  std::vector<double> out(n + 1, 0.0);
  CompensatedSum<double> s;
  for (std::uint64_t d = 1; d <= n; ++d) {
    const int mu = t.mobius(d);
    if (mu != 0) s += mu / static_cast<double>(d);
    out[d] = s.value();
  }
  return out;
}

// Moebius values mu(0..n) with mu(0) = 0.
inline std::vector<int> mobius_table(const SieveTable& t, std::uint64_t n) {
  if (n > t.limit()) throw capacity_error("argument exceeds sieve limit");
  std::vector<int> mu(n + 1, 0);
  if (n >= 1) mu[1] = 1;
  for (std::uint64_t m = 2; m <= n; ++m) {
    const std::uint32_t p = t.spf(m);
    const std::uint64_t r = m / p;
    mu[m] = (r % p == 0) ? 0 : -mu[r];
  }
  return mu;
}

}  // namespace ingham
