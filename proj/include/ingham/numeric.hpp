#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <type_traits>

namespace ingham {

using cplx = std::complex<double>;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

// Value types a coefficient sequence may carry.
template <class T>
concept Coefficient = std::same_as<T, std::int64_t> || std::same_as<T, double> || std::same_as<T, cplx>;

// Type used once a coefficient gets multiplied by a real weight (log k, m^-sigma, ...).
template <class T>
using weighted_t = std::conditional_t<is_complex<T>::value, cplx, double>;

inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const cplx& z) { return std::abs(z); }
inline double abs_value(std::int64_t x) { return static_cast<double>(x < 0 ? -x : x); }

// Neumaier's variant of Kahan summation. Terms must be fed in a fixed order
// for results to be reproducible across runs.
template <class T>
class CompensatedSum {
public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) { *this += init; }

  CompensatedSum& operator+=(T x) {
    if constexpr (is_complex<T>::value) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      add_real(x);
    }
    return *this;
  }
  CompensatedSum& operator-=(T x) { return *this += -x; }

  T value() const {
    if constexpr (is_complex<T>::value)
      return T(re_.value(), im_.value());
    else
      return sum_ + comp_;
  }

private:
  struct Part {
    double s = 0.0, c = 0.0;
    void add(double x) {
      const double t = s + x;
      if (std::abs(s) >= std::abs(x))
        c += (s - t) + x;
      else
        c += (x - t) + s;
      s = t;
    }
    double value() const { return s + c; }
  };

  void add_real(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      const T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
      sum_ = t;
    } else {
      sum_ += x;
    }
  }

  T sum_{};
  T comp_{};
  Part re_, im_;
};

// |a - b| / max(|a|, |b|, floor); floor keeps comparisons near zero meaningful.
template <class T>
double relative_error(const T& a, const T& b, double floor = 1.0) {
  const double scale = std::max({abs_value(a), abs_value(b), floor});
  return abs_value(a - b) / scale;
}

// 1 - p^{-t}, accurate for tiny t.
inline double one_minus_pow_neg(double log_p, double t) { return -std::expm1(-t * log_p); }

}  // namespace ingham
