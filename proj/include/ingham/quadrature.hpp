#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "ingham/error.hpp"

namespace ingham::quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;         // accumulated local error estimate
  std::size_t evaluations = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  std::size_t evals = 0;
  std::size_t max_evals;
  double err = 0.0;
  bool exhausted = false;

  double call(double x) {
    ++evals;
    return f(x);
  }

  // Simpson on [a, b] with the midpoint already known; Richardson-corrected.
  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = call(lm), frm = call(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || evals >= max_evals) {
      exhausted = exhausted || std::abs(diff) > 15.0 * tol;
      err += std::abs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    if (std::abs(diff) <= 15.0 * tol) {
      err += std::abs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace detail

// Adaptive Simpson on [a, b] to absolute tolerance `tol`. The interval is
// first split into `panels` pieces so narrow features near an endpoint are
// seen by the initial sampling. Throws convergence_error when the depth or
// evaluation budget runs out before the tolerance is met.
template <class F>
Estimate adaptive_simpson(F&& f, double a, double b, double tol, int panels = 16, int max_depth = 50,
                          std::size_t max_evals = 2'000'000) {
  if (!(b > a)) return {};
  detail::SimpsonState<F> st{f, 0, max_evals};
  double total = 0.0;
  const double h = (b - a) / panels;
  double x0 = a, f0 = st.call(a);
  for (int i = 0; i < panels; ++i) {
    const double x1 = (i + 1 == panels) ? b : a + (i + 1) * h;
    const double xm = 0.5 * (x0 + x1);
    const double fm = st.call(xm), f1 = st.call(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += st.recurse(x0, x1, f0, fm, f1, whole, tol / panels, max_depth);
    x0 = x1;
    f0 = f1;
  }
  if (st.exhausted) throw convergence_error("adaptive Simpson did not reach tolerance");
  return {total, st.err, st.evals};
}

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> nodes, weights;

  explicit GaussLegendre(std::size_t n) : nodes(n), weights(n) {
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

// Node/weight list for a composite Gauss-Legendre rule on [a, b] with panel
// edges growing geometrically from `first_width`, so integrands that vary fast
// near `a` and slowly far from it share one node set.
struct NodeSet {
  std::vector<double> x, w;
};

inline NodeSet geometric_panels(double a, double b, double first_width, double ratio, std::size_t order) {
  const GaussLegendre gl(order);
  NodeSet out;
  double lo = a, width = first_width;
  while (lo < b) {
    const double hi = std::min(b, lo + width);
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < order; ++i) {
      out.x.push_back(c + r * gl.nodes[i]);
      out.w.push_back(r * gl.weights[i]);
    }
    lo = hi;
    width *= ratio;
  }
  return out;
}

}  // namespace ingham::quad
