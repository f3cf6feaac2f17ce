// Mean value of a completely multiplicative function next to its Euler
// product, for f(2) = 0 and the Liouville function.

#include <cstdio>

#include "ingham/verify.hpp"

int main() {
  using namespace ingham;
  const SieveTable table(1'000'000);

  MultiplicativeSpec f2zero;
  f2zero.cutoff = 1'000'000;
  f2zero.prime_values[2] = 0.0;
  auto lam = MultiplicativeSpec::liouville(1'000'000);

  std::printf("%-10s %8s %14s %14s %12s %10s\n", "f", "n", "mean", "product", "residual", "mu_n(2)");
  for (const auto* spec : {&f2zero, &lam})
    for (std::uint64_t n : {1000u, 100000u, 1000000u}) {
      const auto r = theorem3_check(*spec, table, n, 2.0);
      std::printf("%-10s %8llu %14.10f %14.10f %12.3e %10.6f\n", spec == &lam ? "liouville" : "f(2)=0",
                  static_cast<unsigned long long>(n), r.mean.real(), r.product.real(), r.residual, r.mu);
    }
}
