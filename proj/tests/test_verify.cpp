#include <gtest/gtest.h>

#include <random>

#include "ingham/identities.hpp"
#include "ingham/lemma_bounds.hpp"
#include "ingham/verify.hpp"
#include "oracles.hpp"

using namespace ingham;

namespace {

const SieveTable& table() {
  static const SieveTable t(1'000'000);
  return t;
}

MultiplicativeSpec with_primes(std::initializer_list<std::pair<std::uint64_t, cplx>> pv,
                               std::uint64_t cutoff = 1'000'000) {
  MultiplicativeSpec s;
  s.cutoff = cutoff;
  for (auto [p, v] : pv) s.prime_values[p] = v;
  return s;
}

CoefficientSequence<cplx> seq(const std::vector<cplx>& v) { return CoefficientSequence<cplx>(v); }

std::vector<cplx> unit(std::size_t n) {
  std::vector<cplx> v(n, 0.0);
  v[0] = 1.0;
  return v;
}

std::vector<cplx> mu_values(std::size_t n) {
  std::vector<cplx> v(n);
  for (std::uint64_t m = 1; m <= n; ++m) v[m - 1] = table().mobius(m);
  return v;
}

// Oracle mean of a completely multiplicative f by trial-division factorization.
cplx oracle_mean(const MultiplicativeSpec& s, std::uint64_t n) {
  std::complex<long double> sum = 0;
  for (std::uint64_t m = 1; m <= n; ++m) {
    cplx v = 1.0;
    for (auto [p, e] : oracle::factor(m))
      for (int i = 0; i < e; ++i) v *= s.value(p);
    sum += std::complex<long double>(v.real(), v.imag());
  }
  return {static_cast<double>(sum.real() / n), static_cast<double>(sum.imag() / n)};
}

}  // namespace

TEST(Theorem1, UnitSequenceHasZeroResidual) {
  const auto a = seq(unit(1000));
  EvalParams p;
  p.truncation = 1000;
  for (std::uint64_t n : {2u, 10u, 999u}) EXPECT_EQ(theorem1_residual(a, n, p), 0.0);
  EXPECT_THROW(theorem1_residual(a, 1, p), argument_error);
}

TEST(Theorem1, SpecF2ZeroClosedForm) {
  const auto s = with_primes({{2, 0.0}});
  double prev = 1.0;
  for (std::uint64_t n : {1000u, 10000u, 100000u, 1000000u}) {
    const double r = theorem1_residual(s, table(), n);
    const double mean = static_cast<double>((n + 1) / 2) / static_cast<double>(n);
    const double g = 1.0 - std::pow(2.0, -1.0 - 1.0 / std::log(static_cast<double>(n)));
    EXPECT_NEAR(r, std::abs(mean - g), 1e-14) << n;
    EXPECT_LE(r, 0.6 / std::log(static_cast<double>(n)));
    EXPECT_LE(r, prev);
    prev = r;
  }
  EXPECT_NEAR(theorem1_residual(s, table(), 1'000'000), 0.0244669, 1e-6);
}

TEST(Theorem1, MobiusRecordedNotThresholded) {
  const auto a = seq(mu_values(1'000'000));
  EvalParams p;
  const double r = theorem1_residual(a, 10000, p);
  // A(n)/n = 1/n; g(sigma) approximates 1/zeta(sigma) up to the truncation.
  EXPECT_NEAR(r, std::abs(1e-4 - 1.0 / zeta_real(sigma_for(10000))), 2e-3);
  EXPECT_NEAR(1.0 / zeta_real(sigma_for(10000)), 0.1020886899, 1e-9);
}

TEST(Theorem1, ReportRowsAndSummary) {
  const auto s = with_primes({{2, 0.0}});
  const auto subj = subject_from_spec("f2zero", s, table(), 1'000'000);
  const std::vector<std::uint64_t> grid{1000, 10000, 100000, 1000000};
  const auto rep = theorem1_report(subj, table(), grid, EvalParams{});
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& r : rep.rows) {
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.mean, cplx(0.5));
    EXPECT_EQ(*r.euler_at_1, cplx(0.5));
    EXPECT_EQ(*r.residual_t3, 0.0);
    EXPECT_NEAR(*r.residual_t1, theorem1_residual(s, table(), r.n), 1e-15);
  }
  EXPECT_TRUE(rep.summary.pass);
  EXPECT_TRUE(rep.summary.checks.at("residual_nonincreasing"));
  EXPECT_EQ(rep.summary.max_residual, *rep.rows.front().residual_t1);

  // Worker count does not change the rows.
  Theorem1Options opt;
  opt.workers = 3;
  EXPECT_EQ(theorem1_report(subj, table(), grid, EvalParams{}, opt).rows, rep.rows);

  const std::vector<std::uint64_t> bad{1000, 100};
  EXPECT_THROW(theorem1_report(subj, table(), bad, EvalParams{}), argument_error);
}

TEST(Theorem2, Examples) {
  const std::vector<std::uint64_t> grid{1000, 10000, 100000, 1000000};
  EvalParams p;
  {
    const Subject u{"unit", seq(unit(1'000'000)), std::nullopt};
    const auto rep = theorem2_conditions(u, nullptr, grid, {}, p);
    EXPECT_TRUE(rep.summary.pass);
    EXPECT_EQ(*rep.target, cplx(1.0));
    for (const auto& r : rep.rows) EXPECT_EQ(*r.s_ratio, 0.0);
  }
  {
    const Subject m{"mu", seq(mu_values(1'000'000)), std::nullopt};
    const auto rep = theorem2_conditions(m, nullptr, grid, {}, p);
    EXPECT_TRUE(rep.summary.pass) << rep.summary.checks.size();
    for (const auto& r : rep.rows)
      EXPECT_NEAR(*r.s_ratio, oracle::psi(static_cast<double>(r.n)) / (r.n * std::log(static_cast<double>(r.n))),
                  1e-9);
  }
  {
    const auto s = with_primes({{2, 0.0}});
    const auto subj = subject_from_spec("f2zero", s, table(), 1'000'000);
    const std::vector<double> sig{2.0, 1.5, 1.1, 1.01, 1.001};
    const auto rep = theorem2_conditions(subj, &table(), grid, sig, p);
    EXPECT_TRUE(rep.summary.pass);
    for (const auto& r : rep.sigma_rows) EXPECT_NEAR(r.g.real(), 1.0 - std::pow(2.0, -r.sigma), 1e-15);
    EXPECT_NEAR(rep.target->real(), 0.5, 1e-3);
    const std::vector<double> ascending{1.1, 1.5};
    EXPECT_THROW(theorem2_conditions(subj, &table(), grid, ascending, p), argument_error);
  }
}

TEST(Theorem3, Examples) {
  MultiplicativeSpec one;
  one.cutoff = 1'000'000;
  const auto r0 = theorem3_check(one, table(), 1000, 2.0);
  EXPECT_EQ(r0.residual, 0.0);
  EXPECT_EQ(r0.mu, 0.0);
  EXPECT_EQ(r0.ratio, (Ratio{0.0, false}));

  const auto r1 = theorem3_check(with_primes({{2, 0.0}}), table(), 1'000'000, 2.0);
  EXPECT_LE(r1.residual, 1e-3);
  EXPECT_NEAR(r1.mu, 0.1583851, 1e-4);
  EXPECT_LE(r1.ratio.value, 0.005);

  auto bad = with_primes({{2, 1.5}});
  bad.bound_check = false;
  EXPECT_THROW(theorem3_check(bad, table(), 1000, 2.0), argument_error);
  EXPECT_THROW(theorem3_check(one, table(), 2, 2.0), argument_error);
}

TEST(Theorem3, LiouvilleAgainstDirectSummation) {
  const auto lam = MultiplicativeSpec::liouville(1'000'000);
  const std::uint64_t n = 100000;
  const auto r = theorem3_check(lam, table(), n, 2.0);
  EXPECT_NEAR(r.mean.real(), oracle_mean(lam, n).real(), 1e-15);
  long double prod = 1;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (oracle::is_prime(p)) prod *= (1.0L - 1.0L / p) / (1.0L + 1.0L / p);
  EXPECT_NEAR(r.residual, std::abs(oracle_mean(lam, n).real() - static_cast<double>(prod)), 1e-12);
}

TEST(Theorem3, FrozenEnvelope) {
  // Oracle maximum of residual / mu over this grid is 1.84e-4.
  const MultiplicativeSpec specs[] = {with_primes({{2, 0.0}}), with_primes({{2, 0.0}, {3, 0.0}}),
                                      with_primes({{3, -1.0}})};
  for (const auto& s : specs)
    for (std::uint64_t n : {10000u, 100000u, 1000000u})
      for (double alpha : {1.5, 2.0, 4.0}) {
        const auto r = theorem3_check(s, table(), n, alpha);
        EXPECT_NEAR(r.mean.real(), oracle_mean(s, std::min<std::uint64_t>(n, 10000)).real(),
                    n == 10000 ? 1e-14 : 1.0);
        EXPECT_TRUE(r.ratio.within(1e-3)) << n << " " << alpha;
      }
}

TEST(Ratio, ZeroDenominator) {
  EXPECT_EQ(Ratio::of(0.0, 0.0), (Ratio{0.0, false}));
  EXPECT_EQ(Ratio::of(1e-13, 0.0), (Ratio{0.0, false}));
  EXPECT_TRUE(Ratio::of(1e-6, 0.0).unbounded);
  EXPECT_FALSE(Ratio::of(1e-6, 0.0).within(1e9));
  EXPECT_EQ(Ratio::of(1.0, 4.0).value, 0.25);
}

TEST(Conditions, Cond1) {
  MultiplicativeSpec one;
  one.cutoff = 1'000'000;
  EXPECT_EQ(cond1_ratio(one, table(), 1'000'000), 0.0);
  EXPECT_NEAR(cond1_ratio(with_primes({{2, 0.0}}), table(), 1'000'000), 0.0250858, 1e-6);
  long double direct = 0;
  for (std::uint64_t p = 2; p <= 10000; ++p)
    if (oracle::is_prime(p)) direct += std::log(static_cast<long double>(p)) / p;
  EXPECT_NEAR(cond1_ratio(MultiplicativeSpec::liouville(1'000'000), table(), 10000),
              2.0 * static_cast<double>(direct) / std::log(1e4), 1e-12);
}

TEST(Conditions, Cond2) {
  MultiplicativeSpec one;
  one.cutoff = 1'000'000;
  // n = 2: single nonzero theta term, m = 1.
  EXPECT_NEAR(cond2_ratio(one, table(), 2), (std::abs(std::log(2.0) - 2.0) + 1.0) / (2.0 * std::log(2.0)), 1e-15);
  MultiplicativeSpec zero;
  zero.cutoff = 1'000'000;
  zero.default_value = 0.0;
  double h = 0.0;
  for (int m = 1; m <= 100; ++m) h += 1.0 / m;
  EXPECT_NEAR(cond2_ratio(zero, table(), 100), h / std::log(100.0), 1e-12);
  EXPECT_NEAR(cond2_ratio(zero, table(), 100), 1.1264247, 1e-6);
  // With f = 1: decreasing along the grid.
  double prev = 1e9;
  for (std::uint64_t n : {1000u, 10000u, 100000u, 1000000u}) {
    const double v = cond2_ratio(one, table(), n);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Wintner, Examples) {
  const auto u = check_wintner(seq(unit(10)), 10);
  EXPECT_EQ(u.target, cplx(1.0));
  EXPECT_EQ(u.mean, cplx(1.0));
  EXPECT_EQ(u.residual, 0.0);

  std::vector<cplx> inv2(10000), alt(10000);
  for (std::uint64_t k = 1; k <= 10000; ++k) {
    inv2[k - 1] = 1.0 / static_cast<double>(k * k);
    alt[k - 1] = (k % 2 ? -1.0 : 1.0) / static_cast<double>(k);
  }
  const auto w = check_wintner(seq(inv2), 10000);
  EXPECT_LE(std::abs(w.mean - zeta_real(3.0)), 3e-4);
  EXPECT_LE(w.residual, 3e-4);
  EXPECT_NEAR(w.target.real(), zeta_real(3.0), 1e-8);

  const auto a = check_wintner(seq(alt), 10000);
  long double t = 0;
  for (std::uint64_t k = 1; k <= 10000; ++k) t += ((k % 2) ? -1.0L : 1.0L) / (static_cast<long double>(k) * k);
  EXPECT_NEAR(a.target.real(), static_cast<double>(t), 1e-13);
  EXPECT_NEAR(a.mean.real(), oracle::naive_A(alt, 10000).real() / 1e4, 1e-13);
}

TEST(Axer, Examples) {
  const std::vector<std::uint64_t> grid{10, 1000, 100000, 1000000};
  const auto u = check_axer(seq(unit(1'000'000)), grid);
  for (const auto& pt : u.points) EXPECT_EQ(pt.ratio, 1.0 / static_cast<double>(pt.n));
  EXPECT_TRUE(u.pass);

  const auto m = check_axer(seq(mu_values(1'000'000)), grid);
  EXPECT_NEAR(m.points.back().ratio, 6.0 / (std::numbers::pi * std::numbers::pi), 0.01);
  EXPECT_TRUE(m.pass);

  std::vector<cplx> logs(1'000'000);
  for (std::uint64_t k = 1; k <= logs.size(); ++k) logs[k - 1] = std::log(static_cast<double>(k));
  const auto l = check_axer(seq(logs), grid);
  EXPECT_NEAR(l.points.back().ratio, std::log(1e6) - 1.0, 0.01);
  EXPECT_FALSE(l.pass);
}

TEST(Identities, SDifference) {
  std::mt19937_64 rng(71);
  const auto t = build_sieve(10000);
  const auto a = oracle::random_complex(10000, rng);
  EXPECT_LT(s_difference_identity(seq(a), t, 2).absolute, 1e-12);
  const auto e = s_difference_identity(seq(a), t, 10000);
  EXPECT_LT(e.absolute, 1e-9);
  EXPECT_LT(e.relative(), 1e-8);
  // mu: the divisor sum is -Lambda(m).
  const auto mu = mu_values(1000);
  const auto em = s_difference_identity(seq(mu), t, 1000);
  EXPECT_LT(em.absolute, 1e-10);
  EXPECT_THROW(s_difference_identity(seq(mu), t, 1001), capacity_error);
}

TEST(Identities, SDecomposition) {
  const auto t = build_sieve(1000);
  EXPECT_LT(s_decomposition_identity(seq(unit(1000)), t, 1000).relative(), 1e-8);
  std::mt19937_64 rng(72);
  for (int rep = 0; rep < 5; ++rep)
    EXPECT_LT(s_decomposition_identity(seq(oracle::random_complex(1000, rng)), t, 1000).relative(), 1e-8);
  const auto mu = mu_values(1000);
  EXPECT_LT(s_decomposition_identity(seq(mu), t, 1000).relative(), 1e-8);
  EXPECT_NEAR(ingham_S(seq(mu), 1000).real(), -oracle::psi(1000), 1e-8 * oracle::psi(1000));
  // Summing log(1+1/k) up to k = n instead of n - 1 would leave about n log(1+1/n) ~ 1.
  EXPECT_LT(s_decomposition_identity(seq(unit(1000)), t, 1000).absolute, 1e-9);
}

TEST(Identities, SMultiplicative) {
  const auto t = build_sieve(1000);
  MultiplicativeSpec one;
  one.cutoff = 1000;
  EXPECT_LT(s_multiplicative_identity(one, t, 500).absolute, 1e-10);
  EXPECT_LT(s_multiplicative_identity(with_primes({{2, 0.0}}, 1000), t, 100).relative(), 1e-9);
  EXPECT_LT(s_multiplicative_identity(MultiplicativeSpec::liouville(1000), t, 500).relative(), 1e-9);
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586), rad(0.0, 1.0);
  MultiplicativeSpec r;
  r.cutoff = 1000;
  for (auto p : t.primes()) r.prime_values[p] = std::polar(rad(rng), ang(rng));
  EXPECT_LT(s_multiplicative_identity(r, t, 500).relative(), 1e-9);
}

TEST(Identities, DifferenceFormulaSmall) {
  // K = 10^4 keeps this quick; the acceptance run uses 10^6.
  const auto t = build_sieve(10000);
  EvalParams p;
  p.truncation = 10000;
  const auto u = difference_identity_check(seq(unit(10000)), t, 5, p);
  EXPECT_EQ(u.lhs, cplx(0.0));
  EXPECT_LE(u.error, p.quad_tol);

  const auto mu = difference_identity_check(seq(mu_values(10000)), t, 10, p);
  EXPECT_LE(mu.error, 1e-5);
  EXPECT_LE(mu.slack, 1e-5);

  std::mt19937_64 rng(74);
  auto z = oracle::random_complex(10000, rng);
  for (std::size_t k = 1; k <= z.size(); ++k) z[k - 1] /= static_cast<double>(k * k);
  const auto rz = difference_identity_check(seq(z), t, 20, p);
  EXPECT_LE(rz.error, 1e-5);
  EXPECT_GT(std::abs(rz.lhs), 1e-4);  // not a trivially vanishing case

  EXPECT_THROW(difference_identity_check(seq(z), t, 51, p), argument_error);
  EXPECT_THROW(difference_identity_check(seq(z), t, 1, p), argument_error);
}

TEST(Lemma1, FamilyFiveFirstIntegralClosedForm) {
  // int_0^inf d^-t (k^-t - (k+1)^-t) dt = 1/log(dk) - 1/log(d(k+1)).
  const auto t = build_sieve(1000);
  const auto mu = mobius_table(t, 1000);
  for (std::uint64_t k : {2u, 10u, 100u}) {
    long double closed = 0;
    for (std::uint64_t d = 1; d <= 1000; ++d) {
      if (mu[d] == 0) continue;
      const long double ld = std::log(static_cast<long double>(d));
      const long double lk = std::log(static_cast<long double>(k)), lk1 = std::log(static_cast<long double>(k + 1));
      closed += mu[d] * static_cast<long double>(1000 / d) * (1.0L / (ld + lk) - 1.0L / (ld + lk1));
    }
    const auto [lhs, main] = detail::lemma5_integrals(mu, 1000, k, 1e-10);
    EXPECT_NEAR(lhs, static_cast<double>(closed), 1e-7) << k;
  }
}

TEST(Lemma1, SmallGridMatchesBruteForce) {
  const auto t = build_sieve(2000);
  LemmaGrid g;
  g.x = {100, 2000};
  g.k = {2};
  g.x5 = {1000};
  const auto suite = lemma1_ratios(t, g);
  for (const auto& r : suite.ratios) {
    if (r.family != 1 && r.family != 4) continue;
    long double over_m = 0, F = 0, Fh = 0;
    for (std::uint64_t m = 1; m <= r.x; ++m) {
      long double f = 1;
      for (auto [p, e] : oracle::factor(m)) f *= 1.0L - std::pow(static_cast<long double>(p), -r.t);
      over_m += f / m;
      F += f;
      if (m <= r.x / 2) Fh += f;
    }
    const double lx = std::log(static_cast<double>(r.x));
    if (r.family == 1) EXPECT_NEAR(r.value, static_cast<double>(over_m) / (1.0 + r.t * lx), 1e-10);
    if (r.family == 4) EXPECT_NEAR(r.value, static_cast<double>(F - Fh) / (r.x * (1.0 / lx + r.t)), 1e-10);
  }
}
