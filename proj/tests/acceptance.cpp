// One PASS/FAIL line per acceptance criterion, with timings and the measured
// quantities. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "../tools/app.hpp"
#include "ingham/identities.hpp"
#include "ingham/lemma_bounds.hpp"
#include "ingham/spec_io.hpp"
#include "ingham/verify.hpp"
#include "oracles.hpp"

using namespace ingham;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmtd(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

const SieveTable& big() {
  static const SieveTable t(1'000'000);
  return t;
}

MultiplicativeSpec f2zero() {
  MultiplicativeSpec s;
  s.cutoff = 1'000'000;
  s.prime_values[2] = 0.0;
  return s;
}

Outcome mobius_machinery() {
  const auto t = build_sieve(10000);
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    int s = 0;
    for (auto d : t.divisors(m)) s += t.mobius(d);
    if (s != (m == 1)) return {false, "divisor sum of mu nonzero at m=" + std::to_string(m)};
  }
  std::mt19937_64 rng(1001);
  double worst = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = oracle::random_complex(2048, rng);
    const auto f = f_from_a(t, CoefficientSequence<cplx>(a));
    const auto back = a_from_f(t, f).values();
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel(back[i], a[i]));
  }
  return {worst <= 1e-12, "max round-trip error " + fmtd("%.3g", worst)};
}

Outcome mu_cross_identities() {
  const std::uint64_t N = 100000;
  const auto t = build_sieve(N);
  std::vector<std::int64_t> mu(N);
  std::vector<cplx> muc(N);
  for (std::uint64_t m = 1; m <= N; ++m) muc[m - 1] = mu[m - 1] = t.mobius(m);
  const auto exact = ingham_sweep(CoefficientSequence<std::int64_t>(mu), N);
  const auto real = ingham_sweep(CoefficientSequence<cplx>(muc), N);
  long double psi = 0;
  double worst = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (exact.A[n] != 1) return {false, "A(" + std::to_string(n) + ") != 1"};
    psi += oracle::mangoldt(n);
    const double p = static_cast<double>(psi);
    worst = std::max(worst, std::abs(real.S[n] + p) / std::max(1.0, p));
  }
  return {worst <= 1e-9, "A(n)=1 for all n; max |S+Psi|/max(1,Psi) " + fmtd("%.3g", worst)};
}

Outcome mu_over_d() {
  const auto pre = mu_over_d_prefix(big(), 1'000'000);
  double worst = 0;
  for (std::size_t x = 1; x < pre.size(); ++x) worst = std::max(worst, std::abs(pre[x]));
  return {worst <= 1.0, "max |partial sum| " + fmtd("%.10g", worst)};
}

Outcome block_decomposition() {
  std::mt19937_64 rng(1004);
  std::vector<std::uint64_t> grid(2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) grid[n - 1] = n;
  double worst = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = oracle::random_complex(2000, rng);
    const auto batch = batch_sums(CoefficientSequence<cplx>(a), std::span<const std::uint64_t>(grid));
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      worst = std::max(worst, rel(batch[n - 1].A, oracle::naive_A(a, n)));
      worst = std::max(worst, rel(batch[n - 1].S, oracle::naive_S(a, n)));
    }
  }
  return {worst <= 1e-10, "max relative error " + fmtd("%.3g", worst)};
}

Outcome wintner() {
  std::vector<cplx> a(10000);
  for (std::uint64_t k = 1; k <= a.size(); ++k) a[k - 1] = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  const auto w = check_wintner(CoefficientSequence<cplx>(a), 10000);
  const double err = std::abs(w.mean - 1.2020569031595942);
  return {err <= 3e-4, "|A(n)/n - zeta(3)| = " + fmtd("%.4g", err)};
}

Outcome theorem1_trend() {
  double prev = 1e9;
  bool ok = true;
  std::string d;
  for (std::uint64_t n : {1000u, 10000u, 100000u, 1000000u}) {
    const double r = theorem1_residual(f2zero(), big(), n);
    const double ln = std::log(static_cast<double>(n));
    const double closed = std::abs(static_cast<double>((n + 1) / 2) / n - (1.0 - std::pow(2.0, -1.0 - 1.0 / ln)));
    ok = ok && r <= 0.6 / ln && r <= prev && std::abs(r - closed) <= 1e-12;
    prev = r;
    d += fmtd(" %.6g", r);
  }
  return {ok, "residuals" + d};
}

Outcome theorem3_single_prime() {
  const auto r = theorem3_check(f2zero(), big(), 1'000'000, 2.0);
  const double mu_closed = std::sqrt(std::log(2.0) / (2.0 * std::log(1e6)));
  const bool ok = r.residual <= 1e-3 && std::abs(r.product - cplx(0.5)) <= 1e-15 && std::abs(r.mu - mu_closed) <= 1e-4;
  return {ok, "residual " + fmtd("%.3g", r.residual) + ", mu_n(2) " + fmtd("%.7f", r.mu) + " (closed form " +
                  fmtd("%.7f", mu_closed) + ")"};
}

Outcome liouville_closed_forms() {
  const auto lam = MultiplicativeSpec::liouville(1'000'000);
  const cplx prod = euler_product(lam, big(), 2.0, 1'000'000);
  const CoefficientSequence<cplx> coeffs(io::builtin_values("liouville", big(), 1'000'000));
  EvalParams p;
  p.truncation = 1'000'000;
  const cplx g = g_eval(coeffs, p).value;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double z2 = pi2 / 6.0, z4 = pi2 * pi2 / 90.0;
  const double e1 = std::abs(prod - z4 / (z2 * z2)), e2 = std::abs(g - z4 / z2);
  return {e1 <= 1e-5 && e2 <= 2e-3, "product error " + fmtd("%.3g", e1) + ", series error " + fmtd("%.3g", e2)};
}

Outcome identity_suites() {
  std::mt19937_64 rng(1009);
  const auto t = build_sieve(10000);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), rad(0.0, 1.0);
  double d = 0, c = 0, m = 0;
  for (int rep = 0; rep < 20; ++rep) {
    d = std::max(d, s_difference_identity(CoefficientSequence<cplx>(oracle::random_complex(10000, rng)), t, 10000)
                        .relative());
    c = std::max(c, s_decomposition_identity(CoefficientSequence<cplx>(oracle::random_complex(1000, rng)), t, 1000)
                        .relative());
    MultiplicativeSpec s;
    s.cutoff = 10000;
    for (auto p : t.primes())
      if (p <= 500) s.prime_values[p] = std::polar(rad(rng), ang(rng));
    m = std::max(m, s_multiplicative_identity(s, t, 500).relative());
  }
  return {d <= 1e-8 && c <= 1e-8 && m <= 1e-8,
          "max relative " + fmtd("%.3g", d) + " / " + fmtd("%.3g", c) + " / " + fmtd("%.3g", m)};
}

Outcome difference_formula() {
  const std::uint64_t K = 1'000'000;
  std::vector<cplx> unit(K, 0.0), mu(K), z(K);
  unit[0] = 1.0;
  for (std::uint64_t m = 1; m <= K; ++m) mu[m - 1] = big().mobius(m);
  std::mt19937_64 rng(1010);
  z = oracle::random_complex(K, rng);
  for (std::uint64_t k = 1; k <= K; ++k) z[k - 1] /= static_cast<double>(k) * static_cast<double>(k);
  EvalParams p;
  p.truncation = K;
  p.quad_tol = 1e-8;
  double worst = 0;
  for (const auto* a : {&unit, &mu, &z})
    for (std::uint64_t n : {5u, 10u, 20u}) {
      const auto r = difference_identity_check(CoefficientSequence<cplx>(*a), big(), n, p);
      worst = std::max(worst, r.error);
    }
  return {worst <= 1e-5, "max |LHS - RHS| " + fmtd("%.3g", worst)};
}

Outcome lemma_envelope() {
  const auto s = lemma1_ratios(big());
  std::string d = "suprema";
  for (double v : s.supremum) d += fmtd(" %.6g", v);
  return {s.max() <= 5.0, d};
}

std::filesystem::path golden_dir() { return INGHAM_GOLDEN_DIR; }
std::filesystem::path specs_dir() { return INGHAM_SPECS_DIR; }

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ingham");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

Outcome cli_determinism() {
  const auto tmp = std::filesystem::temp_directory_path() / "ingham_acceptance";
  std::filesystem::create_directories(tmp);
  const std::string liou = (specs_dir() / "liouville.json").string(), f2 = (specs_dir() / "f2zero.json").string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"mean_liouville", {"mean", "--spec", liou, "--n", "1000000"}},
      {"ingham_mu", {"ingham", "--coeffs", "mu", "--n", "10,100,1000"}},
      {"theorem1_f2zero", {"verify", "theorem1", "--spec", f2, "--grid", "1e3:1e6:x10"}},
  };
  int compared = 0;
  for (const auto& [name, base] : cases)
    for (const std::string fmt : {"csv", "json"})
      for (const std::string workers : {"1", "4"}) {
        const auto out = (tmp / (name + "." + workers + "." + fmt)).string();
        auto args = base;
        args.insert(args.end(), {"--format", fmt, "--workers", workers, "--out", out});
        if (cli(args) != 0) return {false, name + " exited nonzero"};
        if (io::read_file(out) != io::read_file((golden_dir() / (name + "." + fmt)).string()))
          return {false, out + " differs from golden"};
        ++compared;
      }
  // JSON report round trip through the report command.
  const auto rt = (tmp / "roundtrip.json").string();
  const auto golden = (golden_dir() / "theorem1_f2zero.json").string();
  if (cli({"report", "--in", golden, "--format", "json", "--out", rt}) != 0 || io::read_file(rt) != io::read_file(golden))
    return {false, "report round trip changed bytes"};
  return {true, std::to_string(compared) + " outputs byte-identical to golden, round trip stable"};
}

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "mobius machinery", 10, mobius_machinery},
      {2, "mu cross identities", 30, mu_cross_identities},
      {3, "partial mu/d bound", 10, mu_over_d},
      {4, "block decomposition vs naive", 60, block_decomposition},
      {5, "wintner check", 1, wintner},
      {6, "theorem 1 trend", 60, theorem1_trend},
      {7, "theorem 3 single prime", 30, theorem3_single_prime},
      {8, "liouville closed forms", 30, liouville_closed_forms},
      {9, "exact identity suites", 60, identity_suites},
      {10, "difference formula", 300, difference_formula},
      {11, "lemma ratio envelope", 300, lemma_envelope},
      {12, "cli determinism", 30, cli_determinism},
  };
  big();
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs <= c.budget_seconds;
    if (!pass) ++failed;
    std::printf("%s %2d %-30s %7.2fs (budget %gs)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
