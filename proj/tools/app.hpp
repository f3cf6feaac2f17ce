#pragma once

// Command-line front end. run() parses arguments, executes one command and
// returns the process exit status:
//   0 success, 1 a verification check failed, 2 bad input, 3 capacity,
//   4 numerical failure, 5 I/O.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ingham/arith_core.hpp"
#include "ingham/dirichlet.hpp"
#include "ingham/identities.hpp"
#include "ingham/lemma_bounds.hpp"
#include "ingham/report_io.hpp"
#include "ingham/spec_io.hpp"
#include "ingham/summation.hpp"
#include "ingham/verify.hpp"
#include "table.hpp"

namespace ingham::cli {

enum Status : int { ok = 0, check_failed = 1, bad_input = 2, capacity = 3, numerical = 4, io_failure = 5 };

struct Options {
  std::string spec_path;
  std::string coeffs;
  std::string grid;
  std::string sigma;
  std::string in_path;
  std::string out_path;
  std::string format = "csv";
  std::string which;
  double alpha = 2.0;
  double quad_tol = 1e-8;
  double tail_tol = 1e-12;
  std::uint64_t truncation = 1'000'000;
  std::optional<double> envelope;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool wall_time = false;
};

namespace detail {

inline std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

inline EvalParams params_of(const Options& o) {
  EvalParams p;
  p.quad_tol = o.quad_tol;
  p.tail_tol = o.tail_tol;
  p.alpha = o.alpha;
  p.truncation = o.truncation;
  p.validate();
  return p;
}

inline std::vector<std::uint64_t> grid_of(const Options& o) {
  if (o.grid.empty()) throw parse_error("--n is required");
  return io::parse_grid(o.grid);
}

inline void require_one_source(const Options& o) {
  if (o.spec_path.empty() == o.coeffs.empty()) throw parse_error("give exactly one of --spec or --coeffs");
}

// Sieve large enough for the grid, the requested sequence length, and every
// prime a spec moves away from 1 (so Euler products are exact).
struct Workspace {
  std::optional<MultiplicativeSpec> spec;
  SieveTable table;
  Subject subject;
};

inline Workspace workspace(const Options& o, std::uint64_t length, bool exact_product) {
  std::optional<MultiplicativeSpec> spec;
  std::uint64_t need = std::max<std::uint64_t>(length, 2);
  if (!o.spec_path.empty()) {
    spec = io::load_spec(o.spec_path);
    if (exact_product) need = std::max(need, spec->support_bound());
  }
  SieveTable table(need);
  Subject s = spec ? subject_from_spec(stem(o.spec_path), *spec, table, length)
                   : io::load_coefficients(o.coeffs, table, length);
  if (!o.coeffs.empty() && io::is_builtin(o.coeffs)) s.name = o.coeffs;
  return {spec, std::move(table), std::move(s)};
}

inline void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_file(o.out_path, text);
  }
}

inline void emit(const Options& o, const VerificationReport& rep) {
  emit(o, o.format == "json" ? io::to_json_text(rep, {o.wall_time, 2}) : io::to_csv(rep));
}

inline void emit(const Options& o, const Table& t) { emit(o, o.format == "json" ? to_json_text(t) : to_csv(t)); }

inline Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

}  // namespace detail

inline int cmd_sieve(const Options& o) {
  const auto grid = detail::grid_of(o);
  const SieveTable table(std::max<std::uint64_t>(grid.back(), 2));
  const PsiTable psi(table);
  const auto mu_d = mu_over_d_prefix(table, grid.back());
  Table t{"sieve", {"n", "pi", "psi", "delta", "mertens", "mu_over_d"}, {}, {}};
  std::uint64_t pi = 0, m = 0;
  std::int64_t mertens = 0;
  std::size_t next = 0;
  const auto primes = table.primes();
  for (auto n : grid) {
    while (next < primes.size() && primes[next] <= n) ++next;
    pi = next;
    for (; m < n; ++m) mertens += table.mobius(m + 1);
    const double x = static_cast<double>(n);
    t.add({n, pi, psi(x), psi(x) - x, static_cast<double>(mertens), mu_d[n]});
  }
  detail::emit(o, t);
  return ok;
}

inline int cmd_mean(const Options& o) {
  detail::require_one_source(o);
  const auto grid = detail::grid_of(o);
  const auto w = detail::workspace(o, grid.back(), false);
  detail::emit(o, mean_report(w.subject, w.table, grid, o.alpha, o.workers));
  return ok;
}

inline int cmd_ingham(const Options& o) {
  detail::require_one_source(o);
  const auto grid = detail::grid_of(o);
  const auto w = detail::workspace(o, grid.back(), false);
  const auto rows = batch_sums(w.subject.a, std::span<const std::uint64_t>(grid), o.workers);
  Table t{"ingham:" + w.subject.name, {"n", "re_A", "im_A", "re_S", "im_S", "re_mean", "im_mean", "s_ratio"}, {}, {}};
  for (const auto& r : rows) {
    std::optional<double> sr;
    if (r.normalized_S) sr = std::abs(*r.normalized_S);
    t.add({r.n, r.A.real(), r.A.imag(), r.S.real(), r.S.imag(), r.normalized_A.real(), r.normalized_A.imag(),
           detail::opt_cell(sr)});
  }
  detail::emit(o, t);
  return ok;
}

inline int cmd_verify(const Options& o) {
  const auto grid = detail::grid_of(o);
  const auto params = detail::params_of(o);
  const std::string& w = o.which;
  if (w == "theorem1" || w == "theorem2") {
    detail::require_one_source(o);
    const std::uint64_t len = o.spec_path.empty() ? std::max(grid.back(), o.truncation) : grid.back();
    const auto ws = detail::workspace(o, len, true);
    VerificationReport rep;
    if (w == "theorem1") {
      Theorem1Options opt;
      opt.alpha = o.alpha;
      opt.workers = o.workers;
      if (o.envelope) opt.residual_coefficient = *o.envelope;
      rep = theorem1_report(ws.subject, ws.table, grid, params, opt);
    } else {
      Theorem2Options opt;
      if (o.envelope) opt.s_threshold = *o.envelope;
      const auto sig = o.sigma.empty() ? std::vector<double>{} : io::parse_reals(o.sigma);
      rep = theorem2_conditions(ws.subject, &ws.table, grid, sig, params, opt);
    }
    detail::emit(o, rep);
    return rep.summary.pass ? ok : check_failed;
  }
  if (w == "theorem3") {
    if (o.spec_path.empty()) throw parse_error("verify theorem3 needs --spec");
    const auto spec = io::load_spec(o.spec_path);
    const SieveTable table(std::max<std::uint64_t>(grid.back(), 2));
    Theorem3Options opt;
    opt.alpha = o.alpha;
    opt.envelope = o.envelope.value_or(1e-2);
    opt.workers = o.workers;
    const auto rep = theorem3_report(detail::stem(o.spec_path), spec, table, grid, opt);
    detail::emit(o, rep);
    return rep.summary.pass ? ok : check_failed;
  }
  if (w == "cond") {
    if (o.spec_path.empty()) throw parse_error("verify cond needs --spec");
    const auto spec = io::load_spec(o.spec_path);
    const SieveTable table(std::max<std::uint64_t>(grid.back(), 2));
    Table t{"cond:" + detail::stem(o.spec_path), {"n", "cond1", "cond2"}, {}, {}};
    for (auto n : grid) t.add({n, cond1_ratio(spec, table, n), cond2_ratio(spec, table, n)});
    detail::emit(o, t);
    return ok;
  }
  if (w == "wintner") {
    detail::require_one_source(o);
    const auto ws = detail::workspace(o, grid.back(), false);
    Table t{"wintner:" + ws.subject.name,
            {"n", "abs_sum_over_k", "re_target", "im_target", "re_mean", "im_mean", "residual"}, {}, {}};
    for (auto n : grid) {
      const auto r = check_wintner(ws.subject.a, n);
      t.add({n, r.abs_sum_over_k, r.target.real(), r.target.imag(), r.mean.real(), r.mean.imag(), r.residual});
    }
    detail::emit(o, t);
    return ok;
  }
  if (w == "axer") {
    detail::require_one_source(o);
    const auto ws = detail::workspace(o, grid.back(), false);
    const auto r = check_axer(ws.subject.a, grid, o.envelope.value_or(2.0));
    Table t{"axer:" + ws.subject.name, {"n", "ratio", "pass"}, {}, {{"bound", r.bound}, {"pass", r.pass}}};
    for (const auto& p : r.points) t.add({p.n, p.ratio, p.ratio <= r.bound});
    detail::emit(o, t);
    return r.pass ? ok : check_failed;
  }
  throw parse_error("unknown check '" + w + "' (theorem1, theorem2, theorem3, cond, wintner, axer)");
}

inline int cmd_lemma(const Options& o) {
  LemmaGrid g;
  std::uint64_t top = 0;
  if (!o.grid.empty()) g.x = io::parse_grid(o.grid);
  for (auto x : g.x) top = std::max(top, x);
  for (auto x : g.x5) top = std::max(top, x);
  const SieveTable table(top);
  const auto suite = lemma1_ratios(table, g, o.quad_tol);
  const double env = o.envelope.value_or(5.0);
  Table t{"lemma1", {"family", "t", "x", "k", "ratio", "pass"}, {}, {}};
  for (const auto& r : suite.ratios)
    t.add({static_cast<std::uint64_t>(r.family), r.family == 5 ? Cell() : Cell(r.t), r.x,
           r.family == 5 ? Cell(r.k) : Cell(), r.value, r.value <= env});
  t.summary.push_back({"envelope", env});
  for (int f = 0; f < 5; ++f) t.summary.push_back({"supremum_" + std::to_string(f + 1), suite.supremum[f]});
  t.summary.push_back({"pass", suite.max() <= env});
  detail::emit(o, t);
  return suite.max() <= env ? ok : check_failed;
}

inline int cmd_identity(const Options& o) {
  const auto grid = detail::grid_of(o);
  const double tol = o.envelope.value_or(1e-8);
  const std::string& w = o.which;
  if (w == "formula") {
    detail::require_one_source(o);
    const auto params = detail::params_of(o);
    const std::uint64_t len = o.spec_path.empty() ? std::max(grid.back(), o.truncation) : o.truncation;
    const auto ws = detail::workspace(o, len, false);
    const double bound = o.envelope.value_or(1e-5);
    Table t{"identity:formula:" + ws.subject.name,
            {"n", "re_lhs", "im_lhs", "re_rhs", "im_rhs", "error", "slack", "pass"}, {}, {}};
    bool all = true;
    for (auto n : grid) {
      const auto r = difference_identity_check(ws.subject.a, ws.table, n, params);
      const bool pass = r.error <= bound;
      all = all && pass;
      t.add({n, r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), r.error, r.slack, pass});
    }
    t.summary = {{"truncation", o.truncation}, {"bound", bound}, {"pass", all}};
    detail::emit(o, t);
    return all ? ok : check_failed;
  }
  Table t{"identity:" + w, {"n", "absolute", "scale", "relative", "pass"}, {}, {}};
  bool all = true;
  const auto add = [&](std::uint64_t n, const IdentityError& e) {
    const bool pass = e.relative() <= tol;
    all = all && pass;
    t.add({n, e.absolute, e.scale, e.relative(), pass});
  };
  if (w == "s-multiplicative") {
    if (o.spec_path.empty()) throw parse_error("identity s-multiplicative needs --spec");
    const auto spec = io::load_spec(o.spec_path);
    const SieveTable table(std::max<std::uint64_t>(grid.back(), 2));
    for (auto n : grid) add(n, s_multiplicative_identity(spec, table, n));
  } else if (w == "s-difference" || w == "s-decomposition") {
    detail::require_one_source(o);
    const auto ws = detail::workspace(o, grid.back(), false);
    for (auto n : grid)
      add(n, w == "s-difference" ? s_difference_identity(ws.subject.a, ws.table, n)
                                 : s_decomposition_identity(ws.subject.a, ws.table, n));
    t.experiment_id += ":" + ws.subject.name;
  } else {
    throw parse_error("unknown identity '" + w + "' (s-difference, s-decomposition, s-multiplicative, formula)");
  }
  t.summary = {{"tolerance", tol}, {"pass", all}};
  detail::emit(o, t);
  return all ? ok : check_failed;
}

// Re-emit a stored JSON report, in either format.
inline int cmd_report(const Options& o) {
  if (o.in_path.empty()) throw parse_error("report needs --in");
  const auto rep = io::report_from_json_text(io::read_file(o.in_path));
  detail::emit(o, rep);
  return ok;
}

inline int run(int argc, char** argv) {
  CLI::App app{"Ingham summation, Dirichlet series and Tauberian checks"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out_path, "Write output to a file instead of stdout");
    s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->envname("INGHAM_FORMAT");
    s->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->envname("INGHAM_WORKERS");
  };
  const auto source = [&](CLI::App* s) {
    s->add_option("--spec", o.spec_path, "Completely multiplicative spec (JSON)");
    s->add_option("--coeffs", o.coeffs, "Built-in name (mu, unit, one, liouville, inverse-squares) or coefficients JSON");
  };
  const auto grid = [&](CLI::App* s) {
    s->add_option("--n,--grid", o.grid, "n values: list 10,100,1e3; range a:b:xF or a:b:+s");
  };
  const auto numeric = [&](CLI::App* s) {
    s->add_option("--alpha", o.alpha, "Hoelder exponent")->envname("INGHAM_ALPHA");
    s->add_option("--quad-tol", o.quad_tol, "Quadrature tolerance")->envname("INGHAM_QUAD_TOL");
    s->add_option("--tail-tol", o.tail_tol, "Integral tail tolerance")->envname("INGHAM_TAIL_TOL");
    s->add_option("--truncation", o.truncation, "Series truncation K")->envname("INGHAM_TRUNCATION");
    s->add_option("--envelope", o.envelope, "Override the frozen pass threshold")->envname("INGHAM_ENVELOPE");
    s->add_flag("--wall-time", o.wall_time, "Include wall time in JSON summaries");
  };

  auto* sieve = app.add_subcommand("sieve", "pi, psi, Delta, Mertens and sum mu(d)/d along a grid");
  grid(sieve);
  common(sieve);
  auto* mean = app.add_subcommand("mean", "Mean values A(n)/n, Euler product at 1 and mu_n(alpha)");
  source(mean);
  grid(mean);
  numeric(mean);
  common(mean);
  auto* ingham = app.add_subcommand("ingham", "Ingham sums A(n) and S(n)");
  source(ingham);
  grid(ingham);
  common(ingham);
  auto* verify = app.add_subcommand("verify", "Theorem and hypothesis checks");
  verify->add_option("check", o.which, "theorem1, theorem2, theorem3, cond, wintner, axer")->required();
  source(verify);
  grid(verify);
  numeric(verify);
  verify->add_option("--sigma", o.sigma, "Descending sigma list for theorem2")->envname("INGHAM_SIGMA");
  common(verify);
  auto* lemma = app.add_subcommand("lemma", "Ratio suite for the five f_t estimates");
  grid(lemma);
  numeric(lemma);
  common(lemma);
  auto* identity = app.add_subcommand("identity", "Exact identity checks");
  identity->add_option("kind", o.which, "s-difference, s-decomposition, s-multiplicative, formula")->required();
  source(identity);
  grid(identity);
  numeric(identity);
  common(identity);
  auto* report = app.add_subcommand("report", "Convert a stored JSON report");
  report->add_option("--in", o.in_path, "Report JSON")->required();
  common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }

  try {
    if (*sieve) return cmd_sieve(o);
    if (*mean) return cmd_mean(o);
    if (*ingham) return cmd_ingham(o);
    if (*verify) return cmd_verify(o);
    if (*lemma) return cmd_lemma(o);
    if (*identity) return cmd_identity(o);
    if (*report) return cmd_report(o);
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return bad_input;
  } catch (const argument_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return bad_input;
  } catch (const capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return capacity;
  } catch (const convergence_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const singular_factor_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return io_failure;
  } catch (const std::bad_alloc&) {
    std::cerr << "capacity error: out of memory\n";
    return capacity;
  }
  return bad_input;
}

}  // namespace ingham::cli
