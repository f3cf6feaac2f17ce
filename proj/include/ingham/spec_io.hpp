#pragma once

// Inputs for the command line: multiplicative specs and coefficient files in
// JSON, the built-in sequences, and n-grid syntax.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ingham/error.hpp"
#include "ingham/report_io.hpp"
#include "ingham/sequences.hpp"
#include "ingham/verify.hpp"

namespace ingham::io {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw io_error("failed reading " + path);
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw io_error("failed writing " + path);
}

namespace detail {

inline std::uint64_t natural(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  throw parse_error(where + ": expected a natural number");
}

}  // namespace detail

// {"type":"completely_multiplicative","cutoff":N,"default":[re,im],"primes":{"2":[re,im]}}
// Optional "bound_check" (default true). Errors name the offending field.
inline MultiplicativeSpec spec_from_json(const json& j, const std::string& origin = "spec") {
  if (!j.is_object()) throw parse_error(origin + ": expected an object");
  const auto& type = detail::field(j, "type", origin);
  if (!type.is_string() || type.get<std::string>() != "completely_multiplicative")
    throw parse_error(origin + ".type: expected \"completely_multiplicative\"");
  MultiplicativeSpec s;
  s.cutoff = detail::natural(detail::field(j, "cutoff", origin), origin + ".cutoff");
  if (j.contains("default")) s.default_value = to_complex(j["default"], origin + ".default");
  if (j.contains("bound_check")) {
    if (!j["bound_check"].is_boolean()) throw parse_error(origin + ".bound_check: expected a boolean");
    s.bound_check = j["bound_check"].get<bool>();
  }
  if (j.contains("primes")) {
    const auto& pr = j["primes"];
    if (!pr.is_object()) throw parse_error(origin + ".primes: expected an object keyed by prime");
    for (const auto& [key, v] : pr.items()) {
      const std::string where = origin + ".primes." + key;
      std::uint64_t p = 0;
      std::size_t used = 0;
      try {
        p = std::stoull(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != key.size()) throw parse_error(where + ": key is not a decimal integer");
      s.prime_values[p] = to_complex(v, where);
    }
  }
  for (const auto& k : j.items())
    if (k.key() != "type" && k.key() != "cutoff" && k.key() != "default" && k.key() != "primes" &&
        k.key() != "bound_check")
      throw parse_error(origin + "." + k.key() + ": unknown field");
  try {
    s.validate();
  } catch (const argument_error& e) {
    throw parse_error(origin + ": " + e.what());
  }
  return s;
}

inline MultiplicativeSpec parse_spec_text(const std::string& text, const std::string& origin = "spec") {
  return spec_from_json(parse_json(text, origin), origin);
}

inline MultiplicativeSpec load_spec(const std::string& path) { return parse_spec_text(read_file(path), path); }

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"mu", "unit", "one", "liouville", "inverse-squares"};
  return names;
}

inline bool is_builtin(const std::string& name) {
  for (const auto& b : builtin_names())
    if (b == name) return true;
  return false;
}

// a_1..a_N of a named sequence.
inline std::vector<cplx> builtin_values(const std::string& name, const SieveTable& table, std::uint64_t n) {
  if (n > table.limit()) throw capacity_error("length exceeds sieve limit");
  std::vector<cplx> v(n, 0.0);
  if (name == "mu") {
    for (std::uint64_t m = 1; m <= n; ++m) v[m - 1] = table.mobius(m);
  } else if (name == "unit") {
    if (n) v[0] = 1.0;
  } else if (name == "one") {
    std::fill(v.begin(), v.end(), cplx(1.0));
  } else if (name == "liouville") {
    if (n) v[0] = 1.0;
    for (std::uint64_t m = 2; m <= n; ++m) v[m - 1] = -v[m / table.spf(m) - 1];
  } else if (name == "inverse-squares") {
    for (std::uint64_t m = 1; m <= n; ++m) v[m - 1] = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
  } else {
    throw parse_error("unknown built-in sequence '" + name + "'");
  }
  return v;
}

// {"type":"coefficients","values":[a_1, a_2, ...]} with reals or [re, im].
inline std::vector<cplx> coefficients_from_json(const json& j, const std::string& origin) {
  if (!j.is_object()) throw parse_error(origin + ": expected an object");
  const auto& type = detail::field(j, "type", origin);
  if (!type.is_string() || type.get<std::string>() != "coefficients")
    throw parse_error(origin + ".type: expected \"coefficients\"");
  const auto& vals = detail::field(j, "values", origin);
  if (!vals.is_array() || vals.empty()) throw parse_error(origin + ".values: expected a nonempty array");
  std::vector<cplx> v;
  v.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    v.push_back(to_complex(vals[i], origin + ".values[" + std::to_string(i) + "]"));
  return v;
}

// A --coeffs argument: a built-in name or a coefficients file. Built-ins are
// generated to length n; files keep their own length.
inline Subject load_coefficients(const std::string& arg, const SieveTable& table, std::uint64_t n) {
  if (is_builtin(arg)) return {arg, CoefficientSequence<cplx>(builtin_values(arg, table, n)), std::nullopt};
  const auto values = coefficients_from_json(parse_json(read_file(arg), arg), arg);
  return {arg, CoefficientSequence<cplx>(values), std::nullopt};
}

// Grid syntax: comma lists ("10,100,1e3"), geometric ranges "a:b:xF" and
// arithmetic ranges "a:b:+s" (also "a:b" with step 1). Result is sorted and
// free of duplicates.
inline std::vector<std::uint64_t> parse_grid(const std::string& text) {
  const auto value = [&](const std::string& tok) -> double {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || !std::isfinite(d))
      throw parse_error("grid '" + text + "': bad number '" + tok + "'");
    return d;
  };
  const auto natural = [&](const std::string& tok) -> std::uint64_t {
    const double d = value(tok);
    if (d < 1 || d != std::floor(d) || d > 1e15)
      throw parse_error("grid '" + text + "': '" + tok + "' is not a positive integer");
    return static_cast<std::uint64_t>(d);
  };
  std::vector<std::uint64_t> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) throw parse_error("grid '" + text + "': empty entry");
    std::vector<std::string> parts;
    std::stringstream ps(item);
    std::string p;
    while (std::getline(ps, p, ':')) parts.push_back(p);
    if (parts.size() == 1) {
      out.push_back(natural(parts[0]));
      continue;
    }
    if (parts.size() > 3) throw parse_error("grid '" + text + "': too many ':' in '" + item + "'");
    const std::uint64_t a = natural(parts[0]), b = natural(parts[1]);
    if (a > b) throw parse_error("grid '" + text + "': range start exceeds end in '" + item + "'");
    const std::string step = parts.size() == 3 ? parts[2] : "+1";
    if (step.size() < 2 || (step[0] != 'x' && step[0] != '+'))
      throw parse_error("grid '" + text + "': step must be xF or +s in '" + item + "'");
    if (step[0] == '+') {
      const std::uint64_t s = natural(step.substr(1));
      for (std::uint64_t n = a; n <= b; n += s) out.push_back(n);
    } else {
      const double f = value(step.substr(1));
      if (!(f > 1.0)) throw parse_error("grid '" + text + "': factor must exceed 1 in '" + item + "'");
      for (int i = 0;; ++i) {
        const double x = std::round(static_cast<double>(a) * std::pow(f, i));
        if (x > static_cast<double>(b) * (1 + 1e-12)) break;
        out.push_back(static_cast<std::uint64_t>(x));
      }
    }
  }
  if (out.empty()) throw parse_error("grid '" + text + "' is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream items(text);
  std::string tok;
  while (std::getline(items, tok, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw parse_error("bad number '" + tok + "' in '" + text + "'");
    out.push_back(d);
  }
  return out;
}

}  // namespace ingham::io
