#pragma once

// JSON and CSV forms of VerificationReport. Complex values are [re, im];
// ratios are a number or the string "unbounded"; absent values are null in
// JSON and empty cells in CSV.

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ingham/error.hpp"
#include "ingham/verify.hpp"

namespace ingham::io {

using json = nlohmann::ordered_json;

struct JsonOptions {
  bool include_wall_time = false;
  int indent = 2;
};

// Non-finite doubles have no JSON literal; they travel as strings.
inline json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline double to_number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw parse_error(where + ": expected a number");
}

inline json complex_json(const cplx& z) { return json::array({number(z.real()), number(z.imag())}); }

inline cplx to_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw parse_error(where + ": expected [re, im]");
  return {to_number(j[0], where + "[0]"), to_number(j[1], where + "[1]")};
}

inline json ratio_json(const Ratio& r) { return r.unbounded ? json("unbounded") : number(r.value); }

inline Ratio to_ratio(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "unbounded") return {0.0, true};
  return {to_number(j, where), false};
}

template <class T, class F>
json optional_json(const std::optional<T>& v, F&& conv) {
  return v ? conv(*v) : json(nullptr);
}

inline json to_json(const VerificationReport& rep, const JsonOptions& opt = {}) {
  json j;
  j["experiment_id"] = rep.experiment_id;
  j["target"] = optional_json(rep.target, complex_json);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json o;
    o["n"] = r.n;
    o["mean"] = complex_json(r.mean);
    o["s_ratio"] = optional_json(r.s_ratio, number);
    o["g"] = optional_json(r.g, complex_json);
    o["euler_at_1"] = optional_json(r.euler_at_1, complex_json);
    o["residual_t1"] = optional_json(r.residual_t1, number);
    o["residual_t3"] = optional_json(r.residual_t3, number);
    o["mu_alpha"] = optional_json(r.mu_alpha, number);
    o["ratio_t3"] = optional_json(r.ratio_t3, ratio_json);
    o["pass"] = r.pass;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  json sig = json::array();
  for (const auto& s : rep.sigma_rows) sig.push_back(json{{"sigma", number(s.sigma)}, {"g", complex_json(s.g)}});
  j["sigma_rows"] = std::move(sig);
  json sum;
  sum["max_residual"] = number(rep.summary.max_residual);
  sum["ratio_estimate"] = optional_json(rep.summary.ratio_estimate, ratio_json);
  json th = json::object();
  for (const auto& [k, v] : rep.summary.thresholds) th[k] = number(v);
  sum["thresholds"] = std::move(th);
  json ch = json::object();
  for (const auto& [k, v] : rep.summary.checks) ch[k] = v;
  sum["checks"] = std::move(ch);
  sum["pass"] = rep.summary.pass;
  if (opt.include_wall_time && rep.summary.wall_seconds) sum["wall_seconds"] = number(*rep.summary.wall_seconds);
  j["summary"] = std::move(sum);
  return j;
}

inline std::string dump(const json& j, int indent = 2) { return j.dump(indent) + "\n"; }

inline std::string to_json_text(const VerificationReport& rep, const JsonOptions& opt = {}) {
  return dump(to_json(rep, opt), opt.indent);
}

namespace detail {

inline const json& field(const json& o, const char* key, const std::string& where) {
  if (!o.is_object() || !o.contains(key)) throw parse_error(where + ": missing field '" + key + "'");
  return o.at(key);
}

template <class T, class F>
std::optional<T> optional_field(const json& o, const char* key, const std::string& where, F&& conv) {
  const auto& v = field(o, key, where);
  if (v.is_null()) return std::nullopt;
  return conv(v, where + "." + key);
}

// Line and column of a byte offset, for syntax diagnostics.
inline std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(origin + ": " + detail::locate(text, e.byte > 0 ? e.byte - 1 : 0) + ": malformed JSON");
  }
}

inline VerificationReport report_from_json(const json& j) {
  VerificationReport rep;
  const std::string w = "report";
  const auto& id = detail::field(j, "experiment_id", w);
  if (!id.is_string()) throw parse_error("report.experiment_id: expected a string");
  rep.experiment_id = id.get<std::string>();
  rep.target = detail::optional_field<cplx>(j, "target", w, to_complex);
  const auto& rows = detail::field(j, "rows", w);
  if (!rows.is_array()) throw parse_error("report.rows: expected an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& o = rows[i];
    const std::string rw = "report.rows[" + std::to_string(i) + "]";
    ReportRow r;
    const auto& n = detail::field(o, "n", rw);
    if (!n.is_number_unsigned()) throw parse_error(rw + ".n: expected a natural number");
    r.n = n.get<std::uint64_t>();
    r.mean = to_complex(detail::field(o, "mean", rw), rw + ".mean");
    r.s_ratio = detail::optional_field<double>(o, "s_ratio", rw, to_number);
    r.g = detail::optional_field<cplx>(o, "g", rw, to_complex);
    r.euler_at_1 = detail::optional_field<cplx>(o, "euler_at_1", rw, to_complex);
    r.residual_t1 = detail::optional_field<double>(o, "residual_t1", rw, to_number);
    r.residual_t3 = detail::optional_field<double>(o, "residual_t3", rw, to_number);
    r.mu_alpha = detail::optional_field<double>(o, "mu_alpha", rw, to_number);
    r.ratio_t3 = detail::optional_field<Ratio>(o, "ratio_t3", rw, to_ratio);
    const auto& p = detail::field(o, "pass", rw);
    if (!p.is_boolean()) throw parse_error(rw + ".pass: expected a boolean");
    r.pass = p.get<bool>();
    rep.rows.push_back(r);
  }
  const auto& sig = detail::field(j, "sigma_rows", w);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const std::string sw = "report.sigma_rows[" + std::to_string(i) + "]";
    rep.sigma_rows.push_back(
        {to_number(detail::field(sig[i], "sigma", sw), sw + ".sigma"), to_complex(detail::field(sig[i], "g", sw), sw + ".g")});
  }
  const auto& sum = detail::field(j, "summary", w);
  const std::string mw = "report.summary";
  rep.summary.max_residual = to_number(detail::field(sum, "max_residual", mw), mw + ".max_residual");
  rep.summary.ratio_estimate = detail::optional_field<Ratio>(sum, "ratio_estimate", mw, to_ratio);
  for (const auto& [k, v] : detail::field(sum, "thresholds", mw).items())
    rep.summary.thresholds[k] = to_number(v, mw + ".thresholds." + k);
  for (const auto& [k, v] : detail::field(sum, "checks", mw).items()) {
    if (!v.is_boolean()) throw parse_error(mw + ".checks." + k + ": expected a boolean");
    rep.summary.checks[k] = v.get<bool>();
  }
  const auto& p = detail::field(sum, "pass", mw);
  if (!p.is_boolean()) throw parse_error(mw + ".pass: expected a boolean");
  rep.summary.pass = p.get<bool>();
  if (sum.contains("wall_seconds")) rep.summary.wall_seconds = to_number(sum["wall_seconds"], mw + ".wall_seconds");
  return rep;
}

inline VerificationReport report_from_json_text(const std::string& text) {
  return report_from_json(parse_json(text, "report"));
}

// %.17g round-trips every double.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* csv_header = "n,re_mean,im_mean,re_g,im_g,residual_t1,residual_t3,mu_alpha,s_ratio,pass";

inline std::string to_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << csv_header << "\n";
  const auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  for (const auto& r : rep.rows) {
    os << r.n << ',' << fmt(r.mean.real()) << ',' << fmt(r.mean.imag()) << ',';
    if (r.g)
      os << fmt(r.g->real()) << ',' << fmt(r.g->imag());
    else
      os << ',';
    os << ',' << opt(r.residual_t1) << ',' << opt(r.residual_t3) << ',' << opt(r.mu_alpha) << ','
       << opt(r.s_ratio) << ',' << (r.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace ingham::io
