#pragma once

// CSV / JSON encoding shared by the command-line tool and tests.
//
// CSV dialect: optional "# key=value" metadata lines, one header row, comma
// separated, '.' decimal point, numbers via render() (17 significant digits
// for doubles). Nothing here depends on the C locale.

#include "ewalk/diophantine.hpp"
#include "ewalk/errors.hpp"
#include "ewalk/hierarchical.hpp"
#include "ewalk/localization.hpp"
#include "ewalk/precision.hpp"
#include "ewalk/walk_state.hpp"
#include "ewalk/walkcore.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ewalk::io {

using json = nlohmann::ordered_json;

// Ordered key/value metadata echoed into every output file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string metadata_block(const Metadata& meta) {
  std::string s;
  for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
  return s;
}

inline json metadata_json(const Metadata& meta) {
  json j = json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

inline double parse_double(std::string_view s) {
  double v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw input_error("parse", "not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw input_error("parse", "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Data lines of a CSV document: metadata comments dropped, header checked.
inline std::vector<std::string_view> csv_rows(std::string_view text, std::string_view header) {
  std::vector<std::string_view> rows;
  bool seen_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) throw input_error("parse", "unexpected CSV header '" + std::string(line) + "'");
      seen_header = true;
      continue;
    }
    rows.push_back(line);
  }
  if (!seen_header) throw input_error("parse", "missing CSV header");
  return rows;
}

// ObservableSeries ------------------------------------------------------------

inline constexpr std::string_view series_header = "t,sigma,mean,p_return";

inline std::string encode_series_csv(const walk::ObservableSeries& s, const Metadata& meta = {}) {
  std::string out = metadata_block(meta);
  out += series_header;
  out += '\n';
  for (const auto& p : s.points) {
    out += std::to_string(p.t) + "," + render(p.sigma) + "," + render(p.mean) + "," + render(p.p_return) + "\n";
  }
  return out;
}

inline walk::ObservableSeries decode_series_csv(std::string_view text) {
  walk::ObservableSeries s;
  for (const auto row : csv_rows(text, series_header)) {
    const auto f = split(row);
    if (f.size() != 4) throw input_error("parse", "series row needs 4 fields");
    s.points.push_back({parse_int(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3])});
  }
  return s;
}

inline constexpr std::string_view distribution_header = "t,x,P";

inline std::string encode_distributions_csv(const walk::ObservableSeries& s, const Metadata& meta = {}) {
  std::string out = metadata_block(meta);
  out += distribution_header;
  out += '\n';
  for (const auto& [t, dist] : s.distributions) {
    for (const auto& [x, p] : dist) out += std::to_string(t) + "," + std::to_string(x) + "," + render(p) + "\n";
  }
  return out;
}

inline json series_to_json(const walk::ObservableSeries& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back({{"t", p.t}, {"sigma", p.sigma}, {"mean", p.mean}, {"p_return", p.p_return}});
  json d = json::object();
  for (const auto& [t, dist] : s.distributions) {
    json rows = json::array();
    for (const auto& [x, p] : dist) rows.push_back({x, p});
    d[std::to_string(t)] = rows;
  }
  return {{"points", pts}, {"distributions", d}};
}

inline walk::ObservableSeries series_from_json(const json& j) {
  walk::ObservableSeries s;
  for (const auto& p : j.at("points")) {
    s.points.push_back({p.at("t").get<std::int64_t>(), p.at("sigma").get<double>(), p.at("mean").get<double>(),
                        p.at("p_return").get<double>()});
  }
  if (j.contains("distributions")) {
    for (const auto& [key, rows] : j.at("distributions").items()) {
      auto& dst = s.distributions[parse_int(key)];
      for (const auto& r : rows) dst.emplace_back(r.at(0).get<std::int64_t>(), r.at(1).get<double>());
    }
  }
  return s;
}

// WalkState -------------------------------------------------------------------

inline constexpr std::string_view state_header = "x,re_plus,im_plus,re_minus,im_minus";

template <class Real>
std::string encode_state_csv(const WalkState<Real>& s, const Metadata& meta = {}) {
  std::string out = metadata_block(meta);
  out += state_header;
  out += '\n';
  for (std::int64_t x = s.x_min(); x <= s.x_max(); ++x) {
    const auto u = s.at(x, 0);
    const auto v = s.at(x, 1);
    out += std::to_string(x) + "," + render(u.re) + "," + render(u.im) + "," + render(v.re) + "," + render(v.im) + "\n";
  }
  return out;
}

// Rows must cover a contiguous range of x in increasing order.
inline WalkState<double> decode_state_csv(std::string_view text) {
  std::vector<WalkState<double>::amplitude> amps;
  std::int64_t x_min = 0;
  std::int64_t expect = 0;
  for (const auto row : csv_rows(text, state_header)) {
    const auto f = split(row);
    if (f.size() != 5) throw input_error("parse", "state row needs 5 fields");
    const std::int64_t x = parse_int(f[0]);
    if (amps.empty()) {
      x_min = x;
    } else if (x != expect) {
      throw input_error("parse", "state rows must be contiguous in x");
    }
    expect = x + 1;
    amps.push_back({basic_complex<double>(parse_double(f[1]), parse_double(f[2])),
                    basic_complex<double>(parse_double(f[3]), parse_double(f[4]))});
  }
  return WalkState<double>(x_min, std::move(amps));
}

inline json state_to_json(const WalkState<double>& s) {
  json rows = json::array();
  for (const auto& a : s.amplitudes()) rows.push_back({a[0].re, a[0].im, a[1].re, a[1].im});
  return {{"x_min", s.x_min()}, {"amplitudes", rows}};
}

inline WalkState<double> state_from_json(const json& j) {
  std::vector<WalkState<double>::amplitude> amps;
  for (const auto& r : j.at("amplitudes")) {
    amps.push_back({basic_complex<double>(r.at(0).get<double>(), r.at(1).get<double>()),
                    basic_complex<double>(r.at(2).get<double>(), r.at(3).get<double>())});
  }
  return WalkState<double>(j.at("x_min").get<std::int64_t>(), std::move(amps));
}

// Diophantine -----------------------------------------------------------------

// Integers that fit in 64 bits as JSON numbers, larger ones as strings.
inline json integer_json(const big_int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline json cfrac_json(const cf::ContinuedFraction& c) {
  json coeffs = json::array();
  for (const auto& v : c.coefficients) coeffs.push_back(integer_json(v));
  json convs = json::array();
  for (const auto& v : c.convergents) convs.push_back({integer_json(v.n), integer_json(v.q)});
  json quality = json::array();
  for (std::size_t k = 0; k + 1 < c.coefficients.size(); ++k) quality.push_back(cf::approximation_quality(c, k));
  return {{"expansion", c.to_string()},
          {"coefficients", coeffs},
          {"convergents", convs},
          {"quality", quality},
          {"certified_depth", c.certified_depth()},
          {"exact", c.exact},
          {"precision_exhausted", c.precision_exhausted},
          {"source_digits", c.source_digits}};
}

inline json certificate_json(const cf::RevivalCertificate& c) {
  return {{"level", c.level},
          {"n", integer_json(c.n)},
          {"q", integer_json(c.q)},
          {"q_parity", c.q_odd ? "odd" : "even"},
          {"time", integer_json(c.time)},
          {"sign", c.sign},
          {"c_next", integer_json(c.c_next)},
          {"theorem_term", c.theorem_term},
          {"deviation_term", c.deviation_term},
          {"total", c.total},
          {"nontrivial", c.nontrivial}};
}

inline json level_json(const hier::LevelCertificate& c) {
  return {{"level", c.level},
          {"k", c.k},
          {"n", integer_json(c.n)},
          {"q", integer_json(c.q)},
          {"epsilon", c.epsilon},
          {"interval", {c.interval.lo, c.interval.hi}},
          {"support_radius", c.support_radius},
          {"revival_time", c.revival_time},
          {"revival_sign", c.revival_sign},
          {"theorem_term", c.theorem_term},
          {"deviation_term", c.deviation_term},
          {"revival_bound", c.revival_bound},
          {"revival_measured", c.revival_measured},
          {"excursion_time", c.excursion_time},
          {"escape_rational", c.escape_rational},
          {"escape_basis_max", c.escape_basis_max},
          {"dimension", c.dimension},
          {"escape_slack_bound", c.escape_slack_bound},
          {"escape_deviation", c.escape_deviation},
          {"escape_bound", c.escape_bound},
          {"escape_measured", c.escape_measured},
          {"c_next_lower", integer_json(c.c_next_lower)},
          {"c_next", integer_json(c.c_next)},
          {"verified", c.verified}};
}

// Localization ----------------------------------------------------------------

inline constexpr std::string_view profile_header = "x,re_plus,im_plus,re_minus,im_minus,P,lnP";

inline std::string encode_profile_csv(const loc::EigenProfile& p, const Metadata& meta = {}) {
  precision_scope scope(p.cfg.digits);
  std::string out = metadata_block(meta);
  out += profile_header;
  out += '\n';
  const auto& s = p.psi;
  for (std::int64_t x = s.x_min(); x <= s.x_max(); ++x) {
    const auto u = s.at(x, 0);
    const auto v = s.at(x, 1);
    out += std::to_string(x) + "," + render(u.re) + "," + render(u.im) + "," + render(v.re) + "," + render(v.im) +
           "," + render(s.probability(x)) + "," + render(p.ln_p[static_cast<std::size_t>(x - s.x_min())]) + "\n";
  }
  return out;
}

inline json fit_json(const loc::LocalizationFit& f) {
  return {{"log_base", loc::to_string(f.base)},
          {"lambda", f.lambda},
          {"lambda_ln", f.lambda_natural},
          {"lambda_log10", f.lambda_decimal},
          {"window", {f.window_lo, f.window_hi}},
          {"slope_left_ln", f.left.slope},
          {"slope_right_ln", f.right.slope},
          {"rms_left_ln", f.left.rms},
          {"rms_right_ln", f.right.rms},
          {"slope_mismatch", f.slope_mismatch()}};
}

inline json profile_header_json(const loc::EigenProfile& p) {
  precision_scope scope(p.cfg.digits);
  return {{"coin", p.coin.to_string()},
          {"field", p.field.to_string()},
          {"Phi", render(p.field.phi<hp_real>())},
          {"omega", p.omega.to_string()},
          {"omega_value", render(p.omega.value<hp_real>(p.field))},
          {"digits", p.cfg.digits},
          {"truncation", p.cfg.truncation},
          {"residual", render(p.residual)},
          {"residual_digits", p.residual_digits()},
          {"rho", p.rho()},
          {"growth_log10", p.growth_log10}};
}

// Files -----------------------------------------------------------------------

// Writes through a temporary file in the same directory and renames it into
// place, so readers never observe a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw input_error("io", "cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw input_error("io", "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw input_error("io", "cannot move output into place at " + path.string());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw input_error("io", "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace ewalk::io
