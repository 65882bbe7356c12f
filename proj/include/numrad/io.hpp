#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "numrad/g1.hpp"
#include "numrad/herglotz.hpp"
#include "numrad/inequalities.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

using json = nlohmann::json;

/// Shortest-free, 17-significant-digit rendering used by every report writer.
/// Non-finite values have no JSON literal and are written as null.
inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

// ---- matrix: {"n": int, "re": [[...]], "im": [[...]]}

inline json matrix_to_json(const Matrix& m) {
  const std::size_t n = m.size();
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json rr = json::array(), ii = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im")) {
    throw Error(ErrorKind::ParseError, "matrix JSON needs fields n, re, im");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw Error(ErrorKind::ParseError, "matrix n must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(j["n"].get<long long>());
  const json& re = j["re"];
  const json& im = j["im"];
  auto well_formed = [n](const json& a) {
    if (!a.is_array() || a.size() != n) return false;
    for (const json& row : a) {
      if (!row.is_array() || row.size() != n) return false;
      for (const json& v : row)
        if (!v.is_number()) return false;
    }
    return true;
  };
  if (!well_formed(re) || !well_formed(im)) throw Error(ErrorKind::ParseError, "re/im must be n x n numeric arrays");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j2 = 0; j2 < n; ++j2) m(i, j2) = {re[i][j2].get<double>(), im[i][j2].get<double>()};
  if (!m.all_finite()) throw Error(ErrorKind::ParseError, "matrix has non-finite entries");
  return m;
}

// ---- Herglotz measure: {"angles": [...], "weights": [...]}

inline json herglotz_to_json(const HerglotzFunction& f) {
  return json{{"angles", std::vector<double>(f.angles().begin(), f.angles().end())},
              {"weights", std::vector<double>(f.weights().begin(), f.weights().end())}};
}

inline HerglotzFunction herglotz_from_json(const json& j) {
  try {
    return HerglotzFunction(j.at("angles").get<std::vector<double>>(), j.at("weights").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

// ---- G1 operator: {"matrix": M, "spectrum": [[re, im]], "unitary": M, "d": float}

inline json spectrum_to_json(std::span<const cplx> spectrum) {
  json s = json::array();
  for (const cplx& l : spectrum) s.push_back(json::array({l.real(), l.imag()}));
  return s;
}

inline std::vector<cplx> spectrum_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "spectrum must be an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const json& p : j) {
    if (p.is_number()) {
      out.emplace_back(p.get<double>(), 0.0);
    } else if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      out.emplace_back(p[0].get<double>(), p[1].get<double>());
    } else {
      throw Error(ErrorKind::ParseError, "spectrum entries must be [re, im] pairs");
    }
  }
  return out;
}

inline json g1_to_json(const G1Operator& op) {
  json j{{"matrix", matrix_to_json(op.matrix)}, {"spectrum", spectrum_to_json(op.spectrum)}, {"d", op.d}};
  if (op.unitary) j["unitary"] = matrix_to_json(*op.unitary);
  return j;
}

// ---- inequality reports

inline std::string report_to_json(const InequalityReport& r) {
  std::string s = "{\"name\": " + json(r.name).dump();
  s += ", \"lhs\": " + format_double(r.lhs);
  s += ", \"rhs\": " + format_double(r.rhs);
  s += ", \"ratio\": " + format_double(r.ratio);
  s += std::string(", \"pass\": ") + (r.pass ? "true" : "false");
  s += ", \"seed\": " + std::to_string(r.seed);
  s += ", \"dim\": " + std::to_string(r.dim) + "}";
  return s;
}

inline double double_from_json(const json& v, double null_value) {
  if (v.is_null()) return null_value;
  if (!v.is_number()) throw Error(ErrorKind::ParseError, "expected a number");
  return v.get<double>();
}

/// A null ratio stands for the +inf sentinel (rhs = 0 < lhs).
inline InequalityReport report_from_json(const json& j) {
  try {
    InequalityReport r;
    r.name = j.at("name").get<std::string>();
    r.lhs = double_from_json(j.at("lhs"), std::nan(""));
    r.rhs = double_from_json(j.at("rhs"), std::nan(""));
    r.ratio = double_from_json(j.at("ratio"), std::numeric_limits<double>::infinity());
    r.pass = j.at("pass").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.dim = j.at("dim").get<int>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline std::string csv_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return format_double(x);
}

inline std::string report_to_csv_row(const InequalityReport& r) {
  return r.name + "," + csv_double(r.lhs) + "," + csv_double(r.rhs) + "," + csv_double(r.ratio) + "," +
         (r.pass ? "true" : "false") + "," + std::to_string(r.seed) + "," + std::to_string(r.dim);
}

inline constexpr const char* kCsvHeader = "name,lhs,rhs,ratio,pass,seed,dim";

}  // namespace numrad
