#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "numrad/g1.hpp"
#include "numrad/herglotz.hpp"
#include "numrad/inequalities.hpp"
#include "numrad/io.hpp"
#include "numrad/random.hpp"

namespace numrad {

enum class ReportFormat { Json, Csv };

inline const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> names = {"lemma21a", "lemma21b", "lemma21c", "lemma21d",
                                                 "lemma21e", "lemma21f", "thm22",    "cor23",
                                                 "thm24",    "rem25",    "cor26",    "rem27"};
  return names;
}

struct TrialConfig {
  std::uint64_t master_seed = 42;
  std::vector<int> dims = {2, 3, 4, 6, 8};
  int trials_per_suite = 200;
  double rho_max = 0.8;
  int atoms = 8;
  std::vector<std::string> suites = all_suite_names();
  int quadrature_nodes = 512;
  ReportFormat report_format = ReportFormat::Json;
};

inline void validate_config(const TrialConfig& c) {
  if (c.dims.empty()) throw Error(ErrorKind::ConfigError, "dims must be non-empty");
  for (int d : c.dims)
    if (d < 1) throw Error(ErrorKind::ConfigError, "every dimension must be >= 1", d);
  if (c.trials_per_suite < 1) throw Error(ErrorKind::ConfigError, "trials_per_suite must be >= 1");
  if (!(c.rho_max > 0.0 && c.rho_max < 1.0)) throw Error(ErrorKind::ConfigError, "rho_max must lie in (0, 1)", c.rho_max);
  if (c.atoms < 1) throw Error(ErrorKind::ConfigError, "atoms must be >= 1");
  if (c.quadrature_nodes < 32) throw Error(ErrorKind::ConfigError, "quadrature_nodes must be >= 32");
  if (c.suites.empty()) throw Error(ErrorKind::ConfigError, "suites must be non-empty");
  const auto& known = all_suite_names();
  for (const auto& s : c.suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw Error(ErrorKind::ConfigError, "unknown suite '" + s + "'");
    }
  }
}

struct SuiteReport {
  std::string suite;
  int total = 0;
  int passed = 0;
  double max_ratio = 0.0;  // over finite ratios
  std::uint64_t argmax_seed = 0;
  int argmax_dim = 0;
  double wall_time = 0.0;  // seconds; not serialized, so reports stay reproducible
};

struct RunResult {
  std::vector<SuiteReport> suites;
  std::vector<InequalityReport> details;  // suite order, then dim, then trial, then variant
};

/// All variant reports of one trial. Inputs are drawn from a stream seeded by
/// (master seed, suite, dim, trial), so any trial can be replayed alone.
inline std::vector<InequalityReport> run_trial(const TrialConfig& config, const std::string& suite, int dim,
                                               int trial) {
  const std::uint64_t seed = trial_seed(config.master_seed, suite, static_cast<std::uint64_t>(dim),
                                        static_cast<std::uint64_t>(trial));
  const auto n = static_cast<std::size_t>(dim);
  const int nodes = config.quadrature_nodes;
  Rng rng(seed);
  auto matrix = [&] { return random_matrix(rng, n); };
  auto op = [&] { return random_g1(rng(), n, config.rho_max); };
  auto herglotz = [&] { return random_herglotz(rng(), static_cast<std::size_t>(config.atoms)); };

  std::vector<InequalityReport> out;
  if (suite == "lemma21a") {
    const Matrix a = matrix(), x = matrix();
    out.push_back(check_lemma21_a(a, x));
  } else if (suite == "lemma21b") {
    const Matrix a = matrix(), x = matrix();
    for (Sign s : {Sign::Plus, Sign::Minus}) out.push_back(check_lemma21_b(a, x, s));
  } else if (suite == "lemma21c") {
    const Matrix a = matrix(), b = matrix(), x = matrix(), y = matrix();
    for (Sign s : {Sign::Plus, Sign::Minus}) out.push_back(check_lemma21_c(a, b, x, y, s));
  } else if (suite == "lemma21d") {
    const Matrix a = matrix(), b = matrix(), x = matrix(), y = matrix();
    out.push_back(check_lemma21_d(a, b, x, y));
  } else if (suite == "lemma21e") {
    const Matrix x = matrix(), y = matrix();
    out.push_back(check_lemma21_e(x, y));
  } else if (suite == "lemma21f") {
    const Matrix x = matrix();
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    out.push_back(check_lemma21_f(x, angle(rng)));
  } else if (suite == "thm22") {
    const HerglotzFunction f = herglotz();
    const G1Operator a = op();
    const Matrix x = matrix();
    cross_validate_paths(f, a, nodes);
    for (auto v : {Thm22Variant::Sum, Thm22Variant::Diff}) out.push_back(check_thm22(f, a, x, v, nodes));
  } else if (suite == "cor23") {
    const HerglotzFunction f = herglotz();
    const G1Operator a = op();
    cross_validate_paths(f, a, nodes);
    for (auto v : {Cor23Variant::Re, Cor23Variant::Im}) out.push_back(check_cor23(f, a, v, nodes));
  } else if (suite == "thm24" || suite == "rem25" || suite == "rem27") {
    const HerglotzFunction f = herglotz();
    const G1Operator a = op();
    const G1Operator b = op();
    const Matrix x = suite == "rem25" ? random_hermitian(rng, n) : matrix();
    cross_validate_paths(f, a, nodes);
    cross_validate_paths(f, b, nodes);
    for (auto v : {PairVariant::Commutator, PairVariant::Anticommutator2X}) {
      if (suite == "thm24") out.push_back(check_thm24(f, a, b, x, v, nodes));
      if (suite == "rem25") out.push_back(check_rem25(f, a, b, x, v, nodes));
      if (suite == "rem27") out.push_back(check_rem27(f, a, b, x, v, nodes));
    }
  } else if (suite == "cor26") {
    const HerglotzFunction f = herglotz();
    const G1Operator a = op();
    const G1Operator b = op();
    cross_validate_paths(f, a, nodes);
    cross_validate_paths(f, b, nodes);
    for (auto v : {Cor26Variant::Im, Cor26Variant::RePlusI}) out.push_back(check_cor26(f, a, b, v, nodes));
  } else {
    throw Error(ErrorKind::ConfigError, "unknown suite '" + suite + "'");
  }
  for (auto& r : out) r.seed = seed;
  return out;
}

/// Worker count: WRAD_THREADS when set, else the hardware concurrency.
inline int default_worker_count() {
  if (const char* env = std::getenv("WRAD_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace detail {

// Runs task(i) for i in [0, count) on `workers` threads; results are indexed,
// so the outcome does not depend on scheduling. Rethrows the lowest-index failure.
template <class Result>
std::vector<Result> parallel_indexed(std::size_t count, int workers, const std::function<Result(std::size_t)>& task) {
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> cursor{0};
  auto drain = [&] {
    for (std::size_t i = cursor++; i < count; i = cursor++) {
      try {
        results[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int spawn = std::min<int>(workers, static_cast<int>(count)) - 1;
  std::vector<std::thread> pool;
  for (int t = 0; t < spawn; ++t) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace detail

inline RunResult run_suite(const TrialConfig& config, int workers = default_worker_count()) {
  validate_config(config);
  RunResult result;
  const std::size_t per_dim = static_cast<std::size_t>(config.trials_per_suite);
  for (const std::string& suite : config.suites) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t count = config.dims.size() * per_dim;
    auto trials = detail::parallel_indexed<std::vector<InequalityReport>>(count, workers, [&](std::size_t i) {
      return run_trial(config, suite, config.dims[i / per_dim], static_cast<int>(i % per_dim));
    });

    SuiteReport summary;
    summary.suite = suite;
    bool have_ratio = false;
    for (const auto& reports : trials) {
      ++summary.total;
      bool trial_pass = true;
      for (const auto& r : reports) {
        trial_pass = trial_pass && r.pass;
        if (std::isfinite(r.ratio) && (!have_ratio || r.ratio > summary.max_ratio)) {
          have_ratio = true;
          summary.max_ratio = r.ratio;
          summary.argmax_seed = r.seed;
          summary.argmax_dim = r.dim;
        }
        result.details.push_back(r);
      }
      if (trial_pass) ++summary.passed;
    }
    summary.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.suites.push_back(std::move(summary));
  }
  return result;
}

inline bool all_passed(const RunResult& r) {
  return std::all_of(r.suites.begin(), r.suites.end(), [](const SuiteReport& s) { return s.passed == s.total; });
}

// ---- report serialization

inline const char* format_name(ReportFormat f) { return f == ReportFormat::Json ? "json" : "csv"; }

inline std::string config_to_json(const TrialConfig& c) {
  std::string s = "{\"master_seed\": " + std::to_string(c.master_seed) + ", \"dims\": [";
  for (std::size_t i = 0; i < c.dims.size(); ++i) s += (i ? ", " : "") + std::to_string(c.dims[i]);
  s += "], \"trials_per_suite\": " + std::to_string(c.trials_per_suite);
  s += ", \"rho_max\": " + format_double(c.rho_max);
  s += ", \"atoms\": " + std::to_string(c.atoms) + ", \"suites\": [";
  for (std::size_t i = 0; i < c.suites.size(); ++i) s += (i ? ", " : "") + json(c.suites[i]).dump();
  s += "], \"quadrature_nodes\": " + std::to_string(c.quadrature_nodes);
  s += std::string(", \"report_format\": \"") + format_name(c.report_format) + "\"}";
  return s;
}

inline std::string suite_to_json(const SuiteReport& s) {
  return "{\"suite\": " + json(s.suite).dump() + ", \"total\": " + std::to_string(s.total) +
         ", \"passed\": " + std::to_string(s.passed) + ", \"max_ratio\": " + format_double(s.max_ratio) +
         ", \"argmax_seed\": " + std::to_string(s.argmax_seed) + ", \"argmax_dim\": " + std::to_string(s.argmax_dim) +
         "}";
}

inline std::string details_to_json_array(std::span<const InequalityReport> details) {
  if (details.empty()) return "[]";
  std::string s = "[\n";
  for (std::size_t i = 0; i < details.size(); ++i) {
    s += "    " + report_to_json(details[i]) + (i + 1 < details.size() ? ",\n" : "\n");
  }
  return s + "  ]";
}

inline std::string render_json_report(const TrialConfig& config, std::span<const SuiteReport> suites,
                                      std::span<const InequalityReport> details) {
  std::string s = "{\n  \"config\": " + config_to_json(config) + ",\n  \"suites\": [";
  for (std::size_t i = 0; i < suites.size(); ++i) s += (i ? ",\n    " : "\n    ") + suite_to_json(suites[i]);
  s += suites.empty() ? "],\n" : "\n  ],\n";
  s += "  \"details\": " + details_to_json_array(details) + "\n}\n";
  return s;
}

inline std::string render_csv_report(std::span<const InequalityReport> details) {
  std::string s = std::string(kCsvHeader) + "\n";
  for (const auto& r : details) s += report_to_csv_row(r) + "\n";
  return s;
}

/// Writes the JSON document {"config", "suites", "details"} or the CSV detail table.
inline void emit_report(const TrialConfig& config, std::span<const SuiteReport> suites,
                        std::span<const InequalityReport> details, ReportFormat format, const std::string& path) {
  write_file(path, format == ReportFormat::Json ? render_json_report(config, suites, details)
                                                : render_csv_report(details));
}

struct ParsedReport {
  std::vector<SuiteReport> suites;
  std::vector<InequalityReport> details;
};

inline ParsedReport parse_json_report(const std::string& text) {
  const json j = parse_json_text(text);
  ParsedReport out;
  try {
    for (const json& s : j.at("suites")) {
      SuiteReport r;
      r.suite = s.at("suite").get<std::string>();
      r.total = s.at("total").get<int>();
      r.passed = s.at("passed").get<int>();
      r.max_ratio = double_from_json(s.at("max_ratio"), 0.0);
      r.argmax_seed = s.at("argmax_seed").get<std::uint64_t>();
      r.argmax_dim = s.at("argmax_dim").get<int>();
      out.suites.push_back(std::move(r));
    }
    for (const json& d : j.at("details")) out.details.push_back(report_from_json(d));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return out;
}

/// "SUITE:DIM:TRIAL"
struct ReplayTarget {
  std::string suite;
  int dim = 0;
  int trial = 0;
};

inline ReplayTarget parse_replay(const std::string& target) {
  const auto first = target.find(':');
  const auto second = first == std::string::npos ? first : target.find(':', first + 1);
  if (second == std::string::npos) throw Error(ErrorKind::ConfigError, "replay target must be SUITE:DIM:TRIAL");
  ReplayTarget t;
  t.suite = target.substr(0, first);
  try {
    std::size_t used = 0;
    const std::string dim = target.substr(first + 1, second - first - 1);
    const std::string trial = target.substr(second + 1);
    t.dim = std::stoi(dim, &used);
    if (used != dim.size()) throw std::invalid_argument(dim);
    t.trial = std::stoi(trial, &used);
    if (used != trial.size()) throw std::invalid_argument(trial);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ConfigError, "replay DIM and TRIAL must be integers");
  }
  const auto& known = all_suite_names();
  if (std::find(known.begin(), known.end(), t.suite) == known.end()) {
    throw Error(ErrorKind::ConfigError, "unknown suite '" + t.suite + "'");
  }
  if (t.dim < 1 || t.trial < 0) throw Error(ErrorKind::ConfigError, "replay DIM must be >= 1 and TRIAL >= 0");
  return t;
}

// ---- operator files

/// Reads a G1Operator document or a bare matrix document with a "spectrum"
/// field, then certifies the growth condition. Loaded operators drop any
/// unitary and are evaluated through the quadrature path.
inline G1Operator load_operator(const std::string& path, int circle_samples = 64) {
  const json j = parse_json_text(read_file(path));
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "operator file must hold a JSON object");
  G1Operator op;
  op.matrix = matrix_from_json(j.contains("matrix") ? j["matrix"] : j);
  if (!j.contains("spectrum")) {
    throw Error(ErrorKind::ParseError, "operator file must list the spectrum; it is not computed for non-normal input");
  }
  op.spectrum = spectrum_from_json(j["spectrum"]);
  if (op.spectrum.size() != op.matrix.size()) throw Error(ErrorKind::ParseError, "spectrum length differs from n");
  op.d = boundary_distance(op.spectrum);
  const double cert = certify_g1(op, circle_samples);
  op.certificate = cert;
  if (!(cert <= kG1CertificateThreshold)) {
    throw Error(ErrorKind::CertificationFailed, "growth condition fails; certificate " + format_double(cert), cert);
  }
  return op;
}

}  // namespace numrad
