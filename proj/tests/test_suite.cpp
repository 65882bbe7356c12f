#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "numrad/suite.hpp"

using namespace numrad;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("numrad_test_" + name);
}

TrialConfig small_config(std::vector<std::string> suites, std::vector<int> dims, int trials) {
  TrialConfig c;
  c.suites = std::move(suites);
  c.dims = std::move(dims);
  c.trials_per_suite = trials;
  return c;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = temp_path(name).string();
  write_file(p, text);
  return p;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::IoError;
}

}  // namespace

TEST(RunSuite, CountingContract) {
  const auto r = run_suite(small_config({"thm22"}, {2}, 1), 1);
  ASSERT_EQ(r.suites.size(), 1u);
  EXPECT_EQ(r.suites[0].total, 1);
  EXPECT_EQ(r.suites[0].passed, 1);
  EXPECT_EQ(r.details.size(), 2u);  // sum and diff
  EXPECT_EQ(r.details[0].name, "thm22.sum");
  EXPECT_EQ(r.details[1].name, "thm22.diff");
}

TEST(RunSuite, AllSuitesPassSmallPopulation) {
  const auto r = run_suite(small_config(all_suite_names(), {2, 3, 4}, 5), 1);
  ASSERT_EQ(r.suites.size(), all_suite_names().size());
  for (const auto& s : r.suites) {
    EXPECT_EQ(s.total, 15) << s.suite;
    EXPECT_EQ(s.passed, s.total) << s.suite;
    EXPECT_LE(s.max_ratio, 1.0 + 1e-8) << s.suite;
  }
  EXPECT_TRUE(all_passed(r));
}

TEST(RunSuite, DeterministicAcrossWorkerCounts) {
  const auto config = small_config({"lemma21b", "cor26"}, {2, 5}, 4);
  const auto one = run_suite(config, 1);
  const auto three = run_suite(config, 3);
  EXPECT_EQ(one.details, three.details);
  EXPECT_EQ(render_json_report(config, one.suites, one.details),
            render_json_report(config, three.suites, three.details));
}

TEST(RunSuite, MaxRatioTracksArgmax) {
  const auto r = run_suite(small_config({"lemma21e"}, {2, 3}, 6), 1);
  double best = -1.0;
  const InequalityReport* arg = nullptr;
  for (const auto& d : r.details) {
    if (d.ratio > best) {
      best = d.ratio;
      arg = &d;
    }
  }
  ASSERT_NE(arg, nullptr);
  EXPECT_EQ(r.suites[0].max_ratio, best);
  EXPECT_EQ(r.suites[0].argmax_seed, arg->seed);
  EXPECT_EQ(r.suites[0].argmax_dim, arg->dim);
}

TEST(RunTrial, ReplayMatchesBatch) {
  const auto config = small_config({"rem25"}, {3, 4}, 3);
  const auto batch = run_suite(config, 1);
  // Trial 2 at dim 4 is the last trial; each contributes two variants.
  const auto replay = run_trial(config, "rem25", 4, 2);
  ASSERT_EQ(replay.size(), 2u);
  EXPECT_EQ(replay[0], batch.details[batch.details.size() - 2]);
  EXPECT_EQ(replay[1], batch.details.back());
}

TEST(ValidateConfig, Errors) {
  auto expect_config_error = [](TrialConfig c) {
    EXPECT_EQ(kind_of([&] { validate_config(c); }), ErrorKind::ConfigError);
  };
  TrialConfig c;
  EXPECT_NO_THROW(validate_config(c));
  c.rho_max = 1.0;
  expect_config_error(c);
  c = {};
  c.trials_per_suite = 0;
  expect_config_error(c);
  c = {};
  c.suites = {};
  expect_config_error(c);
  c = {};
  c.suites = {"lemma99"};
  expect_config_error(c);
  c = {};
  c.dims = {2, 0};
  expect_config_error(c);
  c = {};
  c.atoms = 0;
  expect_config_error(c);
  c = {};
  c.quadrature_nodes = 16;
  expect_config_error(c);
}

TEST(ParseReplay, Examples) {
  const auto t = parse_replay("thm24:6:17");
  EXPECT_EQ(t.suite, "thm24");
  EXPECT_EQ(t.dim, 6);
  EXPECT_EQ(t.trial, 17);
  for (const char* bad : {"thm24", "thm24:6", "nope:2:1", "thm24:x:1", "thm24:2:1a", "thm24:0:1", "thm24:2:-1"}) {
    EXPECT_EQ(kind_of([&] { parse_replay(bad); }), ErrorKind::ConfigError) << bad;
  }
}

TEST(EmitReport, EmptyDetailsJson) {
  const auto path = temp_path("empty.json").string();
  emit_report(TrialConfig{}, {}, {}, ReportFormat::Json, path);
  const json j = json::parse(read_file(path));
  ASSERT_TRUE(j.contains("details"));
  EXPECT_TRUE(j["details"].is_array());
  EXPECT_TRUE(j["details"].empty());
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("suites"));
}

TEST(EmitReport, CsvHasHeaderAndOneRow) {
  const auto path = temp_path("one.csv").string();
  const InequalityReport r = bound_report("lemma21a", 0.25, 0.5, 3);
  emit_report(TrialConfig{}, {}, std::span(&r, 1), ReportFormat::Csv, path);
  const std::string text = read_file(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.substr(0, text.find('\n')), "name,lhs,rhs,ratio,pass,seed,dim");
  EXPECT_EQ(text.substr(text.find('\n') + 1), "lemma21a,0.25,0.5,0.5,true,0,3\n");
}

TEST(EmitReport, JsonRoundTrip) {
  const auto r = run_suite(small_config({"lemma21c", "thm24"}, {2, 3}, 3), 1);
  auto details = r.details;
  details.push_back(bound_report("edge", 1.0, 0.0, 2));  // infinite ratio
  details.push_back(bound_report("edge", 0.0, 0.0, 2));
  const auto path = temp_path("roundtrip.json").string();
  emit_report(TrialConfig{}, r.suites, details, ReportFormat::Json, path);
  const auto parsed = parse_json_report(read_file(path));
  EXPECT_EQ(parsed.details, details);
  ASSERT_EQ(parsed.suites.size(), r.suites.size());
  for (std::size_t i = 0; i < r.suites.size(); ++i) {
    EXPECT_EQ(parsed.suites[i].suite, r.suites[i].suite);
    EXPECT_EQ(parsed.suites[i].total, r.suites[i].total);
    EXPECT_EQ(parsed.suites[i].passed, r.suites[i].passed);
    EXPECT_EQ(parsed.suites[i].max_ratio, r.suites[i].max_ratio);
    EXPECT_EQ(parsed.suites[i].argmax_seed, r.suites[i].argmax_seed);
  }
}

TEST(EmitReport, UnwritablePath) {
  EXPECT_EQ(kind_of([] { emit_report(TrialConfig{}, {}, {}, ReportFormat::Json, "/nonexistent/dir/r.json"); }),
            ErrorKind::IoError);
}

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(LoadOperator, ZeroOperator) {
  const auto path = write_temp("zero.json", R"({"n": 2, "re": [[0, 0], [0, 0]], "im": [[0, 0], [0, 0]],
                                               "spectrum": [[0, 0], [0, 0]]})");
  const auto op = load_operator(path);
  EXPECT_EQ(op.d, 1.0);
  EXPECT_FALSE(op.unitary.has_value());
  ASSERT_TRUE(op.certificate.has_value());
  EXPECT_LE(*op.certificate, 1e-12);
}

TEST(LoadOperator, GeneratedOperatorRoundTrip) {
  const auto op = random_g1(5, 4, 0.8);
  const auto path = write_temp("g1.json", g1_to_json(op).dump());
  const auto loaded = load_operator(path);
  EXPECT_LE(frobenius_norm(loaded.matrix - op.matrix), 1e-15);
  EXPECT_EQ(loaded.spectrum, op.spectrum);
  EXPECT_LE(*loaded.certificate, 1e-8);
}

TEST(LoadOperator, JordanBlockRejected) {
  const auto path = write_temp("jordan.json", R"({"n": 2, "re": [[0.5, 1], [0, 0.5]], "im": [[0, 0], [0, 0]],
                                                 "spectrum": [0.5, 0.5]})");
  try {
    load_operator(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CertificationFailed);
    ASSERT_TRUE(e.value().has_value());
    EXPECT_GT(*e.value(), 0.1);
  }
}

TEST(LoadOperator, BoundarySpectrum) {
  const auto path = write_temp("boundary.json", R"({"n": 1, "re": [[1]], "im": [[0]], "spectrum": [[1, 0]]})");
  EXPECT_EQ(kind_of([&] { load_operator(path); }), ErrorKind::SpectrumOnBoundary);
}

TEST(LoadOperator, ParseErrors) {
  EXPECT_EQ(kind_of([&] { load_operator(write_temp("bad.json", "{not json")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { load_operator(write_temp("nospec.json", R"({"n": 1, "re": [[0]], "im": [[0]]})")); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] {
              load_operator(write_temp("short.json", R"({"n": 2, "re": [[0, 0], [0, 0]], "im": [[0, 0], [0, 0]],
                                                         "spectrum": [0]})"));
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { load_operator("/nonexistent/op.json"); }), ErrorKind::IoError);
}
