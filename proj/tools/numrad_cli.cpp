#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "numrad/numrad.hpp"

namespace {

using namespace numrad;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::CertificationFailed:
    case ErrorKind::SpectrumOnBoundary:
    case ErrorKind::PathDisagreement:
    case ErrorKind::NotSelfAdjoint:
      return kFailed;
    default:
      return kUsage;
  }
}

struct VerifyOptions {
  TrialConfig config;
  std::string format = "json";
  std::string out;
  std::string replay;
};

void print_summary(const RunResult& r) {
  for (const auto& s : r.suites) {
    std::fprintf(stderr, "%-9s %4d/%-4d max_ratio %.6f (seed %llu, dim %d)  %.2fs\n", s.suite.c_str(), s.passed,
                 s.total, s.max_ratio, static_cast<unsigned long long>(s.argmax_seed), s.argmax_dim, s.wall_time);
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

int run_verify(VerifyOptions& opt) {
  opt.config.report_format = opt.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  validate_config(opt.config);

  if (!opt.replay.empty()) {
    const ReplayTarget t = parse_replay(opt.replay);
    const auto reports = run_trial(opt.config, t.suite, t.dim, t.trial);
    std::string text;
    if (opt.config.report_format == ReportFormat::Json) {
      text = details_to_json_array(reports) + "\n";
    } else {
      text = render_csv_report(reports);
    }
    write_output(opt.out, text);
    for (const auto& r : reports)
      if (!r.pass) return kFailed;
    return kOk;
  }

  const RunResult result = run_suite(opt.config);
  print_summary(result);
  if (opt.out.empty() || opt.out == "-") {
    write_output("", opt.config.report_format == ReportFormat::Json
                         ? render_json_report(opt.config, result.suites, result.details)
                         : render_csv_report(result.details));
  } else {
    emit_report(opt.config, result.suites, result.details, opt.config.report_format, opt.out);
  }
  return all_passed(result) ? kOk : kFailed;
}

int run_certify(const std::string& input, int samples) {
  try {
    const G1Operator op = load_operator(input, samples);
    std::cout << "{\"certified\": true, \"certificate\": " << format_double(*op.certificate)
              << ", \"d\": " << format_double(op.d) << "}\n";
    return kOk;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CertificationFailed) throw;
    std::cout << "{\"certified\": false, \"certificate\": " << format_double(e.value().value_or(0.0)) << "}\n";
    return kFailed;
  }
}

int run_wrad(const std::string& input) {
  const json j = parse_json_text(read_file(input));
  const Matrix m = matrix_from_json(j.is_object() && j.contains("matrix") ? j["matrix"] : j);
  const RadiusResult r = numerical_radius(m);
  std::cout << "{\"w\": " << format_double(r.value) << ", \"theta_star\": " << format_double(r.theta_star)
            << ", \"grid_points\": " << r.grid_points << "}\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical radius inequality verifier"};
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "run the seeded inequality suites");
  v->add_option("--suites", verify.config.suites, "comma-separated suite names")->delimiter(',');
  v->add_option("--dims", verify.config.dims, "comma-separated dimensions")->delimiter(',');
  v->add_option("--trials", verify.config.trials_per_suite, "trials per suite and dimension");
  v->add_option("--seed", verify.config.master_seed, "master seed");
  v->add_option("--rho-max", verify.config.rho_max, "spectral radius bound of generated operators");
  v->add_option("--atoms", verify.config.atoms, "atoms of the random measure");
  v->add_option("--nodes", verify.config.quadrature_nodes, "contour quadrature nodes");
  v->add_option("--format", verify.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  v->add_option("--out", verify.out, "report path (stdout when omitted)");
  v->add_option("--replay", verify.replay, "rerun one trial, SUITE:DIM:TRIAL");

  std::string cert_input;
  int samples = 64;
  auto* c = app.add_subcommand("certify", "check the resolvent growth condition of an operator file");
  c->add_option("--input", cert_input, "operator JSON")->required();
  c->add_option("--samples", samples, "points per test circle");

  std::string wrad_input;
  auto* w = app.add_subcommand("wrad", "numerical radius of a matrix file");
  w->add_option("--input", wrad_input, "matrix JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (v->parsed()) return run_verify(verify);
    if (c->parsed()) return run_certify(cert_input, samples);
    return run_wrad(wrad_input);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
