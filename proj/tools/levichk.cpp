#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "levichk/io.hpp"
#include "levichk/levi.hpp"
#include "levichk/oracle.hpp"
#include "levichk/schur.hpp"
#include "levichk/spectral.hpp"
#include "levichk/version.hpp"

namespace fs = std::filesystem;
using namespace levichk;

namespace {

constexpr int kUsageError = 64;
constexpr int kRuntimeError = 3;

struct Options {
  std::string command;
  std::string problem;
  std::string out;
  std::uint64_t seed = 20240601;
  bool json = false;
};

Json bundle_header(const ProblemSpec& spec, const Options& opt) {
  Json j;
  j["tool"] = "levichk";
  j["version"] = kVersion;
  j["command"] = opt.command;
  j["problem"] = fs::path(opt.problem).filename().string();
  j["input_hash"] = input_hash(spec);
  return j;
}

void write_json(const Json& j, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

bool oleinik_applies(const ProblemSpec& spec) {
  if (spec.order != 2 || spec.dim != 1) return false;
  SampleGrid grid = SampleGrid::standard(1, spec.t_start, spec.horizon, spec.parameters);
  return test_vanishes(spec.roots[0][0] + spec.roots[1][0], grid).outcome == ZeroTest::Zero;
}

int run_check(const ProblemSpec& spec, const Options& opt, const fs::path& stem) {
  LeviReport main = check_main_theorem(spec);
  LeviReport cor = check_corollary(spec);
  Json j = bundle_header(spec, opt);
  j["levi"] = to_json(main);
  j["corollary"] = to_json(cor);
  if (oleinik_applies(spec)) j["oleinik"] = to_json(check_oleinik(spec));
  write_json(j, stem.string() + ".check.json");
  if (opt.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& c : main.conditions) std::cout << to_string(c.verdict.verdict) << "  " << c.id << '\n';
    std::cout << "overall: " << to_string(main.overall) << '\n';
  }
  switch (main.overall) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

int run_schur(const ProblemSpec& spec, const Options& opt, const fs::path& stem) {
  SchurData s = build_schur(root_symbols(spec));
  std::string text = "T\n" + s.T.to_string() + "Tinv\n" + s.Tinv.to_string() + "J\n" + s.J.to_string();
  std::ofstream(stem.string() + ".schur.txt") << text;
  if (opt.json) {
    Json j = bundle_header(spec, opt);
    j["T"] = s.T.to_string();
    j["Tinv"] = s.Tinv.to_string();
    j["J"] = s.J.to_string();
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
  return 0;
}

int run_solve(const ProblemSpec& spec, const Options& opt, const fs::path& stem) {
  RunResult r = solve(spec);
  fs::path csv = stem.string() + ".solve.csv";
  write_run_csv(r, csv);
  Json j = bundle_header(spec, opt);
  j["run"] = to_json(r);
  j["csv"] = csv.filename().string();
  write_json(j, stem.string() + ".solve.json");
  if (opt.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << "wrote " << csv.string() << (r.blowup ? " (blow-up detected)" : "") << '\n';
  return 0;
}

int run_sweep(const ProblemSpec& spec, const Options& opt, const fs::path& stem) {
  SweepResult r = frequency_sweep(spec, spec.solver.sobolev_s, spec.sweep.n_list, spec.sweep.mode_fraction);
  fs::path csv = stem.string() + ".sweep.csv";
  write_sweep_csv(r, csv);
  Json j = bundle_header(spec, opt);
  j["sweep"] = to_json(r);
  j["csv"] = csv.filename().string();
  write_json(j, stem.string() + ".sweep.json");
  if (opt.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << "wrote " << csv.string() << " (fitted q = " << r.fitted_q << ")\n";
  return 0;
}

int run_verify(const ProblemSpec& spec, const Options& opt, const fs::path& stem) {
  auto reports = verify_all(spec, opt.seed);
  Json j = bundle_header(spec, opt);
  j["seed"] = opt.seed;
  j["oracles"] = to_json(reports);
  write_json(j, stem.string() + ".verify.json");
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (opt.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& r : reports)
      std::cout << (r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL") << "  " << r.name << "  dev=" << r.max_deviation
                << " tol=" << r.tolerance << '\n';
  }
  return ok ? 0 : kRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  const char* env_out = std::getenv("LEVICHK_OUT");
  opt.out = env_out ? env_out : "out";

  CLI::App app{"Levi-condition checker and spectral experiments for weakly hyperbolic equations", "levichk"};
  app.add_option("command", opt.command, "check | schur | solve | sweep | verify")
      ->required()
      ->check(CLI::IsMember({"check", "schur", "solve", "sweep", "verify"}));
  app.add_option("problem", opt.problem, "problem file (JSON)")->required();
  app.add_option("--out", opt.out, "output directory (default $LEVICHK_OUT or ./out)");
  app.add_option("--seed", opt.seed, "seed for oracle sampling");
  app.add_flag("--json", opt.json, "print the report as JSON");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    ProblemSpec spec = load_problem(opt.problem);
    fs::create_directories(opt.out);
    fs::path stem = fs::path(opt.out) / fs::path(opt.problem).stem();
    if (opt.command == "check") return run_check(spec, opt, stem);
    if (opt.command == "schur") return run_schur(spec, opt, stem);
    if (opt.command == "solve") return run_solve(spec, opt, stem);
    if (opt.command == "sweep") return run_sweep(spec, opt, stem);
    return run_verify(spec, opt, stem);
  } catch (const std::exception& e) {
    std::cerr << "levichk: " << e.what() << '\n';
    return kRuntimeError;
  }
}
