// envalg: command-line front end for the verification suites.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 bad input or an
// errored check.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "envalg/suites.hpp"

namespace {

struct Output {
  std::string out;
  bool json = false;
  bool timings = false;
};

void add_common(CLI::App* app, envalg::SuiteOptions& o, Output& out) {
  app->add_option("--seed", o.seed, "random seed (default 42)");
  app->add_option("--out", out.out, "write the JSON report to this file");
  app->add_flag("--json", out.json, "print the JSON report instead of the summary");
  app->add_flag("--timings", out.timings, "include per-check wall times in the JSON report");
  app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  app->add_flag("--progress", o.progress, "per-check progress on stderr");
}

void add_algebra(CLI::App* app, envalg::SuiteOptions& o) {
  app->add_option("--algebra", o.algebra, "gl:n, so:m or sp:n")->required();
}

void add_shift(CLI::App* app, envalg::SuiteOptions& o) {
  app->add_option("--A", o.shifts, "shift matrix: diag:..., sym-diag:..., rows:...;... or a matrix file");
}

int emit(const envalg::SuiteReport& report, const Output& out) {
  const auto doc = report.to_json(out.timings);
  if (!out.out.empty()) {
    std::ofstream f(out.out);
    if (!f) throw std::invalid_argument("cannot write report to '" + out.out + "'");
    f << doc.dump(2) << "\n";
  }
  if (out.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << report.summary_text();
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  envalg::SuiteOptions o;
  o.jobs = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
  Output out;
  std::string suite;
  std::string classical_suite;

  CLI::App app{"Exact verification of shifted commutative families in U(gl), U(so), U(sp)"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("suite", suite, "theorem1 theorem2 centralizer tensorial prop1..prop5 casimir-central")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "centralizer", "tensorial", "prop1", "prop2", "prop3", "prop4",
                             "prop5", "casimir-central"}));
  add_algebra(verify, o);
  add_shift(verify, o);
  verify->add_option("--max-power", o.max_power, "largest power M, N");
  verify->add_option("--sign", o.sign, "restrict default shifts to symmetry sign -1 or 1")->check(CLI::IsMember({-1, 1}));

  auto* chain = app.add_subcommand("chain", "commutativity and Jacobian rank of a chain family");
  chain->add_option("file", o.chain_file, "chain file (JSON: algebra, steps, shifts, levels)")->required();
  chain->add_option("--trials", o.trials, "random points")->check(CLI::PositiveNumber);

  auto* expand = app.add_subcommand("expand", "argument-shift expansion S_A^{k,M}");
  add_algebra(expand, o);
  add_shift(expand, o);
  expand->add_option("--M", o.M, "trace degree");

  auto* rank = app.add_subcommand("rank", "Jacobian rank of top symbols");
  add_algebra(rank, o);
  add_shift(rank, o);
  rank->add_option("--poly", o.polynomials, "explicit generator, e.g. \"X[1,1] + X[2,2]\"");
  rank->add_option("--max-power", o.max_power, "largest (AX^M) in the default family");
  rank->add_option("--trials", o.trials, "random points")->check(CLI::PositiveNumber);
  rank->add_option("--target", o.target, "expected rank (default (dim g + ind g)/2)");

  auto* classical = app.add_subcommand("classical", "identities on the classical side");
  classical->add_option("check", classical_suite, "lemma2, duality or tangent")
      ->required()
      ->check(CLI::IsMember({"lemma2", "duality", "tangent"}));
  add_algebra(classical, o);
  add_shift(classical, o);
  classical->add_option("--M", o.M, "degree (duality)");
  classical->add_option("--k", o.k, "shift order (duality)");
  classical->add_option("--max-power", o.max_power, "largest degree when --M is absent (duality)");
  classical->add_option("--points", o.points, "random points")->check(CLI::PositiveNumber);
  classical->add_option("--trials", o.trials, "random points (tangent)")->check(CLI::PositiveNumber);

  for (auto* sub : {verify, chain, expand, rank, classical}) add_common(sub, o, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  if (*verify) name = suite;
  if (*chain) name = "chain";
  if (*expand) name = "expand";
  if (*rank) name = "rank";
  if (*classical) name = classical_suite;

  try {
    return emit(envalg::run_suite(name, o), out);
  } catch (const std::exception& e) {
    std::cerr << "envalg: " << e.what() << "\n";
    return 2;
  }
}
