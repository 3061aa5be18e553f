#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hamil/problem.hpp"
#include "hamil/runner.hpp"
#include "hamil/tasks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify Poisson structures that hamiltonize vector fields"};
  app.require_subcommand(1);

  std::string path, out;
  hamil::RunOptions opts;
  std::uint64_t seed = 0;
  int samples = 0;
  double tol = 0;
  auto* run = app.add_subcommand("run", "run a problem file and print a JSON report");
  run->add_option("problem", path, "problem file")->required();
  run->add_option("--out", out, "write the report to PATH instead of stdout");
  auto* seed_opt = run->add_option("--seed", seed, "sampler seed (overrides the file)");
  auto* samples_opt = run->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
  auto* tol_opt = run->add_option("--tol", tol, "zero tolerance")->check(CLI::PositiveNumber);
  run->add_flag("--fail-fast", opts.fail_fast, "stop at the first failing task");
  run->add_flag("--timings", opts.timings, "include per-task wall-clock timings");

  app.add_subcommand("list", "list task kinds with their inputs");
  std::string id;
  auto* explain = app.add_subcommand("explain", "print the hypothesis checklist of a task kind");
  explain->add_option("task", id, "task kind")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand("list")) {
    std::cout << hamil::list_tasks_text();
    return 0;
  }
  if (app.got_subcommand("explain")) {
    try {
      std::cout << hamil::explain_text(id);
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  if (*seed_opt) opts.seed = seed;
  if (*samples_opt) opts.samples = samples;
  if (*tol_opt) opts.tolerance = tol;

  hamil::ProblemSpec spec;
  try {
    spec = hamil::load_problem(path);
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  }
  hamil::Report rep;
  try {
    rep = hamil::run_problem(spec, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::string text = hamil::to_json(rep).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << out << "'\n";
      return 2;
    }
    f << text;
  }
  for (const auto& t : rep.tasks)
    if (!t.pass) std::cerr << "FAIL task " << t.name << (t.error.empty() ? "" : ": " + t.error) << "\n";
  for (const auto& f : rep.flows)
    if (!f.pass) std::cerr << "FAIL flow " << f.name << "\n";
  return rep.exit_code;
}
