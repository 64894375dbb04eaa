#include <chrono>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using gad::cli::Options;
using gad::cli::Report;

int run(int argc, char** argv) {
  CLI::App app{"Graded graphs, diamond graphs and weight components of upper triangular matrices", "gad"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--jobs", opt.jobs, "Worker threads, 0 for one per core");
  app.add_option("--seed", opt.seed, "Seed for randomized choices")->capture_default_str();
  app.add_option("--cache", opt.cache_dir, "Cache directory");
  app.add_flag("--no-cache", opt.no_cache, "Neither read nor write the cache");
  app.add_flag("--json", opt.json, "Print a machine-readable report");
  app.add_flag("--timing", opt.timing, "Include elapsed time in the report");

  std::string command;
  std::function<void(Report&)> action;
  auto bind = [&](CLI::App* sub, std::string name, std::function<void(Report&)> fn) {
    sub->callback([&command, &action, name = std::move(name), fn = std::move(fn)] {
      command = name;
      action = fn;
    });
  };

  gad::cli::GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Graph files: gradations, connections, diamonds, homology");
  graph->require_subcommand(1);
  auto graph_cmd = [&](const std::string& name, const std::string& help,
                       void (*fn)(const gad::cli::GraphArgs&, const Options&, Report&)) {
    auto* s = graph->add_subcommand(name, help);
    s->add_option("file", ga.file, "Graph JSON file")->required();
    s->add_option("--dot", ga.dot, "Write a DOT rendering");
    bind(s, "graph " + name, [&ga, &opt, fn](Report& r) { fn(ga, opt, r); });
    return s;
  };
  graph_cmd("grade", "Gradability and distance components", gad::cli::graph_grade);
  graph_cmd("connection", "Deformability, rank and representation matrix", gad::cli::graph_connection);
  graph_cmd("diamond", "Diamond structure, rank, volume and signature", gad::cli::graph_diamond)
      ->add_option("--out", ga.out, "Write the graph with the found signature");
  auto* gh = graph_cmd("homology", "Homology of a graded graph with connection", gad::cli::graph_homology);
  gh->add_option("--mod", ga.mod, "Prime field coefficients");
  gh->add_flag("--cohomology", ga.cohomology, "Also print cohomology");

  gad::cli::AnArgs aa;
  auto* an = app.add_subcommand("an", "Weight components of the exterior graph of type A");
  an->require_subcommand(1);
  auto an_cmd = [&](const std::string& name, const std::string& help,
                    void (*fn)(const gad::cli::AnArgs&, const Options&, Report&)) {
    auto* s = an->add_subcommand(name, help);
    s->add_option("--n", aa.n, "Matrix size minus one (0..6)")->required();
    bind(s, "an " + name, [&aa, &opt, fn](Report& r) { fn(aa, opt, r); });
    return s;
  };
  an_cmd("weights", "Table of all admissible weights", gad::cli::an_weights)
      ->add_option("--csv", aa.csv, "Also write the table as CSV");
  auto* ac = an_cmd("component", "One weight component", gad::cli::an_component);
  ac->add_option("--weight", aa.weight, "Comma separated weight, e.g. 1,1,1")->required();
  ac->add_option("--dot", aa.dot, "Write a DOT rendering");
  ac->add_option("--mod", aa.mod, "Also compute homology mod a prime");
  auto* ai = an_cmd("iso", "Check a component isomorphism", gad::cli::an_iso);
  ai->add_option("--op", aa.op, "transpose, rotate, dual or perm")->required();
  ai->add_option("--perm", aa.perm, "Permutation of 0..n for --op perm (random from --seed if omitted)");
  ai->add_option("--weight", aa.weight, "Restrict to one weight");
  an_cmd("verify", "Sweep a property over all weights", gad::cli::an_verify)
      ->add_option("--property", aa.property, "realizable, connected, product, rank or all")
      ->capture_default_str();

  gad::cli::LieArgs la;
  auto* lie = app.add_subcommand("lie", "Integral Lie algebras given by structure constants");
  lie->require_subcommand(1);
  auto lie_cmd = [&](const std::string& name, const std::string& help,
                     void (*fn)(const gad::cli::LieArgs&, const Options&, Report&)) {
    auto* s = lie->add_subcommand(name, help);
    s->add_option("--file", la.file, "Structure-constants JSON file");
    s->add_option("--type", la.type, "Built-in basis (A)");
    s->add_option("--n", la.n, "Size parameter for --type");
    bind(s, "lie " + name, [&la, &opt, fn](Report& r) { fn(la, opt, r); });
    return s;
  };
  lie_cmd("validate", "Check the Jacobi identity", gad::cli::lie_validate);
  lie_cmd("diamond-check", "Check the diamond root-system axioms", gad::cli::lie_diamond_check);
  lie_cmd("homology", "Homology of the exterior chain graph", gad::cli::lie_homology)
      ->add_option("--mod", la.mod, "Also compute homology mod a prime and check it for torsion");

  std::string fixtures_dir;
  auto* fx = app.add_subcommand("fixtures", "Write the bundled example graphs");
  fx->add_option("--out", fixtures_dir, "Output directory")->required();
  bind(fx, "fixtures", [&fixtures_dir](Report& r) { gad::cli::fixtures(fixtures_dir, r); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
  Report report(echo);
  const auto start = std::chrono::steady_clock::now();
  try {
    action(report);
  } catch (const gad::InputError& e) {
    std::cerr << "gad: " << e.what() << '\n';
    return 2;
  } catch (const gad::DomainError& e) {
    std::cerr << "gad: " << e.what() << '\n';
    return 2;
  } catch (const gad::InvariantViolation& e) {
    report.violation(e);
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.print(std::cout, opt, ms);
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "gad: internal error: " << e.what() << '\n';
    return 1;
  }
}
