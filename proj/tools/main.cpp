#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hme/errors.hpp"
#include "hme/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic moment equations: assembly, hyperbolicity analysis and 1D simulation"};
  app.set_version_flag("--version", std::string(hme::kVersion));
  app.require_subcommand(1);

  hme::cli::Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "Relative tolerance on imaginary parts of eigenvalues")->check(CLI::PositiveNumber);
    sub->add_option("--cond-cap", common.cond_cap, "Largest accepted eigenvector condition number")->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "Seed for random sampling (overrides the config 'seed')");
    sub->add_option("--out", common.out, "Output file (directory for simulate); stdout when omitted");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  std::string input;
  std::string which = "regularized";
  std::string target = "regularized";

  auto* assemble = app.add_subcommand("assemble", "Write a coefficient matrix of a 1D state");
  assemble->add_option("state", input, "1D state JSON file")->required();
  assemble->add_option("--which", which, "Matrix to write")->check(CLI::IsMember({"grad", "regularized", "D", "M", "system"}));
  add_common(assemble);

  auto* eig = app.add_subcommand("eig", "Hyperbolicity report of a state's coefficient matrix");
  eig->add_option("state", input, "State JSON file (1D, or 13-moment for --target m13)")->required();
  eig->add_option("--target", target, "Matrix to analyze")->check(CLI::IsMember({"grad", "regularized", "m13"}));
  add_common(eig);

  auto* scan = app.add_subcommand("scan", "Hyperbolicity region of the Grad system over (f_{M-1}, f_M)");
  scan->add_option("config", input, "Scan config JSON file (defaults when omitted)");
  add_common(scan);

  auto* check13 = app.add_subcommand("check13", "Property checks of the 13-moment system on random states");
  check13->add_option("config", input, "Check config JSON file (defaults when omitted)");
  add_common(check13);

  auto* checknd = app.add_subcommand("checknd", "Hyperbolicity checks of the multi-dimensional systems");
  checknd->add_option("config", input, "Check config JSON file (defaults when omitted)");
  add_common(checknd);

  auto* simulate = app.add_subcommand("simulate", "Run the 1D finite-volume solver");
  simulate->add_option("config", input, "Simulation config JSON file")->required();
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*assemble) return hme::cli::assemble(input, which, common);
    if (*eig) return hme::cli::eig(input, target, common);
    if (*scan) return hme::cli::scan(input, common);
    if (*check13) return hme::cli::check13(input, common);
    if (*checknd) return hme::cli::checknd(input, common);
    if (*simulate) return hme::cli::simulate(input, common);
  } catch (const hme::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hme::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
