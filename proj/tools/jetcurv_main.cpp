#include "jetcurv/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"splittings and curvature of second order systems"};
  app.require_subcommand(1);

  std::string specfile, slice, json_path, seed_text;
  int points = 0;
  double tol = 0.0;
  bool quiet = false;

  const std::pair<const char*, const char*> commands[] = {
      {"split", "build the splitting frame and print the lift table"},
      {"curvature", "print every curvature operator and the identity checks"},
      {"identities", "check the structural identities and the bracket table"},
      {"compatibility", "test for a vector-field-free splitting"},
      {"separability", "scan for decoupling and check the slice diagonals"},
      {"eigen-verify", "certify the deformation spectrum at sample points"},
      {"harmonic", "compare a two-metric system against its closed forms"},
  };
  for (auto [name, about] : commands) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("specfile", specfile, "system description file")
        ->required();
    sub->add_option("--slice", slice, "slice block to use (default: first)");
    sub->add_option("--json", json_path, "also write a JSON report here");
    sub->add_option("--points", points, "probe points for numeric checks")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_text, "probe seed, decimal or 0x hex");
    sub->add_option("--tol", tol, "override both tolerances")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "suppress the text report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    jetcurv::SystemSpec spec = jetcurv::load_spec(specfile);
    for (const std::string& w : spec.warnings)
      std::cerr << "warning: " << w << "\n";

    jetcurv::RunFlags flags;
    flags.slice = slice;
    flags.points = points;
    if (!seed_text.empty()) flags.seed = jetcurv::parse_seed(seed_text);
    if (tol > 0) flags.tol = tol;
    flags.quiet = quiet;

    jetcurv::RunReport rep = jetcurv::run_command(
        command, spec, flags, std::getenv("JETCURV_SEED"));

    if (!json_path.empty()) {
      std::ofstream out(json_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << json_path << "'\n";
        return 2;
      }
      out << jetcurv::report_json(rep);
    }
    if (!quiet) std::cout << jetcurv::report_text(rep);
    return jetcurv::exit_code(rep);
  } catch (const jetcurv::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jetcurv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jetcurv::ProbeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jetcurv::SymbolicError& e) {
    // An escaped certification failure: a finding, not an input problem.
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
