#include "caloron/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace caloron;
  CLI::App app{"Approximate calorons on R^3 x S^1"};
  app.require_subcommand(1);

  RunConfig run;
  std::string type = "A1";
  std::string epsilons;
  IndexConfig idx;

  auto* roots = app.add_subcommand("roots", "print the root datum of a simple type as JSON");
  roots->add_option("--type", type, "type such as A2, B3, E8")->required();
  roots->add_option("--out", run.out_path, "output file");

  auto spec_options = [&](CLI::App* c) {
    c->add_option("--spec", run.spec_path, "caloron spec (JSON)")->required();
    c->add_option("--out", run.out_path, "output file");
    c->add_option("--grid", run.grid, "quadrature preset: desk, fine or coarse");
    c->add_option("--fd-step", run.fd_step, "finite-difference step relative to the local length scale");
    c->add_option("--seed", run.seed, "seed for random probe points");
  };
  auto* construct = app.add_subcommand("construct", "assemble a spec and report gluing data");
  spec_options(construct);
  auto* verify = app.add_subcommand("verify", "run the field checks for a spec");
  spec_options(verify);
  auto* sweep = app.add_subcommand("sweep", "self-dual error against epsilon (CSV)");
  spec_options(sweep);
  sweep->add_option("--epsilons", epsilons, "comma-separated epsilon values")->required();

  auto* index = app.add_subcommand("index", "transverse index report (JSON) or exhaustive sweep (CSV)");
  index->add_option("--type", idx.type, "simple type");
  index->add_option("--mu", idx.mu, "root index 0..rank");
  index->add_option("--omega", idx.omega, "comma-separated rationals; default barycenter");
  index->add_flag("--sweep", idx.sweep, "all types up to --max-rank");
  index->add_option("--max-rank", idx.max_rank, "largest rank in the sweep");
  index->add_option("--samples", idx.samples, "random rational omegas per type in the sweep");
  index->add_option("--seed", idx.seed, "seed for the random omegas");
  index->add_option("--out", idx.out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_pass : exit_input_error;
  }

  if (*roots) return cmd_roots(type, run.out_path, std::cout, std::cerr);
  if (*construct) return cmd_construct(run, std::cout, std::cerr);
  if (*verify) return cmd_verify(run, std::cout, std::cerr);
  if (*sweep) {
    try {
      run.epsilons = parse_double_list(epsilons);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_input_error;
    }
    return cmd_sweep(run, std::cout, std::cerr);
  }
  if (*index) return cmd_index(idx, std::cout, std::cerr);
  return exit_input_error;
}
