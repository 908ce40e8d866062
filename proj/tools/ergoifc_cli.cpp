#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ergoifc/cli.hpp"
#include "ergoifc/error.hpp"

int main(int argc, char** argv) {
  using namespace ergoifc::cli;
  CLI::App app{"Ergodic fading interference channel sum-capacity toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string sigma2_grid;
  std::string p1_grid;
  std::string mu_grid;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed for sampled channels");
    sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    sub->add_option("--tol", cfg.tol, "Convergence tolerance");
    sub->add_option("--out", cfg.output_path, "Output file (default: stdout)");
  };

  auto* classify = app.add_subcommand("classify", "Classify a channel and print a JSON report");
  classify->add_option("--channel", cfg.channel_path, "Channel JSON file")->required();
  common(classify);

  auto* sumcap = app.add_subcommand("sumcap", "Compute sum-rates for one or more schemes as CSV");
  sumcap->add_option("--channel", cfg.channel_path, "Channel JSON file")->required();
  sumcap->add_option("--scheme", cfg.scheme,
                     "auto|cmac|evs|us|uw1|um|uw2_bound|hk|separable|tdm|outer (comma-separated list allowed)");
  sumcap->add_option("--mu-grid", mu_grid, "mu1 grid a:b:step for C-MAC boundary points (mu2 = 1 - mu1)");
  common(sumcap);

  auto* figure = app.add_subcommand("figure", "Emit a figure dataset as CSV");
  figure->add_option("name", cfg.figure, "ray-evs|sep-gap|hk-hybrid")->required();
  figure->add_option("--sigma2-grid", sigma2_grid, "Cross-gain variance grid a:b:step");
  figure->add_option("--p1-grid", p1_grid, "State probability grid a:b:step");
  figure->add_option("--power", cfg.power, "Budget of the uniformly strong sep-gap channels");
  common(figure);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kMalformedInput;
  }

  try {
    if (!sigma2_grid.empty()) cfg.sigma2_grid = parse_grid(sigma2_grid);
    if (!p1_grid.empty()) cfg.p1_grid = parse_grid(p1_grid);
    if (!mu_grid.empty()) cfg.mu_grid = parse_grid(mu_grid);
  } catch (const ergoifc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  if (*classify) return cmd_classify(cfg, std::cout, std::cerr);
  if (*sumcap) return cmd_sumcap(cfg, std::cout, std::cerr);
  return cmd_figure(cfg, std::cout, std::cerr);
}
