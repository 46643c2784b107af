#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "homalg/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact Poisson and Hochschild homology of Sklyanin structures"};
  std::string mode = "compare-all", output = "text", j_values, alpha_values, output_path;
  homalg::RunConfig cfg;
  bool no_guard = false;

  app.add_option("--mode", mode, "poisson | hochschild | koszul-check | jacobi-check | compare-all")
      ->capture_default_str();
  app.add_option("--max-weight", cfg.max_weight, "largest weight degree to compute")->capture_default_str();
  app.add_flag("--unsafe-weight", cfg.unsafe_weight, "allow --max-weight above the cap");
  app.add_option("--J", j_values, "Poisson parameters J1,J2,J3 (default 1,2,5)");
  app.add_option("--alpha", alpha_values, "algebra parameters alpha1,alpha2 (default 1/4,1/9)");
  app.add_option("--seed", cfg.seed, "seed for --random draws")->capture_default_str();
  app.add_option("--trials", cfg.trials, "number of random draws")->capture_default_str();
  app.add_flag("--random", cfg.random, "draw parameters at random instead of using --J/--alpha");
  app.add_option("--output", output, "text | json | csv")->capture_default_str();
  app.add_option("--output-path", output_path, "write the report here instead of stdout");
  app.add_flag("--no-genericity-guard", no_guard, "accept degenerate parameters");
  CLI11_PARSE(app, argc, argv);

  try {
    cfg.mode = homalg::parse_mode(mode);
    cfg.output = homalg::parse_output(output);
    if (!j_values.empty()) {
      const auto v = homalg::parse_rational_list(j_values, 3);
      cfg.J = {v[0], v[1], v[2]};
    }
    if (!alpha_values.empty()) {
      const auto v = homalg::parse_rational_list(alpha_values, 2);
      cfg.alpha = {v[0], v[1]};
    }
  } catch (const homalg::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  cfg.genericity_guard = !no_guard;
  if (!output_path.empty()) cfg.output_path = output_path;

  const auto result = homalg::run(cfg);
  if (result.exit_code == 2) {
    std::cerr << result.artifact;
    return 2;
  }
  if (cfg.output_path) {
    std::ofstream out(*cfg.output_path);
    if (!out) {
      std::cerr << "error: cannot write " << *cfg.output_path << '\n';
      return 2;
    }
    out << result.artifact;
  } else {
    std::cout << result.artifact;
  }
  return result.exit_code;
}
