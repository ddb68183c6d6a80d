#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rsscma/codebook.hpp"
#include "rsscma/sim.hpp"

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<double> parse_alpha_list(const std::string& list) {
  std::vector<double> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const size_t a = item.find_first_not_of(" \t");
    if (a == std::string::npos)
      throw rsscma::ParseError("empty entry in alpha list");
    const size_t b = item.find_last_not_of(" \t");
    item = item.substr(a, b - a + 1);
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw rsscma::ParseError("bad alpha value '" + item + "'");
    out.push_back(x);
  }
  if (out.empty()) throw rsscma::ParseError("alpha list is empty");
  return out;
}

int cmd_run(const std::string& config_path, bool have_seed, uint64_t seed,
            const std::string& out_path, int threads) {
  rsscma::SimConfig cfg = rsscma::load_sim_config(config_path);
  if (have_seed) cfg.seed = seed;
  const rsscma::SimReport report = rsscma::run_sweep(cfg, threads);
  if (out_path.empty()) {
    std::cout << rsscma::csv_string(report);
  } else {
    rsscma::emit_csv(report, out_path);
    std::cerr << "wrote " << report.points.size() << " sweep points to "
              << out_path << "\n";
  }
  return 0;
}

int cmd_analyze(int users, int resources, int alphabet,
                const std::string& alpha_list) {
  const rsscma::Analysis a = rsscma::analyze(users, resources, alphabet,
                                             parse_alpha_list(alpha_list));
  std::cout << "# users = " << a.J << ", resources = " << a.K
            << ", alphabet = " << a.M << "\n";
  std::cout << "# resource_degree = " << a.resource_degree << "\n";
  std::cout << "# complexity_ratio = " << fmt(a.complexity_ratio) << "\n";
  std::cout << "alpha,lambda\n";
  for (const rsscma::AnalysisRow& row : a.rows)
    std::cout << fmt(row.alpha) << "," << fmt(row.lambda) << "\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  const rsscma::CodebookSet cb = rsscma::load_codebook_set(path);
  const rsscma::CodebookSummary s = rsscma::validate_codebook(cb);
  std::cout << "codebook set ok: " << s.J << " users, " << s.K
            << " resources, alphabet " << s.M << ", user degree "
            << s.user_degree << ", resource degree " << s.resource_degree
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"link level simulation toolkit for rate-split SCMA downlink"};
  app.require_subcommand(1);

  std::string config_path, out_path, cb_path, alpha_list = "0.5";
  uint64_t seed = 0;
  int threads = 1, users = 6, resources = 4, alphabet = 4;

  CLI::App* run = app.add_subcommand("run", "run a Monte-Carlo sweep");
  run->add_option("--config", config_path, "sweep config file")->required();
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_path, "output CSV path (default: stdout)");
  run->add_option("--threads", threads, "worker thread count")
      ->check(CLI::PositiveNumber);

  CLI::App* analyze =
      app.add_subcommand("analyze", "overloading and complexity table");
  analyze->add_option("--users", users, "number of users J");
  analyze->add_option("--resources", resources, "number of resources K");
  analyze->add_option("--alphabet", alphabet, "symbols per codebook M");
  analyze->add_option("--alpha-list", alpha_list,
                      "comma separated splitting factors");

  CLI::App* validate =
      app.add_subcommand("validate-codebook", "load and check a codebook set");
  validate->add_option("--path", cb_path, "codebook file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed())
      return cmd_run(config_path, seed_opt->count() > 0, seed, out_path,
                     threads);
    if (analyze->parsed())
      return cmd_analyze(users, resources, alphabet, alpha_list);
    if (validate->parsed()) return cmd_validate(cb_path);
  } catch (const rsscma::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rsscma::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const rsscma::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
