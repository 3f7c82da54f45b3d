// triqnav: scenario simulation, mechanization runs and error summaries.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "triq/error.hpp"
#include "triq/run.hpp"
#include "triq/selftest.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::string preset;
  std::string algos;
  std::string out;
  std::optional<std::size_t> decimate;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "built-in configuration")->check(CLI::IsMember({"paper-vi"}));
  cmd->add_option("--algos", o.algos, "comma list of tq, twosample, rk4");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--decimate", o.decimate, "keep every K-th error record")->check(CLI::PositiveNumber);
}

triq::RunConfig resolve(const CommonOptions& o) {
  triq::RunConfig cfg = triq::RunConfig::paper_vi();
  if (!o.config.empty()) cfg = triq::load_config(o.config, cfg);
  if (!o.algos.empty()) cfg.algorithms = triq::parse_algorithms(o.algos);
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (o.decimate) cfg.decimate = *o.decimate;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trident quaternion strapdown navigation toolkit"};
  app.require_subcommand(1);

  CommonOptions sim_opts, run_opts;
  CLI::App* simulate = app.add_subcommand("simulate", "write the IMU increments and truth");
  add_common(simulate, sim_opts);

  CLI::App* run = app.add_subcommand("run", "propagate and write error CSVs");
  add_common(run, run_opts);
  bool strict = false;
  run->add_flag("--strict", strict, "fail when any tq window does not converge");
  std::string summary_path;
  run->add_option("--summary", summary_path, "also write a JSON summary here");

  CLI::App* compare = app.add_subcommand("compare", "summarize error CSVs");
  std::vector<std::string> csvs;
  std::string compare_json;
  compare->add_option("csv", csvs, "error CSVs; ratios are relative to the first")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--json", compare_json, "write the summary as JSON");

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in property checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const triq::RunConfig cfg = resolve(sim_opts);
      triq::simulate_scenario(cfg);
      std::cout << "wrote " << (cfg.out_dir / "imu.csv").string() << " and "
                << (cfg.out_dir / "truth.csv").string() << '\n';
      return 0;
    }
    if (run->parsed()) {
      const triq::RunConfig cfg = resolve(run_opts);
      const auto results = triq::run_scenario(cfg);
      std::vector<std::filesystem::path> paths;
      std::size_t unconverged = 0;
      for (const auto& r : results) {
        std::cout << "wrote " << r.csv.string();
        if (r.algorithm == triq::Algorithm::Tq) std::cout << " (" << r.not_converged << " windows not converged)";
        std::cout << '\n';
        paths.push_back(r.csv);
        unconverged += r.not_converged;
      }
      const triq::Summary summary = triq::summarize_files(paths);
      triq::print_summary(std::cout, summary);
      if (!summary_path.empty()) {
        std::ofstream os(summary_path);
        os << triq::summary_json(summary);
        if (!os) throw triq::Error(triq::ErrorKind::Io, "cannot write " + summary_path);
      }
      if (strict && unconverged > 0) {
        std::cerr << "strict: " << unconverged << " windows did not converge\n";
        return 2;
      }
      return 0;
    }
    if (compare->parsed()) {
      std::vector<std::filesystem::path> paths(csvs.begin(), csvs.end());
      const triq::Summary summary = triq::summarize_files(paths);
      triq::print_summary(std::cout, summary);
      if (!compare_json.empty()) {
        std::ofstream os(compare_json);
        os << triq::summary_json(summary);
        if (!os) throw triq::Error(triq::ErrorKind::Io, "cannot write " + compare_json);
      }
      return 0;
    }
    if (selftest->parsed()) return triq::run_selftest(std::cout) ? 0 : 1;
  } catch (const triq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
