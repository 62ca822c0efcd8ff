// rmtd: run decoherence ensemble studies and export CSV tables.
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
// 3 numerical-regime error, 4 IO error.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "rmtd/config.hpp"
#include "rmtd/experiments.hpp"
#include "rmtd/export.hpp"
#include "rmtd/format.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kRegime = 3, kIo = 4 };

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
  std::string format = "csv";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "configuration file (key = value)");
  sub->add_option("--seed", o.seed, "root seed, overrides the config");
  sub->add_option("--out", o.out, "output directory, overrides the config");
  sub->add_option("--workers", o.workers, "worker threads (0: one per hardware thread)");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv"}));
}

void print_summary(const rmtd::StudyResult& r) {
  if (r.study == "convergence") {
    const auto& fits = r.table("fits");
    for (std::size_t i = 0; i < fits.rows.size(); ++i) {
      std::cout << "  t/tau_H = " << rmtd::format_double(fits.number(i, "time")) << "  " << fits.text(i, "observable")
                << " slope " << rmtd::format_double(fits.number(i, "slope")) << '\n';
    }
  } else if (r.study == "werner") {
    const auto& fits = r.table("fits");
    for (std::size_t i = 0; i < fits.rows.size(); ++i) {
      std::cout << "  N = " << fits.number(i, "env_dim") << "  delta = " << rmtd::format_double(fits.number(i, "delta"))
                << "  t/tau_H = " << rmtd::format_double(fits.number(i, "time")) << "  sigma_Werner slope "
                << rmtd::format_double(fits.number(i, "slope")) << '\n';
    }
  }
}

int run(const std::string& study, const Options& o) {
  rmtd::ExperimentConfig cfg = o.config.empty() ? rmtd::ExperimentConfig{} : rmtd::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.output_dir = *o.out;
  if (o.workers) cfg.workers = *o.workers;
  rmtd::validate_config(cfg);

  rmtd::StudyResult r;
  if (study == "convergence") r = rmtd::run_convergence_study(cfg);
  else if (study == "werner") r = rmtd::run_werner_study(cfg);
  else if (study == "layers") r = rmtd::run_layer_comparison(cfg);
  else r = rmtd::run_ensemble_dump(cfg);

  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& p : rmtd::export_study(r, cfg, cfg.output_dir)) std::cout << "wrote " << p.string() << '\n';
  print_summary(r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-matrix decoherence studies"};
  app.require_subcommand(1);
  Options opts;
  const std::pair<const char*, const char*> studies[] = {
      {"convergence", "differences between averaged and per-member entropy, concurrence and purity versus N"},
      {"werner", "Werner structure of partition averages versus partition size"},
      {"layers", "Monte Carlo against linear response and the master equation"},
      {"ensemble", "raw dump of every ensemble member"},
  };
  for (const auto& [name, help] : studies) add_common(app.add_subcommand(name, help), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  const std::string study = app.get_subcommands().front()->get_name();
  try {
    return run(study, opts);
  } catch (const rmtd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const rmtd::RegimeError& e) {
    std::cerr << "numerical regime error: " << e.what() << '\n';
    return kRegime;
  } catch (const rmtd::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
