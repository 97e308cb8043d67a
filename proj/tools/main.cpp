// kinetic: batch driver for the damped kinetic scattering model.
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/picard.hpp"

namespace {

enum Exit : int { ok = 0, checks_failed = 1, config_error = 2, runtime_error = 3, no_convergence = 4 };

}  // namespace

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  using namespace kinetic;

  CLI::App app{"Deterministic solver and verifier for a damped kinetic scattering model"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;
  int levels = 3;
  app.add_option("--config", config_path, "Run configuration (JSON)");
  app.add_option("--out", out_dir, "Output directory (default: output.directory of the config)");
  app.add_option("--threads", threads, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
  app.add_option("--levels", levels, "Refinement levels for convergence");

  auto* run = app.add_subcommand("run", "Run Picard and splitting solvers and write reports");
  auto* verify_kernel = app.add_subcommand("verify-kernel", "Check the kernel normalization laws");
  auto* convergence = app.add_subcommand("convergence", "Joint space-time refinement study");
  std::string traj_dir;
  auto* energy = app.add_subcommand("energy-report", "Energy ledger of a stored trajectory");
  energy->add_option("dir", traj_dir, "Trajectory directory")->required();
  auto* weak = app.add_subcommand("weak-form", "Weak-form residuals of a stored trajectory");
  weak->add_option("dir", traj_dir, "Trajectory directory")->required();

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_worker_count(threads);

  try {
    if (energy->parsed() || weak->parsed()) {
      const fs::path out = out_dir.empty() ? fs::path(traj_dir) : fs::path(out_dir);
      return energy->parsed() ? app::cmd_energy_report(traj_dir, out, std::cout)
                              : app::cmd_weak_form(traj_dir, out, std::cout);
    }
    if (config_path.empty()) {
      std::cerr << "error: --config is required for this subcommand\n";
      return config_error;
    }
    const app::RunConfig cfg = app::load_config(config_path);
    const fs::path out = out_dir.empty() ? fs::path(cfg.output.directory) : fs::path(out_dir);
    if (run->parsed()) return app::cmd_run(cfg, out, std::cout);
    if (verify_kernel->parsed()) return app::cmd_verify_kernel(cfg, out, std::cout);
    if (convergence->parsed()) return app::cmd_convergence(cfg, levels, out, std::cout);
  } catch (const app::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  } catch (const PicardDivergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return no_convergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return runtime_error;
  }
  return ok;
}
