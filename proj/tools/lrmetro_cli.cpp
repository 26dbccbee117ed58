// lrmetro: QFI growth, light-cone bounds and enhancing-exponent sweeps.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = lrmetro::cli;

namespace {

template <class Config>
void merge_config_file(Config& cfg, const std::string& path) {
  if (!path.empty()) cfg.merge(cli::load_config_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lrmetro: quantum Fisher information growth and metrological limits"};
  app.require_subcommand(1);

  cli::IsingQfiConfig ising;
  double ising_alpha = 0.0, ising_t_max = 0.0;
  std::size_t ising_n = 0;
  std::string ising_config;
  auto* ising_cmd = app.add_subcommand("ising-qfi", "direction-optimized QFI time series for the power-law Ising chain");
  auto* ising_alpha_opt = ising_cmd->add_option("--alpha", ising_alpha, "power-law exponent");
  auto* ising_n_opt = ising_cmd->add_option("--n", ising_n, "number of spins");
  auto* ising_tmax_opt = ising_cmd->add_option("--t-max", ising_t_max, "series horizon (default: twice the first QFI maximum)");
  ising_cmd->add_option("--dt", ising.dt, "time step")->capture_default_str();
  ising_cmd->add_option("--tau", ising.tau, "interrogation time; t_p is searched over t >= tau")->capture_default_str();
  ising_cmd->add_option("--alpha1-norm", ising.alpha1_norm, "N_alpha at alpha = 1: unity or harmonic")->capture_default_str();
  ising_cmd->add_option("--out", ising.out, "output CSV path");
  ising_cmd->add_option("--config", ising_config, "JSON file overriding flags");

  cli::SweepFitConfig sweep;
  std::string sweep_config;
  auto* sweep_cmd = app.add_subcommand("sweep-fit", "optimal F_Q/t_p over (alpha, N) and fitted exponents");
  sweep_cmd->add_option("--alpha", sweep.alphas, "alpha values")->delimiter(',');
  sweep_cmd->add_option("--n", sweep.ns, "system sizes (>= 3 distinct)")->delimiter(',');
  sweep_cmd->add_option("--dt", sweep.dt, "time step")->capture_default_str();
  sweep_cmd->add_option("--tau", sweep.tau, "interrogation time")->capture_default_str();
  sweep_cmd->add_option("--t-cap", sweep.t_cap, "hard stop for the t_p scan")->capture_default_str();
  sweep_cmd->add_option("--alpha1-norm", sweep.alpha1_norm, "N_alpha at alpha = 1: unity or harmonic")->capture_default_str();
  sweep_cmd->add_option("--sweep-out", sweep.sweep_out, "sweep CSV path")->capture_default_str();
  sweep_cmd->add_option("--fit-out", sweep.fit_out, "fit CSV path")->capture_default_str();
  sweep_cmd->add_option("--config", sweep_config, "JSON file overriding flags");

  cli::BoundCurveConfig bound;
  std::string bound_config;
  auto* bound_cmd = app.add_subcommand("bound-curve", "ceiling on the enhancing exponent versus alpha");
  bound_cmd->add_option("--d", bound.dim, "lattice dimension")->capture_default_str();
  bound_cmd->add_option("--alpha", bound.alpha, "start:stop:step, a comma list, or one value")->capture_default_str();
  bound_cmd->add_option("--out", bound.out, "output CSV path (default: standard output)");
  bound_cmd->add_option("--config", bound_config, "JSON file overriding flags");

  cli::VerifyConfig verify;
  std::string verify_config;
  auto* verify_cmd = app.add_subcommand("verify", "cross-check closed forms against the dense engine");
  verify_cmd->add_option("--n-max", verify.n_max, "largest system size checked (<= 8)")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "random seed")->capture_default_str();
  verify_cmd->add_option("--config", verify_config, "JSON file overriding flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kValidation;
  }

  try {
    if (*ising_cmd) {
      if (*ising_alpha_opt) ising.alpha = ising_alpha;
      if (*ising_n_opt) ising.n = ising_n;
      if (*ising_tmax_opt) ising.t_max = ising_t_max;
      merge_config_file(ising, ising_config);
      return cli::cmd_ising_qfi(ising);
    }
    if (*sweep_cmd) {
      merge_config_file(sweep, sweep_config);
      return cli::cmd_sweep_fit(sweep);
    }
    if (*bound_cmd) {
      merge_config_file(bound, bound_config);
      return cli::cmd_bound_curve(bound, std::cout);
    }
    if (*verify_cmd) {
      merge_config_file(verify, verify_config);
      return cli::cmd_verify(verify, std::cout);
    }
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kRuntime;
  }
  return cli::kValidation;
}
