#ifndef CRITDAMP_CONFIG_HPP_
#define CRITDAMP_CONFIG_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace critdamp {

enum class Mode { BurgersLifespan, BurgersSim, EulerSim, Functionals, Criterion, Sweep };

/// Parses a mode name such as "euler-sim"; throws ConfigError.
Mode parse_mode(std::string_view name);
std::string_view mode_name(Mode m);

struct ExperimentConfig {
  Mode mode = Mode::EulerSim;

  double gamma = 1.4;
  double rho_bar = 1.0;

  double mu = 1.0;
  double lambda = 1.0;

  std::string profile_name = "bump";
  double epsilon = 0.1;
  double M = 1.0;
  double M0 = 0.0;
  std::string profile_file;

  /// 0 selects M + 1.1 t_end max(|u| + c) + 1.
  double r_max = 0.0;
  std::size_t n_cells = 400;
  std::optional<double> x_lo;
  std::optional<double> x_hi;

  double t_end = 1.0;
  double cfl = 0.5;
  double monitor_cadence = 0.1;
  /// Unset means "same as monitor_cadence".
  std::optional<double> snapshot_cadence;
  bool muscl = false;
  double gradient_factor = 1e3;

  std::vector<double> sweep_lambda;
  std::vector<double> sweep_mu;
  std::vector<double> sweep_epsilon;

  std::string output_dir = ".";

  std::optional<double> t_star;
  std::optional<double> h0;
  std::optional<double> l0;

  std::string snapshots_path;  // empty: <output.dir>/snapshots.csv
  std::size_t l_samples = 64;
  std::size_t q_samples = 256;

  std::size_t slope_samples = 100000;
};

/// All recognized dotted keys.
const std::vector<std::string>& config_keys();

/// Closest recognized key by edit distance.
std::string nearest_key(std::string_view key);

/// Applies one `key = value` assignment; `where` prefixes error messages
/// (e.g. "line 3" or "flag --damping.mu").
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                   std::string_view where);

/// Parses `key = value` lines with `#` comments into `cfg`.
void parse_config_text(ExperimentConfig& cfg, std::string_view text);

/// Checks the cross-field invariants; throws ConfigError naming the key.
void validate_config(const ExperimentConfig& cfg);

/// parse_config_text on a fresh config followed by validate_config.
ExperimentConfig parse_config(std::string_view text, Mode mode);

}  // namespace critdamp

#endif  // CRITDAMP_CONFIG_HPP_
