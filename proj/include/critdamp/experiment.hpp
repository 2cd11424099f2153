#ifndef CRITDAMP_EXPERIMENT_HPP_
#define CRITDAMP_EXPERIMENT_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "critdamp/burgers1d.hpp"
#include "critdamp/config.hpp"
#include "critdamp/euler_radial.hpp"
#include "critdamp/gas_model.hpp"
#include "critdamp/verdict.hpp"

namespace critdamp {
namespace experiment {

/// File system failures while reading or writing artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

burgers1d::Profile make_burgers_profile(const ExperimentConfig& cfg);
radial::InitialProfile make_radial_profile(const ExperimentConfig& cfg, const GasModel& g);

/// Reads `r,rho0,u0` rows (header line optional).
radial::InitialProfile load_profile_file(const std::filesystem::path& path, double epsilon,
                                         double M, double M0);

/// Grid of cfg.n_cells cells; r_max = cfg.r_max, or when that is 0,
/// M + 1.1 t_end max(|u| + c) + 1 for the initial data.
radial::RadialGrid make_radial_grid(const ExperimentConfig& cfg, const GasModel& g,
                                    const radial::InitialProfile& prof);

/// Snapshot blocks: a `t,r,rho,mom` header, then per snapshot a `# t=<t>`
/// line and one row per cell up to the support.
void write_radial_snapshots(std::ostream& out, const std::vector<radial::RadialState>& states);
std::vector<radial::RadialState> read_radial_snapshots(std::istream& in,
                                                       const radial::RadialGrid& grid,
                                                       double rho_bar);

/// Rows `t,L,H,E0,min_rho,max_u,max_du_dr,dt` for the given states.
void write_radial_series(std::ostream& out, const std::vector<FunctionalSeries>& series,
                         const FunctionalSeries& dt);

struct SweepRow {
  double lambda = 0.0;
  double mu = 0.0;
  double epsilon = 0.0;
  Verdict verdict;
};

/// Cartesian product of the sweep lists (a missing list means the single
/// configured value), lambda outermost.
std::vector<SweepRow> sweep_grid(const ExperimentConfig& cfg);

/// Evaluates `job` on every row with `threads` workers; rows keep their
/// order. The first exception in row order is rethrown.
void run_parallel(std::vector<SweepRow>& rows, std::size_t threads,
                  const std::function<Verdict(const SweepRow&)>& job);

/// CRITDAMP_THREADS, or the hardware concurrency when unset.
std::size_t thread_count();

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Runs the configured mode and writes its artifacts into cfg.output_dir.
void run_experiment(const ExperimentConfig& cfg);

/// Entry point: `critdamp <mode> [--config path] [--key value ...]`.
/// Returns the process exit status; errors go to `err` as one line
/// `error: <category>: <message>`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace experiment
}  // namespace critdamp

#endif  // CRITDAMP_EXPERIMENT_HPP_
