#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fwlab/field.hpp"

namespace fwlab {

enum class ExperimentKind { localization, decay, nonuniform, illposed, peakon, picard };

enum class ReportFormat { csv, json };

/// Pass/fail thresholds.  Defaults are the documented acceptance values.
struct Thresholds {
  /// Relative block deviation allowed in the localization tables.
  double localization_tol = 1e-10;
  /// Decay runner passes iff fitted exponent <= -(1/2)(1/p) + this margin.
  double decay_slope_margin = 0.1;
  /// Initial distances must shrink at least this factor per unit n.
  double init_ratio_min = 1.8;
  /// Distance floor must exceed this multiple of the measured
  /// low-times-high drift floor.
  double floor_factor = 0.25;
  /// Lacunary block lower-bound ratios must agree within this spread.
  double block_ratio_spread_max = 2.0;
  /// Inflation at level n must retain this fraction of the level-1 value.
  double inflation_retention_min = 0.5;
  /// Successive-approximation contraction bound for iterates n >= 3.
  double picard_ratio_max = 0.6;
  /// sup-t L^2 gap allowed between the iteration limit and direct solve.
  double picard_limit_tol = 1e-5;
  /// Relative L^2 error allowed for the travelling peakon.
  double peakon_l2_tol = 1e-2;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::localization;
  /// 0 = choose automatically from the frequency content.
  std::size_t grid_n = 0;
  /// 0 = per-experiment default (48 for localization, 64 for peakon, else 32).
  double grid_m = 0;
  double s = 2;
  double p = 2;
  double r = 2;
  double sigma = 3.6;
  int l = 4;
  int n_min = -1;  // -1 = per-experiment default
  int n_max = -1;
  // Four terms keep a block above every probed one; the inflation floor
  // rests on that block staying decorrelated while t shrinks.
  int n_terms = 4;
  /// Probe times; empty = per-experiment default.
  std::vector<double> times;
  /// Ill-posedness probe scale: t_n = eps * 2^{-ln}.
  double eps = 0.1;
  /// 0 = per-runner default policy (CFL-derived, except the successive
  /// approximation study which needs a fine fixed step).
  double dt = 0;
  double cfl_number = 0.4;
  int max_iters = 8;
  /// Peakon runner repeats the run at N/4 and N/2 to check convergence.
  bool resolution_study = true;
  std::string out;
  ReportFormat format = ReportFormat::csv;
  Thresholds thresholds;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Derived scalars: floors, slopes, measured constants.
  std::vector<std::pair<std::string, double>> derived;
  std::vector<std::pair<std::string, bool>> verdicts;
  bool pass = false;
  /// Console metadata only; never serialized (reports are byte-deterministic).
  double wall_seconds = 0;
};

ExperimentReport run_localization(const ExperimentConfig& config);
ExperimentReport run_decay_check(const ExperimentConfig& config);
ExperimentReport run_nonuniform(const ExperimentConfig& config);
ExperimentReport run_illposed(const ExperimentConfig& config);
ExperimentReport run_peakon(const ExperimentConfig& config);
ExperimentReport run_picard(const ExperimentConfig& config);

/// Dispatch on config.experiment.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace fwlab
