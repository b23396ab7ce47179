/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_EXPERIMENT_HPP
#define QDISCORD_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdiscord/hierarchy.hpp"
#include "qdiscord/oracles.hpp"

namespace qdiscord {

inline constexpr const char* kVersion = "0.1.0";

/// One hierarchy level to compute: k plus the Bose and PPT options.
/// Token grammar: k<N> with optional suffixes `ppt` (input cut) and `nobose`,
/// e.g. `k2`, `k1ppt`, `k3nobose`.
struct LevelSpec {
  Index k = 2;
  bool bose = true;
  bool ppt_binding = false;

  std::string token() const;
  static LevelSpec parse(const std::string& token);
};

/// Config file: `key = value` lines with dotted sections, `#` comments.
struct ExperimentConfig {
  enum class Family { cqpair, file, random };

  Family family = Family::cqpair;
  // cqpair family
  double theta_start = 0.0;
  double theta_stop = 1.5707963267948966;
  int theta_count = 33;
  // file family
  std::string path;
  // random family
  std::uint64_t seed = 1;
  Index dim_a = 2;
  Index dim_b = 2;
  Index rank = 4;
  int count = 1;

  std::vector<LevelSpec> levels;
  bool oracle_discord = false;
  bool oracle_eb_search = false;
  int eb_samples = 120;
  MeasurementSweepConfig sweep;

  std::string output_prefix = "out/run";
  double gap_tol = 1e-8;
  double feas_tol = 1e-10;
  int workers = 0;  // 0 = logical cores; QDISCORD_WORKERS env overrides

  std::string family_name() const;
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);

/// Schema and range checks without solving; empty result means valid.
std::vector<std::string> validate(const ExperimentConfig& config);

/// Runs the sweep: one CSV row per (state, level) plus oracle rows, plus a
/// manifest next to the CSV. Returns the process exit code: 0 on success,
/// 1 on config errors, 2 when some rows failed to solve.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

inline constexpr const char* kCsvHeader = "family,param,k,bose,ppt,F_star,d_bound,status,gap,seconds";

struct CsvRow {
  std::string family;
  double param = 0.0;
  int k = 0;            // -1 brute discord oracle, 0 EB search oracle
  std::string bose;     // "1"/"0", empty on oracle rows
  std::string ppt;      // "none" or cut labels, empty on oracle rows
  std::string f_star;
  std::string d_bound;
  std::string status;
  std::string gap;
  std::string seconds;
};

std::vector<CsvRow> read_csv(std::istream& is);
std::vector<CsvRow> read_csv_file(const std::string& path);

/// Per-level minima/maxima, non-optimal counts, and monotonicity violations
/// of the d_bound chain (ascending k, then PPT-bound levels, then the brute
/// discord row; the EB search row is a lower bound on the limiting level and
/// is reported but not chained).
struct LevelSummary {
  std::string label;
  int rows = 0;
  int not_optimal = 0;
  double d_min = 0.0;
  double d_max = 0.0;
  int monotonicity_violations = 0;
};

std::vector<LevelSummary> summarize(const std::vector<CsvRow>& rows, double tol = 1e-6);
void print_summary(std::ostream& os, const std::vector<LevelSummary>& table);

}  // namespace qdiscord

#endif
