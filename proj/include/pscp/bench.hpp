#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pscp/instance.hpp"
#include "pscp/sampling.hpp"
#include "pscp/solver.hpp"

namespace pscp {

/// exp(mean(ln(v + shift))) - shift over nonnegative finite values.
/// Throws std::invalid_argument on empty input.
double shifted_geomean(const std::vector<double>& values, double shift);

/// Relative optimum gap in percent: 100 |o1 - o2| / max(o1, o2), 0 when equal.
double delta_o_pct(double o1, double o2);

struct FormulationComparison {
  bool available = false;  // both solves reached optimal
  double o_generic = 0.0;
  double o_block = 0.0;
  bool differs = false;  // exact comparison of the two optima
  double delta_pct = 0.0;
};

/// Solves the generic formulation on the joint set and the block formulation
/// on the per-block set, then compares optima. Forced-row presolve is applied
/// in both runs.
FormulationComparison compare_formulations(const CoverInstance& inst, const ScenarioSet& joint,
                                           const ScenarioSet& per_block, double eps,
                                           const SolveLimits& limits = {});

/// One raw result line of the experiment grid.
struct BenchRow {
  std::string scp;     // instance file path
  std::string dist;    // circular | star
  std::string blocks;  // 10 | 20 | full
  int s = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::string mode;    // generic | block
  std::string status;  // optimal | time_limit | infeasible | error
  double objective = 0.0;
  double dual_bound = 0.0;
  double gap = 0.0;
  long long nodes = 0;
  long long lp_solves = 0;
  long long cuts_generic = 0;
  long long cuts_block = 0;
  long long cuts_coverage = 0;
  int root_iters = 0;
  double t_total_s = 0.0;
  double t_root_s = 0.0;
  double t_sep_s = 0.0;
  int T = 0;
};

std::string bench_raw_header();
std::string format_bench_row(const BenchRow& row);
BenchRow parse_bench_row(const std::string& line);

std::string bench_agg_header();
/// Aggregate lines (scope generic, block, pair) computed from raw rows:
/// S counts optima, G% averages end gaps of time-limited runs only,
/// ND and dO% cover pairs whose optima differ. "-" marks empty cells.
std::vector<std::string> aggregate_rows(const std::vector<BenchRow>& rows);

/// Grid configuration, parsed from flat "key value" lines (# comments).
/// Repeated keys build grids: scp, dist, blocks, scenarios, eps, seed.
struct BenchConfig {
  std::vector<std::string> scp_files;
  std::vector<DistKind> dists;
  std::vector<std::string> block_schemes;  // "10" | "20" | "full"
  std::vector<int> scenario_counts;
  std::vector<double> eps_values;
  std::vector<std::uint64_t> seeds;
  double time_limit_s = 0.0;  // 0 = none
  int jobs = 1;
  std::string out_raw;
  std::string out_agg;
};

BenchConfig parse_bench_config(std::istream& in);
BenchConfig load_bench_config(const std::string& path);

/// Runs the full grid (both modes per cell), writes the raw and aggregate
/// CSVs, and returns the raw rows in deterministic grid order regardless of
/// worker count. Per-cell failures become status "error" rows.
std::vector<BenchRow> run_suite(const BenchConfig& config, std::ostream* log = nullptr);

}  // namespace pscp
