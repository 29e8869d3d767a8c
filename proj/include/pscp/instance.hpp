#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pscp {

/// Malformed input file (OR-Library SCP text, scenario file, bench config).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic set covering data: 0-1 matrix A (m x n, stored sparsely
/// by row) and nonnegative column costs c.
struct CoverInstance {
  int m = 0;
  int n = 0;
  std::vector<std::vector<int>> cover;  // per row: ascending 0-based columns j with A_{kj} = 1
  std::vector<double> cost;             // per column, >= 0

  /// Throws std::invalid_argument when an invariant is broken
  /// (empty row, out-of-range or unsorted column list, negative cost).
  void validate() const;
};

/// Parses the OR-Library "scp" text format: m n, then n costs, then for each
/// row a count followed by that many 1-based column indices.
/// Internal indices are 0-based. Throws ParseError on truncated input,
/// non-integer tokens, out-of-range or duplicate columns, or an uncoverable row.
CoverInstance parse_orlib(std::istream& in);
CoverInstance load_orlib(const std::string& path);
void serialize_orlib(const CoverInstance& inst, std::ostream& out);

/// Partition of the row set [m] into T consecutive-index blocks M^1..M^T.
struct BlockPartition {
  std::vector<std::vector<int>> blocks;  // per block: ascending 0-based global row ids

  int block_count() const { return static_cast<int>(blocks.size()); }
  int total_rows() const;
  int block_of_row(int row) const;

  /// Consecutive blocks of the given size; the last block takes the remainder.
  /// size <= 0 or size >= m gives a single block.
  static BlockPartition consecutive(int m, int size);
  static BlockPartition single(int m) { return consecutive(m, 0); }

  /// Throws std::invalid_argument unless blocks are nonempty, disjoint,
  /// ascending, and cover [m] exactly.
  void validate(int m) const;
};

/// One stored scenario: the rows of its block whose right-hand side is 1.
struct Scenario {
  std::vector<int> rows;  // ascending 0-based global row ids, nonempty
  double prob = 0.0;      // > 0
};

/// Finite discrete distribution of the random right-hand side, per block.
/// All-zero draws are not stored; their mass lives in satisfied_mass so the
/// chance constraint credits them as always satisfied.
struct ScenarioSet {
  int draw_count = 0;  // s: draws per block before merging
  int m = 0;
  BlockPartition partition;
  std::vector<std::vector<Scenario>> scenarios;  // per block, lexicographically sorted by rows
  std::vector<double> satisfied_mass;            // per block

  int block_count() const { return partition.block_count(); }

  /// Checks the stored-scenario invariants: mass balance within 1e-12 per
  /// block, no empty or duplicate scenarios, rows inside their block.
  void validate() const;
};

/// Raw per-block draws prior to normalization. Either every draw weighs
/// 1/s (weights empty) or explicit weights are given per block, summing to 1.
struct RawDraws {
  int s = 0;
  int m = 0;
  BlockPartition partition;
  std::vector<std::vector<std::vector<int>>> draws;  // [block][draw] -> ascending global row ids
  std::vector<std::vector<double>> weights;          // optional, parallel to draws
};

/// Removes all-zero draws (mass goes to satisfied_mass), merges identical
/// draws, and orders the survivors lexicographically. Throws ParseError when
/// explicit weights do not sum to 1 within 1e-12.
ScenarioSet normalize_scenarios(const RawDraws& raw);

/// The transpose maps driving cut separation: S^t_k (scenarios whose rhs is 1
/// at row k) and M^t_i (rows of scenario i), plus each row's scenario mass.
struct IndexMaps {
  std::vector<std::vector<int>> scen_of_row;  // per global row: ascending block-local scenario ids
  std::vector<std::vector<std::vector<int>>> rows_of_scen;  // [block][scenario] -> global rows
  std::vector<double> row_mass;               // p(S^t_k) per global row
};

IndexMaps build_indices(const ScenarioSet& set);

/// Scenario file format (text): "s m T", block sizes, then per block one line
/// per stored scenario "p c r_1 ... r_c" (1-based global rows), then one
/// satisfied_mass line per block. Probabilities carry 17 significant digits.
void write_scenario_file(const ScenarioSet& set, std::ostream& out);
ScenarioSet read_scenario_file(std::istream& in);
ScenarioSet load_scenario_file(const std::string& path);
void save_scenario_file(const ScenarioSet& set, const std::string& path);

}  // namespace pscp
