#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "pscp/instance.hpp"

namespace pscp {

enum class DistKind { circular, star };

std::string to_string(DistKind kind);
DistKind dist_kind_from_string(const std::string& name);

/// Frozen sampling parameters. Per block: one parameter per local row
/// (circular: Bernoulli alpha in [0.01, 0.0275]; star: Poisson lambda in
/// [0.1, 0.2]), star additionally carries one shared hub lambda per block.
struct DistributionSpec {
  DistKind kind = DistKind::circular;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> row_params;  // [block][local row]
  std::vector<double> hub_params;               // star only, one per block

  /// Throws std::invalid_argument when shapes or ranges are off.
  void validate(const BlockPartition& partition) const;
};

/// Draws the parameter vectors uniformly from their ranges, one parameter
/// substream per block, and freezes them into the returned spec.
DistributionSpec make_distribution(DistKind kind, const BlockPartition& partition,
                                   std::uint64_t seed);

/// One circular draw over a block of size alpha.size(): Y_k ~ Bernoulli(alpha_k)
/// independently, entry k is 1 iff Y_k or the cyclic successor Y_{k+1} fired.
/// Returns ascending local row ids.
std::vector<int> draw_circular(const std::vector<double>& alpha, std::mt19937_64& rng);

/// One star draw: Y_k ~ Poisson(lambda_k) per row plus a shared hub draw
/// Y_hub ~ Poisson(hub_lambda); entry k is 1 iff Y_k + Y_hub >= 2.
std::vector<int> draw_star(const std::vector<double>& lambda, double hub_lambda,
                           std::mt19937_64& rng);

struct SampledSets {
  ScenarioSet per_block;  // T = partition.block_count()
  ScenarioSet joint;      // T = 1, same draws concatenated index-wise
};

/// Draws s scenarios per block independently (one scenario substream per
/// block) and normalizes both the per-block set and the joint set built by
/// concatenating same-index draws. Deterministic in (spec, m, partition, s).
SampledSets sample_scenario_set(int m, const BlockPartition& partition,
                                const DistributionSpec& spec, int s);

/// Sidecar record of the frozen parameters: kind, seed, per-block vectors
/// at 17 significant digits.
void write_distribution_sidecar(const DistributionSpec& spec, std::ostream& out);

}  // namespace pscp
