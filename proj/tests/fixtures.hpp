#pragma once

// Shared hand instances and randomized generators used across the test suite.

#include <random>
#include <vector>

#include "pscp/instance.hpp"

namespace fixtures {

inline pscp::ScenarioSet make_set(int m, const pscp::BlockPartition& part,
                                  const std::vector<std::vector<std::vector<int>>>& draws,
                                  const std::vector<std::vector<double>>& weights) {
  pscp::RawDraws raw;
  raw.s = static_cast<int>(draws.empty() ? 0 : draws[0].size());
  raw.m = m;
  raw.partition = part;
  raw.draws = draws;
  raw.weights = weights;
  return pscp::normalize_scenarios(raw);
}

// n=2, m=2, A=I, c=(1,2); draws {row0} w .6, {row1} w .4.
// Optimum 3 at eps=.3 (both rows), 1 at eps=.4 (row0 only).
inline pscp::CoverInstance pair_instance() {
  pscp::CoverInstance inst;
  inst.m = 2;
  inst.n = 2;
  inst.cover = {{0}, {1}};
  inst.cost = {1.0, 2.0};
  return inst;
}

inline pscp::ScenarioSet pair_set() {
  return make_set(2, pscp::BlockPartition::single(2), {{{0}, {1}}}, {{0.6, 0.4}});
}

// n=3, m=3, A=I, c=1; scenarios {0,2} p=.40, {0,1} p=.35, {1,2} p=.25.
// Any two rows reach at most .40, so eps=.1 forces the full cover, cost 3.
inline pscp::CoverInstance tri_instance() {
  pscp::CoverInstance inst;
  inst.m = 3;
  inst.n = 3;
  inst.cover = {{0}, {1}, {2}};
  inst.cost = {1.0, 1.0, 1.0};
  return inst;
}

inline pscp::ScenarioSet tri_set() {
  return make_set(3, pscp::BlockPartition::single(3), {{{0, 2}, {0, 1}, {1, 2}}},
                  {{0.40, 0.35, 0.25}});
}

// Random 0-1 cover matrix with integer costs; every row left coverable.
inline pscp::CoverInstance random_instance(std::mt19937_64& rng, int n, int m,
                                           double density = 0.45, int max_cost = 9) {
  pscp::CoverInstance inst;
  inst.m = m;
  inst.n = n;
  inst.cover.assign(static_cast<std::size_t>(m), {});
  std::uniform_int_distribution<int> cost_d(1, max_cost);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int j = 0; j < n; ++j) inst.cost.push_back(cost_d(rng));
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < n; ++j)
      if (u(rng) < density) inst.cover[static_cast<std::size_t>(k)].push_back(j);
    if (inst.cover[static_cast<std::size_t>(k)].empty())
      inst.cover[static_cast<std::size_t>(k)].push_back(static_cast<int>(rng() % n));
  }
  return inst;
}

// Uniform-weight draws, each row firing independently with probability p.
inline pscp::RawDraws random_draws(std::mt19937_64& rng, int m, const pscp::BlockPartition& part,
                                   int s, double p = 0.4) {
  pscp::RawDraws raw;
  raw.s = s;
  raw.m = m;
  raw.partition = part;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  raw.draws.resize(static_cast<std::size_t>(part.block_count()));
  for (int t = 0; t < part.block_count(); ++t) {
    for (int d = 0; d < s; ++d) {
      std::vector<int> rows;
      for (int k : part.blocks[static_cast<std::size_t>(t)])
        if (u(rng) < p) rows.push_back(k);
      raw.draws[static_cast<std::size_t>(t)].push_back(std::move(rows));
    }
  }
  return raw;
}

}  // namespace fixtures
