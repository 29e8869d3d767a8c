#include "pscp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pscp/lp.hpp"

namespace pscp {

std::optional<OracleOptimum> enumerate_optimal(const CoverInstance& inst, const ScenarioSet& set,
                                               double eps, SolveMode mode) {
  if (inst.n > 24) throw std::invalid_argument("enumerate_optimal guard: n <= 24");
  std::optional<OracleOptimum> best;
  std::vector<int> x(static_cast<std::size_t>(inst.n), 0);
  const std::uint64_t total = 1ull << inst.n;
  for (std::uint64_t c = 0; c < total; ++c) {
    // bit n-1 of c is x_1, so ascending c scans x lexicographically
    for (int j = 0; j < inst.n; ++j)
      x[static_cast<std::size_t>(j)] = static_cast<int>((c >> (inst.n - 1 - j)) & 1u);
    if (!check_feasible(x, inst, set, eps, mode).feasible) continue;
    double cost = 0.0;
    for (int j = 0; j < inst.n; ++j)
      if (x[static_cast<std::size_t>(j)]) cost += inst.cost[static_cast<std::size_t>(j)];
    if (!best || cost < best->cost) best = OracleOptimum{cost, x};
  }
  return best;
}

double lp_psi_oracle(const std::vector<double>& v, double eps, const IndexMaps& maps,
                     const ScenarioSet& set) {
  if (set.block_count() != 1)
    throw std::invalid_argument("lp_psi_oracle needs single-block scenario data");
  const auto& scens = set.scenarios[0];
  if (scens.size() > 10000) throw std::invalid_argument("lp_psi_oracle guard: at most 10^4 scenarios");
  LpModel m;
  for (const Scenario& sc : scens) m.add_var(0.0, 1.0, -sc.prob);
  for (std::size_t i = 0; i < scens.size(); ++i)
    for (int k : maps.rows_of_scen[0][i])
      m.add_row(RowSense::le, v[static_cast<std::size_t>(k)], {{static_cast<int>(i), 1.0}});
  LpResult res = solve_lp(m);
  if (res.status != LpStatus::optimal) throw std::runtime_error("lp_psi_oracle: LP solve failed");
  return (1.0 - eps) - set.satisfied_mass[0] + res.objective;
}

std::optional<double> extensive_form_optimal(const CoverInstance& inst, const ScenarioSet& set,
                                             double eps, bool z_binary) {
  if (set.block_count() != 1)
    throw std::invalid_argument("extensive_form_optimal needs single-block scenario data");
  if (inst.n > 12) throw std::invalid_argument("extensive_form_optimal guard: n <= 12");
  const auto& scens = set.scenarios[0];
  if (scens.size() > 40)
    throw std::invalid_argument("extensive_form_optimal guard: at most 40 scenarios");

  std::optional<double> best;
  std::vector<int> covered(static_cast<std::size_t>(inst.m), 0);
  const std::uint64_t total = 1ull << inst.n;
  for (std::uint64_t c = 0; c < total; ++c) {
    double cost = 0.0;
    for (int j = 0; j < inst.n; ++j)
      if ((c >> (inst.n - 1 - j)) & 1u) cost += inst.cost[static_cast<std::size_t>(j)];
    for (int k = 0; k < inst.m; ++k) {
      covered[static_cast<std::size_t>(k)] = 0;
      for (int j : inst.cover[static_cast<std::size_t>(k)]) {
        if ((c >> (inst.n - 1 - j)) & 1u) {
          covered[static_cast<std::size_t>(k)] = 1;
          break;
        }
      }
    }
    // maximal v equals the cover indicator; any smaller v only shrinks z
    double mass = set.satisfied_mass[0];
    for (const Scenario& sc : scens) {
      double z = 1.0;
      for (int k : sc.rows) z = std::min(z, static_cast<double>(covered[static_cast<std::size_t>(k)]));
      if (z_binary) z = std::floor(z);
      mass += sc.prob * z;
    }
    if (mass >= 1.0 - eps - 1e-12 && (!best || cost < *best)) best = cost;
  }
  return best;
}

}  // namespace pscp
