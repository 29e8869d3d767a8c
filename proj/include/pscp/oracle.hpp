#pragma once

#include <optional>
#include <vector>

#include "pscp/instance.hpp"
#include "pscp/solver.hpp"

namespace pscp {

struct OracleOptimum {
  double cost = 0.0;
  std::vector<int> x;  // lexicographically smallest optimal 0/1 vector
};

// Full 2^n scan, first minimum kept. Guard: n <= 24.
std::optional<OracleOptimum> enumerate_optimal(const CoverInstance& inst, const ScenarioSet& set,
                                               double eps, SolveMode mode);

// Chance-violation value at v computed through an explicit LP over per-scenario
// variables, independent of the closed-form path. Guards: single block, at
// most 10^4 stored scenarios.
double lp_psi_oracle(const std::vector<double>& v, double eps, const IndexMaps& maps,
                     const ScenarioSet& set);

// Exact optimum of the unprojected formulation by enumeration over x with the
// per-scenario variables set to their best value (minimum of the covered
// indicators over each scenario's rows), either kept fractional or floored to
// binary. Guards: single block, n <= 12, at most 40 stored scenarios.
std::optional<double> extensive_form_optimal(const CoverInstance& inst, const ScenarioSet& set,
                                             double eps, bool z_binary);

}  // namespace pscp
