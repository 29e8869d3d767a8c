#pragma once

#include <vector>

#include "pscp/instance.hpp"

namespace pscp {

// Rows whose scenario mass exceeds eps must be covered in every feasible
// solution; leaving such a row uncovered already pushes the miss probability
// past eps. Strict inequality: mass exactly eps stays free.

// Single-block rule. Throws unless the set has one block.
std::vector<int> fix_forced_rows(const IndexMaps& maps, const ScenarioSet& set, double eps);

// Per-block rule: a block factor below 1 - eps caps the whole product, so the
// same threshold applies blockwise.
std::vector<int> block_forced_rows(const IndexMaps& maps, const ScenarioSet& set, double eps);

}  // namespace pscp
