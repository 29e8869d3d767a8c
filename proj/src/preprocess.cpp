#include "pscp/preprocess.hpp"

#include <stdexcept>

namespace pscp {

std::vector<int> block_forced_rows(const IndexMaps& maps, const ScenarioSet& set, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  std::vector<int> forced;
  for (int k = 0; k < set.m; ++k)
    if (maps.row_mass[static_cast<std::size_t>(k)] > eps) forced.push_back(k);
  return forced;
}

std::vector<int> fix_forced_rows(const IndexMaps& maps, const ScenarioSet& set, double eps) {
  if (set.block_count() != 1)
    throw std::invalid_argument("fix_forced_rows needs single-block scenario data");
  return block_forced_rows(maps, set, eps);
}

}  // namespace pscp
