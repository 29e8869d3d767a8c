#include "pscp/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pscp {

namespace {

struct Sweep {
  std::vector<std::pair<int, double>> coefs;  // ascending global row order
  double weighted = 0.0;                      // sum of coef * v over coefs order
  std::vector<int> order;                     // block rows sorted by (v, index)
};

// Rows ascend by v value (ties by index); each scenario is charged to the
// first row that covers it, which realizes min over its rows.
Sweep sweep_block(const std::vector<double>& v, int block, const IndexMaps& maps,
                  const ScenarioSet& set) {
  const auto& rows = set.partition.blocks[static_cast<std::size_t>(block)];
  const auto& scens = set.scenarios[static_cast<std::size_t>(block)];
  Sweep sw;
  sw.order.assign(rows.begin(), rows.end());
  std::sort(sw.order.begin(), sw.order.end(), [&](int a, int b) {
    double va = v[static_cast<std::size_t>(a)], vb = v[static_cast<std::size_t>(b)];
    if (va != vb) return va < vb;
    return a < b;
  });
  std::vector<char> covered(scens.size(), 0);
  std::vector<double> coef(v.size(), 0.0);
  for (int k : sw.order) {
    double a = 0.0;
    for (int i : maps.scen_of_row[static_cast<std::size_t>(k)]) {
      if (covered[static_cast<std::size_t>(i)]) continue;
      covered[static_cast<std::size_t>(i)] = 1;
      a += scens[static_cast<std::size_t>(i)].prob;
    }
    coef[static_cast<std::size_t>(k)] = a;
  }
  for (int k : rows) {
    double a = coef[static_cast<std::size_t>(k)];
    if (a == 0.0) continue;
    sw.coefs.push_back({k, a});
    sw.weighted += a * v[static_cast<std::size_t>(k)];
  }
  return sw;
}

void require_single_block(const ScenarioSet& set, const char* fn) {
  if (set.block_count() != 1)
    throw std::invalid_argument(std::string(fn) + " needs single-block scenario data");
}

}  // namespace

double psi_generic(const std::vector<double>& v, double eps, const IndexMaps& maps,
                   const ScenarioSet& set) {
  require_single_block(set, "psi_generic");
  Sweep sw = sweep_block(v, 0, maps, set);
  return (1.0 - eps) - set.satisfied_mass[0] - sw.weighted;
}

std::optional<BendersCut> separate_generic(const std::vector<double>& v, double eps,
                                           const IndexMaps& maps, const ScenarioSet& set,
                                           double tol) {
  require_single_block(set, "separate_generic");
  Sweep sw = sweep_block(v, 0, maps, set);
  double rhs = (1.0 - eps) - set.satisfied_mass[0];
  double violation = rhs - sw.weighted;
  if (!(violation > tol)) return std::nullopt;
  BendersCut cut;
  cut.kind = CutKind::generic;
  cut.coefs = std::move(sw.coefs);
  cut.rhs = rhs;
  return cut;
}

double psi_block(const std::vector<double>& v, double eta, int block, const IndexMaps& maps,
                 const ScenarioSet& set) {
  Sweep sw = sweep_block(v, block, maps, set);
  double delta = set.satisfied_mass[static_cast<std::size_t>(block)] + sw.weighted;
  if (delta == 0.0) return std::numeric_limits<double>::infinity();
  return eta - std::log(delta);
}

std::optional<BendersCut> separate_block(const std::vector<double>& v, double eta, int block,
                                         const IndexMaps& maps, const ScenarioSet& set,
                                         double tol) {
  const double sm = set.satisfied_mass[static_cast<std::size_t>(block)];
  Sweep sw = sweep_block(v, block, maps, set);
  double delta = sm + sw.weighted;
  if (delta == 0.0) {
    // block probability vanishes at v: demand one unit of cover over the
    // shortest sorted prefix whose scenario sets reach every scenario
    const auto& scens = set.scenarios[static_cast<std::size_t>(block)];
    std::vector<char> covered(scens.size(), 0);
    std::size_t left = scens.size();
    std::vector<int> prefix;
    for (int k : sw.order) {
      prefix.push_back(k);
      for (int i : maps.scen_of_row[static_cast<std::size_t>(k)]) {
        if (!covered[static_cast<std::size_t>(i)]) {
          covered[static_cast<std::size_t>(i)] = 1;
          --left;
        }
      }
      if (left == 0) break;
    }
    if (left != 0) throw std::logic_error("scenario sets do not cover all scenarios");
    std::sort(prefix.begin(), prefix.end());
    BendersCut cut;
    cut.kind = CutKind::coverage;
    for (int k : prefix) cut.coefs.push_back({k, 1.0});
    cut.rhs = 1.0;
    return cut;
  }
  double psi = eta - std::log(delta);
  if (!(psi > tol)) return std::nullopt;
  // supporting hyperplane of eta <= ln(sm + linearized cover mass) at v;
  // equality holds at eta = ln(delta) by construction
  BendersCut cut;
  cut.kind = CutKind::block;
  cut.coefs = std::move(sw.coefs);
  cut.eta_block = block;
  cut.eta_coef = -delta;
  cut.rhs = delta * (1.0 - std::log(delta)) - sm;
  return cut;
}

}  // namespace pscp
