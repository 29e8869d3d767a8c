#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pscp/instance.hpp"

namespace pscp {

// default violation threshold for emitting a cut
inline constexpr double kCutTol = 1e-6;

enum class CutKind { generic, block, coverage };

struct BendersCut {
  CutKind kind = CutKind::generic;
  std::vector<std::pair<int, double>> coefs;  // (global row, coefficient), ascending rows
  int eta_block = -1;    // block index carrying the eta term, block kind only
  double eta_coef = 0.0;  // -delta, block kind only
  double rhs = 0.0;
  int origin_node = -1;
  int origin_iter = -1;

  // row-coefficient part evaluated in stored order
  double eval_rows(const std::vector<double>& v) const {
    double s = 0.0;
    for (auto [k, a] : coefs) s += a * v[static_cast<std::size_t>(k)];
    return s;
  }
};

// Chance-violation value at v for single-block data: positive means the
// probability requirement fails at v. Shares its arithmetic with
// separate_generic, so the emitted cut's violation equals this value exactly.
double psi_generic(const std::vector<double>& v, double eps, const IndexMaps& maps,
                   const ScenarioSet& set);

// Emits the most violated cover-probability cut at v, or nothing when the
// violation is at most tol. Rows are swept in ascending v order (ties by
// index); each scenario's probability lands on its first covering row.
std::optional<BendersCut> separate_generic(const std::vector<double>& v, double eps,
                                           const IndexMaps& maps, const ScenarioSet& set,
                                           double tol = kCutTol);

// Log-probability shortfall of one block at (v, eta): eta - ln(delta) with
// delta the block probability reached at v; +infinity when delta is zero.
double psi_block(const std::vector<double>& v, double eta, int block, const IndexMaps& maps,
                 const ScenarioSet& set);

// Block counterpart: emits the supporting hyperplane of eta <= ln(block
// probability) at v, or the all-ones prefix cover cut when the block
// probability vanishes at v.
std::optional<BendersCut> separate_block(const std::vector<double>& v, double eta, int block,
                                         const IndexMaps& maps, const ScenarioSet& set,
                                         double tol = kCutTol);

}  // namespace pscp
