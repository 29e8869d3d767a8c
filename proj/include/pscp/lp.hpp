#pragma once

#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

namespace pscp {

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

enum class RowSense { ge, le, eq };

// Minimization LP over bounded variables. Columns are added first, then rows
// reference them by index. Bounds may be +-infinity.
struct LpModel {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> obj;

  struct Row {
    RowSense sense = RowSense::ge;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> coefs;
  };
  std::vector<Row> rows;

  int add_var(double lo, double up, double cost);
  int add_row(RowSense sense, double rhs, std::vector<std::pair<int, double>> coefs);
  int var_count() const { return static_cast<int>(obj.size()); }
  int row_count() const { return static_cast<int>(rows.size()); }
};

enum class LpStatus { optimal, infeasible, unbounded, failure, aborted };

enum class VarStatus : unsigned char { basic, at_lower, at_upper, free_nb };

// Basis layout: one entry per structural column, then one per row slack, in
// model order. A basis stays valid for a model derived by appending rows or
// tightening bounds; new row slacks default to basic on import.
struct LpBasis {
  std::vector<VarStatus> status;
  bool empty() const { return status.empty(); }
};

struct LpResult {
  LpStatus status = LpStatus::failure;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
  LpBasis basis;
};

// Primal simplex on the bounded-variable form. Deterministic for identical
// input and warm basis. A claimed optimum is re-verified against bounds and
// rows; verification failure surfaces as LpStatus::failure, never as a wrong
// optimal. A positive deadline_s caps wall time; an expired solve returns
// LpStatus::aborted with no usable point or basis.
LpResult solve_lp(const LpModel& model, const LpBasis* warm = nullptr, double deadline_s = 0.0);

// Debug dump in LP text format for external cross-checks.
void write_lp_text(const LpModel& model, std::ostream& out);

}  // namespace pscp
