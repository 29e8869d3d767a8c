#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "pscp/cuts.hpp"
#include "pscp/instance.hpp"
#include "pscp/lp.hpp"

namespace pscp {

enum class SolveMode { generic, block };

std::string to_string(SolveMode mode);

// Projected master over (x, v) plus per-block eta in block mode. Holds
// non-owning pointers; instance data must outlive the model.
struct MasterModel {
  SolveMode mode = SolveMode::generic;
  const CoverInstance* inst = nullptr;
  const ScenarioSet* set = nullptr;
  const IndexMaps* maps = nullptr;
  double eps = 0.0;
  int n = 0, m = 0, T = 0;
  std::vector<int> forced_rows;  // v fixed to 1 before the solve

  int var_count() const { return n + m + (mode == SolveMode::block ? T : 0); }
  int x_col(int j) const { return j; }
  int v_col(int k) const { return n + k; }
  int eta_col(int t) const { return n + m + t; }
};

MasterModel build_master(const CoverInstance& inst, const ScenarioSet& set, const IndexMaps& maps,
                         double eps, SolveMode mode, const std::vector<int>& fixings);

enum class SolveStatus { optimal, time_limit, infeasible };

struct SolveLimits {
  double time_limit_s = std::numeric_limits<double>::infinity();
  long long node_limit = -1;  // negative disables
};

struct SolveResult {
  SolveStatus status = SolveStatus::time_limit;
  std::vector<int> x;  // 0/1 incumbent, empty when none found
  double objective = std::numeric_limits<double>::infinity();
  double dual_bound = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  long long nodes = 0;
  long long lp_solves = 0;
  long long cuts_generic = 0;
  long long cuts_block = 0;
  long long cuts_coverage = 0;
  int root_iters = 0;
  double t_total_s = 0.0;
  double t_root_s = 0.0;
  double t_sep_s = 0.0;
};

struct FeasCheck {
  bool feasible = false;
  double probability = 0.0;
};

// Exact scenario arithmetic on the cover indicator of x; the only feasibility
// authority for incumbents. Slack 1e-12 on the probability comparison.
FeasCheck check_feasible(const std::vector<int>& x, const CoverInstance& inst,
                         const ScenarioSet& set, double eps, SolveMode mode);

// Branch-and-bound with cut generation at the nodes and an iterated cut loop
// at the root. Deterministic given identical inputs.
class BendersSolver {
 public:
  explicit BendersSolver(const MasterModel& master) : master_(master) {}

  // Replaces standard separation (tests drive the loop with synthetic cuts).
  std::function<std::vector<BendersCut>(const std::vector<double>& point, long long node, int iter)>
      separator_override;
  // Observes every cut at its separation point right before pooling.
  std::function<void(const BendersCut& cut, const std::vector<double>& point)> on_cut;

  SolveResult solve(const SolveLimits& limits = {});

 private:
  const MasterModel& master_;
};

// Flat key-value report; reals carry 17 significant digits.
void write_report(std::ostream& out, const SolveResult& res, SolveMode mode, double eps, int s,
                  int T, std::uint64_t seed);

}  // namespace pscp
