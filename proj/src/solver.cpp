#include "pscp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace pscp {

std::string to_string(SolveMode mode) {
  return mode == SolveMode::generic ? "generic" : "block";
}

MasterModel build_master(const CoverInstance& inst, const ScenarioSet& set, const IndexMaps& maps,
                         double eps, SolveMode mode, const std::vector<int>& fixings) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  if (inst.m != set.m) throw std::invalid_argument("instance and scenario row counts differ");
  if (mode == SolveMode::generic && set.block_count() != 1)
    throw std::invalid_argument("generic mode needs single-block scenario data");
  MasterModel mm;
  mm.mode = mode;
  mm.inst = &inst;
  mm.set = &set;
  mm.maps = &maps;
  mm.eps = eps;
  mm.n = inst.n;
  mm.m = inst.m;
  mm.T = set.block_count();
  mm.forced_rows = fixings;
  std::sort(mm.forced_rows.begin(), mm.forced_rows.end());
  mm.forced_rows.erase(std::unique(mm.forced_rows.begin(), mm.forced_rows.end()),
                       mm.forced_rows.end());
  for (int k : mm.forced_rows)
    if (k < 0 || k >= mm.m) throw std::invalid_argument("forced row out of range");
  return mm;
}

FeasCheck check_feasible(const std::vector<int>& x, const CoverInstance& inst,
                         const ScenarioSet& set, double eps, SolveMode mode) {
  if (static_cast<int>(x.size()) != inst.n) throw std::invalid_argument("x length != n");
  for (int b : x)
    if (b != 0 && b != 1) throw std::invalid_argument("x entries must be 0/1");
  if (mode == SolveMode::generic && set.block_count() != 1)
    throw std::invalid_argument("generic mode needs single-block scenario data");
  std::vector<char> covered(static_cast<std::size_t>(inst.m), 0);
  for (int k = 0; k < inst.m; ++k) {
    for (int j : inst.cover[static_cast<std::size_t>(k)]) {
      if (x[static_cast<std::size_t>(j)]) {
        covered[static_cast<std::size_t>(k)] = 1;
        break;
      }
    }
  }
  double prob = 1.0;
  for (int t = 0; t < set.block_count(); ++t) {
    // compensated sum: block factors can carry 1e5 terms against a 1e-12 slack
    double factor = set.satisfied_mass[static_cast<std::size_t>(t)];
    double comp = 0.0;
    for (const Scenario& sc : set.scenarios[static_cast<std::size_t>(t)]) {
      bool sat = true;
      for (int k : sc.rows) {
        if (!covered[static_cast<std::size_t>(k)]) {
          sat = false;
          break;
        }
      }
      if (sat) {
        double y = sc.prob - comp;
        double th = factor + y;
        comp = (th - factor) - y;
        factor = th;
      }
    }
    prob *= factor;
  }
  FeasCheck fc;
  fc.probability = prob;
  fc.feasible = prob >= 1.0 - eps - 1e-12;
  return fc;
}

namespace {

constexpr double kIntTol = 1e-6;
constexpr double kPruneTol = 1e-9;
constexpr double kStallRel = 1e-4;   // 0.01 percent
constexpr int kStallLimit = 100;
constexpr int kNodeCutRounds = 50;
constexpr double kInactiveSlack = 1e-4;
constexpr int kInactiveStreak = 50;
constexpr double kExactSepTol = 1e-12;

struct PoolEntry {
  BendersCut cut;
  long long id = 0;
  int streak = 0;
  bool is_static = false;
};

struct Node {
  long long id = 0;
  double bound = 0.0;
  std::vector<signed char> fix_x, fix_v;  // -1 free, else forced value
  std::shared_ptr<const LpBasis> basis;
  std::shared_ptr<const std::vector<long long>> pool_ids;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;  // FIFO among equal bounds
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Search {
 public:
  Search(const MasterModel& mm, const BendersSolver& owner, const SolveLimits& limits)
      : M(mm), owner_(owner), limits_(limits) {}

  SolveResult run();

 private:
  const MasterModel& M;
  const BendersSolver& owner_;
  const SolveLimits& limits_;

  LpModel lp_;
  int base_rows_ = 0;
  std::vector<PoolEntry> pool_;
  long long next_cut_id_ = 1;
  bool root_phase_ = true;

  SolveResult res_;
  std::vector<int> incumbent_;
  double ub_ = std::numeric_limits<double>::infinity();
  double global_lb_ = -std::numeric_limits<double>::infinity();
  Clock::time_point t0_;
  bool hit_limit_ = false;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue_;
  long long next_node_id_ = 0;

  bool out_of_time() const { return seconds_since(t0_) > limits_.time_limit_s; }

  void build_base_lp() {
    for (int j = 0; j < M.n; ++j) lp_.add_var(0.0, 1.0, M.inst->cost[static_cast<std::size_t>(j)]);
    for (int k = 0; k < M.m; ++k) lp_.add_var(0.0, 1.0, 0.0);
    if (M.mode == SolveMode::block) {
      double lb = std::log(1.0 - M.eps);
      for (int t = 0; t < M.T; ++t) lp_.add_var(lb, 0.0, 0.0);
    }
    for (int k = 0; k < M.m; ++k) {
      std::vector<std::pair<int, double>> coefs;
      for (int j : M.inst->cover[static_cast<std::size_t>(k)]) coefs.push_back({M.x_col(j), 1.0});
      coefs.push_back({M.v_col(k), -1.0});
      lp_.add_row(RowSense::ge, 0.0, std::move(coefs));
    }
    if (M.mode == SolveMode::block) {
      std::vector<std::pair<int, double>> coefs;
      for (int t = 0; t < M.T; ++t) coefs.push_back({M.eta_col(t), 1.0});
      lp_.add_row(RowSense::ge, std::log(1.0 - M.eps), std::move(coefs));
    }
    base_rows_ = lp_.row_count();
  }

  void apply_bounds(const std::vector<signed char>& fx, const std::vector<signed char>& fv) {
    for (int j = 0; j < M.n; ++j) {
      double lo = 0.0, up = 1.0;
      if (fx[static_cast<std::size_t>(j)] == 0) up = 0.0;
      if (fx[static_cast<std::size_t>(j)] == 1) lo = 1.0;
      lp_.lower[static_cast<std::size_t>(M.x_col(j))] = lo;
      lp_.upper[static_cast<std::size_t>(M.x_col(j))] = up;
    }
    for (int k = 0; k < M.m; ++k) {
      double lo = 0.0, up = 1.0;
      if (fv[static_cast<std::size_t>(k)] == 0) up = 0.0;
      if (fv[static_cast<std::size_t>(k)] == 1) lo = 1.0;
      lp_.lower[static_cast<std::size_t>(M.v_col(k))] = lo;
      lp_.upper[static_cast<std::size_t>(M.v_col(k))] = up;
    }
    for (int k : M.forced_rows) lp_.lower[static_cast<std::size_t>(M.v_col(k))] = 1.0;
  }

  void append_cut_row(const BendersCut& cut) {
    std::vector<std::pair<int, double>> coefs;
    coefs.reserve(cut.coefs.size() + 1);
    for (auto [k, a] : cut.coefs) coefs.push_back({M.v_col(k), a});
    if (cut.kind == CutKind::block) coefs.push_back({M.eta_col(cut.eta_block), cut.eta_coef});
    lp_.add_row(RowSense::ge, cut.rhs, std::move(coefs));
  }

  void rebuild_lp_rows() {
    lp_.rows.resize(static_cast<std::size_t>(base_rows_));
    for (const PoolEntry& pe : pool_) append_cut_row(pe.cut);
  }

  bool same_cut(const BendersCut& a, const BendersCut& b) const {
    if (a.kind != b.kind || a.eta_block != b.eta_block) return false;
    if (a.rhs != b.rhs || a.eta_coef != b.eta_coef) return false;
    return a.coefs == b.coefs;
  }

  // returns number of new rows; duplicates are discarded
  int pool_cuts(std::vector<BendersCut>&& cuts, long long node, int iter) {
    int added = 0;
    for (BendersCut& cut : cuts) {
      bool dup = false;
      for (const PoolEntry& pe : pool_) {
        if (same_cut(pe.cut, cut)) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      cut.origin_node = static_cast<int>(node);
      cut.origin_iter = iter;
      switch (cut.kind) {
        case CutKind::generic: ++res_.cuts_generic; break;
        case CutKind::block: ++res_.cuts_block; break;
        case CutKind::coverage: ++res_.cuts_coverage; break;
      }
      append_cut_row(cut);
      pool_.push_back(PoolEntry{std::move(cut), next_cut_id_++, 0, root_phase_});
      ++added;
    }
    return added;
  }

  std::vector<BendersCut> separate(const std::vector<double>& point, long long node, int iter,
                                   double tol) {
    auto t0 = Clock::now();
    std::vector<BendersCut> cuts;
    if (owner_.separator_override) {
      cuts = owner_.separator_override(point, node, iter);
    } else {
      std::vector<double> v(static_cast<std::size_t>(M.m));
      for (int k = 0; k < M.m; ++k) v[static_cast<std::size_t>(k)] = point[static_cast<std::size_t>(M.v_col(k))];
      if (M.mode == SolveMode::generic) {
        auto c = separate_generic(v, M.eps, *M.maps, *M.set, tol);
        if (c) cuts.push_back(std::move(*c));
      } else {
        for (int t = 0; t < M.T; ++t) {
          double eta = point[static_cast<std::size_t>(M.eta_col(t))];
          auto c = separate_block(v, eta, t, *M.maps, *M.set, tol);
          if (c) cuts.push_back(std::move(*c));
        }
      }
    }
    res_.t_sep_s += seconds_since(t0);
    for (BendersCut& c : cuts) {
      c.origin_node = static_cast<int>(node);
      c.origin_iter = iter;
    }
    if (owner_.on_cut)
      for (const BendersCut& c : cuts) owner_.on_cut(c, point);
    return cuts;
  }

  void update_streaks(const std::vector<double>& point) {
    for (PoolEntry& pe : pool_) {
      if (pe.is_static) continue;
      double lhs = 0.0;
      for (auto [k, a] : pe.cut.coefs) lhs += a * point[static_cast<std::size_t>(M.v_col(k))];
      if (pe.cut.kind == CutKind::block)
        lhs += pe.cut.eta_coef * point[static_cast<std::size_t>(M.eta_col(pe.cut.eta_block))];
      if (lhs - pe.cut.rhs > kInactiveSlack)
        ++pe.streak;
      else
        pe.streak = 0;
    }
  }

  void drop_inactive() {
    std::size_t cap = 10u * static_cast<std::size_t>(M.m + M.T);
    if (pool_.size() <= cap) return;
    std::vector<PoolEntry> kept;
    kept.reserve(pool_.size());
    for (PoolEntry& pe : pool_) {
      if (!pe.is_static && pe.streak >= kInactiveStreak) continue;
      kept.push_back(std::move(pe));
    }
    if (kept.size() == pool_.size()) return;
    pool_ = std::move(kept);
    rebuild_lp_rows();
  }

  std::shared_ptr<const std::vector<long long>> snapshot_ids() const {
    auto ids = std::make_shared<std::vector<long long>>();
    ids->reserve(pool_.size());
    for (const PoolEntry& pe : pool_) ids->push_back(pe.id);
    return ids;
  }

  LpBasis map_basis(const LpBasis& saved, const std::vector<long long>& saved_ids) const {
    const int nv = lp_.var_count();
    LpBasis out;
    out.status.assign(static_cast<std::size_t>(nv + lp_.row_count()), VarStatus::basic);
    const std::size_t fixed_part = static_cast<std::size_t>(nv + base_rows_);
    if (saved.status.size() < fixed_part) return LpBasis{};
    for (std::size_t i = 0; i < fixed_part; ++i) out.status[i] = saved.status[i];
    std::size_t sp = 0;
    for (std::size_t p = 0; p < pool_.size(); ++p) {
      while (sp < saved_ids.size() && saved_ids[sp] < pool_[p].id) ++sp;
      if (sp < saved_ids.size() && saved_ids[sp] == pool_[p].id &&
          fixed_part + sp < saved.status.size())
        out.status[fixed_part + p] = saved.status[fixed_part + sp];
    }
    return out;
  }

  std::vector<int> greedy_cover() const {
    std::vector<std::vector<int>> rows_of_col(static_cast<std::size_t>(M.n));
    for (int k = 0; k < M.m; ++k)
      for (int j : M.inst->cover[static_cast<std::size_t>(k)])
        rows_of_col[static_cast<std::size_t>(j)].push_back(k);
    std::vector<char> covered(static_cast<std::size_t>(M.m), 0);
    std::vector<int> x(static_cast<std::size_t>(M.n), 0);
    int left = M.m;
    while (left > 0) {
      int best = -1, best_gain = 0;
      for (int j = 0; j < M.n; ++j) {
        if (x[static_cast<std::size_t>(j)]) continue;
        int gain = 0;
        for (int k : rows_of_col[static_cast<std::size_t>(j)])
          if (!covered[static_cast<std::size_t>(k)]) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best = j;
        }
      }
      if (best < 0) break;  // cannot happen: every row has a covering column
      x[static_cast<std::size_t>(best)] = 1;
      for (int k : rows_of_col[static_cast<std::size_t>(best)]) {
        if (!covered[static_cast<std::size_t>(k)]) {
          covered[static_cast<std::size_t>(k)] = 1;
          --left;
        }
      }
    }
    return x;
  }

  double cost_of(const std::vector<int>& x) const {
    double c = 0.0;
    for (int j = 0; j < M.n; ++j)
      if (x[static_cast<std::size_t>(j)]) c += M.inst->cost[static_cast<std::size_t>(j)];
    return c;
  }

  bool try_incumbent(const std::vector<int>& x) {
    FeasCheck fc = check_feasible(x, *M.inst, *M.set, M.eps, M.mode);
    if (!fc.feasible) return false;
    double c = cost_of(x);
    if (c < ub_) {
      ub_ = c;
      incumbent_ = x;
    }
    return true;
  }

  bool integral_point(const std::vector<double>& point) const {
    for (int j = 0; j < M.n; ++j) {
      double v = point[static_cast<std::size_t>(M.x_col(j))];
      if (std::abs(v - std::round(v)) > kIntTol) return false;
    }
    for (int k = 0; k < M.m; ++k) {
      double v = point[static_cast<std::size_t>(M.v_col(k))];
      if (std::abs(v - std::round(v)) > kIntTol) return false;
    }
    return true;
  }

  std::vector<int> round_x(const std::vector<double>& point) const {
    std::vector<int> x(static_cast<std::size_t>(M.n), 0);
    for (int j = 0; j < M.n; ++j)
      x[static_cast<std::size_t>(j)] =
          point[static_cast<std::size_t>(M.x_col(j))] > 0.5 ? 1 : 0;
    return x;
  }

  // most fractional v first, then x; -1 if the point is integral
  std::pair<int, bool> pick_branch_var(const std::vector<double>& point) const {
    int best = -1;
    double best_dist = kIntTol;
    for (int k = 0; k < M.m; ++k) {
      double v = point[static_cast<std::size_t>(M.v_col(k))];
      double dist = std::abs(v - std::round(v));
      if (dist > best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    if (best >= 0) return {best, true};
    best_dist = kIntTol;
    for (int j = 0; j < M.n; ++j) {
      double v = point[static_cast<std::size_t>(M.x_col(j))];
      double dist = std::abs(v - std::round(v));
      if (dist > best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    return {best, false};
  }

  // fallback when the point is integral but exactness demands progress
  std::pair<int, bool> pick_unfixed_var(const Node& node) const {
    for (int k = 0; k < M.m; ++k)
      if (node.fix_v[static_cast<std::size_t>(k)] < 0) return {k, true};
    for (int j = 0; j < M.n; ++j)
      if (node.fix_x[static_cast<std::size_t>(j)] < 0) return {j, false};
    return {-1, false};
  }

  void push_children(const Node& node, int var, bool is_v, double bound, const LpBasis& basis) {
    auto shared_basis = std::make_shared<const LpBasis>(basis);
    auto ids = snapshot_ids();
    for (int val = 0; val <= 1; ++val) {
      Node child;
      child.id = next_node_id_++;
      child.bound = bound;
      child.fix_x = node.fix_x;
      child.fix_v = node.fix_v;
      if (is_v)
        child.fix_v[static_cast<std::size_t>(var)] = static_cast<signed char>(val);
      else
        child.fix_x[static_cast<std::size_t>(var)] = static_cast<signed char>(val);
      child.basis = shared_basis;
      child.pool_ids = ids;
      queue_.push(std::move(child));
    }
  }

  // LP failure is surfaced, never folded into a bound; a solve crossing the
  // global time limit comes back aborted and the caller winds down
  LpResult solve_node_lp(const LpBasis* warm) {
    ++res_.lp_solves;
    double deadline_s = 0.0;
    if (std::isfinite(limits_.time_limit_s)) {
      double left = limits_.time_limit_s - seconds_since(t0_);
      deadline_s = std::max(left, 1e-3);
    }
    LpResult r = solve_lp(lp_, warm && !warm->empty() ? warm : nullptr, deadline_s);
    if (r.status == LpStatus::failure) throw std::runtime_error("master LP solve failed");
    if (r.status == LpStatus::unbounded) throw std::runtime_error("master LP unbounded");
    return r;
  }

  std::optional<LpBasis> root_loop();
  void process_node(const Node& node);
  void finish(SolveStatus status);
};

// nullopt signals a root LP with contradictory fixings, hence infeasibility
std::optional<LpBasis> Search::root_loop() {
  auto t_root = Clock::now();
  std::vector<signed char> free_x(static_cast<std::size_t>(M.n), -1);
  std::vector<signed char> free_v(static_cast<std::size_t>(M.m), -1);
  apply_bounds(free_x, free_v);
  LpBasis basis;
  std::optional<double> prev;
  int stall = 0;
  int iter = 0;
  double bound = -std::numeric_limits<double>::infinity();
  while (true) {
    if (out_of_time()) break;
    LpResult r = solve_node_lp(&basis);
    if (r.status == LpStatus::aborted) break;  // keeps the last completed bound
    ++iter;
    if (r.status == LpStatus::infeasible) {
      res_.root_iters = iter;
      res_.t_root_s = seconds_since(t_root);
      return std::nullopt;
    }
    basis = r.basis;
    bound = r.objective;
    if (prev) {
      double rel = (bound - *prev) / std::max(std::abs(*prev), 1e-10);
      if (rel <= kStallRel)
        ++stall;
      else
        stall = 0;
    }
    prev = bound;
    if (stall >= kStallLimit) break;
    std::vector<BendersCut> cuts = separate(r.x, 0, iter, kCutTol);
    if (cuts.empty()) break;
    if (pool_cuts(std::move(cuts), 0, iter) == 0) break;
  }
  res_.root_iters = iter;
  res_.t_root_s = seconds_since(t_root);
  global_lb_ = std::max(global_lb_, bound);
  root_phase_ = false;
  return basis;
}

void Search::process_node(const Node& node) {
  drop_inactive();
  apply_bounds(node.fix_x, node.fix_v);
  LpBasis warm;
  if (node.basis && node.pool_ids) warm = map_basis(*node.basis, *node.pool_ids);
  int rounds = 0;
  while (true) {
    if (out_of_time()) {
      hit_limit_ = true;
      return;
    }
    LpResult r = solve_node_lp(warm.empty() ? nullptr : &warm);
    if (r.status == LpStatus::aborted) {
      hit_limit_ = true;  // node unresolved, same as expiring before the solve
      return;
    }
    if (r.status == LpStatus::infeasible) return;
    warm = r.basis;
    double bound = std::max(node.bound, r.objective);
    if (bound >= ub_ - kPruneTol) return;
    update_streaks(r.x);
    std::vector<BendersCut> cuts = separate(r.x, node.id, rounds, kCutTol);
    int added = cuts.empty() ? 0 : pool_cuts(std::move(cuts), node.id, rounds);
    if (added > 0 && rounds < kNodeCutRounds) {
      ++rounds;
      continue;
    }
    if (added == 0 && integral_point(r.x)) {
      std::vector<int> xhat = round_x(r.x);
      if (try_incumbent(xhat)) return;  // node LP optimum is integral: bound closes here
      // exact check failed inside the cut tolerance band; try exact-tolerance
      // separation, then fall back to branching on any unfixed variable
      std::vector<BendersCut> tight = separate(r.x, node.id, rounds, kExactSepTol);
      int tadded = tight.empty() ? 0 : pool_cuts(std::move(tight), node.id, rounds);
      if (tadded > 0 && rounds < kNodeCutRounds) {
        ++rounds;
        continue;
      }
      auto [var, is_v] = pick_unfixed_var(node);
      if (var < 0) return;  // fully fixed single point, exactly infeasible
      push_children(node, var, is_v, bound, warm);
      return;
    }
    auto [var, is_v] = pick_branch_var(r.x);
    if (var < 0) {
      // integral with violated cuts beyond the round cap
      auto [uvar, uis_v] = pick_unfixed_var(node);
      if (uvar < 0) return;
      push_children(node, uvar, uis_v, bound, warm);
      return;
    }
    push_children(node, var, is_v, bound, warm);
    return;
  }
}

void Search::finish(SolveStatus status) {
  res_.status = status;
  if (status == SolveStatus::infeasible) {
    res_.objective = std::numeric_limits<double>::infinity();
    res_.dual_bound = std::numeric_limits<double>::infinity();
    res_.gap = 0.0;
    res_.x.clear();
  } else {
    res_.objective = ub_;
    res_.x = incumbent_;
    if (status == SolveStatus::optimal) {
      res_.dual_bound = ub_;
      res_.gap = 0.0;
    } else {
      double lb = std::min(global_lb_, ub_);
      res_.dual_bound = lb;
      res_.gap = std::max(0.0, (ub_ - lb) / std::max(std::abs(ub_), 1e-10));
    }
  }
  res_.t_total_s = seconds_since(t0_);
}

SolveResult Search::run() {
  t0_ = Clock::now();
  build_base_lp();
  std::vector<int> greedy = greedy_cover();
  try_incumbent(greedy);  // full cover reaches probability 1, always feasible

  std::optional<LpBasis> root_basis = root_loop();
  if (!root_basis) {
    finish(SolveStatus::infeasible);
    return res_;
  }

  Node root;
  root.id = next_node_id_++;
  root.bound = global_lb_;
  root.fix_x.assign(static_cast<std::size_t>(M.n), -1);
  root.fix_v.assign(static_cast<std::size_t>(M.m), -1);
  root.basis = std::make_shared<const LpBasis>(*root_basis);
  root.pool_ids = snapshot_ids();
  queue_.push(std::move(root));

  bool mid_node = false;  // limit hit while a popped node was unresolved
  while (!queue_.empty()) {
    if (out_of_time()) {
      hit_limit_ = true;
      break;
    }
    if (limits_.node_limit >= 0 && res_.nodes >= limits_.node_limit) {
      hit_limit_ = true;
      break;
    }
    Node node = queue_.top();
    queue_.pop();
    if (node.bound >= ub_ - kPruneTol) continue;
    global_lb_ = std::max(global_lb_, node.bound);
    ++res_.nodes;
    process_node(node);
    if (hit_limit_) {
      mid_node = true;
      break;
    }
  }

  if (hit_limit_) {
    // best-first: when no node is half-processed, the queue head bounds all open work
    if (!mid_node && !queue_.empty()) global_lb_ = std::max(global_lb_, queue_.top().bound);
    finish(SolveStatus::time_limit);
  } else {
    finish(SolveStatus::optimal);
  }
  return res_;
}

}  // namespace

SolveResult BendersSolver::solve(const SolveLimits& limits) {
  Search search(master_, *this, limits);
  return search.run();
}

void write_report(std::ostream& out, const SolveResult& res, SolveMode mode, double eps, int s,
                  int T, std::uint64_t seed) {
  auto real = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  const char* status = res.status == SolveStatus::optimal     ? "optimal"
                       : res.status == SolveStatus::time_limit ? "time_limit"
                                                               : "infeasible";
  out << "status " << status << '\n';
  out << "objective " << real(res.objective) << '\n';
  out << "dual_bound " << real(res.dual_bound) << '\n';
  out << "gap " << real(res.gap) << '\n';
  out << "nodes " << res.nodes << '\n';
  out << "lp_solves " << res.lp_solves << '\n';
  out << "cuts_generic " << res.cuts_generic << '\n';
  out << "cuts_block " << res.cuts_block << '\n';
  out << "cuts_coverage " << res.cuts_coverage << '\n';
  out << "root_iters " << res.root_iters << '\n';
  out << "t_total_s " << real(res.t_total_s) << '\n';
  out << "t_root_s " << real(res.t_root_s) << '\n';
  out << "t_sep_s " << real(res.t_sep_s) << '\n';
  out << "seed " << seed << '\n';
  out << "mode " << to_string(mode) << '\n';
  out << "eps " << real(eps) << '\n';
  out << "s " << s << '\n';
  out << "T " << T << '\n';
}

}  // namespace pscp
