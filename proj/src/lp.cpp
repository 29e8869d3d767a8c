#include "pscp/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <ostream>

namespace pscp {

int LpModel::add_var(double lo, double up, double cost) {
  lower.push_back(lo);
  upper.push_back(up);
  obj.push_back(cost);
  return var_count() - 1;
}

int LpModel::add_row(RowSense sense, double rhs, std::vector<std::pair<int, double>> coefs) {
  Row r;
  r.sense = sense;
  r.rhs = rhs;
  r.coefs = std::move(coefs);
  rows.push_back(std::move(r));
  return row_count() - 1;
}

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kBoundTol = 1e-6;  // accepted bound wobble on delivered solutions
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kInfeasFlag = 1e-9;
constexpr int kRefactorEvery = 50;
constexpr int kStallSwitch = 40;
constexpr int kPerturbAt = 60;
constexpr int kMaxRefresh = 20;

struct PriceResult {
  int col = -1;
  int dir = 0;  // +1 increase, -1 decrease
  double d = 0.0;
};

struct Phase1Event {
  double delta = 0.0;
  double inc = 0.0;
  int col = -1;
  int rpos = -1;  // -1 marks the entering column's own bound
  bool leave_upper = false;
};

// Rows are brought to a*x - s = b; slack bounds encode the sense. The basis
// inverse is kept dense and rebuilt every kRefactorEvery pivots.
struct Engine {
  int nv = 0, nr = 0, nc = 0;
  std::vector<double> lo, up, cost, rhs;
  std::vector<std::vector<std::pair<int, double>>> cols;
  std::vector<VarStatus> stat;
  std::vector<int> basic_of_row;
  std::vector<int> row_of_col;
  std::vector<double> xval;
  std::vector<double> binv;
  std::vector<double> w, y, cb;
  std::vector<char> skip;
  int pivots_since_refactor = 0;
  int iters = 0;
  bool bland = false;
  bool force_bland = false;
  int stall = 0;
  double last_progress = 0.0;
  std::chrono::steady_clock::time_point deadline{};
  bool have_deadline = false;
  bool timed_out = false;

  // polled every ~256 pivots; a clock read per pivot would dominate small LPs
  bool expired() {
    if (!have_deadline || timed_out) return false;
    if (std::chrono::steady_clock::now() >= deadline) timed_out = true;
    return timed_out;
  }

  explicit Engine(const LpModel& m) {
    nv = m.var_count();
    nr = m.row_count();
    nc = nv + nr;
    lo.resize(nc);
    up.resize(nc);
    cost.assign(nc, 0.0);
    rhs.resize(nr);
    cols.resize(nc);
    for (int j = 0; j < nv; ++j) {
      lo[j] = m.lower[j];
      up[j] = m.upper[j];
      cost[j] = m.obj[j];
    }
    for (int r = 0; r < nr; ++r) {
      const auto& row = m.rows[r];
      rhs[r] = row.rhs;
      for (auto [j, a] : row.coefs)
        if (a != 0.0) cols[j].push_back({r, a});
      int s = nv + r;
      cols[s].push_back({r, -1.0});
      switch (row.sense) {
        case RowSense::ge: lo[s] = 0.0; up[s] = kLpInf; break;
        case RowSense::le: lo[s] = -kLpInf; up[s] = 0.0; break;
        case RowSense::eq: lo[s] = 0.0; up[s] = 0.0; break;
      }
    }
    stat.assign(nc, VarStatus::at_lower);
    row_of_col.assign(nc, -1);
    basic_of_row.assign(nr, -1);
    xval.assign(nc, 0.0);
    w.resize(nr);
    y.resize(nr);
    cb.resize(nr);
    skip.assign(nc, 0);
  }

  VarStatus default_nonbasic(int j) const {
    if (std::isfinite(lo[j])) return VarStatus::at_lower;
    if (std::isfinite(up[j])) return VarStatus::at_upper;
    return VarStatus::free_nb;
  }

  void slack_basis() {
    for (int j = 0; j < nv; ++j) stat[j] = default_nonbasic(j);
    for (int r = 0; r < nr; ++r) stat[nv + r] = VarStatus::basic;
  }

  bool import_basis(const LpBasis& warm) {
    if (static_cast<int>(warm.status.size()) < nv || static_cast<int>(warm.status.size()) > nc)
      return false;
    for (int j = 0; j < nc; ++j)
      stat[j] = j < static_cast<int>(warm.status.size()) ? warm.status[j] : VarStatus::basic;
    int basics = 0;
    for (int j = 0; j < nc; ++j) {
      if (stat[j] == VarStatus::basic) {
        ++basics;
        continue;
      }
      if (stat[j] == VarStatus::at_lower && !std::isfinite(lo[j])) stat[j] = default_nonbasic(j);
      if (stat[j] == VarStatus::at_upper && !std::isfinite(up[j])) stat[j] = default_nonbasic(j);
      if (stat[j] == VarStatus::free_nb && (std::isfinite(lo[j]) || std::isfinite(up[j])))
        stat[j] = default_nonbasic(j);
    }
    return basics == nr;
  }

  void sync_maps() {
    std::fill(row_of_col.begin(), row_of_col.end(), -1);
    int r = 0;
    for (int j = 0; j < nc; ++j) {
      if (stat[j] != VarStatus::basic) continue;
      basic_of_row[r] = j;
      row_of_col[j] = r;
      ++r;
    }
  }

  bool refactorize() {
    std::vector<double> mat(static_cast<std::size_t>(nr) * nr, 0.0);
    for (int r = 0; r < nr; ++r)
      for (auto [row, a] : cols[basic_of_row[r]]) mat[static_cast<std::size_t>(row) * nr + r] = a;
    binv.assign(static_cast<std::size_t>(nr) * nr, 0.0);
    for (int i = 0; i < nr; ++i) binv[static_cast<std::size_t>(i) * nr + i] = 1.0;
    for (int c = 0; c < nr; ++c) {
      int p = -1;
      double best = 1e-11;
      for (int r = c; r < nr; ++r) {
        double a = std::abs(mat[static_cast<std::size_t>(r) * nr + c]);
        if (a > best) {
          best = a;
          p = r;
        }
      }
      if (p < 0) return false;
      if (p != c) {
        for (int k = 0; k < nr; ++k) {
          std::swap(mat[static_cast<std::size_t>(p) * nr + k], mat[static_cast<std::size_t>(c) * nr + k]);
          std::swap(binv[static_cast<std::size_t>(p) * nr + k], binv[static_cast<std::size_t>(c) * nr + k]);
        }
      }
      double inv = 1.0 / mat[static_cast<std::size_t>(c) * nr + c];
      for (int k = 0; k < nr; ++k) {
        mat[static_cast<std::size_t>(c) * nr + k] *= inv;
        binv[static_cast<std::size_t>(c) * nr + k] *= inv;
      }
      for (int r = 0; r < nr; ++r) {
        if (r == c) continue;
        double f = mat[static_cast<std::size_t>(r) * nr + c];
        if (f == 0.0) continue;
        const double* mc = &mat[static_cast<std::size_t>(c) * nr];
        const double* bc = &binv[static_cast<std::size_t>(c) * nr];
        double* mr = &mat[static_cast<std::size_t>(r) * nr];
        double* br = &binv[static_cast<std::size_t>(r) * nr];
        for (int k = 0; k < nr; ++k) {
          mr[k] -= f * mc[k];
          br[k] -= f * bc[k];
        }
      }
    }
    pivots_since_refactor = 0;
    return true;
  }

  void set_nonbasic_values() {
    for (int j = 0; j < nc; ++j) {
      switch (stat[j]) {
        case VarStatus::at_lower: xval[j] = lo[j]; break;
        case VarStatus::at_upper: xval[j] = up[j]; break;
        case VarStatus::free_nb: xval[j] = 0.0; break;
        case VarStatus::basic: break;
      }
    }
  }

  void compute_basic_values() {
    std::vector<double> res = rhs;
    for (int j = 0; j < nc; ++j) {
      if (stat[j] == VarStatus::basic) continue;
      double v = xval[j];
      if (v == 0.0) continue;
      for (auto [row, a] : cols[j]) res[row] -= a * v;
    }
    std::vector<double> xb(static_cast<std::size_t>(nr));
    for (int i = 0; i < nr; ++i) {
      const double* bi = &binv[static_cast<std::size_t>(i) * nr];
      double s = 0.0;
      for (int k = 0; k < nr; ++k) s += bi[k] * res[k];
      xb[static_cast<std::size_t>(i)] = s;
    }
    // one refinement pass keeps ill-conditioned bases from leaking bound
    // violations back in after every refactor
    std::vector<double> r = res;
    for (int i = 0; i < nr; ++i) {
      double v = xb[static_cast<std::size_t>(i)];
      if (v == 0.0) continue;
      for (auto [row, a] : cols[basic_of_row[i]]) r[row] -= a * v;
    }
    for (int i = 0; i < nr; ++i) {
      const double* bi = &binv[static_cast<std::size_t>(i) * nr];
      double s = 0.0;
      for (int k = 0; k < nr; ++k) s += bi[k] * r[k];
      xval[basic_of_row[i]] = xb[static_cast<std::size_t>(i)] + s;
    }
  }

  void ftran(int j, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (auto [row, a] : cols[j])
      for (int i = 0; i < nr; ++i) out[i] += binv[static_cast<std::size_t>(i) * nr + row] * a;
  }

  void btran(const std::vector<double>& c_basic, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < nr; ++i) {
      double ci = c_basic[i];
      if (ci == 0.0) continue;
      const double* bi = &binv[static_cast<std::size_t>(i) * nr];
      for (int k = 0; k < nr; ++k) out[k] += ci * bi[k];
    }
  }

  double column_dot(int j, const std::vector<double>& vec) const {
    double s = 0.0;
    for (auto [row, a] : cols[j]) s += a * vec[row];
    return s;
  }

  // phase-1 costs on basic rows: -1 below lower, +1 above upper
  double infeasibility(int* flagged) {
    double total = 0.0;
    int count = 0;
    for (int i = 0; i < nr; ++i) {
      int j = basic_of_row[i];
      double v = xval[j];
      if (v < lo[j] - kInfeasFlag) {
        cb[i] = -1.0;
        total += lo[j] - v;
        ++count;
      } else if (v > up[j] + kInfeasFlag) {
        cb[i] = 1.0;
        total += v - up[j];
        ++count;
      } else {
        cb[i] = 0.0;
      }
    }
    if (flagged) *flagged = count;
    return total;
  }

  PriceResult price(bool phase2) {
    PriceResult best;
    // dual noise scales with the multiplier magnitudes; an absolute floor
    // alone turns round-off into endless phantom entering candidates
    double ymax = 0.0;
    for (int i = 0; i < nr; ++i) ymax = std::max(ymax, std::abs(y[i]));
    double best_score = kDualTol * (1.0 + ymax);
    for (int j = 0; j < nc; ++j) {
      if (stat[j] == VarStatus::basic || skip[j]) continue;
      if (lo[j] == up[j]) continue;
      double d = (phase2 ? cost[j] : 0.0) - column_dot(j, y);
      int dir = 0;
      if (stat[j] == VarStatus::at_lower) {
        if (d < -best_score) dir = 1;
      } else if (stat[j] == VarStatus::at_upper) {
        if (d > best_score) dir = -1;
      } else {
        if (d < -best_score) dir = 1;
        else if (d > best_score) dir = -1;
      }
      if (dir == 0) continue;
      if (bland) {
        best = {j, dir, d};
        return best;
      }
      best = {j, dir, d};
      best_score = std::abs(d);
    }
    return best;
  }

  void apply_step(int q, int dir, double delta) {
    if (delta != 0.0) {
      for (int i = 0; i < nr; ++i) {
        if (w[i] == 0.0) continue;
        xval[basic_of_row[i]] -= dir * delta * w[i];
      }
      xval[q] += dir * delta;
    }
  }

  void update_binv(int rpos) {
    double piv = w[rpos];
    double* br = &binv[static_cast<std::size_t>(rpos) * nr];
    double inv = 1.0 / piv;
    for (int k = 0; k < nr; ++k) br[k] *= inv;
    for (int i = 0; i < nr; ++i) {
      if (i == rpos) continue;
      double f = w[i];
      if (f == 0.0) continue;
      double* bi = &binv[static_cast<std::size_t>(i) * nr];
      for (int k = 0; k < nr; ++k) bi[k] -= f * br[k];
    }
  }

  bool do_pivot(int q, int rpos, bool leave_upper) {
    int leaver = basic_of_row[rpos];
    stat[leaver] = leave_upper ? VarStatus::at_upper : VarStatus::at_lower;
    xval[leaver] = leave_upper ? up[leaver] : lo[leaver];
    row_of_col[leaver] = -1;
    stat[q] = VarStatus::basic;
    basic_of_row[rpos] = q;
    row_of_col[q] = rpos;
    update_binv(rpos);
    if (++pivots_since_refactor >= kRefactorEvery) {
      if (!refactorize()) return false;
      set_nonbasic_values();
      compute_basic_values();
      for (int i = 0; i < nr; ++i) {
        int j = basic_of_row[i];
        if (xval[j] < lo[j] - kBoundTol || xval[j] > up[j] + kBoundTol) {
          drift = true;  // accumulated update error; caller must re-clean
          break;
        }
      }
    }
    return true;
  }

  // Fast repair for warm bases, which inherit dual feasibility from the
  // parent solve: pick the worst bound violation among basics and drive it
  // out with a dual-style pivot. Returns 0 once all basics are in bounds,
  // 1 when a violated row admits no entering column (infeasibility evidence,
  // to be confirmed by the composite method), 2 to give up and fall back.
  int dual_repair() {
    const int max_pivots = 500 + nr;
    std::vector<double> rho(static_cast<std::size_t>(nr));
    for (int k = 0; k < max_pivots; ++k) {
      if ((k & 63) == 0 && expired()) return 2;
      int r = -1;
      double worst = 0.25 * kFeasTol;
      bool below = false;
      for (int i = 0; i < nr; ++i) {
        int j = basic_of_row[i];
        double v = xval[j];
        if (lo[j] - v > worst) {
          worst = lo[j] - v;
          r = i;
          below = true;
        }
        if (v - up[j] > worst) {
          worst = v - up[j];
          r = i;
          below = false;
        }
      }
      if (r < 0) return 0;
      ++iters;
      for (int i = 0; i < nr; ++i) cb[i] = cost[basic_of_row[i]];
      btran(cb, y);
      const double* br = &binv[static_cast<std::size_t>(r) * nr];
      std::copy(br, br + nr, rho.begin());
      int q = -1;
      int qdir = 0;
      double best_ratio = kLpInf;
      double best_alpha = 0.0;
      for (int j = 0; j < nc; ++j) {
        if (stat[j] == VarStatus::basic || lo[j] == up[j]) continue;
        double alpha = column_dot(j, rho);
        if (std::abs(alpha) <= 1e-9) continue;
        // below: basic must rise, so entering moves with sign against alpha;
        // above: mirrored. Eligibility follows the entering bound side.
        int dir;
        if (below)
          dir = alpha < 0.0 ? 1 : -1;
        else
          dir = alpha > 0.0 ? 1 : -1;
        if (dir > 0 && stat[j] == VarStatus::at_upper) continue;
        if (dir < 0 && stat[j] == VarStatus::at_lower) continue;
        double d = cost[j] - column_dot(j, y);
        // ratio guards dual feasibility: the entering reduced cost must not
        // flip sign against its direction faster than any alternative
        double num = dir > 0 ? std::max(d, 0.0) : std::max(-d, 0.0);
        double ratio = num / std::abs(alpha);
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && std::abs(alpha) > std::abs(best_alpha))) {
          best_ratio = ratio;
          best_alpha = alpha;
          q = j;
          qdir = dir;
        }
      }
      if (q < 0) return 1;
      if (std::abs(best_alpha) < 1e-7 && k > 0) return 2;  // pivot too weak to trust
      ftran(q, w);
      if (std::abs(w[r]) <= 1e-9) return 2;
      int jl = basic_of_row[r];
      double target = below ? lo[jl] : up[jl];
      double rate = -qdir * w[r];
      double delta = (target - xval[jl]) / rate;
      if (!(delta >= 0.0) || !std::isfinite(delta)) return 2;
      apply_step(q, qdir, delta);
      if (!do_pivot(q, r, !below)) return 2;
    }
    return 2;
  }

  // Step 1: drive basic infeasibilities to zero under the piecewise objective.
  // The ratio test walks breakpoints while the directional slope stays
  // negative; an infeasible basic regaining its bound is a kink, not a stop.
  // Under the anti-cycling rule the walk collapses to the first breakpoint
  // with lowest-index tie-breaks, which is what makes the rule effective.
  enum class P1 { feasible, infeasible, fail };

  P1 phase1() {
    std::fill(skip.begin(), skip.end(), 0);
    bland = force_bland;
    stall = 0;
    drift = false;
    double last_f = kLpInf;
    long long local = 0;
    const long long cap = 30000 + 200LL * nr;
    bool perturbed = false;
    int rounds_used = 0;
    std::vector<double> lo_true, up_true;
    auto perturb_bounds = [&] {
      if (!perturbed) {
        lo_true = lo;
        up_true = up;
        perturbed = true;
      }
      double scale = rounds_used == 1 ? 1e-9 : 1e-8;
      for (int j = 0; j < nc; ++j) {
        if (stat[j] != VarStatus::basic) continue;
        if (lo_true[j] == up_true[j]) continue;
        if (std::isfinite(lo_true[j]))
          lo[j] = lo_true[j] - scale * (1.0 + std::abs(lo_true[j])) * jitter(j);
        if (std::isfinite(up_true[j]))
          up[j] = up_true[j] + scale * (1.0 + std::abs(up_true[j])) * jitter(j + nc);
      }
    };
    auto restore_bounds = [&] {
      if (perturbed) {
        lo = lo_true;
        up = up_true;
        perturbed = false;
        set_nonbasic_values();
        compute_basic_values();
      }
    };
    while (true) {
      int flagged = 0;
      double f = infeasibility(&flagged);
      if (flagged == 0 || f <= 0.25 * kFeasTol) {
        // clean or residual noise; any verdict must stand on the true box
        if (perturbed) {
          restore_bounds();
          continue;
        }
        return P1::feasible;
      }
      if (last_f - f <= 1e-9 * (1.0 + f)) {
        if (++stall >= kStallSwitch) bland = true;
        if (stall >= kPerturbAt && rounds_used < 2 && !force_bland) {
          ++rounds_used;
          perturb_bounds();
          bland = false;
          stall = 0;
          last_f = kLpInf;
          continue;
        }
      } else {
        stall = 0;
      }
      last_f = f;
      ++iters;
      if (++local > cap) {
        restore_bounds();
        return P1::fail;
      }
      if ((local & 255) == 1 && expired()) {
        restore_bounds();
        return P1::fail;
      }
      btran(cb, y);
      PriceResult pr;
      while (true) {
        pr = price(false);
        if (pr.col < 0) break;
        ftran(pr.col, w);
        if (ratio_phase1(pr)) break;
        skip[pr.col] = 1;  // no finite breakpoint, numerically dead direction
      }
      std::fill(skip.begin(), skip.end(), 0);
      if (pr.col < 0) {
        if (perturbed) {
          restore_bounds();
          continue;
        }
        return f <= kFeasTol ? P1::feasible : P1::infeasible;
      }
      if (!pivot_ok) {
        restore_bounds();
        return P1::fail;
      }
    }
  }

  bool pivot_ok = true;
  bool drift = false;  // basics left their bounds beyond tolerance mid-phase2

  bool ratio_phase1(const PriceResult& pr) {
    const int q = pr.col;
    const int dir = pr.dir;
    std::vector<Phase1Event> events;
    events.reserve(static_cast<std::size_t>(nr) + 1);
    for (int i = 0; i < nr; ++i) {
      if (std::abs(w[i]) <= kPivotTol) continue;
      int j = basic_of_row[i];
      double rate = -dir * w[i];  // d x_j / d delta
      double v = xval[j];
      if (v < lo[j] - kInfeasFlag) {
        if (rate > 0.0) {
          events.push_back({std::max(0.0, (lo[j] - v) / rate), rate, j, i, false});
          if (std::isfinite(up[j]))
            events.push_back({std::max(0.0, (up[j] - v) / rate), rate, j, i, true});
        }
      } else if (v > up[j] + kInfeasFlag) {
        if (rate < 0.0) {
          events.push_back({std::max(0.0, (v - up[j]) / -rate), -rate, j, i, true});
          if (std::isfinite(lo[j]))
            events.push_back({std::max(0.0, (v - lo[j]) / -rate), -rate, j, i, false});
        }
      } else {
        if (rate > 0.0 && std::isfinite(up[j]))
          events.push_back({std::max(0.0, (up[j] - v) / rate), rate, j, i, true});
        else if (rate < 0.0 && std::isfinite(lo[j]))
          events.push_back({std::max(0.0, (v - lo[j]) / -rate), -rate, j, i, false});
      }
    }
    if (std::isfinite(lo[q]) && std::isfinite(up[q]))
      events.push_back({up[q] - lo[q], 1.0, q, -1, dir > 0});
    if (events.empty()) return false;
    std::sort(events.begin(), events.end(), [](const Phase1Event& a, const Phase1Event& b) {
      if (a.delta != b.delta) return a.delta < b.delta;
      return a.col < b.col;
    });
    std::size_t pick;
    if (bland) {
      pick = 0;  // classic first-breakpoint step, lowest index on ties
    } else {
      double slope = -std::abs(pr.d);
      pick = events.size();
      for (std::size_t e = 0; e < events.size(); ++e) {
        slope += events[e].inc;
        if (slope >= -1e-12) {
          pick = e;
          break;
        }
      }
      if (pick == events.size()) pick = events.size() - 1;  // slope must turn; guard round-off
      // relaxed window: any later event whose basic would overshoot its
      // breakpoint by at most half the feasibility tolerance is admissible;
      // take the largest pivot in the window for stability
      double best_piv = events[pick].rpos >= 0 ? std::abs(w[events[pick].rpos]) : kLpInf;
      for (std::size_t e = pick + 1; e < events.size(); ++e) {
        double allow = 0.5 * kFeasTol / events[e].inc;
        if (events[e].delta > events[pick].delta + allow) continue;
        double piv = events[e].rpos >= 0 ? std::abs(w[events[e].rpos]) : kLpInf;
        if (piv > best_piv) {
          best_piv = piv;
          pick = e;
        }
      }
    }
    Phase1Event ev = events[pick];
    if (!bland && ev.rpos >= 0) {
      double piv = std::abs(w[ev.rpos]);
      ev.delta = std::max(ev.delta, 1e-11 / std::max(piv, 1.0));  // nonzero step defeats exact-tie cycling
    }
    apply_step(q, dir, ev.delta);
    if (ev.rpos < 0) {
      stat[q] = ev.leave_upper ? VarStatus::at_upper : VarStatus::at_lower;
      xval[q] = ev.leave_upper ? up[q] : lo[q];
      pivot_ok = true;
      return true;
    }
    pivot_ok = do_pivot(q, ev.rpos, ev.leave_upper);
    return true;
  }

  enum class P2 { optimal, unbounded, fail, refresh };

  // Deterministic per-column jitter in [0.5, 1.5); breaks cost ties that feed
  // degenerate pivot storms without touching primal feasibility.
  static double jitter(int j) {
    std::uint64_t z = static_cast<std::uint64_t>(j) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return 0.5 + static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  P2 phase2() {
    bland = force_bland;
    stall = 0;
    drift = false;
    double last_obj = kLpInf;
    long long local = 0;
    const long long cap = 20000 + 100LL * nr;
    bool perturbed = false;
    int rounds_used = 0;
    std::vector<double> lo_true, up_true;
    // degenerate vertices block every step at delta 0; expanding each basic's
    // bounds by distinct tiny amounts makes steps strictly positive, and the
    // vertex complex untangles itself
    auto perturb_bounds = [&] {
      if (!perturbed) {
        lo_true = lo;
        up_true = up;
        perturbed = true;
      }
      double scale = rounds_used == 1 ? 1e-9 : 1e-8;
      for (int j = 0; j < nc; ++j) {
        if (stat[j] != VarStatus::basic) continue;
        if (lo_true[j] == up_true[j]) continue;
        if (std::isfinite(lo_true[j]))
          lo[j] = lo_true[j] - scale * (1.0 + std::abs(lo_true[j])) * jitter(j);
        if (std::isfinite(up_true[j]))
          up[j] = up_true[j] + scale * (1.0 + std::abs(up_true[j])) * jitter(j + nc);
      }
    };
    auto restore_bounds = [&] {
      if (perturbed) {
        lo = lo_true;
        up = up_true;
        perturbed = false;
        set_nonbasic_values();
        compute_basic_values();
      }
    };
    while (true) {
      ++iters;
      if (++local > cap) {
        restore_bounds();
        return P2::fail;
      }
      if ((local & 255) == 1 && expired()) {
        restore_bounds();
        return P2::fail;
      }
      for (int i = 0; i < nr; ++i) cb[i] = cost[basic_of_row[i]];
      btran(cb, y);
      PriceResult pr = price(true);
      if (pr.col < 0) {
        if (!perturbed) return P2::optimal;
        // optimal for the relaxed box; land back on the true one and polish
        restore_bounds();
        bland = force_bland;
        stall = 0;
        last_obj = kLpInf;
        continue;
      }
      double obj = objective();
      // stall means no meaningful progress at this scale; micro-creep from
      // tolerance-sized steps must count as stalled or cycling hides in it
      if (last_obj - obj <= 1e-9 * (1.0 + std::abs(obj))) {
        if (++stall >= kStallSwitch) bland = true;
        if (stall >= kPerturbAt && rounds_used < 2 && !force_bland) {
          ++rounds_used;
          perturb_bounds();
          bland = false;
          stall = 0;
          last_obj = kLpInf;
          continue;
        }
      } else {
        stall = 0;
      }
      last_obj = obj;
      ftran(pr.col, w);
      const int q = pr.col;
      const int dir = pr.dir;
      double best_delta = kLpInf;
      int best_row = -1;
      double best_piv = 0.0;
      bool leave_upper = false;
      if (bland) {
        for (int i = 0; i < nr; ++i) {
          if (std::abs(w[i]) <= kPivotTol) continue;
          int j = basic_of_row[i];
          double rate = -dir * w[i];
          double delta;
          bool upper;
          if (rate > 0.0) {
            if (!std::isfinite(up[j])) continue;
            delta = std::max(0.0, (up[j] - xval[j]) / rate);
            upper = true;
          } else {
            if (!std::isfinite(lo[j])) continue;
            delta = std::max(0.0, (xval[j] - lo[j]) / -rate);
            upper = false;
          }
          bool better = false;
          if (delta < best_delta - 1e-12) better = true;
          else if (delta <= best_delta + 1e-12 && (best_row < 0 || j < basic_of_row[best_row]))
            better = true;
          if (better) {
            best_delta = delta;
            best_row = i;
            best_piv = w[i];
            leave_upper = upper;
          }
        }
      } else {
        // two-pass ratio test: the relaxed pass caps the step allowing each
        // blocker half the feasibility tolerance of overshoot, the strict
        // pass takes the largest pivot under that cap
        const double tol = 0.5 * kFeasTol;
        double cap_delta = kLpInf;
        for (int i = 0; i < nr; ++i) {
          if (std::abs(w[i]) <= kPivotTol) continue;
          int j = basic_of_row[i];
          double rate = -dir * w[i];
          double rel;
          if (rate > 0.0) {
            if (!std::isfinite(up[j])) continue;
            rel = (up[j] - xval[j] + tol) / rate;
          } else {
            if (!std::isfinite(lo[j])) continue;
            rel = (xval[j] - lo[j] + tol) / -rate;
          }
          cap_delta = std::min(cap_delta, std::max(0.0, rel));
        }
        for (int i = 0; i < nr; ++i) {
          if (std::abs(w[i]) <= kPivotTol) continue;
          int j = basic_of_row[i];
          double rate = -dir * w[i];
          double delta;
          bool upper;
          if (rate > 0.0) {
            if (!std::isfinite(up[j])) continue;
            delta = std::max(0.0, (up[j] - xval[j]) / rate);
            upper = true;
          } else {
            if (!std::isfinite(lo[j])) continue;
            delta = std::max(0.0, (xval[j] - lo[j]) / -rate);
            upper = false;
          }
          if (delta > cap_delta) continue;
          if (best_row < 0 || std::abs(w[i]) > std::abs(best_piv) ||
              (std::abs(w[i]) == std::abs(best_piv) && j < basic_of_row[best_row])) {
            best_delta = delta;
            best_row = i;
            best_piv = w[i];
            leave_upper = upper;
          }
        }
      }
      double self_range = (std::isfinite(lo[q]) && std::isfinite(up[q])) ? up[q] - lo[q] : kLpInf;
      if (best_row < 0 && !std::isfinite(self_range)) {
        restore_bounds();
        return P2::unbounded;
      }
      if (self_range <= best_delta) {
        apply_step(q, dir, self_range);
        stat[q] = dir > 0 ? VarStatus::at_upper : VarStatus::at_lower;
        xval[q] = dir > 0 ? up[q] : lo[q];
        continue;
      }
      if (!bland)
        best_delta = std::max(best_delta, 1e-11 / std::max(std::abs(best_piv), 1.0));
      apply_step(q, dir, best_delta);
      if (!do_pivot(q, best_row, leave_upper)) {
        restore_bounds();
        return P2::fail;
      }
      if (drift) {
        restore_bounds();
        return P2::refresh;  // refactor exposed out-of-bound basics
      }
    }
  }

  double objective() const {
    double s = 0.0;
    for (int j = 0; j < nv; ++j) s += cost[j] * xval[j];
    return s;
  }

  bool verify_primal() const {
    for (int j = 0; j < nc; ++j) {
      if (xval[j] < lo[j] - kBoundTol || xval[j] > up[j] + kBoundTol) return false;
    }
    std::vector<double> act(static_cast<std::size_t>(nr), 0.0);
    for (int j = 0; j < nc; ++j) {
      double v = xval[j];
      if (v == 0.0) continue;
      for (auto [row, a] : cols[j]) act[static_cast<std::size_t>(row)] += a * v;
    }
    for (int r = 0; r < nr; ++r) {
      double scale = std::max(1.0, std::abs(rhs[r]));
      if (std::abs(act[static_cast<std::size_t>(r)] - rhs[r]) > kBoundTol * scale) return false;
    }
    return true;
  }

  static bool trace_on() {
    static const bool on = std::getenv("PSCP_LP_TRACE") != nullptr;
    return on;
  }

  // Attempt ladder: 0 = incoming basis, 1 = slack restart, 2 = slack restart
  // with the anti-cycling rule on from the first pivot. Within an attempt the
  // phases may bounce a bounded number of times when a refactor exposes value
  // drift; only an exhausted ladder reports failure.
  LpResult run(const LpBasis* warm) {
    bool have_basis = warm && !warm->empty() && import_basis(*warm);
    if (!have_basis) slack_basis();
    sync_maps();
    if (!refactorize()) {
      slack_basis();
      sync_maps();
      if (!refactorize()) return fail_result();
    }
    set_nonbasic_values();
    compute_basic_values();
    if (have_basis) {
      int rep = dual_repair();
      if (trace_on())
        std::fprintf(stderr, "lp trace: nr=%d dual_repair=%d iters=%d\n", nr, rep, iters);
      if (timed_out) return abort_result();
    }
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (attempt > 0) {
        slack_basis();
        sync_maps();
        if (!refactorize()) return fail_result();
        set_nonbasic_values();
        compute_basic_values();
      }
      force_bland = attempt == 2;
      bool abandoned = false;
      for (int refresh = 0; refresh <= kMaxRefresh && !abandoned; ++refresh) {
        P1 p1 = phase1();
        if (trace_on()) {
          int flagged = 0;
          double f = infeasibility(&flagged);
          std::fprintf(stderr,
                       "lp trace: nr=%d nv=%d attempt=%d refresh=%d p1=%d iters=%d infeas=%.3g flagged=%d\n",
                       nr, nv, attempt, refresh, static_cast<int>(p1), iters, f, flagged);
        }
        if (timed_out) return abort_result();
        if (p1 == P1::infeasible) {
          // re-prove on a fresh factorization before trusting the verdict
          if (!refactorize()) break;
          set_nonbasic_values();
          compute_basic_values();
          p1 = phase1();
          if (timed_out) return abort_result();
          if (p1 == P1::infeasible) {
            LpResult res;
            res.status = LpStatus::infeasible;
            res.iterations = iters;
            return res;
          }
        }
        if (p1 == P1::fail) break;
        P2 p2 = phase2();
        if (trace_on())
          std::fprintf(stderr, "lp trace: p2=%d iters=%d obj=%.9g\n", static_cast<int>(p2), iters,
                       objective());
        if (timed_out) return abort_result();
        if (p2 == P2::unbounded) {
          LpResult res;
          res.status = LpStatus::unbounded;
          res.iterations = iters;
          return res;
        }
        if (p2 == P2::fail) break;
        if (p2 == P2::refresh) continue;
        if (!refactorize()) break;
        set_nonbasic_values();
        compute_basic_values();
        bool in_bounds = true;
        for (int i = 0; i < nr; ++i) {
          int j = basic_of_row[i];
          if (xval[j] < lo[j] - kBoundTol || xval[j] > up[j] + kBoundTol) {
            in_bounds = false;
            break;
          }
        }
        if (!in_bounds) continue;
        bool ok = verify_primal();
        if (trace_on()) std::fprintf(stderr, "lp trace: verify=%d\n", ok ? 1 : 0);
        if (!ok) {
          abandoned = true;  // basis checks out numerically yet rows disagree
          break;
        }
        LpResult res;
        res.status = LpStatus::optimal;
        res.objective = objective();
        res.iterations = iters;
        res.x.assign(xval.begin(), xval.begin() + nv);
        res.basis.status = stat;
        return res;
      }
    }
    return fail_result();
  }

  LpResult fail_result() const {
    LpResult res;
    res.status = LpStatus::failure;
    res.iterations = iters;
    return res;
  }

  LpResult abort_result() const {
    LpResult res;
    res.status = LpStatus::aborted;
    res.iterations = iters;
    return res;
  }
};

}  // namespace

LpResult solve_lp(const LpModel& model, const LpBasis* warm, double deadline_s) {
  for (int j = 0; j < model.var_count(); ++j) {
    if (model.lower[j] > model.upper[j]) {
      LpResult res;
      res.status = LpStatus::infeasible;
      return res;
    }
  }
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(deadline_s));
  Engine eng(model);
  if (deadline_s > 0.0) {
    eng.deadline = deadline;
    eng.have_deadline = true;
  }
  LpResult res = eng.run(warm);
  if (res.status == LpStatus::failure && warm && !warm->empty()) {
    Engine cold(model);
    if (deadline_s > 0.0) {
      cold.deadline = deadline;
      cold.have_deadline = true;
    }
    res = cold.run(nullptr);
  }
  return res;
}

void write_lp_text(const LpModel& model, std::ostream& out) {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "Minimize\n obj:";
  for (int j = 0; j < model.var_count(); ++j) {
    if (model.obj[j] == 0.0) continue;
    out << (model.obj[j] >= 0 ? " + " : " - ") << num(std::abs(model.obj[j])) << " x" << j;
  }
  out << "\nSubject To\n";
  for (int r = 0; r < model.row_count(); ++r) {
    const auto& row = model.rows[r];
    out << " r" << r << ":";
    for (auto [j, a] : row.coefs)
      out << (a >= 0 ? " + " : " - ") << num(std::abs(a)) << " x" << j;
    const char* op = row.sense == RowSense::ge ? ">=" : row.sense == RowSense::le ? "<=" : "=";
    out << ' ' << op << ' ' << num(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < model.var_count(); ++j) {
    double l = model.lower[j], u = model.upper[j];
    if (std::isfinite(l) && std::isfinite(u))
      out << ' ' << num(l) << " <= x" << j << " <= " << num(u) << '\n';
    else if (std::isfinite(l))
      out << ' ' << "x" << j << " >= " << num(l) << '\n';
    else if (std::isfinite(u))
      out << ' ' << "x" << j << " <= " << num(u) << '\n';
    else
      out << ' ' << "x" << j << " free\n";
  }
  out << "End\n";
}

}  // namespace pscp
