#include "pscp/bench.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pscp/preprocess.hpp"

namespace pscp {

namespace {

std::string real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

double parse_real(const std::string& tok) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad real field: " + tok);
  }
}

long long parse_ll(const std::string& tok) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("bad integer field: " + tok);
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

double shifted_geomean(const std::vector<double>& values, double shift) {
  if (values.empty()) throw std::invalid_argument("shifted_geomean of empty set");
  if (shift < 0.0) throw std::invalid_argument("shift must be nonnegative");
  double acc = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("values must be finite and nonnegative");
    acc += std::log(v + shift);
  }
  return std::exp(acc / static_cast<double>(values.size())) - shift;
}

double delta_o_pct(double o1, double o2) {
  if (o1 == o2) return 0.0;
  return 100.0 * std::abs(o1 - o2) / std::max(o1, o2);
}

FormulationComparison compare_formulations(const CoverInstance& inst, const ScenarioSet& joint,
                                           const ScenarioSet& per_block, double eps,
                                           const SolveLimits& limits) {
  IndexMaps jm = build_indices(joint);
  IndexMaps pm = build_indices(per_block);
  MasterModel gen =
      build_master(inst, joint, jm, eps, SolveMode::generic, fix_forced_rows(jm, joint, eps));
  MasterModel blk = build_master(inst, per_block, pm, eps, SolveMode::block,
                                 block_forced_rows(pm, per_block, eps));
  BendersSolver gs(gen), bs(blk);
  SolveResult rg = gs.solve(limits);
  SolveResult rb = bs.solve(limits);
  FormulationComparison cmp;
  cmp.available = rg.status == SolveStatus::optimal && rb.status == SolveStatus::optimal;
  if (cmp.available) {
    cmp.o_generic = rg.objective;
    cmp.o_block = rb.objective;
    cmp.differs = rg.objective != rb.objective;
    cmp.delta_pct = delta_o_pct(rg.objective, rb.objective);
  }
  return cmp;
}

std::string bench_raw_header() {
  return "scp,dist,blocks,s,eps,seed,mode,status,objective,dual_bound,gap,nodes,lp_solves,"
         "cuts_generic,cuts_block,cuts_coverage,root_iters,t_total_s,t_root_s,t_sep_s,T";
}

std::string format_bench_row(const BenchRow& r) {
  std::ostringstream os;
  os << r.scp << ',' << r.dist << ',' << r.blocks << ',' << r.s << ',' << real17(r.eps) << ','
     << r.seed << ',' << r.mode << ',' << r.status << ',' << real17(r.objective) << ','
     << real17(r.dual_bound) << ',' << real17(r.gap) << ',' << r.nodes << ',' << r.lp_solves << ','
     << r.cuts_generic << ',' << r.cuts_block << ',' << r.cuts_coverage << ',' << r.root_iters
     << ',' << real17(r.t_total_s) << ',' << real17(r.t_root_s) << ',' << real17(r.t_sep_s) << ','
     << r.T;
  return os.str();
}

BenchRow parse_bench_row(const std::string& line) {
  std::vector<std::string> f = split(line, ',');
  if (f.size() != 21) throw ParseError("raw row needs 21 fields, got " + std::to_string(f.size()));
  BenchRow r;
  r.scp = f[0];
  r.dist = f[1];
  r.blocks = f[2];
  r.s = static_cast<int>(parse_ll(f[3]));
  r.eps = parse_real(f[4]);
  r.seed = static_cast<std::uint64_t>(parse_ll(f[5]));
  r.mode = f[6];
  r.status = f[7];
  r.objective = parse_real(f[8]);
  r.dual_bound = parse_real(f[9]);
  r.gap = parse_real(f[10]);
  r.nodes = parse_ll(f[11]);
  r.lp_solves = parse_ll(f[12]);
  r.cuts_generic = parse_ll(f[13]);
  r.cuts_block = parse_ll(f[14]);
  r.cuts_coverage = parse_ll(f[15]);
  r.root_iters = static_cast<int>(parse_ll(f[16]));
  r.t_total_s = parse_real(f[17]);
  r.t_root_s = parse_real(f[18]);
  r.t_sep_s = parse_real(f[19]);
  r.T = static_cast<int>(parse_ll(f[20]));
  return r;
}

std::string bench_agg_header() { return "scope,count,S,T_sgm,G_pct_sgm,ST_sgm,ND,dO_pct_sgm"; }

std::vector<std::string> aggregate_rows(const std::vector<BenchRow>& rows) {
  auto mode_line = [&rows](const std::string& mode) {
    long long count = 0, solved = 0;
    std::vector<double> times, gaps, sep_times;
    for (const BenchRow& r : rows) {
      if (r.mode != mode) continue;
      ++count;
      if (r.status == "error") continue;
      times.push_back(r.t_total_s);
      sep_times.push_back(r.t_sep_s);
      if (r.status == "optimal") ++solved;
      if (r.status == "time_limit") gaps.push_back(100.0 * r.gap);
    }
    std::ostringstream os;
    os << mode << ',' << count << ',' << solved << ','
       << (times.empty() ? "-" : real17(shifted_geomean(times, 1.0))) << ','
       << (gaps.empty() ? "-" : real17(shifted_geomean(gaps, 1.0))) << ','
       << (sep_times.empty() ? "-" : real17(shifted_geomean(sep_times, 1.0))) << ",-,-";
    return os.str();
  };

  // pair scope: generic and block rows of the same grid cell, both optimal
  long long pairs = 0, nd = 0;
  std::vector<double> deltas;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BenchRow& g = rows[i];
    if (g.mode != "generic") continue;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const BenchRow& b = rows[j];
      if (b.mode != "block") continue;
      if (b.scp != g.scp || b.dist != g.dist || b.blocks != g.blocks || b.s != g.s ||
          b.eps != g.eps || b.seed != g.seed)
        continue;
      if (g.status == "optimal" && b.status == "optimal") {
        ++pairs;
        if (g.objective != b.objective) {
          ++nd;
          deltas.push_back(delta_o_pct(g.objective, b.objective));
        }
      }
      break;
    }
  }
  std::ostringstream pair_os;
  pair_os << "pair," << pairs << ",-,-,-,-," << nd << ','
          << (deltas.empty() ? "-" : real17(shifted_geomean(deltas, 1.0)));

  return {mode_line("generic"), mode_line("block"), pair_os.str()};
}

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    std::string value;
    std::getline(ls, value);
    std::size_t start = value.find_first_not_of(" \t");
    value = start == std::string::npos ? std::string() : value.substr(start);
    std::size_t end = value.find_last_not_of(" \t\r");
    if (end != std::string::npos) value = value.substr(0, end + 1);
    if (value.empty())
      throw ParseError("config line " + std::to_string(lineno) + ": missing value for " + key);
    try {
      if (key == "scp") {
        cfg.scp_files.push_back(value);
      } else if (key == "dist") {
        cfg.dists.push_back(dist_kind_from_string(value));
      } else if (key == "blocks") {
        if (value != "10" && value != "20" && value != "full")
          throw std::invalid_argument("blocks must be 10, 20 or full");
        cfg.block_schemes.push_back(value);
      } else if (key == "scenarios") {
        int s = static_cast<int>(parse_ll(value));
        if (s < 1) throw std::invalid_argument("scenarios must be >= 1");
        cfg.scenario_counts.push_back(s);
      } else if (key == "eps") {
        double e = parse_real(value);
        if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
        cfg.eps_values.push_back(e);
      } else if (key == "seed") {
        cfg.seeds.push_back(static_cast<std::uint64_t>(parse_ll(value)));
      } else if (key == "time_limit") {
        cfg.time_limit_s = parse_real(value);
        if (cfg.time_limit_s < 0.0) throw std::invalid_argument("time_limit must be >= 0");
      } else if (key == "jobs") {
        cfg.jobs = static_cast<int>(parse_ll(value));
        if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
      } else if (key == "out_raw") {
        cfg.out_raw = value;
      } else if (key == "out_agg") {
        cfg.out_agg = value;
      } else {
        throw std::invalid_argument("unknown key " + key);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError("config line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  if (cfg.scp_files.empty() || cfg.dists.empty() || cfg.block_schemes.empty() ||
      cfg.scenario_counts.empty() || cfg.eps_values.empty() || cfg.seeds.empty())
    throw ParseError("config needs at least one scp, dist, blocks, scenarios, eps and seed");
  if (cfg.out_raw.empty() || cfg.out_agg.empty())
    throw ParseError("config needs out_raw and out_agg paths");
  return cfg;
}

BenchConfig load_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  return parse_bench_config(in);
}

namespace {

struct Cell {
  std::string scp, blocks;
  DistKind dist;
  int s;
  double eps;
  std::uint64_t seed;
};

BenchRow base_row(const Cell& cell, const std::string& mode) {
  BenchRow r;
  r.scp = cell.scp;
  r.dist = to_string(cell.dist);
  r.blocks = cell.blocks;
  r.s = cell.s;
  r.eps = cell.eps;
  r.seed = cell.seed;
  r.mode = mode;
  r.status = "error";
  return r;
}

void fill_row(BenchRow& r, const SolveResult& res, int T) {
  r.status = res.status == SolveStatus::optimal     ? "optimal"
             : res.status == SolveStatus::time_limit ? "time_limit"
                                                     : "infeasible";
  r.objective = res.objective;
  r.dual_bound = res.dual_bound;
  r.gap = res.gap;
  r.nodes = res.nodes;
  r.lp_solves = res.lp_solves;
  r.cuts_generic = res.cuts_generic;
  r.cuts_block = res.cuts_block;
  r.cuts_coverage = res.cuts_coverage;
  r.root_iters = res.root_iters;
  r.t_total_s = res.t_total_s;
  r.t_root_s = res.t_root_s;
  r.t_sep_s = res.t_sep_s;
  r.T = T;
}

void run_cell(const Cell& cell, const SolveLimits& limits, BenchRow& out_generic,
              BenchRow& out_block, std::ostream* log, std::mutex* log_mutex) {
  out_generic = base_row(cell, "generic");
  out_block = base_row(cell, "block");
  CoverInstance inst;
  SampledSets sets;
  try {
    inst = load_orlib(cell.scp);
    int size = cell.blocks == "full" ? 0 : cell.blocks == "10" ? 10 : 20;
    BlockPartition part = BlockPartition::consecutive(inst.m, size);
    DistributionSpec spec = make_distribution(cell.dist, part, cell.seed);
    sets = sample_scenario_set(inst.m, part, spec, cell.s);
  } catch (const std::exception& ex) {
    if (log) {
      std::scoped_lock lock(*log_mutex);
      *log << "error: " << cell.scp << ": " << ex.what() << "\n";
    }
    return;
  }
  auto solve_one = [&](SolveMode mode, const ScenarioSet& set, BenchRow& row) {
    try {
      IndexMaps maps = build_indices(set);
      std::vector<int> forced = mode == SolveMode::generic ? fix_forced_rows(maps, set, cell.eps)
                                                           : block_forced_rows(maps, set, cell.eps);
      MasterModel mm = build_master(inst, set, maps, cell.eps, mode, forced);
      BendersSolver solver(mm);
      fill_row(row, solver.solve(limits), set.block_count());
    } catch (const std::exception& ex) {
      if (log) {
        std::scoped_lock lock(*log_mutex);
        *log << "error: " << cell.scp << " " << to_string(mode) << ": " << ex.what() << "\n";
      }
    }
  };
  solve_one(SolveMode::generic, sets.joint, out_generic);
  solve_one(SolveMode::block, sets.per_block, out_block);
}

}  // namespace

std::vector<BenchRow> run_suite(const BenchConfig& config, std::ostream* log) {
  std::vector<Cell> cells;
  for (const std::string& scp : config.scp_files)
    for (DistKind dist : config.dists)
      for (const std::string& blocks : config.block_schemes)
        for (int s : config.scenario_counts)
          for (double eps : config.eps_values)
            for (std::uint64_t seed : config.seeds)
              cells.push_back(Cell{scp, blocks, dist, s, eps, seed});

  SolveLimits limits;
  if (config.time_limit_s > 0.0) limits.time_limit_s = config.time_limit_s;

  std::vector<BenchRow> generic_rows(cells.size()), block_rows(cells.size());
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      run_cell(cells[i], limits, generic_rows[i], block_rows[i], log, &log_mutex);
    }
  };
  int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(cells.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::vector<BenchRow> rows;
  rows.reserve(cells.size() * 2);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    rows.push_back(generic_rows[i]);
    rows.push_back(block_rows[i]);
  }

  std::ofstream raw(config.out_raw);
  if (!raw) throw std::runtime_error("cannot write " + config.out_raw);
  raw << bench_raw_header() << "\n";
  for (const BenchRow& r : rows) raw << format_bench_row(r) << "\n";

  std::ofstream agg(config.out_agg);
  if (!agg) throw std::runtime_error("cannot write " + config.out_agg);
  agg << bench_agg_header() << "\n";
  for (const std::string& line : aggregate_rows(rows)) agg << line << "\n";

  if (log) {
    std::scoped_lock lock(log_mutex);
    *log << "suite: " << cells.size() << " cells, " << rows.size() << " solves -> "
         << config.out_raw << ", " << config.out_agg << "\n";
  }
  return rows;
}

}  // namespace pscp
