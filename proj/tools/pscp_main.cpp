// Command-line front end: gen | solve | verify | oracle | bench.
// Exit codes: 0 success/optimal, 2 limit hit, 3 infeasible, 64 usage error,
// 65 malformed input file, 70 internal error.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pscp/bench.hpp"
#include "pscp/cuts.hpp"
#include "pscp/instance.hpp"
#include "pscp/oracle.hpp"
#include "pscp/preprocess.hpp"
#include "pscp/sampling.hpp"
#include "pscp/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLimit = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitInternal = 70;

std::string real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("--eps must lie strictly between 0 and 1");
}

pscp::SolveMode parse_mode(const std::string& mode) {
  if (mode == "generic") return pscp::SolveMode::generic;
  if (mode == "block") return pscp::SolveMode::block;
  throw UsageError("--mode must be generic or block");
}

pscp::BlockPartition parse_blocks(const std::string& scheme, int m) {
  if (scheme == "full") return pscp::BlockPartition::single(m);
  if (scheme == "10") return pscp::BlockPartition::consecutive(m, 10);
  if (scheme == "20") return pscp::BlockPartition::consecutive(m, 20);
  throw UsageError("--blocks must be 10, 20 or full");
}

std::vector<int> parse_bitstring(const std::string& bits, int n) {
  if (static_cast<int>(bits.size()) != n)
    throw UsageError("--x needs exactly " + std::to_string(n) + " characters");
  std::vector<int> x;
  x.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw UsageError("--x must contain only 0 and 1");
    x.push_back(ch - '0');
  }
  return x;  // leftmost character is x_1
}

std::string bitstring(const std::vector<int>& x) {
  std::string out;
  out.reserve(x.size());
  for (int b : x) out.push_back(b ? '1' : '0');
  return out;
}

struct GenArgs {
  std::string scp, dist, blocks, out, joint;
  int scenarios = 0;
  std::uint64_t seed = 0;
};

int run_gen(const GenArgs& a) {
  pscp::CoverInstance inst = pscp::load_orlib(a.scp);
  pscp::BlockPartition part = parse_blocks(a.blocks, inst.m);
  pscp::DistKind kind;
  try {
    kind = pscp::dist_kind_from_string(a.dist);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (a.scenarios < 1) throw UsageError("--scenarios must be >= 1");
  pscp::DistributionSpec spec = pscp::make_distribution(kind, part, a.seed);
  pscp::SampledSets sets = pscp::sample_scenario_set(inst.m, part, spec, a.scenarios);
  pscp::save_scenario_file(sets.per_block, a.out);
  std::ofstream side(a.out + ".dist");
  if (!side) throw std::runtime_error("cannot write " + a.out + ".dist");
  pscp::write_distribution_sidecar(spec, side);
  std::cout << a.out << ": T=" << sets.per_block.block_count() << " stored=";
  for (int t = 0; t < sets.per_block.block_count(); ++t)
    std::cout << (t ? "+" : "") << sets.per_block.scenarios[t].size();
  std::cout << " of s=" << a.scenarios << "\n";
  if (!a.joint.empty()) {
    pscp::save_scenario_file(sets.joint, a.joint);
    std::cout << a.joint << ": T=1 stored=" << sets.joint.scenarios[0].size() << " of s="
              << a.scenarios << "\n";
  }
  return kExitOk;
}

struct SolveArgs {
  std::string scp, scen, mode = "generic", cut_log, report;
  double eps = 0.0;
  double time_limit = 0.0;
  long long node_limit = -1;
  bool no_presolve = false;
};

int run_solve(const SolveArgs& a) {
  require_eps(a.eps);
  pscp::SolveMode mode = parse_mode(a.mode);
  pscp::CoverInstance inst = pscp::load_orlib(a.scp);
  pscp::ScenarioSet set = pscp::load_scenario_file(a.scen);
  if (inst.m != set.m) throw UsageError("instance and scenario files disagree on m");
  if (mode == pscp::SolveMode::generic && set.block_count() != 1)
    throw UsageError("generic mode needs a single-block scenario file (use --mode block)");
  pscp::IndexMaps maps = pscp::build_indices(set);
  std::vector<int> forced;
  if (!a.no_presolve)
    forced = mode == pscp::SolveMode::generic ? pscp::fix_forced_rows(maps, set, a.eps)
                                              : pscp::block_forced_rows(maps, set, a.eps);
  pscp::MasterModel mm = pscp::build_master(inst, set, maps, a.eps, mode, forced);
  pscp::BendersSolver solver(mm);

  std::ofstream cut_log;
  if (!a.cut_log.empty()) {
    cut_log.open(a.cut_log);
    if (!cut_log) throw std::runtime_error("cannot write " + a.cut_log);
    solver.on_cut = [&cut_log](const pscp::BendersCut& cut, const std::vector<double>&) {
      cut_log << (cut.kind == pscp::CutKind::generic    ? "generic"
                  : cut.kind == pscp::CutKind::block    ? "block"
                                                        : "coverage")
              << ' ' << cut.origin_node;
      for (const auto& [row, coef] : cut.coefs) cut_log << " v" << (row + 1) << '=' << real17(coef);
      if (cut.kind == pscp::CutKind::block)
        cut_log << " eta" << (cut.eta_block + 1) << '=' << real17(cut.eta_coef);
      cut_log << " rhs=" << real17(cut.rhs) << '\n';
    };
  }

  pscp::SolveLimits limits;
  if (a.time_limit > 0.0) limits.time_limit_s = a.time_limit;
  limits.node_limit = a.node_limit;
  pscp::SolveResult res = solver.solve(limits);

  if (a.report.empty()) {
    pscp::write_report(std::cout, res, mode, a.eps, set.draw_count, set.block_count(), 0);
  } else {
    std::ofstream rep(a.report);
    if (!rep) throw std::runtime_error("cannot write " + a.report);
    pscp::write_report(rep, res, mode, a.eps, set.draw_count, set.block_count(), 0);
    std::cout << "status " << (res.status == pscp::SolveStatus::optimal ? "optimal"
                               : res.status == pscp::SolveStatus::time_limit ? "time_limit"
                                                                             : "infeasible")
              << " objective " << real17(res.objective) << "\n";
  }
  if (!res.x.empty()) std::cout << "x " << bitstring(res.x) << "\n";
  switch (res.status) {
    case pscp::SolveStatus::optimal: return kExitOk;
    case pscp::SolveStatus::time_limit: return kExitLimit;
    case pscp::SolveStatus::infeasible: return kExitInfeasible;
  }
  return kExitInternal;
}

struct CheckArgs {
  std::string scp, scen, mode = "generic", x;
  double eps = 0.0;
};

int run_verify(const CheckArgs& a) {
  require_eps(a.eps);
  pscp::SolveMode mode = parse_mode(a.mode);
  pscp::CoverInstance inst = pscp::load_orlib(a.scp);
  pscp::ScenarioSet set = pscp::load_scenario_file(a.scen);
  std::vector<int> x = parse_bitstring(a.x, inst.n);
  pscp::FeasCheck fc;
  try {
    fc = pscp::check_feasible(x, inst, set, a.eps, mode);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  std::cout << "probability " << real17(fc.probability) << "\n"
            << (fc.feasible ? "feasible" : "infeasible") << "\n";
  return fc.feasible ? kExitOk : kExitInfeasible;
}

int run_oracle(const CheckArgs& a) {
  require_eps(a.eps);
  pscp::SolveMode mode = parse_mode(a.mode);
  pscp::CoverInstance inst = pscp::load_orlib(a.scp);
  pscp::ScenarioSet set = pscp::load_scenario_file(a.scen);
  std::optional<pscp::OracleOptimum> best;
  try {
    best = pscp::enumerate_optimal(inst, set, a.eps, mode);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (!best) {
    std::cout << "infeasible\n";
    return kExitInfeasible;
  }
  std::cout << "cost " << real17(best->cost) << "\n"
            << "x " << bitstring(best->x) << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string config;
  int jobs = 0;  // 0 = take the config value
};

int run_bench(const BenchArgs& a) {
  pscp::BenchConfig cfg = pscp::load_bench_config(a.config);
  if (a.jobs > 0) cfg.jobs = a.jobs;
  pscp::run_suite(cfg, &std::cout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probabilistic set covering under finite discrete scenario distributions"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "sample a scenario file for an SCP instance");
  gen_cmd->add_option("--scp", gen.scp, "OR-Library SCP instance file")->required();
  gen_cmd->add_option("--dist", gen.dist, "circular|star")->required();
  gen_cmd->add_option("--blocks", gen.blocks, "10|20|full")->required();
  gen_cmd->add_option("--scenarios", gen.scenarios, "draws per block")->required();
  gen_cmd->add_option("--seed", gen.seed, "64-bit sampling seed")->required();
  gen_cmd->add_option("--out", gen.out, "per-block scenario file to write")->required();
  gen_cmd->add_option("--joint", gen.joint, "also write the joint single-block scenario file");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run the cutting-plane search");
  solve_cmd->add_option("--scp", solve.scp, "OR-Library SCP instance file")->required();
  solve_cmd->add_option("--scen", solve.scen, "scenario file")->required();
  solve_cmd->add_option("--eps", solve.eps, "risk level in (0,1)")->required();
  solve_cmd->add_option("--mode", solve.mode, "generic|block");
  solve_cmd->add_option("--time-limit", solve.time_limit, "seconds, 0 = none");
  solve_cmd->add_option("--node-limit", solve.node_limit, "max nodes, -1 = none");
  solve_cmd->add_flag("--no-presolve", solve.no_presolve, "skip forced-row fixing");
  solve_cmd->add_option("--cut-log", solve.cut_log, "write one line per emitted cut");
  solve_cmd->add_option("--report", solve.report, "write the key-value report here");

  CheckArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check one candidate cover");
  verify_cmd->add_option("--scp", verify.scp, "OR-Library SCP instance file")->required();
  verify_cmd->add_option("--scen", verify.scen, "scenario file")->required();
  verify_cmd->add_option("--eps", verify.eps, "risk level in (0,1)")->required();
  verify_cmd->add_option("--mode", verify.mode, "generic|block");
  verify_cmd->add_option("--x", verify.x, "0/1 string, leftmost is x_1")->required();

  CheckArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force optimum (small n)");
  oracle_cmd->add_option("--scp", oracle.scp, "OR-Library SCP instance file")->required();
  oracle_cmd->add_option("--scen", oracle.scen, "scenario file")->required();
  oracle_cmd->add_option("--eps", oracle.eps, "risk level in (0,1)")->required();
  oracle_cmd->add_option("--mode", oracle.mode, "generic|block");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run an experiment grid from a config file");
  bench_cmd->add_option("--config", bench.config, "flat key-value grid config")->required();
  bench_cmd->add_option("--jobs", bench.jobs, "worker threads (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (oracle_cmd->parsed()) return run_oracle(oracle);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const pscp::ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
