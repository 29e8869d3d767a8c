#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "pscp/bench.hpp"
#include "pscp/instance.hpp"

using namespace pscp;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "pscp_bench_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_tri_scp() {
  auto path = scratch_dir() / "tri.scp";
  std::ofstream out(path);
  serialize_orlib(fixtures::tri_instance(), out);
  return path.string();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("shifted geometric mean hand values") {
  CHECK(shifted_geomean({1.0, 1.0, 1.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(shifted_geomean({2.0, 8.0}, 1.0) - (3.0 * std::sqrt(3.0) - 1.0)) <= 1e-12);
  CHECK(std::abs(shifted_geomean({0.0}, 1.0)) <= 1e-15);
  CHECK(shifted_geomean({5.0}, 0.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK_THROWS_AS(shifted_geomean({}, 1.0), std::invalid_argument);
}

TEST_CASE("relative optimum gap in percent") {
  CHECK(delta_o_pct(100.0, 100.0) == 0.0);
  CHECK(std::abs(delta_o_pct(100.0, 101.0) - 100.0 / 101.0) <= 1e-12);
  CHECK(delta_o_pct(101.0, 100.0) == delta_o_pct(100.0, 101.0));
}

TEST_CASE("config grids grow by repeating keys") {
  std::istringstream in(
      "# grid under test\n"
      "scp a.scp\n"
      "scp b.scp\n"
      "dist circular\n"
      "dist star\n"
      "blocks 10\n"
      "blocks full\n"
      "scenarios 100\n"
      "scenarios 1000\n"
      "eps 0.1\n"
      "seed 1\n"
      "seed 2\n"
      "time_limit 30\n"
      "jobs 2\n"
      "out_raw raw.csv\n"
      "out_agg agg.csv\n");
  BenchConfig cfg = parse_bench_config(in);
  CHECK(cfg.scp_files == std::vector<std::string>{"a.scp", "b.scp"});
  CHECK(cfg.dists == std::vector<DistKind>{DistKind::circular, DistKind::star});
  CHECK(cfg.block_schemes == std::vector<std::string>{"10", "full"});
  CHECK(cfg.scenario_counts == std::vector<int>{100, 1000});
  CHECK(cfg.eps_values == std::vector<double>{0.1});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(cfg.time_limit_s == doctest::Approx(30.0));
  CHECK(cfg.jobs == 2);
  CHECK(cfg.out_raw == "raw.csv");
  CHECK(cfg.out_agg == "agg.csv");
}

TEST_CASE("config rejects unknown keys and empty grids") {
  std::istringstream bad_key("bogus 1\n");
  CHECK_THROWS_AS(parse_bench_config(bad_key), ParseError);
  std::istringstream missing(
      "scp a.scp\nout_raw r.csv\nout_agg a.csv\n");
  CHECK_THROWS_AS(parse_bench_config(missing), ParseError);
  std::istringstream bad_eps(
      "scp a.scp\ndist circular\nblocks full\nscenarios 10\neps 1.5\nseed 1\n"
      "out_raw r.csv\nout_agg a.csv\n");
  CHECK_THROWS_AS(parse_bench_config(bad_eps), ParseError);
}

TEST_CASE("raw rows survive a format and parse round trip") {
  BenchRow row;
  row.scp = "data/scp41.txt";
  row.dist = "star";
  row.blocks = "20";
  row.s = 1000;
  row.eps = 0.1;
  row.seed = 42;
  row.mode = "block";
  row.status = "optimal";
  row.objective = 429.0;
  row.dual_bound = 429.0;
  row.gap = 0.0;
  row.nodes = 17;
  row.lp_solves = 230;
  row.cuts_generic = 0;
  row.cuts_block = 88;
  row.cuts_coverage = 3;
  row.root_iters = 41;
  row.t_total_s = 1.25;
  row.t_root_s = 0.75;
  row.t_sep_s = 1.0 / 3.0;  // 17 digits must survive
  row.T = 7;
  BenchRow back = parse_bench_row(format_bench_row(row));
  CHECK(back.scp == row.scp);
  CHECK(back.dist == row.dist);
  CHECK(back.blocks == row.blocks);
  CHECK(back.s == row.s);
  CHECK(back.eps == row.eps);
  CHECK(back.seed == row.seed);
  CHECK(back.mode == row.mode);
  CHECK(back.status == row.status);
  CHECK(back.objective == row.objective);
  CHECK(back.dual_bound == row.dual_bound);
  CHECK(back.gap == row.gap);
  CHECK(back.nodes == row.nodes);
  CHECK(back.lp_solves == row.lp_solves);
  CHECK(back.cuts_block == row.cuts_block);
  CHECK(back.root_iters == row.root_iters);
  CHECK(back.t_sep_s == row.t_sep_s);
  CHECK(back.T == row.T);
}

TEST_CASE("aggregates count solves and average the right subsets") {
  auto mk = [](const char* mode, const char* status, double obj, double gap, double t,
               double sep) {
    BenchRow r;
    r.scp = "i.scp";
    r.dist = "circular";
    r.blocks = "full";
    r.s = 10;
    r.eps = 0.1;
    r.seed = 1;
    r.mode = mode;
    r.status = status;
    r.objective = obj;
    r.gap = gap;
    r.t_total_s = t;
    r.t_sep_s = sep;
    return r;
  };
  std::vector<BenchRow> rows;
  BenchRow g = mk("generic", "optimal", 100.0, 0.0, 2.0, 2.0);
  BenchRow b = mk("block", "optimal", 101.0, 0.0, 8.0, 8.0);
  rows.push_back(g);
  rows.push_back(b);
  BenchRow g2 = mk("generic", "optimal", 50.0, 0.0, 2.0, 2.0);
  g2.seed = 2;
  BenchRow b2 = mk("block", "time_limit", 60.0, 0.25, 30.0, 8.0);
  b2.seed = 2;
  rows.push_back(g2);
  rows.push_back(b2);

  std::vector<std::string> agg = aggregate_rows(rows);
  REQUIRE(agg.size() == 3);

  // generic: both solved, times {2,2}, no gaps
  std::istringstream gs(agg[0]);
  std::string cell;
  std::vector<std::string> gcells;
  while (std::getline(gs, cell, ',')) gcells.push_back(cell);
  REQUIRE(gcells.size() == 8);
  CHECK(gcells[0] == "generic");
  CHECK(gcells[1] == "2");
  CHECK(gcells[2] == "2");  // S
  CHECK(std::stod(gcells[3]) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gcells[4] == "-");  // no unsolved, no end-gap average

  // block: one solved, one hit the limit with gap .25, reported in percent
  std::vector<std::string> bcells;
  std::istringstream bs(agg[1]);
  while (std::getline(bs, cell, ',')) bcells.push_back(cell);
  CHECK(bcells[0] == "block");
  CHECK(bcells[2] == "1");
  CHECK(std::stod(bcells[4]) == doctest::Approx(25.0).epsilon(1e-12));

  // pair scope: only the fully solved cell compares, optima 100 vs 101 differ
  std::vector<std::string> pcells;
  std::istringstream ps(agg[2]);
  while (std::getline(ps, cell, ',')) pcells.push_back(cell);
  CHECK(pcells[0] == "pair");
  CHECK(pcells[1] == "1");
  CHECK(pcells[6] == "1");  // ND
  CHECK(std::stod(pcells[7]) == doctest::Approx(100.0 / 101.0).epsilon(1e-9));

  // recomputation is bit for bit stable
  CHECK(aggregate_rows(rows) == agg);
}

TEST_CASE("single block data makes both formulations agree") {
  CoverInstance inst = fixtures::tri_instance();
  BlockPartition part = BlockPartition::single(3);
  DistributionSpec spec = make_distribution(DistKind::circular, part, 4);
  SampledSets sets = sample_scenario_set(3, part, spec, 50);
  FormulationComparison cmp = compare_formulations(inst, sets.joint, sets.per_block, 0.1);
  REQUIRE(cmp.available);
  CHECK_FALSE(cmp.differs);
  CHECK(cmp.o_generic == cmp.o_block);
  CHECK(cmp.delta_pct == 0.0);
}

TEST_CASE("suite runs the grid and emits matching aggregates") {
  std::string scp = write_tri_scp();
  auto raw_path = (scratch_dir() / "raw.csv").string();
  auto agg_path = (scratch_dir() / "agg.csv").string();
  std::ostringstream cfg_text;
  cfg_text << "scp " << scp << "\ndist circular\nblocks full\nscenarios 30\n"
           << "eps 0.1\nseed 3\ntime_limit 30\nout_raw " << raw_path << "\nout_agg " << agg_path
           << "\n";
  std::istringstream in(cfg_text.str());
  BenchConfig cfg = parse_bench_config(in);

  std::vector<BenchRow> rows = run_suite(cfg);
  REQUIRE(rows.size() == 2);  // one cell, both modes
  CHECK(rows[0].mode == "generic");
  CHECK(rows[1].mode == "block");
  for (const BenchRow& r : rows) {
    CHECK(r.status == "optimal");
    CHECK(r.scp == scp);
    CHECK(r.T == 1);
  }
  CHECK(rows[0].objective == rows[1].objective);  // T=1 agreement

  std::vector<std::string> raw_lines = read_lines(raw_path);
  REQUIRE(raw_lines.size() == 3);
  CHECK(raw_lines[0] == bench_raw_header());
  CHECK(raw_lines[1] == format_bench_row(rows[0]));
  CHECK(raw_lines[2] == format_bench_row(rows[1]));

  // emitted aggregates equal a fresh recomputation from the raw rows
  std::vector<BenchRow> reread = {parse_bench_row(raw_lines[1]), parse_bench_row(raw_lines[2])};
  std::vector<std::string> agg_lines = read_lines(agg_path);
  REQUIRE(agg_lines.size() == 4);
  CHECK(agg_lines[0] == bench_agg_header());
  std::vector<std::string> recomputed = aggregate_rows(reread);
  CHECK(agg_lines[1] == recomputed[0]);
  CHECK(agg_lines[2] == recomputed[1]);
  CHECK(agg_lines[3] == recomputed[2]);
}

TEST_CASE("suite records per-cell failures and continues") {
  std::string good = write_tri_scp();
  std::string missing = (scratch_dir() / "not_there.scp").string();
  std::remove(missing.c_str());
  auto raw_path = (scratch_dir() / "raw_err.csv").string();
  auto agg_path = (scratch_dir() / "agg_err.csv").string();
  std::ostringstream cfg_text;
  cfg_text << "scp " << missing << "\nscp " << good << "\ndist circular\nblocks full\n"
           << "scenarios 20\neps 0.2\nseed 5\ntime_limit 30\nout_raw " << raw_path
           << "\nout_agg " << agg_path << "\n";
  std::istringstream in(cfg_text.str());
  std::vector<BenchRow> rows = run_suite(parse_bench_config(in));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].status == "error");
  CHECK(rows[1].status == "error");
  CHECK(rows[2].status == "optimal");
  CHECK(rows[3].status == "optimal");
}

TEST_CASE("suite order is independent of worker count") {
  std::string scp = write_tri_scp();
  auto raw1 = (scratch_dir() / "raw_j1.csv").string();
  auto agg1 = (scratch_dir() / "agg_j1.csv").string();
  auto raw4 = (scratch_dir() / "raw_j4.csv").string();
  auto agg4 = (scratch_dir() / "agg_j4.csv").string();
  auto config = [&](const std::string& raw, const std::string& agg, int jobs) {
    std::ostringstream os;
    os << "scp " << scp << "\ndist circular\ndist star\nblocks full\nscenarios 25\n"
       << "eps 0.1\neps 0.3\nseed 7\ntime_limit 30\njobs " << jobs << "\nout_raw " << raw
       << "\nout_agg " << agg << "\n";
    std::istringstream in(os.str());
    return parse_bench_config(in);
  };
  std::vector<BenchRow> serial = run_suite(config(raw1, agg1, 1));
  std::vector<BenchRow> parallel = run_suite(config(raw4, agg4, 4));
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    // wall times vary run to run; everything the solves decide must not
    CHECK(serial[i].scp == parallel[i].scp);
    CHECK(serial[i].dist == parallel[i].dist);
    CHECK(serial[i].eps == parallel[i].eps);
    CHECK(serial[i].mode == parallel[i].mode);
    CHECK(serial[i].status == parallel[i].status);
    CHECK(serial[i].objective == parallel[i].objective);
    CHECK(serial[i].nodes == parallel[i].nodes);
    CHECK(serial[i].lp_solves == parallel[i].lp_solves);
    CHECK(serial[i].T == parallel[i].T);
  }
}
