#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "pscp/instance.hpp"
#include "pscp/sampling.hpp"

using namespace pscp;

namespace {

std::string serialize(const ScenarioSet& set) {
  std::ostringstream os;
  write_scenario_file(set, os);
  return os.str();
}

}  // namespace

TEST_CASE("dist kind names round trip") {
  CHECK(to_string(DistKind::circular) == "circular");
  CHECK(to_string(DistKind::star) == "star");
  CHECK(dist_kind_from_string("circular") == DistKind::circular);
  CHECK(dist_kind_from_string("star") == DistKind::star);
  CHECK_THROWS_AS(dist_kind_from_string("normal"), std::invalid_argument);
}

TEST_CASE("frozen parameters stay inside their ranges") {
  BlockPartition part = BlockPartition::consecutive(25, 10);
  DistributionSpec circ = make_distribution(DistKind::circular, part, 5);
  REQUIRE(circ.row_params.size() == 3);
  CHECK(circ.hub_params.empty());
  for (const auto& block : circ.row_params)
    for (double a : block) {
      CHECK(a >= 0.01);
      CHECK(a <= 0.0275);
    }
  CHECK_NOTHROW(circ.validate(part));

  DistributionSpec star = make_distribution(DistKind::star, part, 5);
  REQUIRE(star.hub_params.size() == 3);
  for (const auto& block : star.row_params)
    for (double l : block) {
      CHECK(l >= 0.1);
      CHECK(l <= 0.2);
    }
  for (double l : star.hub_params) {
    CHECK(l >= 0.1);
    CHECK(l <= 0.2);
  }
  CHECK_NOTHROW(star.validate(part));

  DistributionSpec broken = circ;
  broken.row_params.pop_back();
  CHECK_THROWS_AS(broken.validate(part), std::invalid_argument);
}

TEST_CASE("sampling is deterministic in spec and seed") {
  BlockPartition part = BlockPartition::consecutive(25, 10);
  for (DistKind kind : {DistKind::circular, DistKind::star}) {
    DistributionSpec spec = make_distribution(kind, part, 42);
    SampledSets a = sample_scenario_set(25, part, spec, 300);
    SampledSets b = sample_scenario_set(25, part, spec, 300);
    CHECK(serialize(a.per_block) == serialize(b.per_block));
    CHECK(serialize(a.joint) == serialize(b.joint));
    DistributionSpec other = make_distribution(kind, part, 43);
    SampledSets c = sample_scenario_set(25, part, other, 300);
    CHECK(serialize(a.per_block) != serialize(c.per_block));
  }
}

TEST_CASE("circular draw fires a row and its cyclic predecessor") {
  // alpha = (1,0,0): Y_0 always fires, so entry 0 (own) and entry 2 (successor
  // wraps to Y_0) are set on every draw
  std::mt19937_64 rng(1);
  std::vector<double> alpha = {1.0, 0.0, 0.0};
  for (int i = 0; i < 20; ++i)
    CHECK(draw_circular(alpha, rng) == std::vector<int>{0, 2});
}

TEST_CASE("star draw needs two hits per row") {
  std::mt19937_64 rng(1);
  std::vector<double> lam = {0.0, 0.0};
  for (int i = 0; i < 20; ++i) CHECK(draw_star(lam, 0.0, rng).empty());
  // hub lambda 50: the shared draw alone reaches 2 except with prob ~1e-20
  for (int i = 0; i < 20; ++i)
    CHECK(draw_star(lam, 50.0, rng) == std::vector<int>{0, 1});
}

TEST_CASE("joint set mirrors the per-block draws") {
  BlockPartition part = BlockPartition::consecutive(12, 5);
  DistributionSpec spec = make_distribution(DistKind::circular, part, 9);
  SampledSets sets = sample_scenario_set(12, part, spec, 400);

  CHECK(sets.per_block.block_count() == 3);
  CHECK(sets.joint.block_count() == 1);
  CHECK(sets.per_block.draw_count == 400);
  CHECK(sets.joint.draw_count == 400);
  CHECK_NOTHROW(sets.per_block.validate());
  CHECK_NOTHROW(sets.joint.validate());

  // each row's marginal mass must agree between the two encodings
  auto marginal = [](const ScenarioSet& set, int m) {
    std::vector<double> freq(static_cast<std::size_t>(m), 0.0);
    for (const auto& block : set.scenarios)
      for (const Scenario& sc : block)
        for (int k : sc.rows) freq[static_cast<std::size_t>(k)] += sc.prob;
    return freq;
  };
  std::vector<double> fp = marginal(sets.per_block, 12);
  std::vector<double> fj = marginal(sets.joint, 12);
  for (int k = 0; k < 12; ++k) CHECK(fp[k] == doctest::Approx(fj[k]).epsilon(1e-12));
}

TEST_CASE("empirical marginals track the closed forms") {
  const int m = 30, s = 20000;
  BlockPartition part = BlockPartition::consecutive(m, 10);
  for (DistKind kind : {DistKind::circular, DistKind::star}) {
    DistributionSpec spec = make_distribution(kind, part, 8086);
    SampledSets sets = sample_scenario_set(m, part, spec, s);
    std::vector<double> freq(m, 0.0);
    for (const Scenario& sc : sets.joint.scenarios[0])
      for (int k : sc.rows) freq[static_cast<std::size_t>(k)] += sc.prob;
    for (int t = 0; t < part.block_count(); ++t) {
      const auto& rows = part.blocks[static_cast<std::size_t>(t)];
      const auto& par = spec.row_params[static_cast<std::size_t>(t)];
      const int mt = static_cast<int>(rows.size());
      for (int i = 0; i < mt; ++i) {
        double p;
        if (kind == DistKind::circular) {
          p = 1.0 - (1.0 - par[i]) * (1.0 - par[(i + 1) % mt]);
        } else {
          double lam = par[i] + spec.hub_params[static_cast<std::size_t>(t)];
          p = 1.0 - std::exp(-lam) * (1.0 + lam);
        }
        double sigma = std::sqrt(p * (1.0 - p) / s);
        CHECK(std::abs(freq[rows[i]] - p) <= 4.0 * sigma);  // fixed seed, no flake margin needed
      }
    }
  }
}

TEST_CASE("sidecar records kind seed and parameters") {
  BlockPartition part = BlockPartition::consecutive(6, 3);
  DistributionSpec spec = make_distribution(DistKind::star, part, 77);
  std::ostringstream os;
  write_distribution_sidecar(spec, os);
  std::string text = os.str();
  CHECK(text.find("star") != std::string::npos);
  CHECK(text.find("77") != std::string::npos);
}
