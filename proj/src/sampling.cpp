#include "pscp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pscp {

namespace {

constexpr double kAlphaLo = 0.01, kAlphaHi = 0.0275;
constexpr double kLambdaLo = 0.1, kLambdaHi = 0.2;

// SplitMix64 finalizer; chains give independent substreams per (purpose, block)
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kParamStream = 1;
constexpr std::uint64_t kDrawStream = 2;

std::uint64_t substream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t block) {
  return mix64(mix64(mix64(seed) ^ purpose) ^ block);
}

// top 53 bits -> [0, 1)
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// inversion by sequential search; fine for lambda <= 0.4
int poisson_draw(double lambda, std::mt19937_64& rng) {
  double u = uniform01(rng);
  double term = std::exp(-lambda);
  double cum = term;
  int k = 0;
  while (u >= cum && k < 200) {
    ++k;
    term *= lambda / static_cast<double>(k);
    cum += term;
  }
  return k;
}

}  // namespace

std::string to_string(DistKind kind) { return kind == DistKind::circular ? "circular" : "star"; }

DistKind dist_kind_from_string(const std::string& name) {
  if (name == "circular") return DistKind::circular;
  if (name == "star") return DistKind::star;
  throw std::invalid_argument("unknown distribution kind: " + name);
}

void DistributionSpec::validate(const BlockPartition& partition) const {
  const std::size_t T = static_cast<std::size_t>(partition.block_count());
  if (row_params.size() != T) throw std::invalid_argument("row_params block count mismatch");
  if (kind == DistKind::star && hub_params.size() != T)
    throw std::invalid_argument("hub_params block count mismatch");
  const double lo = kind == DistKind::circular ? kAlphaLo : kLambdaLo;
  const double hi = kind == DistKind::circular ? kAlphaHi : kLambdaHi;
  for (std::size_t t = 0; t < T; ++t) {
    if (row_params[t].size() != partition.blocks[t].size())
      throw std::invalid_argument("row_params row count mismatch");
    for (double p : row_params[t])
      if (!(p >= lo && p <= hi)) throw std::invalid_argument("row parameter out of range");
    if (kind == DistKind::star && !(hub_params[t] >= lo && hub_params[t] <= hi))
      throw std::invalid_argument("hub parameter out of range");
  }
}

DistributionSpec make_distribution(DistKind kind, const BlockPartition& partition,
                                   std::uint64_t seed) {
  DistributionSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  const int T = partition.block_count();
  spec.row_params.resize(static_cast<std::size_t>(T));
  if (kind == DistKind::star) spec.hub_params.resize(static_cast<std::size_t>(T));
  const double lo = kind == DistKind::circular ? kAlphaLo : kLambdaLo;
  const double hi = kind == DistKind::circular ? kAlphaHi : kLambdaHi;
  for (int t = 0; t < T; ++t) {
    std::mt19937_64 rng(substream(seed, kParamStream, static_cast<std::uint64_t>(t)));
    auto& params = spec.row_params[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < partition.blocks[static_cast<std::size_t>(t)].size(); ++i)
      params.push_back(lo + (hi - lo) * uniform01(rng));
    if (kind == DistKind::star)
      spec.hub_params[static_cast<std::size_t>(t)] = lo + (hi - lo) * uniform01(rng);
  }
  spec.validate(partition);
  return spec;
}

std::vector<int> draw_circular(const std::vector<double>& alpha, std::mt19937_64& rng) {
  const std::size_t mt = alpha.size();
  std::vector<char> y(mt);
  for (std::size_t i = 0; i < mt; ++i) y[i] = uniform01(rng) < alpha[i] ? 1 : 0;
  std::vector<int> rows;
  for (std::size_t i = 0; i < mt; ++i)
    if (y[i] || y[(i + 1) % mt]) rows.push_back(static_cast<int>(i));
  return rows;
}

std::vector<int> draw_star(const std::vector<double>& lambda, double hub_lambda,
                           std::mt19937_64& rng) {
  const std::size_t mt = lambda.size();
  std::vector<int> y(mt);
  for (std::size_t i = 0; i < mt; ++i) y[i] = poisson_draw(lambda[i], rng);
  const int hub = poisson_draw(hub_lambda, rng);
  std::vector<int> rows;
  for (std::size_t i = 0; i < mt; ++i)
    if (y[i] + hub >= 2) rows.push_back(static_cast<int>(i));
  return rows;
}

SampledSets sample_scenario_set(int m, const BlockPartition& partition,
                                const DistributionSpec& spec, int s) {
  partition.validate(m);
  spec.validate(partition);
  if (s < 1) throw std::invalid_argument("draw count must be at least 1");
  const int T = partition.block_count();

  RawDraws per;
  per.s = s;
  per.m = m;
  per.partition = partition;
  per.draws.resize(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    std::mt19937_64 rng(substream(spec.seed, kDrawStream, static_cast<std::uint64_t>(t)));
    const auto& block = partition.blocks[static_cast<std::size_t>(t)];
    const auto& params = spec.row_params[static_cast<std::size_t>(t)];
    auto& out = per.draws[static_cast<std::size_t>(t)];
    out.reserve(static_cast<std::size_t>(s));
    for (int d = 0; d < s; ++d) {
      std::vector<int> local = spec.kind == DistKind::circular
                                   ? draw_circular(params, rng)
                                   : draw_star(params, spec.hub_params[static_cast<std::size_t>(t)], rng);
      std::vector<int> global;
      global.reserve(local.size());
      for (int i : local) global.push_back(block[static_cast<std::size_t>(i)]);
      out.push_back(std::move(global));
    }
  }

  RawDraws joint;
  joint.s = s;
  joint.m = m;
  joint.partition = BlockPartition::single(m);
  joint.draws.resize(1);
  joint.draws[0].resize(static_cast<std::size_t>(s));
  for (int d = 0; d < s; ++d) {
    auto& dst = joint.draws[0][static_cast<std::size_t>(d)];
    for (int t = 0; t < T; ++t) {
      const auto& src = per.draws[static_cast<std::size_t>(t)][static_cast<std::size_t>(d)];
      dst.insert(dst.end(), src.begin(), src.end());
    }
    std::sort(dst.begin(), dst.end());
  }

  SampledSets out;
  out.per_block = normalize_scenarios(per);
  out.joint = normalize_scenarios(joint);
  return out;
}

void write_distribution_sidecar(const DistributionSpec& spec, std::ostream& out) {
  auto real = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "kind " << to_string(spec.kind) << "\n";
  out << "seed " << spec.seed << "\n";
  const char* label = spec.kind == DistKind::circular ? "alpha" : "lambda";
  for (std::size_t t = 0; t < spec.row_params.size(); ++t) {
    out << "block " << (t + 1) << ' ' << label;
    for (double p : spec.row_params[t]) out << ' ' << real(p);
    if (spec.kind == DistKind::star) out << " hub " << real(spec.hub_params[t]);
    out << "\n";
  }
}

}  // namespace pscp
