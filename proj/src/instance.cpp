#include "pscp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace pscp {

namespace {

constexpr double kMassTol = 1e-12;

// Kahan accumulator; the 1e-12 mass check must survive 1e5-term sums
struct KahanSum {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  long long next_int(const char* what) {
    std::string tok;
    if (!(in_ >> tok)) throw ParseError(std::string("truncated input, expected ") + what);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("non-integer token '" + tok + "' for " + what);
    return value;
  }

 private:
  std::istream& in_;
};

}  // namespace

void CoverInstance::validate() const {
  if (m <= 0 || n <= 0) throw std::invalid_argument("CoverInstance: m and n must be positive");
  if (static_cast<int>(cover.size()) != m) throw std::invalid_argument("CoverInstance: cover size != m");
  if (static_cast<int>(cost.size()) != n) throw std::invalid_argument("CoverInstance: cost size != n");
  for (double c : cost)
    if (!(c >= 0.0) || !std::isfinite(c))
      throw std::invalid_argument("CoverInstance: costs must be finite and >= 0");
  for (int k = 0; k < m; ++k) {
    const auto& row = cover[k];
    if (row.empty())
      throw std::invalid_argument("CoverInstance: row " + std::to_string(k + 1) + " has no covering column");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] < 0 || row[i] >= n) throw std::invalid_argument("CoverInstance: column index out of range");
      if (i > 0 && row[i] <= row[i - 1])
        throw std::invalid_argument("CoverInstance: row columns must be strictly ascending");
    }
  }
}

CoverInstance parse_orlib(std::istream& in) {
  TokenReader tok(in);
  CoverInstance inst;
  long long m = tok.next_int("row count");
  long long n = tok.next_int("column count");
  if (m <= 0 || n <= 0) throw ParseError("row and column counts must be positive");
  inst.m = static_cast<int>(m);
  inst.n = static_cast<int>(n);
  inst.cost.resize(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    long long c = tok.next_int("column cost");
    if (c < 0) throw ParseError("negative column cost");
    inst.cost[j] = static_cast<double>(c);
  }
  inst.cover.resize(inst.m);
  for (int k = 0; k < inst.m; ++k) {
    long long count = tok.next_int("row cover count");
    if (count <= 0)
      throw ParseError("row " + std::to_string(k + 1) + " has no covering column");
    auto& row = inst.cover[k];
    row.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
      long long j = tok.next_int("column index");
      if (j < 1 || j > inst.n)
        throw ParseError("column index " + std::to_string(j) + " out of [1," + std::to_string(inst.n) + "]");
      row.push_back(static_cast<int>(j - 1));
    }
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw ParseError("duplicate column in row " + std::to_string(k + 1));
  }
  return inst;
}

CoverInstance load_orlib(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open SCP file: " + path);
  return parse_orlib(in);
}

void serialize_orlib(const CoverInstance& inst, std::ostream& out) {
  out << inst.m << ' ' << inst.n << '\n';
  for (int j = 0; j < inst.n; ++j) out << (j ? " " : "") << fmt17(inst.cost[j]);
  out << '\n';
  for (const auto& row : inst.cover) {
    out << row.size();
    for (int j : row) out << ' ' << (j + 1);
    out << '\n';
  }
}

int BlockPartition::total_rows() const {
  int total = 0;
  for (const auto& b : blocks) total += static_cast<int>(b.size());
  return total;
}

int BlockPartition::block_of_row(int row) const {
  for (int t = 0; t < block_count(); ++t) {
    const auto& b = blocks[t];
    if (std::binary_search(b.begin(), b.end(), row)) return t;
  }
  throw std::invalid_argument("row " + std::to_string(row) + " not in any block");
}

BlockPartition BlockPartition::consecutive(int m, int size) {
  if (m <= 0) throw std::invalid_argument("partition needs m >= 1");
  if (size <= 0 || size >= m) size = m;
  BlockPartition part;
  for (int start = 0; start < m; start += size) {
    int end = std::min(start + size, m);
    std::vector<int> block(static_cast<std::size_t>(end - start));
    for (int k = start; k < end; ++k) block[static_cast<std::size_t>(k - start)] = k;
    part.blocks.push_back(std::move(block));
  }
  return part;
}

void BlockPartition::validate(int m) const {
  if (blocks.empty()) throw std::invalid_argument("partition has no blocks");
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    for (std::size_t i = 0; i < b.size(); ++i) {
      int k = b[i];
      if (k < 0 || k >= m) throw std::invalid_argument("block row out of range");
      if (i > 0 && b[i] <= b[i - 1]) throw std::invalid_argument("block rows must be strictly ascending");
      if (seen[static_cast<std::size_t>(k)]) throw std::invalid_argument("blocks overlap");
      seen[static_cast<std::size_t>(k)] = 1;
    }
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("blocks do not cover all rows");
}

void ScenarioSet::validate() const {
  partition.validate(m);
  const int T = block_count();
  if (static_cast<int>(scenarios.size()) != T || static_cast<int>(satisfied_mass.size()) != T)
    throw std::invalid_argument("ScenarioSet: per-block vectors sized differently from partition");
  for (int t = 0; t < T; ++t) {
    const auto& block = partition.blocks[t];
    if (!(satisfied_mass[t] >= 0.0)) throw std::invalid_argument("negative satisfied_mass");
    KahanSum mass;
    mass.add(satisfied_mass[t]);
    for (std::size_t i = 0; i < scenarios[t].size(); ++i) {
      const Scenario& sc = scenarios[t][i];
      if (sc.rows.empty()) throw std::invalid_argument("stored scenario is empty");
      if (!(sc.prob > 0.0)) throw std::invalid_argument("stored scenario has nonpositive probability");
      for (std::size_t r = 0; r < sc.rows.size(); ++r) {
        if (r > 0 && sc.rows[r] <= sc.rows[r - 1])
          throw std::invalid_argument("scenario rows must be strictly ascending");
        if (!std::binary_search(block.begin(), block.end(), sc.rows[r]))
          throw std::invalid_argument("scenario row outside its block");
      }
      if (i > 0 && scenarios[t][i - 1].rows == sc.rows)
        throw std::invalid_argument("duplicate scenario in block");
      mass.add(sc.prob);
    }
    if (std::abs(mass.sum - 1.0) > kMassTol)
      throw std::invalid_argument("block mass " + fmt17(mass.sum) + " != 1");
  }
}

ScenarioSet normalize_scenarios(const RawDraws& raw) {
  raw.partition.validate(raw.m);
  const int T = raw.partition.block_count();
  if (static_cast<int>(raw.draws.size()) != T)
    throw std::invalid_argument("RawDraws: draw lists sized differently from partition");
  const bool uniform = raw.weights.empty();
  if (!uniform && static_cast<int>(raw.weights.size()) != T)
    throw std::invalid_argument("RawDraws: weight lists sized differently from partition");

  ScenarioSet set;
  set.draw_count = raw.s;
  set.m = raw.m;
  set.partition = raw.partition;
  set.scenarios.resize(static_cast<std::size_t>(T));
  set.satisfied_mass.assign(static_cast<std::size_t>(T), 0.0);

  for (int t = 0; t < T; ++t) {
    const auto& draws = raw.draws[static_cast<std::size_t>(t)];
    if (uniform && static_cast<int>(draws.size()) != raw.s)
      throw std::invalid_argument("RawDraws: uniform weighting requires s draws per block");
    if (!uniform) {
      if (raw.weights[static_cast<std::size_t>(t)].size() != draws.size())
        throw std::invalid_argument("RawDraws: weights not parallel to draws");
      KahanSum total;
      for (double w : raw.weights[static_cast<std::size_t>(t)]) {
        if (w < 0.0) throw ParseError("negative draw weight");
        total.add(w);
      }
      if (std::abs(total.sum - 1.0) > kMassTol)
        throw ParseError("draw weights sum to " + fmt17(total.sum) + ", expected 1");
    }

    const auto& block = set.partition.blocks[static_cast<std::size_t>(t)];
    // lexicographic map keeps the merged scenario order canonical
    std::map<std::vector<int>, double> merged;
    long long zero_count = 0;
    double zero_mass = 0.0;
    for (std::size_t d = 0; d < draws.size(); ++d) {
      std::vector<int> rows = draws[d];
      std::sort(rows.begin(), rows.end());
      rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
      for (int k : rows)
        if (!std::binary_search(block.begin(), block.end(), k))
          throw std::invalid_argument("draw row outside its block");
      if (uniform) {
        if (rows.empty())
          ++zero_count;
        else
          merged[std::move(rows)] += 1.0;  // occurrence count, divided by s below
      } else {
        double w = raw.weights[static_cast<std::size_t>(t)][d];
        if (rows.empty())
          zero_mass += w;
        else
          merged[std::move(rows)] += w;
      }
    }
    auto& out = set.scenarios[static_cast<std::size_t>(t)];
    for (auto& [rows, value] : merged) {
      double p = uniform ? value / static_cast<double>(raw.s) : value;
      if (p > 0.0) out.push_back(Scenario{rows, p});
    }
    set.satisfied_mass[static_cast<std::size_t>(t)] =
        uniform ? static_cast<double>(zero_count) / static_cast<double>(raw.s) : zero_mass;
  }
  set.validate();
  return set;
}

IndexMaps build_indices(const ScenarioSet& set) {
  IndexMaps maps;
  maps.scen_of_row.resize(static_cast<std::size_t>(set.m));
  maps.row_mass.assign(static_cast<std::size_t>(set.m), 0.0);
  maps.rows_of_scen.resize(static_cast<std::size_t>(set.block_count()));
  for (int t = 0; t < set.block_count(); ++t) {
    const auto& scens = set.scenarios[static_cast<std::size_t>(t)];
    auto& rows_of = maps.rows_of_scen[static_cast<std::size_t>(t)];
    rows_of.resize(scens.size());
    for (std::size_t i = 0; i < scens.size(); ++i) {
      rows_of[i] = scens[i].rows;
      for (int k : scens[i].rows) {
        maps.scen_of_row[static_cast<std::size_t>(k)].push_back(static_cast<int>(i));
        maps.row_mass[static_cast<std::size_t>(k)] += scens[i].prob;
      }
    }
  }
  return maps;
}

void write_scenario_file(const ScenarioSet& set, std::ostream& out) {
  set.validate();
  const int T = set.block_count();
  // the format stores consecutive blocks only
  int expect = 0;
  for (const auto& b : set.partition.blocks) {
    for (int k : b) {
      if (k != expect) throw std::invalid_argument("scenario file requires consecutive blocks");
      ++expect;
    }
  }
  out << set.draw_count << ' ' << set.m << ' ' << T << '\n';
  for (int t = 0; t < T; ++t)
    out << (t ? " " : "") << set.partition.blocks[static_cast<std::size_t>(t)].size();
  out << '\n';
  for (int t = 0; t < T; ++t) {
    for (const Scenario& sc : set.scenarios[static_cast<std::size_t>(t)]) {
      out << fmt17(sc.prob) << ' ' << sc.rows.size();
      for (int k : sc.rows) out << ' ' << (k + 1);
      out << '\n';
    }
  }
  for (int t = 0; t < T; ++t) out << fmt17(set.satisfied_mass[static_cast<std::size_t>(t)]) << '\n';
}

ScenarioSet read_scenario_file(std::istream& in) {
  std::string line;
  auto next_line = [&](std::vector<std::string>& toks) -> bool {
    toks.clear();
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) return true;
    }
    return false;
  };
  auto to_int = [](const std::string& s, const char* what) -> long long {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError(std::string("bad integer '") + s + "' for " + what);
    return v;
  };
  auto to_real = [](const std::string& s, const char* what) -> double {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("bad real '") + s + "' for " + what);
    }
  };

  std::vector<std::string> toks;
  if (!next_line(toks) || toks.size() != 3) throw ParseError("scenario file: expected header 's m T'");
  ScenarioSet set;
  set.draw_count = static_cast<int>(to_int(toks[0], "s"));
  set.m = static_cast<int>(to_int(toks[1], "m"));
  int T = static_cast<int>(to_int(toks[2], "T"));
  if (set.draw_count < 1 || set.m < 1 || T < 1) throw ParseError("scenario file: header values must be positive");

  if (!next_line(toks) || static_cast<int>(toks.size()) != T)
    throw ParseError("scenario file: expected " + std::to_string(T) + " block sizes");
  std::vector<int> sizes;
  int total = 0;
  for (const auto& s : toks) {
    int sz = static_cast<int>(to_int(s, "block size"));
    if (sz < 1) throw ParseError("scenario file: block sizes must be positive");
    sizes.push_back(sz);
    total += sz;
  }
  if (total != set.m) throw ParseError("scenario file: block sizes do not sum to m");
  int start = 0;
  for (int sz : sizes) {
    std::vector<int> block(static_cast<std::size_t>(sz));
    for (int k = 0; k < sz; ++k) block[static_cast<std::size_t>(k)] = start + k;
    set.partition.blocks.push_back(std::move(block));
    start += sz;
  }
  set.scenarios.resize(static_cast<std::size_t>(T));
  set.satisfied_mass.assign(static_cast<std::size_t>(T), 0.0);

  std::vector<double> mass_lines;
  while (next_line(toks)) {
    if (toks.size() == 1) {
      mass_lines.push_back(to_real(toks[0], "satisfied_mass"));
      if (static_cast<int>(mass_lines.size()) == T) break;
      continue;
    }
    if (!mass_lines.empty()) throw ParseError("scenario file: scenario line after satisfied_mass lines");
    if (toks.size() < 3) throw ParseError("scenario file: scenario line needs p, count, rows");
    Scenario sc;
    sc.prob = to_real(toks[0], "probability");
    if (!(sc.prob > 0.0)) throw ParseError("scenario file: probability must be > 0");
    long long count = to_int(toks[1], "row count");
    if (count < 1 || static_cast<std::size_t>(count) + 2 != toks.size())
      throw ParseError("scenario file: row count does not match line length");
    for (long long i = 0; i < count; ++i) {
      long long r = to_int(toks[static_cast<std::size_t>(2 + i)], "row index");
      if (r < 1 || r > set.m) throw ParseError("scenario file: row index out of range");
      sc.rows.push_back(static_cast<int>(r - 1));
    }
    int t = set.partition.block_of_row(sc.rows.front());
    set.scenarios[static_cast<std::size_t>(t)].push_back(std::move(sc));
  }
  if (static_cast<int>(mass_lines.size()) != T)
    throw ParseError("scenario file: expected " + std::to_string(T) + " satisfied_mass lines");
  for (int t = 0; t < T; ++t) set.satisfied_mass[static_cast<std::size_t>(t)] = mass_lines[static_cast<std::size_t>(t)];
  try {
    set.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("scenario file: ") + e.what());
  }
  return set;
}

ScenarioSet load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  return read_scenario_file(in);
}

void save_scenario_file(const ScenarioSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write scenario file: " + path);
  write_scenario_file(set, out);
}

}  // namespace pscp
