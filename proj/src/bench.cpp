// Copyright 2026 The qnetpart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnetpart/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "qnetpart/circuit.hpp"
#include "qnetpart/cost.hpp"
#include "qnetpart/hypergraph.hpp"
#include "qnetpart/network.hpp"
#include "qnetpart/qasm.hpp"

namespace qnetpart {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs `fn`, timing it into `slot` and tagging any exception with `phase`.
template <typename Fn>
auto phase(const char* name, double& slot, Fn&& fn) {
  const auto start = Clock::now();
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      slot += ms_since(start);
    } else {
      auto value = fn();
      slot += ms_since(start);
      return value;
    }
  } catch (const PhaseError&) {
    throw;
  } catch (const std::exception& e) {
    throw PhaseError(name, e.what());
  }
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(6) << value;
  return out.str();
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::Direct ? "direct" : "coarse"; }

Mode parse_mode(const std::string& text) {
  if (text == "direct") return Mode::Direct;
  if (text == "coarse") return Mode::Coarse;
  throw std::invalid_argument("mode must be 'direct' or 'coarse'");
}

CpParams parse_cp(const std::string& text) {
  CpParams p;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> p.num_qubits >> c1 >> p.depth >> c2 >> p.fraction) || c1 != ',' || c2 != ',' ||
      !in.eof()) {
    throw std::invalid_argument("--cp expects n,d,f but got '" + text + "'");
  }
  return p;
}

void validate(const RunConfig& config) {
  if (config.circuit_path.empty() == !config.cp.has_value()) {
    throw std::invalid_argument("give exactly one of a circuit file and CP-fraction parameters");
  }
  if (config.capacity < 0) throw std::invalid_argument("capacity must be non-negative");
  if (config.reps < 1) throw std::invalid_argument("repetitions must be positive");
  if (config.fm_passes < 1) throw std::invalid_argument("FM passes must be positive");
  if (config.mode == Mode::Coarse) {
    if (config.chi < 2) throw std::invalid_argument("coarse mode needs chi >= 2");
    if (topology_size(config.topology) <= config.chi) {
      throw std::invalid_argument("coarse mode needs more QPUs than chi");
    }
  }
}

RunReport run(const RunConfig& config, std::uint64_t seed) {
  const auto start = Clock::now();
  RunReport report;
  report.config = config;
  report.seed = seed;
  phase("config", report.times.parse, [&] { validate(config); });

  const Circuit circuit = phase("parse", report.times.parse, [&] {
    if (config.cp) {
      return generate_cp_fraction(config.cp->num_qubits, config.cp->depth, config.cp->fraction,
                                  seed);
    }
    return load_qasm_file(config.circuit_path);
  });
  report.num_qubits = circuit.num_qubits();
  report.depth = circuit.depth();
  report.two_qubit_gates = static_cast<int>(circuit.two_qubit_gate_count());

  const TemporalHypergraph h =
      phase("build", report.times.build, [&] { return build_temporal_hypergraph(circuit); });

  const NetworkGraph network = phase("network", report.times.build, [&] {
    const int n_qpus = topology_size(config.topology);
    const int capacity = config.capacity > 0
                             ? config.capacity
                             : (circuit.num_qubits() + n_qpus - 1) / n_qpus;
    NetworkGraph g = parse_topology(config.topology, capacity, seed);
    if (g.total_capacity() < circuit.num_qubits()) {
      throw std::invalid_argument("insufficient capacity: " + std::to_string(circuit.num_qubits()) +
                                  " qubits on " + std::to_string(g.total_capacity()) + " slots");
    }
    return g;
  });
  report.num_qpus = network.size();
  report.capacity = network.capacity(0);

  MultilevelOptions ml;
  ml.fm.max_passes = config.fm_passes;
  if (config.mode == Mode::Direct) {
    const CostEngine engine(network, config.table_threshold);
    PartitionResult result = phase("partition", report.times.partition,
                                   [&] { return multilevel_partition(h, engine, {}, ml); });
    report.assignment = std::move(result.assignment);
    report.temporal_levels = std::move(result.trace);
  } else {
    const CoarseningHierarchy hierarchy = phase("coarsen", report.times.coarsen, [&] {
      return coarsen_network_recursive(network, config.chi, config.matching);
    });
    RecursiveOptions options;
    options.multilevel = ml;
    options.threads = config.threads;
    options.precompute_threshold = config.table_threshold;
    RecursiveResult result = phase("partition", report.times.partition,
                                   [&] { return recursive_partition(h, hierarchy, options); });
    report.assignment = std::move(result.assignment);
    report.network_levels = std::move(result.levels);
  }

  phase("stitch", report.times.stitch, [&] {
    if (!report.assignment.complete()) throw std::logic_error("assignment is not total");
    check_feasible(h, report.assignment, network);
    const CostEngine engine(network, config.table_threshold);
    report.edge_costs.reserve(h.num_edges());
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      report.edge_costs.push_back(
          edge_cost(h, static_cast<EdgeId>(e), report.assignment, engine));
    }
    report.cost = std::accumulate(report.edge_costs.begin(), report.edge_costs.end(), 0L);
    const long check = total_cost_uncached(h, report.assignment, network);
    if (check != report.cost) {
      throw std::logic_error("cost " + std::to_string(report.cost) +
                             " disagrees with recomputation " + std::to_string(check));
    }
    const long claimed = config.mode == Mode::Direct ? report.temporal_levels.back().refined_cost
                                                     : report.network_levels.back().cost;
    if (claimed != report.cost) {
      throw std::logic_error("partitioner reported cost " + std::to_string(claimed) +
                             " but the assignment costs " + std::to_string(report.cost));
    }
  });
  report.times.total = ms_since(start);
  return report;
}

std::vector<RunReport> run_reps(const RunConfig& config) {
  std::vector<RunReport> reports;
  for (int i = 0; i < config.reps; ++i) reports.push_back(run(config, config.seed + i));
  return reports;
}

nlohmann::json to_json(const RunReport& report, bool timing) {
  using nlohmann::json;
  const RunConfig& c = report.config;
  json config = {
      {"topology", c.topology},
      {"capacity", c.capacity},
      {"mode", to_string(c.mode)},
      {"chi", c.chi},
      {"seed", c.seed},
      {"reps", c.reps},
      {"matching", to_string(c.matching)},
      {"table_threshold", c.table_threshold},
      {"fm_passes", c.fm_passes},
  };
  if (c.cp) {
    config["cp"] = {{"num_qubits", c.cp->num_qubits},
                    {"depth", c.cp->depth},
                    {"fraction", c.cp->fraction}};
  } else {
    config["circuit"] = c.circuit_path;
  }
  json levels = json::array();
  for (const LevelTrace& t : report.temporal_levels) {
    levels.push_back({{"kind", "temporal"},
                      {"level", t.level},
                      {"slots", t.slots},
                      {"projected_cost", t.projected_cost},
                      {"refined_cost", t.refined_cost}});
  }
  for (const RecursionLevel& l : report.network_levels) {
    json entry = {{"kind", "network"},
                  {"level", l.level},
                  {"subproblems", l.subproblems},
                  {"cost", l.cost}};
    if (timing) entry["wall_ms"] = l.wall_ms;
    levels.push_back(entry);
  }
  json out = {
      {"schema", kSchemaVersion},
      {"version", kVersion},
      {"config", config},
      {"seed", report.seed},
      {"num_qubits", report.num_qubits},
      {"depth", report.depth},
      {"two_qubit_gates", report.two_qubit_gates},
      {"num_qpus", report.num_qpus},
      {"qpu_capacity", report.capacity},
      {"matching", to_string(c.matching)},
      {"cost", report.cost},
      {"levels", levels},
      {"assignment", report.assignment.qpu},
      {"edge_costs", report.edge_costs},
  };
  if (timing) {
    out["timing_ms"] = {{"parse", report.times.parse},
                        {"build", report.times.build},
                        {"coarsen", report.times.coarsen},
                        {"partition", report.times.partition},
                        {"stitch", report.times.stitch},
                        {"total", report.times.total}};
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
  std::vector<SweepRow> rows;
  for (const std::string& topology : config.topologies) {
    for (int n : config.num_qubits) {
      for (double f : config.fractions) {
        RunConfig rc;
        rc.cp = CpParams{n, n, f};
        rc.topology = topology;
        rc.capacity = config.capacity;
        rc.mode = config.mode;
        rc.chi = config.chi;
        rc.seed = config.base_seed;
        rc.reps = config.seeds;
        rc.matching = config.matching;
        rc.table_threshold = config.table_threshold;
        rc.threads = config.threads;

        SweepRow row;
        row.topology = topology;
        row.num_qubits = n;
        row.fraction = f;
        std::ostringstream key;
        key << topology << '|' << n << '|' << format_double(f) << '|' << config.seeds << '|'
            << config.base_seed << '|' << to_string(config.mode) << '|' << config.chi << '|'
            << config.capacity << '|' << to_string(config.matching) << '|' << kVersion;
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a(key.str())));
        row.hash = hex;

        std::vector<double> costs;
        std::vector<double> times;
        for (const RunReport& r : run_reps(rc)) {
          row.costs.push_back(r.cost);
          costs.push_back(static_cast<double>(r.cost));
          times.push_back(r.times.total);
        }
        row.mean = std::accumulate(costs.begin(), costs.end(), 0.0) / costs.size();
        row.median = median(costs);
        row.median_ms = median(times);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows, bool append) {
  std::set<std::string> present;
  bool has_header = false;
  if (append) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      const std::string first = line.substr(0, line.find(','));
      if (first == "config_hash") {
        has_header = true;
      } else if (!first.empty()) {
        present.insert(first);
      }
    }
  }
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if (!has_header) {
    out << "config_hash,topology,num_qubits,fraction,seeds,cost_mean,cost_median,median_ms\n";
  }
  for (const SweepRow& row : rows) {
    if (!present.insert(row.hash).second) continue;
    out << row.hash << ',' << row.topology << ',' << row.num_qubits << ','
        << format_double(row.fraction) << ',' << row.costs.size() << ','
        << format_double(row.mean) << ',' << format_double(row.median) << ','
        << format_double(row.median_ms) << '\n';
  }
}

}  // namespace qnetpart
