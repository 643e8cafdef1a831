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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnetpart/assignment.hpp"
#include "qnetpart/coarsening.hpp"
#include "qnetpart/multilevel.hpp"
#include "qnetpart/recursive.hpp"

namespace qnetpart {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Pipeline failure tagged with the phase that raised it.
class PhaseError : public std::runtime_error {
 public:
  PhaseError(std::string phase, const std::string& message)
      : std::runtime_error(phase + ": " + message), phase_(std::move(phase)) {}
  const std::string& phase() const { return phase_; }

 private:
  std::string phase_;
};

enum class Mode { Direct, Coarse };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct CpParams {
  int num_qubits = 0;
  int depth = 0;
  double fraction = 0;
};

/// Parses "n,d,f".
CpParams parse_cp(const std::string& text);

struct RunConfig {
  std::string circuit_path;   // OpenQASM input, or
  std::optional<CpParams> cp;  // a generated CP-fraction circuit
  std::string topology = "linear:4";
  int capacity = 0;  // per QPU; 0 picks ceil(n / N)
  Mode mode = Mode::Direct;
  int chi = 4;
  std::uint64_t seed = 0;
  int reps = 1;
  MatchingMode matching = MatchingMode::Exact;
  int table_threshold = CostEngine::kDefaultPrecomputeThreshold;
  int threads = 1;
  int fm_passes = 10;
};

/// Throws std::invalid_argument on inconsistent settings.
void validate(const RunConfig& config);

struct PhaseTimes {
  double parse = 0;
  double build = 0;
  double coarsen = 0;
  double partition = 0;
  double stitch = 0;
  double total = 0;
};

struct RunReport {
  RunConfig config;
  std::uint64_t seed = 0;
  int num_qubits = 0;
  int depth = 0;
  int two_qubit_gates = 0;
  int num_qpus = 0;
  int capacity = 0;
  long cost = 0;
  std::vector<int> edge_costs;
  Assignment assignment;
  std::vector<LevelTrace> temporal_levels;   // direct mode
  std::vector<RecursionLevel> network_levels;  // coarse mode
  PhaseTimes times;  // milliseconds
};

/// Runs the full pipeline once with `seed`, validates the assignment and
/// checks the cost against an independent recomputation.
RunReport run(const RunConfig& config, std::uint64_t seed);
/// Repetition i uses seed `config.seed + i`.
std::vector<RunReport> run_reps(const RunConfig& config);

/// JSON record of one run. Timing fields are left out when `timing` is false.
nlohmann::json to_json(const RunReport& report, bool timing = true);

struct SweepConfig {
  std::vector<int> num_qubits{16, 32};
  std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::string> topologies{"linear:4"};
  int seeds = 5;
  std::uint64_t base_seed = 0;
  Mode mode = Mode::Direct;
  int chi = 4;
  int capacity = 0;
  MatchingMode matching = MatchingMode::Exact;
  int table_threshold = CostEngine::kDefaultPrecomputeThreshold;
  int threads = 1;
};

struct SweepRow {
  std::string hash;
  std::string topology;
  int num_qubits = 0;
  double fraction = 0;
  std::vector<long> costs;
  double mean = 0;
  double median = 0;
  double median_ms = 0;
};

/// Square circuits (depth = n) over every (topology, n, f) combination.
std::vector<SweepRow> sweep(const SweepConfig& config);

/// Writes CSV rows keyed by config hash. With `append`, rows whose hash is
/// already in the file are skipped.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows, bool append);

double median(std::vector<double> values);

}  // namespace qnetpart
