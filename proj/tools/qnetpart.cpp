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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnetpart/bench.hpp"

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream one(item);
    T value;
    if (!(one >> value)) throw std::invalid_argument("bad list entry '" + item + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qnetpart;
  CLI::App app{"Partition quantum circuits over networks of QPUs"};
  app.require_subcommand(1);

  RunConfig config;
  std::string cp;
  std::string mode = "direct";
  std::string matching = "exact";
  std::string out_path;
  bool timing = true;
  auto* part = app.add_subcommand("partition", "Partition one circuit and write a JSON report");
  auto* circuit_opt = part->add_option("--circuit", config.circuit_path, "OpenQASM 2 file");
  auto* cp_opt = part->add_option("--cp", cp, "CP-fraction circuit as n,d,f");
  circuit_opt->excludes(cp_opt);
  cp_opt->excludes(circuit_opt);
  part->add_option("--network", config.topology, "linear:N | grid:RxC | random:N:p | complete:N")
      ->required();
  part->add_option("--capacity", config.capacity, "Data qubits per QPU (0: ceil(n/N))");
  part->add_option("--mode", mode, "direct | coarse");
  part->add_option("--chi", config.chi, "Network coarsening factor");
  part->add_option("--seed", config.seed, "Base seed");
  part->add_option("--reps", config.reps, "Repetitions with seeds seed, seed+1, ...");
  part->add_option("--out", out_path, "JSON Lines report (stdout when omitted)");
  part->add_option("--matching", matching, "exact | greedy");
  part->add_option("--table-threshold", config.table_threshold,
                   "Largest network with a precomputed cost table");
  part->add_option("--threads", config.threads, "Threads for sibling sub-problems (0: all)");
  part->add_option("--passes", config.fm_passes, "Maximum FM passes per level");
  part->add_flag("!--no-timing", timing, "Leave timing fields out of the report");

  SweepConfig sweep_config;
  std::string ns = "16,32";
  std::string fs = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string topologies = "linear:4";
  std::string sweep_mode = "direct";
  std::string csv_path;
  bool append = false;
  auto* sw = app.add_subcommand("sweep", "Square CP-fraction circuits over a grid of settings");
  sw->add_option("--qubits", ns, "Comma-separated circuit sizes");
  sw->add_option("--fractions", fs, "Comma-separated CP fractions");
  sw->add_option("--networks", topologies, "Comma-separated topologies");
  sw->add_option("--seeds", sweep_config.seeds, "Seeds per setting");
  sw->add_option("--seed", sweep_config.base_seed, "Base seed");
  sw->add_option("--mode", sweep_mode, "direct | coarse");
  sw->add_option("--chi", sweep_config.chi, "Network coarsening factor");
  sw->add_option("--capacity", sweep_config.capacity, "Data qubits per QPU (0: ceil(n/N))");
  sw->add_option("--out", csv_path, "CSV output")->required();
  sw->add_flag("--append", append, "Append, skipping settings already in the file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*part) {
      if (!cp.empty()) config.cp = parse_cp(cp);
      config.mode = parse_mode(mode);
      config.matching = parse_matching_mode(matching);
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw PhaseError("output", "cannot write '" + out_path + "'");
      }
      std::ostream& out = out_path.empty() ? std::cout : file;
      for (int i = 0; i < config.reps; ++i) {
        const RunReport report = run(config, config.seed + i);
        out << to_json(report, timing).dump() << '\n';
        std::cerr << "seed " << report.seed << ": cost " << report.cost << " in "
                  << report.times.total << " ms\n";
      }
    } else {
      sweep_config.num_qubits = parse_list<int>(ns);
      sweep_config.fractions = parse_list<double>(fs);
      sweep_config.topologies = parse_list<std::string>(topologies);
      sweep_config.mode = parse_mode(sweep_mode);
      write_sweep_csv(csv_path, sweep(sweep_config), append);
    }
  } catch (const PhaseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [config]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
