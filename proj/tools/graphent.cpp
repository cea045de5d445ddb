// Copyright 2026 The graphent Authors
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


// graphent: entanglement certification for graph-state experiments.
//
//   graphent analyze data/table1.json
//   graphent simulate --graph path:4 --noise z=0.02 --shots 100000 --seed 7 --out rec.json
//   graphent robustness state.json --partitions all

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "graphent/cli.hpp"

namespace cli = graphent::cli;

int main(int argc, char** argv) {
  CLI::App app{"Entanglement certification for graph-state experiments"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  cli::AnalyzeArgs analyze;
  std::string analyze_parts;
  auto* a = app.add_subcommand("analyze", "Reconstruct, bound and (optionally) run the SDP on a record");
  a->add_option("file", analyze.path, "Measurement record JSON")->required();
  a->add_option("--trials", analyze.trials, "Monte-Carlo trials for error propagation")
      ->capture_default_str();
  a->add_option("--seed", analyze.seed, "Random seed")->capture_default_str();
  a->add_option("--partitions", analyze_parts,
                "Run the PPT robustness SDP: 'all' or lists like '1;1,2'");

  cli::SimulateArgs sim;
  std::string sim_out;
  auto* s = app.add_subcommand("simulate", "Sample a synthetic measurement record");
  s->add_option("--graph", sim.graph, "path:N, path:4,1,2,..., cycle:N, star:N, edges:N:1-2,..., or FILE.json")
      ->capture_default_str();
  s->add_option("--frame", sim.frame, "identity, c4 (paper4) or lc6 (paper6)")->capture_default_str();
  s->add_option("--noise", sim.noise, "z=EPS[:EPS...][,w=W]");
  s->add_option("--shots", sim.shots, "Shots per stabilizer")->capture_default_str();
  s->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  s->add_option("--measure", sim.measure, "all or generators")->capture_default_str();
  s->add_option("--out", sim_out, "Record output file");

  cli::RobustnessArgs rob;
  auto* r = app.add_subcommand("robustness", "PPT robustness of a reconstructed or given state");
  r->add_option("file", rob.path, "Record (full group), p-vector or density-matrix JSON")->required();
  r->add_option("--partitions", rob.partitions, "'all' or lists like '1;1,2'")->capture_default_str();

  for (auto* sub : {a, s, r}) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kBadInput;
  }

  return cli::guarded(
      [&] {
        const auto fmt = cli::parse_format(format);
        if (*a) {
          analyze.format = fmt;
          if (!analyze_parts.empty()) analyze.partitions = analyze_parts;
          return cli::cmd_analyze(analyze, std::cout, std::cerr);
        }
        if (*s) {
          sim.format = fmt;
          if (!sim_out.empty()) sim.out_path = sim_out;
          return cli::cmd_simulate(sim, std::cout, std::cerr);
        }
        rob.format = fmt;
        return cli::cmd_robustness(rob, std::cout, std::cerr);
      },
      std::cerr);
}
