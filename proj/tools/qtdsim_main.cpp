// Copyright 2026 The qtdsim Authors
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

// qtdsim command-line driver.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "qtdsim/blockenc.hpp"
#include "qtdsim/commands.hpp"
#include "qtdsim/selftest.hpp"

namespace {

using namespace qtdsim;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::Config, "cannot write output file " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-encoding emulator for time-dependent Hamiltonian simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  bool reference = false;
  bool timing = false;
  std::string steps_list;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string mutation;

  CLI::App* simulate = app.add_subcommand("simulate", "run the configured propagator");
  simulate->add_option("--config", config_path, "run configuration (JSON)")->required();
  simulate->add_flag("--reference", reference, "report the error against the reference propagator");
  simulate->add_flag("--timing", timing, "include wall time (makes output nondeterministic)");
  simulate->add_option("--out", out_path, "output JSON path")->required();

  CLI::App* converge = app.add_subcommand("converge", "error against step count, with fitted order");
  converge->add_option("--config", config_path, "run configuration (JSON)")->required();
  converge->add_option("--steps", steps_list, "comma-separated step counts, e.g. 8,16,32,64")->required();
  converge->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);
  converge->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* resources = app.add_subcommand("resources", "measured against predicted cost");
  resources->add_option("--config", config_path, "run configuration (JSON)")->required();
  resources->add_option("--out", out_path, "output JSON path")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant checks");
  selftest->add_option("--mutate", mutation, "inject a known fault")
      ->check(CLI::IsMember({"alpha-bookkeeping"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kConfigError;
  }

  try {
    if (*simulate) {
      write_file(out_path, cli::simulate(load_config(config_path), reference, timing));
    } else if (*converge) {
      write_file(out_path, cli::converge(load_config(config_path), cli::parse_steps_list(steps_list), jobs));
    } else if (*resources) {
      write_file(out_path, cli::resources(load_config(config_path)));
    } else if (*selftest) {
      blockenc::fault::set_alpha_bookkeeping(mutation == "alpha-bookkeeping");
      const selftest::Report report = selftest::run();
      std::cout << report.format();
      return report.failures() == 0 ? cli::kOk : cli::kSelftestFailed;
    }
  } catch (const Error& e) {
    std::cerr << "qtdsim: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return cli::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "qtdsim: internal error: " << e.what() << "\n";
    return cli::kNumericalFailure;
  }
  return cli::kOk;
}
