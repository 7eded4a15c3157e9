// Copyright 2026 The dpadmm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dpadmm: experiment driver.
//
//   dpadmm run <config>
//   dpadmm calibrate --epsilon E --delta D --mu M --iters T --samples N --clip C
//   dpadmm parse-check <libsvm-file>
//
// Exit codes: 0 success, 1 config/validation failure, 2 runtime failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dpadmm/dataset.hpp"
#include "dpadmm/errors.hpp"
#include "dpadmm/experiment.hpp"
#include "dpadmm/privacy.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int RunCommand(const std::string& config_path) {
  const dpadmm::ExperimentConfig cfg = dpadmm::LoadConfig(config_path);
  const dpadmm::ExperimentReport report = dpadmm::RunExperiment(cfg);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::printf("train=%zu test=%zu dim=%zu graph_edges=%zu runs=%zu\n",
              report.train_size, report.test_size, report.dim,
              report.graph_edges, report.runs.size());
  std::printf("reference_objective=%.17g\n", report.reference_objective);
  std::printf("%-12s %-10s %-7s %-14s %-12s %-10s %-10s %-12s\n", "algorithm",
              "epsilon", "repeats", "obj_mean", "obj_std", "acc_mean",
              "acc_std", "r_mean");
  for (const auto& row : report.summary) {
    const std::string eps = row.epsilon ? std::to_string(*row.epsilon) : "-";
    std::printf("%-12s %-10s %-7zu %-14.8g %-12.4g %-10.4f %-10.4f %-12.4g\n",
                std::string(dpadmm::AlgorithmName(row.algorithm)).c_str(),
                eps.c_str(), row.repeats, row.obj_mean, row.obj_std,
                row.acc_mean, row.acc_std, row.r_mean);
  }
  std::printf("wrote %s\n", (cfg.output_dir / "summary.csv").c_str());
  return kExitOk;
}

int CalibrateCommand(double epsilon, double delta, double mu,
                     std::size_t iters, std::size_t samples, double clip) {
  const dpadmm::PrivacyBudget budget{epsilon, delta, mu};
  const double alpha = dpadmm::RdpOrder(budget);
  const dpadmm::NoiseSpec spec =
      dpadmm::CalibrateNoise(budget, iters, samples, clip, 0);
  const double audit =
      dpadmm::VerifyBudget(spec, budget, iters, samples, clip);
  std::printf("alpha=%.17g\n", alpha);
  std::printf("sigma=%.17g\n", spec.sigma);
  std::printf("sigma_sq=%.17g\n", spec.sigma * spec.sigma);
  std::printf("sensitivity=%.17g\n", spec.sensitivity);
  std::printf("verified_epsilon=%.17g\n", audit);
  return kExitOk;
}

int ParseCheckCommand(const std::string& path) {
  const dpadmm::Dataset d = dpadmm::ParseLibsvmFile(path);
  std::map<int, std::size_t> histogram;
  for (int m : d.labels) ++histogram[m];
  std::printf("n=%zu\n", d.size());
  std::printf("d=%zu\n", d.dim());
  std::printf("nnz=%zu\n", d.features.nnz());
  for (const auto& [label, count] : histogram) {
    std::printf("label %+d: %zu\n", label, count);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private ADMM experiment driver"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment grid");
  run->add_option("config", config_path, "Config file")->required();

  double epsilon = 0, delta = 0, mu = 0, clip = 0;
  std::size_t iters = 0, samples = 0;
  auto* calibrate =
      app.add_subcommand("calibrate", "Print noise sigma and RDP order");
  calibrate->add_option("--epsilon", epsilon, "Target epsilon")->required();
  calibrate->add_option("--delta", delta, "Target delta")->required();
  calibrate->add_option("--mu", mu, "Budget split in (0, 1)")->required();
  calibrate->add_option("--iters", iters, "Iterations T")->required();
  calibrate->add_option("--samples", samples, "Training samples n")
      ->required();
  calibrate->add_option("--clip", clip, "Per-sample gradient bound")
      ->required();

  std::string data_path;
  auto* parse_check =
      app.add_subcommand("parse-check", "Summarize a LIBSVM file");
  parse_check->add_option("path", data_path, "LIBSVM file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return RunCommand(config_path);
    if (*calibrate) {
      return CalibrateCommand(epsilon, delta, mu, iters, samples, clip);
    }
    if (*parse_check) return ParseCheckCommand(data_path);
  } catch (const dpadmm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dpadmm::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
