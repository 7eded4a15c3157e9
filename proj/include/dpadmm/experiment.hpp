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

#ifndef DPADMM_EXPERIMENT_HPP_
#define DPADMM_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpadmm/solver.hpp"

namespace dpadmm {

enum class Algorithm { kAdmm, kAccAdmm, kDpAdmm, kDpAccAdmm };

std::string_view AlgorithmName(Algorithm a);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
bool IsPrivate(Algorithm a);
bool IsAccelerated(Algorithm a);

// Flat "key = value" file, '#' comments, lists comma-separated.
struct ExperimentConfig {
  std::filesystem::path dataset_path;
  std::optional<std::filesystem::path> test_path;
  double lambda = 1e-5;
  double delta = 1e-3;
  double mu = 0.5;
  double rho = 1.0;
  std::optional<double> eta;    // unset: 1/L_f of the training data
  std::optional<double> gamma;  // unset: auto
  std::size_t iterations = 500;
  std::vector<double> epsilon_grid{0.01, 0.1, 1.0};
  std::vector<Algorithm> algorithms{Algorithm::kAdmm, Algorithm::kAccAdmm,
                                    Algorithm::kDpAdmm,
                                    Algorithm::kDpAccAdmm};
  std::size_t repeats = 1;
  std::uint64_t base_seed = 0;
  double graph_threshold = kDefaultGraphThreshold;
  std::filesystem::path output_dir = "dpadmm_out";

  // Throws ConfigError naming the first bad key.
  void Validate() const;
};

// Relative paths in the file resolve against `base_dir`.
ExperimentConfig ParseConfig(std::istream& in,
                             const std::filesystem::path& base_dir = {});
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Stable per-run seed: base_seed xor FNV-1a(algorithm, epsilon bits, repeat).
std::uint64_t RunSeed(std::uint64_t base_seed, Algorithm a, double epsilon,
                      std::size_t repeat);

// Header iter,objective,constraint_violation,elapsed_seconds,r_value; reals
// with 17 significant digits, absent r_value left empty.
void WriteTraceCsv(std::ostream& out, const std::vector<TraceRecord>& trace);
void EmitTraceCsv(const std::vector<TraceRecord>& trace,
                  const std::filesystem::path& path);
std::vector<TraceRecord> ReadTraceCsv(std::istream& in);

struct RunOutcome {
  Algorithm algorithm;
  std::optional<double> epsilon;  // unset for non-private runs
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  std::optional<double> sigma;
  double final_objective = 0.0;
  double final_accuracy = 0.0;
  double r_value = 0.0;
  std::filesystem::path trace_path;
};

struct SummaryRow {
  Algorithm algorithm;
  std::optional<double> epsilon;
  std::size_t repeats = 0;
  double obj_mean = 0.0;
  double obj_std = 0.0;
  double acc_mean = 0.0;
  double acc_std = 0.0;
  double r_mean = 0.0;
};

struct ExperimentReport {
  std::vector<RunOutcome> runs;
  std::vector<SummaryRow> summary;
  double reference_objective = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t dim = 0;
  std::size_t graph_edges = 0;
  std::vector<std::string> warnings;
};

// Header algorithm,epsilon,repeats,obj_mean,obj_std,acc_mean,acc_std,r_mean.
void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Loads data, builds A = [W; I], solves a long non-private AccADMM reference
// (10x iterations), then runs every (algorithm, epsilon, repeat) cell and
// writes one trace CSV per run plus summary.csv into output_dir.
ExperimentReport RunExperiment(const ExperimentConfig& config);

}  // namespace dpadmm

#endif  // DPADMM_EXPERIMENT_HPP_
