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

#include "dpadmm/experiment.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "dpadmm/errors.hpp"

namespace dpadmm {

namespace {

constexpr double kClip = 1.0;
constexpr double kTestFraction = 0.2;
constexpr std::size_t kReferenceFactor = 10;

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ParseReal(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* b = value.data();
  const char* e = b + value.size();
  if (!value.empty() && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e || !std::isfinite(out)) {
    throw ConfigError(key, "not a real number: '" + value + "'");
  }
  return out;
}

std::uint64_t ParseCount(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key, "not a non-negative integer: '" + value + "'");
  }
  return out;
}

std::string Real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Shortest round-trip form, for labels and file names.
std::string RealShort(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::uint64_t Fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Clamped to [min, max]; rounding in the sum can otherwise step outside.
double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double e : v) s += e;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return std::clamp(s / static_cast<double>(v.size()), *lo, *hi);
}

// Sample standard deviation; 0 for fewer than two values.
double StdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double s = 0.0;
  for (double e : v) s += (e - m) * (e - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kAdmm:
      return "admm";
    case Algorithm::kAccAdmm:
      return "acc_admm";
    case Algorithm::kDpAdmm:
      return "dp_admm";
    case Algorithm::kDpAccAdmm:
      return "dp_acc_admm";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kAdmm, Algorithm::kAccAdmm,
                      Algorithm::kDpAdmm, Algorithm::kDpAccAdmm}) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

bool IsPrivate(Algorithm a) {
  return a == Algorithm::kDpAdmm || a == Algorithm::kDpAccAdmm;
}

bool IsAccelerated(Algorithm a) {
  return a == Algorithm::kAccAdmm || a == Algorithm::kDpAccAdmm;
}

void ExperimentConfig::Validate() const {
  if (dataset_path.empty()) throw ConfigError("dataset_path", "is required");
  if (!(lambda >= 0.0)) throw ConfigError("lambda", "must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("delta", "must be in (0, 1)");
  }
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("mu", "must be in (0, 1)");
  if (!(rho > 0.0)) throw ConfigError("rho", "must be > 0");
  if (eta && !(*eta > 0.0)) throw ConfigError("eta", "must be > 0");
  if (gamma && !(*gamma > 0.0)) throw ConfigError("gamma_mode", "must be > 0");
  if (iterations < 1) throw ConfigError("iterations", "must be >= 1");
  if (epsilon_grid.empty()) throw ConfigError("epsilon_grid", "is empty");
  for (double e : epsilon_grid) {
    if (!(e > 0.0)) throw ConfigError("epsilon_grid", "entries must be > 0");
  }
  if (algorithms.empty()) throw ConfigError("algorithms", "is empty");
  if (repeats < 1) throw ConfigError("repeats", "must be >= 1");
  if (!(graph_threshold > 0.0 && graph_threshold < 1.0)) {
    throw ConfigError("graph_threshold", "must be in (0, 1)");
  }
  if (output_dir.empty()) throw ConfigError("output_dir", "is empty");
}

ExperimentConfig ParseConfig(std::istream& in,
                             const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  auto resolve = [&base_dir](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string body = Trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no),
                        "expected key = value");
    }
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    const std::string value = Trim(std::string_view(body).substr(eq + 1));

    if (key == "dataset_path") {
      cfg.dataset_path = resolve(value);
    } else if (key == "test_path") {
      if (!value.empty()) cfg.test_path = resolve(value);
    } else if (key == "lambda") {
      cfg.lambda = ParseReal(key, value);
    } else if (key == "delta") {
      cfg.delta = ParseReal(key, value);
    } else if (key == "mu") {
      cfg.mu = ParseReal(key, value);
    } else if (key == "rho") {
      cfg.rho = ParseReal(key, value);
    } else if (key == "eta") {
      cfg.eta = ParseReal(key, value);
    } else if (key == "gamma_mode") {
      if (value == "auto") {
        cfg.gamma.reset();
      } else {
        cfg.gamma = ParseReal(key, value);
      }
    } else if (key == "iterations") {
      cfg.iterations = ParseCount(key, value);
    } else if (key == "epsilon_grid") {
      cfg.epsilon_grid.clear();
      for (const auto& item : SplitList(value)) {
        cfg.epsilon_grid.push_back(ParseReal(key, item));
      }
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& item : SplitList(value)) {
        auto a = ParseAlgorithm(item);
        if (!a) throw ConfigError(key, "unknown algorithm '" + item + "'");
        if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), *a) ==
            cfg.algorithms.end()) {
          cfg.algorithms.push_back(*a);
        }
      }
    } else if (key == "repeats") {
      cfg.repeats = ParseCount(key, value);
    } else if (key == "base_seed") {
      cfg.base_seed = ParseCount(key, value);
    } else if (key == "graph_threshold") {
      cfg.graph_threshold = ParseReal(key, value);
    } else if (key == "output_dir") {
      cfg.output_dir = resolve(value);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  return ParseConfig(in, path.parent_path());
}

std::uint64_t RunSeed(std::uint64_t base_seed, Algorithm a, double epsilon,
                      std::size_t repeat) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = Fnv1a(AlgorithmName(a), h);
  h = Fnv1a("|", h);
  const auto bits = std::bit_cast<std::uint64_t>(epsilon);
  for (int i = 0; i < 8; ++i) {
    const char byte = static_cast<char>((bits >> (8 * i)) & 0xff);
    h = Fnv1a(std::string_view(&byte, 1), h);
  }
  h = Fnv1a("|", h);
  h = Fnv1a(std::to_string(repeat), h);
  return base_seed ^ h;
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "iter,objective,constraint_violation,elapsed_seconds,r_value\n";
  for (const auto& r : trace) {
    out << r.iter << ',' << Real17(r.objective) << ','
        << Real17(r.constraint_violation) << ',' << Real17(r.elapsed_seconds)
        << ',';
    if (r.r_value) out << Real17(*r.r_value);
    out << '\n';
  }
}

void EmitTraceCsv(const std::vector<TraceRecord>& trace,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  WriteTraceCsv(out, trace);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<TraceRecord> ReadTraceCsv(std::istream& in) {
  std::vector<TraceRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5) {
      throw InvalidArgument("trace CSV: expected 5 fields");
    }
    TraceRecord r;
    r.iter = ParseCount("iter", fields[0]);
    r.objective = ParseReal("objective", fields[1]);
    r.constraint_violation = ParseReal("constraint_violation", fields[2]);
    r.elapsed_seconds = ParseReal("elapsed_seconds", fields[3]);
    if (!fields[4].empty()) r.r_value = ParseReal("r_value", fields[4]);
    out.push_back(r);
  }
  return out;
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "algorithm,epsilon,repeats,obj_mean,obj_std,acc_mean,acc_std,r_mean\n";
  for (const auto& r : rows) {
    out << AlgorithmName(r.algorithm) << ','
        << (r.epsilon ? RealShort(*r.epsilon) : "") << ',' << r.repeats << ','
        << Real17(r.obj_mean) << ',' << Real17(r.obj_std) << ','
        << Real17(r.acc_mean) << ',' << Real17(r.acc_std) << ','
        << Real17(r.r_mean) << '\n';
  }
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  ExperimentReport report;

  Dataset train = ParseLibsvmFile(config.dataset_path);
  Dataset test;
  if (config.test_path) {
    test = ParseLibsvmFile(*config.test_path);
    const std::size_t dim = std::max(train.dim(), test.dim());
    train.features = train.features.WithCols(dim);
    test.features = test.features.WithCols(dim);
  } else {
    auto [tr, te] = Split(train, kTestFraction, config.base_seed);
    train = std::move(tr);
    test = std::move(te);
  }
  train = NormalizeRows(train);
  test = NormalizeRows(test);
  if (train.size() == 0) throw InvalidArgument("training set is empty");
  if (test.size() == 0) throw InvalidArgument("test set is empty");

  const SparseMatrix W = BuildGraphW(train, config.graph_threshold);
  report.graph_edges = W.rows();
  report.train_size = train.size();
  report.test_size = test.size();
  report.dim = train.dim();

  ErmProblem problem{train, BuildFusedLassoConstraints(W), config.lambda,
                     kClip};
  problem.Validate();

  const double eta = config.eta.value_or(1.0 / SmoothnessConstant(train));
  const std::size_t T = config.iterations;
  const std::size_t eval_period = std::max<std::size_t>(1, T / 100);

  SolverConfig ref_cfg;
  ref_cfg.eta = eta;
  ref_cfg.rho = config.rho;
  ref_cfg.gamma = config.gamma;
  ref_cfg.iterations = kReferenceFactor * T;
  ref_cfg.accelerate = true;
  const SolveResult ref = Solve(problem, ref_cfg, 0);
  report.reference_objective = Objective(ref.x, ref.y, problem);
  const ReferencePoint reference{ref.x, ref.y};
  for (const auto& w : ref.warnings) report.warnings.push_back(w);

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + config.output_dir.string() +
                             ": " + ec.message());
  }

  for (Algorithm algo : config.algorithms) {
    std::vector<std::optional<double>> eps_cells;
    if (IsPrivate(algo)) {
      for (double e : config.epsilon_grid) eps_cells.push_back(e);
    } else {
      eps_cells.push_back(std::nullopt);
    }
    for (const auto& eps : eps_cells) {
      std::vector<double> objs, accs, rs;
      for (std::size_t rep = 0; rep < config.repeats; ++rep) {
        RunOutcome run;
        run.algorithm = algo;
        run.epsilon = eps;
        run.repeat = rep;
        run.seed = RunSeed(config.base_seed, algo, eps.value_or(0.0), rep);
        SolverConfig cfg;
        cfg.eta = eta;
        cfg.rho = config.rho;
        cfg.gamma = config.gamma;
        cfg.iterations = T;
        cfg.seed = run.seed;
        cfg.accelerate = IsAccelerated(algo);
        if (eps) {
          const PrivacyBudget budget{*eps, config.delta, config.mu};
          cfg.noise = CalibrateNoise(budget, T, train.size(), kClip,
                                     train.dim());
          run.sigma = cfg.noise->sigma;
        }
        const SolveResult res = Solve(problem, cfg, eval_period, reference);
        run.final_objective = Objective(res.x, res.y, problem);
        run.final_accuracy = Accuracy(res.x, test);
        run.r_value =
            RCriterion(res.x_avg, res.y_avg, reference.x, reference.y, problem);

        std::string file(AlgorithmName(algo));
        if (eps) file += "_eps" + RealShort(*eps);
        file += "_r" + std::to_string(rep) + ".csv";
        run.trace_path = config.output_dir / file;
        EmitTraceCsv(res.trace, run.trace_path);

        objs.push_back(run.final_objective);
        accs.push_back(run.final_accuracy);
        rs.push_back(run.r_value);
        report.runs.push_back(std::move(run));
      }
      report.summary.push_back(SummaryRow{algo, eps, config.repeats, Mean(objs),
                                          StdDev(objs), Mean(accs),
                                          StdDev(accs), Mean(rs)});
    }
  }

  const auto summary_path = config.output_dir / "summary.csv";
  std::ofstream out(summary_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + summary_path.string());
  WriteSummaryCsv(out, report.summary);
  return report;
}

}  // namespace dpadmm
