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

// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dpadmm/dataset.hpp"
#include "dpadmm/experiment.hpp"
#include "dpadmm/linalg.hpp"
#include "dpadmm/models.hpp"
#include "dpadmm/privacy.hpp"
#include "dpadmm/solver.hpp"
#include "synthetic.hpp"

namespace dpadmm {
namespace {

using Clock = std::chrono::steady_clock;
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Suite {
 public:
  void Run(const char* id, const char* title, double budget_seconds,
           const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < budget_seconds;
    const bool pass = out.ok && in_time;
    std::printf("[%s] %s %s: %s (%.3fs, limit %gs%s)\n", pass ? "PASS" : "FAIL",
                id, title, out.detail.c_str(), secs, budget_seconds,
                in_time ? "" : ", over time");
    std::fflush(stdout);
    if (!pass) ++failures_;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string Fmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

double RelErr(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

Vector RandomVector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (auto& e : v) e = normal(rng);
  return v;
}

constexpr double kRefDelta = 1e-3;
constexpr double kRefMu = 0.5;

SolverConfig NonPrivate(std::size_t T, bool accelerate) {
  SolverConfig cfg;
  cfg.eta = testing::kReferenceEta;
  cfg.rho = 1.0;
  cfg.iterations = T;
  cfg.accelerate = accelerate;
  return cfg;
}

Outcome Calibration() {
  const PrivacyBudget budget{1.0, kRefDelta, kRefMu};
  // Timed separately from the oracle; best of a few calls.
  double best = 1e9;
  NoiseSpec spec{};
  for (int i = 0; i < 5; ++i) {
    const auto t0 = Clock::now();
    spec = CalibrateNoise(budget, 100, 1000, 1.0, 10);
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  const double alpha = RdpOrder(budget);
  const HighPrecision eps = 1, delta = HighPrecision(1) / 1000, mu = HighPrecision(1) / 2;
  const HighPrecision hp_alpha = log(1 / delta) / ((1 - mu) * eps) + 1;
  const HighPrecision hp_var = hp_alpha * 100 / (2 * HighPrecision(1000) * 1000 * eps * mu);
  const double ea = RelErr(alpha, static_cast<double>(hp_alpha));
  const double ev = RelErr(spec.sigma * spec.sigma, static_cast<double>(hp_var));
  return {ea <= 1e-9 && ev <= 1e-9 && best < 1e-3,
          Fmt("alpha=%.10g sigma_sq=%.10g rel_err=(%.2e, %.2e) call=%.2eus", alpha,
              spec.sigma * spec.sigma, ea, ev, best * 1e6)};
}

Outcome AccountantRoundTrip() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const PrivacyBudget b{std::pow(10.0, -2 + 3 * unit(rng)),
                          std::pow(10.0, -8 + 7 * unit(rng)), 0.05 + 0.9 * unit(rng)};
    const std::size_t T = 1 + static_cast<std::size_t>(unit(rng) * 5000);
    const std::size_t n = 10 + static_cast<std::size_t>(unit(rng) * 1e5);
    const double c = 0.1 + 10 * unit(rng);
    const NoiseSpec spec = CalibrateNoise(b, T, n, c, 5);
    worst = std::max(worst, RelErr(VerifyBudget(spec, b, T, n, c), b.epsilon));
  }
  return {worst <= 1e-9, Fmt("50 tuples, worst rel err %.2e", worst)};
}

Outcome NoiseStatistics() {
  NoiseSource src(2024);
  const Vector draws = src.Sample(NoiseSpec{2.0, 100000, 1.0});
  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= draws.size();
  double var = 0.0;
  for (double v : draws) var += (v - mean) * (v - mean);
  var /= draws.size() - 1;
  return {std::abs(var - 4.0) <= 0.02 * 4.0 && std::abs(mean) <= 0.02,
          Fmt("mean=%.4f var=%.4f", mean, var)};
}

Outcome GradientOracle() {
  const Dataset d = testing::MakeSyntheticData(50, 10, 102);
  std::mt19937_64 rng(102);
  const double h = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = RandomVector(10, rng);
    Vector diff = LogisticGradClipped(x, d, kNoClip);
    Vector fd(10);
    for (std::size_t j = 0; j < 10; ++j) {
      Vector xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      fd[j] = (LogisticLoss(xp, d) - LogisticLoss(xm, d)) / (2 * h);
    }
    Axpy(-1.0, fd, diff);
    worst = std::max(worst, Norm2(diff) / Norm2(fd));
  }
  return {worst <= 1e-6, Fmt("20 points, worst rel err %.2e", worst)};
}

Outcome ProxOracle() {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> zd(-5, 5), kd(0, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double z = zd(rng), kappa = kd(rng);
    auto obj = [&](double y) {
      return kappa * std::abs(y) + 0.5 * (y - z) * (y - z);
    };
    // Nested grid refinement around the coarse minimizer.
    double lo = -std::abs(z) - 1, hi = std::abs(z) + 1;
    for (int level = 0; level < 6; ++level) {
      double best = lo, best_val = obj(lo);
      for (int s = 1; s <= 2000; ++s) {
        const double y = lo + (hi - lo) * s / 2000;
        if (obj(y) < best_val) best_val = obj(y), best = y;
      }
      const double w = (hi - lo) / 2000;
      lo = best - w;
      hi = best + w;
    }
    worst = std::max(worst, std::abs(SoftThreshold(Vector{z}, kappa)[0] - 0.5 * (lo + hi)));
  }
  return {worst <= 1e-6, Fmt("100 pairs, worst abs err %.2e", worst)};
}

Outcome DualInit() {
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<std::size_t> cols_d(2, 20), extra_d(0, 20);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t cols = cols_d(rng), extra = extra_d(rng);
    const SparseMatrix A =
        VStack(testing::RandomSparse(extra, cols, 0.3, rng), SparseMatrix::Identity(cols));
    const double rho = 0.1 + trial * 0.2;
    const Vector g = RandomVector(cols, rng, 1.0 + trial);
    Vector check = MatvecTranspose(A, InitDualFromGradient(A, rho, g));
    for (std::size_t j = 0; j < cols; ++j) check[j] = rho * check[j] + g[j];
    worst = std::max(worst, Norm2(check) / std::max(1.0, Norm2(g)));
  }
  return {worst <= 1e-8, Fmt("20 matrices, worst scaled residual %.2e", worst)};
}

Outcome GMetric() {
  std::mt19937_64 rng(105);
  std::uniform_int_distribution<std::size_t> cols_d(2, 30), extra_d(0, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 1e300, worst_dense = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d1 = cols_d(rng);
    Dataset data = testing::MakeSyntheticData(60, d1, 200 + trial);
    const auto cs = BuildFusedLassoConstraints(
        VStack(BuildGraphW(data), testing::RandomSparse(extra_d(rng), d1, 0.2, rng)));
    const double eta = 0.1 + 4 * unit(rng), rho = 0.1 + 3 * unit(rng);
    const double gamma = AutoGamma(cs, eta, rho);
    const double shift = gamma + eta * rho * cs.spectral_sq;
    // Complement: (shift) I - (gamma I - eta rho A^T A) = (shift - gamma) I + eta rho A^T A.
    const double top = PowerIteration(
        [&](std::span<const double> v) {
          Vector out = MatvecTranspose(cs.A, Matvec(cs.A, v));
          for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] = (shift - gamma) * v[j] + eta * rho * out[j];
          }
          return out;
        },
        d1);
    worst = std::min(worst, shift - top);

    const auto dense = cs.A.ToDense();
    Eigen::MatrixXd a(cs.A.rows(), d1);
    for (std::size_t r = 0; r < cs.A.rows(); ++r) {
      for (std::size_t c = 0; c < d1; ++c) a(r, c) = dense[r * d1 + c];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        gamma * Eigen::MatrixXd::Identity(d1, d1) - eta * rho * a.transpose() * a);
    worst_dense = std::min(worst_dense, eig.eigenvalues().minCoeff());
  }
  return {worst >= 1 - 1e-6 && worst_dense >= 1 - 1e-6,
          Fmt("min eigenvalue %.9f (dense check %.9f)", worst, worst_dense)};
}

std::vector<double> Flatten(const ErmProblem& p, const SolverConfig& cfg) {
  std::vector<double> out;
  Solve(p, cfg, 0, std::nullopt, [&](const SolverState& s) {
    out.insert(out.end(), s.x.begin(), s.x.end());
    out.insert(out.end(), s.y.begin(), s.y.end());
    out.insert(out.end(), s.u.begin(), s.u.end());
  });
  return out;
}

Outcome ZeroNoiseEquivalence() {
  const auto inst = testing::MakeReferenceInstance();
  std::string detail;
  bool ok = true;
  for (bool acc : {false, true}) {
    const SolverConfig plain = NonPrivate(500, acc);
    SolverConfig dp = plain;
    dp.noise = NoiseSpec{0.0, inst.problem.data.dim(), 1.0 / inst.problem.data.size()};
    dp.seed = 99;
    const auto a = Flatten(inst.problem, plain);
    const auto b = Flatten(inst.problem, dp);
    const bool same = a.size() == b.size() &&
                      std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
    ok = ok && same;
    detail += Fmt("%s %s; ", acc ? "acc_admm" : "admm", same ? "bit-identical" : "DIFFERS");
  }
  return {ok, detail + "500 iterations"};
}

double FinalObjective(const ErmProblem& p, const SolveResult& r) {
  return Objective(r.x, r.y, p);
}

Outcome NonPrivateConvergence() {
  const auto inst = testing::MakeReferenceInstance();
  const auto ref = Solve(inst.problem, NonPrivate(50000, false), 0);
  const auto run = Solve(inst.problem, NonPrivate(5000, false), 0);
  const double gap = std::abs(FinalObjective(inst.problem, run) -
                              FinalObjective(inst.problem, ref));
  const double viol = run.trace.back().constraint_violation;
  return {gap <= 1e-4 && viol <= 1e-3,
          Fmt("objective gap %.2e, constraint violation %.2e", gap, viol)};
}

// First iteration whose objective is within tol of target, or 0 if never.
std::size_t HittingTime(const ErmProblem& p, bool accelerate, double target,
                        double tol, std::size_t max_iters) {
  const auto r = Solve(p, NonPrivate(max_iters, accelerate), 1);
  for (const auto& rec : r.trace) {
    if (std::abs(rec.objective - target) <= tol) return rec.iter;
  }
  return 0;
}

Outcome Acceleration() {
  bool never_worse = true;
  int strictly = 0;
  std::string detail;
  for (std::uint64_t k = 0; k < 5; ++k) {
    const auto inst = testing::MakeReferenceInstance(testing::kReferenceSeed + 17 * k);
    const auto ref = Solve(inst.problem, NonPrivate(50000, false), 0);
    const double target = FinalObjective(inst.problem, ref);
    const std::size_t plain = HittingTime(inst.problem, false, target, 1e-3, 20000);
    const std::size_t acc = HittingTime(inst.problem, true, target, 1e-3, 20000);
    if (acc == 0 || (plain != 0 && acc > plain)) never_worse = false;
    if (acc != 0 && (plain == 0 || acc < plain)) ++strictly;
    detail += Fmt("%zu/%zu ", acc, plain);
  }
  return {never_worse && strictly >= 4,
          Fmt("iterations to gap 1e-3 (acc/plain): %sstrictly fewer in %d of 5",
              detail.c_str(), strictly)};
}

Outcome PrivacyUtilityTrend() {
  const auto inst = testing::MakeReferenceInstance();
  const ErmProblem& p = inst.problem;
  const std::vector<double> grid{0.01, 0.1, 1.0};
  const std::size_t T = 100, repeats = 10;
  bool ok = true;
  std::string detail;
  for (Algorithm algo : {Algorithm::kDpAdmm, Algorithm::kDpAccAdmm}) {
    std::vector<double> obj, acc;
    for (double eps : grid) {
      const NoiseSpec spec = CalibrateNoise(PrivacyBudget{eps, kRefDelta, kRefMu}, T,
                                            p.data.size(), p.clip, p.data.dim());
      double o = 0, a = 0;
      for (std::size_t r = 0; r < repeats; ++r) {
        SolverConfig cfg = NonPrivate(T, IsAccelerated(algo));
        cfg.noise = spec;
        cfg.seed = RunSeed(testing::kReferenceSeed, algo, eps, r);
        const auto res = Solve(p, cfg, 0);
        o += FinalObjective(p, res);
        a += Accuracy(res.x, inst.test);
      }
      obj.push_back(o / repeats);
      acc.push_back(a / repeats);
    }
    const bool obj_dec = obj[0] > obj[1] && obj[1] > obj[2];
    const bool acc_inc = acc[0] <= acc[1] && acc[1] <= acc[2];
    ok = ok && obj_dec && acc_inc;
    detail += Fmt("%s obj %.4g/%.4g/%.4g acc %.4f/%.4f/%.4f; ",
                  std::string(AlgorithmName(algo)).c_str(), obj[0], obj[1], obj[2],
                  acc[0], acc[1], acc[2]);
  }
  return {ok, detail + "eps 0.01/0.1/1"};
}

Outcome UtilityShape() {
  const auto inst = testing::MakeReferenceInstance();
  const auto ref = Solve(inst.problem, NonPrivate(50000, false), 0);
  const ReferencePoint point{ref.x, ref.y};
  std::vector<double> r;
  for (std::size_t T : {50, 100, 200, 400}) {
    const auto run = Solve(inst.problem, NonPrivate(T, false), T, point);
    r.push_back(*run.trace.back().r_value);
  }
  const bool ok = r[1] <= r[0] && r[2] <= r[1] && r[3] <= r[2];
  return {ok, Fmt("R at T=50/100/200/400: %.4g/%.4g/%.4g/%.4g", r[0], r[1], r[2], r[3])};
}

Outcome DatasetFixture() {
  const Dataset d = ParseLibsvmFile(DPADMM_TEST_DATA_DIR "/fixture100.libsvm");
  const auto pos = std::count(d.labels.begin(), d.labels.end(), 1);
  const auto neg = std::count(d.labels.begin(), d.labels.end(), -1);
  bool ok = d.size() == 100 && d.dim() == 20 && pos == 50 && neg == 50;
  std::string detail = Fmt("fixture n=%zu d=%zu +1:%ld -1:%ld", d.size(), d.dim(),
                           static_cast<long>(pos), static_cast<long>(neg));
  if (const char* a9a = std::getenv("DPADMM_A9A_PATH")) {
    const Dataset big = ParseLibsvmFile(a9a);
    ok = ok && big.size() == 32561 && big.dim() == 123;
    detail += Fmt("; a9a n=%zu d=%zu", big.size(), big.dim());
  } else {
    detail += "; a9a not supplied (DPADMM_A9A_PATH unset)";
  }
  return {ok, detail};
}

}  // namespace
}  // namespace dpadmm

int main() {
  using namespace dpadmm;
  Suite suite;
  suite.Run("AC01", "calibration exactness", 1.0, Calibration);
  suite.Run("AC02", "accountant round trip", 1.0, AccountantRoundTrip);
  suite.Run("AC03", "noise statistics", 1.0, NoiseStatistics);
  suite.Run("AC04", "gradient oracle", 1.0, GradientOracle);
  suite.Run("AC05", "prox oracle", 1.0, ProxOracle);
  suite.Run("AC06", "dual-init identity", 1.0, DualInit);
  suite.Run("AC07", "G-metric safety", 5.0, GMetric);
  suite.Run("AC08", "sigma=0 equivalence", 5.0, ZeroNoiseEquivalence);
  suite.Run("AC09", "non-private convergence", 30.0, NonPrivateConvergence);
  suite.Run("AC10", "acceleration", 60.0, Acceleration);
  suite.Run("AC11", "privacy-utility trend", 300.0, PrivacyUtilityTrend);
  suite.Run("AC12", "utility shape", 60.0, UtilityShape);
  suite.Run("AC13", "dataset fixture", 1.0, DatasetFixture);
  std::printf("%d of 13 criteria failed\n", suite.failures());
  return suite.failures() == 0 ? 0 : 1;
}
