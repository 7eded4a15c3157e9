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

// Renyi-DP accounting for the Gaussian gradient-perturbation mechanism.
//
// A full-gradient iteration releases grad f(x) + N(0, sigma^2 I). With every
// per-sample gradient bounded by `clip`, the averaged gradient has l2
// sensitivity clip/n. One release is (alpha, alpha*Delta^2/(2 sigma^2))-RDP,
// T releases compose additively, and (alpha, beta)-RDP converts to
// (beta + ln(1/delta)/(alpha-1), delta)-DP.
//
// CalibrateNoise splits the target epsilon as mu*eps for the composed RDP
// mass and (1-mu)*eps for the conversion term, which fixes
//   alpha   = ln(1/delta) / ((1-mu) eps) + 1
//   sigma^2 = clip^2 alpha T / (2 n^2 eps mu).
// VerifyBudget runs the chain forward and must land back on eps.
//
// All logarithms are natural.

#ifndef DPADMM_PRIVACY_HPP_
#define DPADMM_PRIVACY_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "dpadmm/linalg.hpp"

namespace dpadmm {

struct PrivacyBudget {
  double epsilon;
  double delta;
  double mu;

  // Throws InvalidArgument unless eps > 0, 0 < delta < 1, 0 < mu < 1.
  void Validate() const;
};

struct RdpGuarantee {
  double alpha;
  double beta;
};

struct NoiseSpec {
  double sigma;
  std::size_t dim;
  double sensitivity;
};

double ClassicGaussianSigma(double sensitivity, double epsilon, double delta);

RdpGuarantee RdpOfGaussian(const NoiseSpec& spec, double alpha);

// Sum of betas at a common order. An empty list yields (alpha, 0).
RdpGuarantee ComposeRdp(std::span<const RdpGuarantee> guarantees,
                        double alpha);

double RdpToDp(const RdpGuarantee& g, double delta);

// The RDP order fixed by a budget: ln(1/delta)/((1-mu) eps) + 1.
double RdpOrder(const PrivacyBudget& budget);

NoiseSpec CalibrateNoise(const PrivacyBudget& budget, std::size_t iterations,
                         std::size_t samples, double clip, std::size_t dim);

// Epsilon actually spent by T Gaussian releases at spec.sigma, sensitivity
// clip/samples, order RdpOrder(budget), converted at budget.delta.
double VerifyBudget(const NoiseSpec& spec, const PrivacyBudget& budget,
                    std::size_t iterations, std::size_t samples, double clip);

// Seeded Gaussian source. One instance per solver run.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed);

  // Independent stream derived from (seed, stream).
  static NoiseSource Stream(std::uint64_t seed, std::uint64_t stream);

  // spec.dim draws from N(0, spec.sigma^2).
  Vector Sample(const NoiseSpec& spec);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dpadmm

#endif  // DPADMM_PRIVACY_HPP_
