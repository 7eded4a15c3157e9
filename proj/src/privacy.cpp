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

#include "dpadmm/privacy.hpp"

#include <cmath>
#include <vector>

#include "dpadmm/errors.hpp"

namespace dpadmm {

namespace {

bool InOpenUnit(double v) { return v > 0.0 && v < 1.0; }

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void PrivacyBudget::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be > 0");
  }
  if (!InOpenUnit(delta)) throw InvalidArgument("delta must be in (0, 1)");
  if (!InOpenUnit(mu)) throw InvalidArgument("mu must be in (0, 1)");
}

double ClassicGaussianSigma(double sensitivity, double epsilon, double delta) {
  if (!(sensitivity > 0.0)) throw InvalidArgument("sensitivity must be > 0");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!InOpenUnit(delta)) throw InvalidArgument("delta must be in (0, 1)");
  return std::sqrt(2.0 * std::log(1.25 / delta)) * sensitivity / epsilon;
}

RdpGuarantee RdpOfGaussian(const NoiseSpec& spec, double alpha) {
  if (!(alpha > 1.0)) throw InvalidArgument("RDP order must be > 1");
  if (!(spec.sigma > 0.0)) throw InvalidArgument("sigma must be > 0");
  const double d = spec.sensitivity;
  return {alpha, alpha * d * d / (2.0 * spec.sigma * spec.sigma)};
}

RdpGuarantee ComposeRdp(std::span<const RdpGuarantee> guarantees,
                        double alpha) {
  if (!(alpha > 1.0)) throw InvalidArgument("RDP order must be > 1");
  double beta = 0.0;
  for (const auto& g : guarantees) {
    if (g.alpha != alpha) {
      throw InvalidArgument("ComposeRdp: mixed RDP orders");
    }
    beta += g.beta;
  }
  return {alpha, beta};
}

double RdpToDp(const RdpGuarantee& g, double delta) {
  if (!InOpenUnit(delta)) throw InvalidArgument("delta must be in (0, 1)");
  if (!(g.alpha > 1.0)) throw InvalidArgument("RDP order must be > 1");
  return g.beta + std::log(1.0 / delta) / (g.alpha - 1.0);
}

double RdpOrder(const PrivacyBudget& budget) {
  budget.Validate();
  return std::log(1.0 / budget.delta) / ((1.0 - budget.mu) * budget.epsilon) +
         1.0;
}

NoiseSpec CalibrateNoise(const PrivacyBudget& budget, std::size_t iterations,
                         std::size_t samples, double clip, std::size_t dim) {
  budget.Validate();
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (!(clip > 0.0) || !std::isfinite(clip)) {
    throw InvalidArgument("clip must be finite and > 0");
  }
  const double alpha = RdpOrder(budget);
  const double n = static_cast<double>(samples);
  const double variance = clip * clip * alpha * static_cast<double>(iterations) /
                          (2.0 * n * n * budget.epsilon * budget.mu);
  return {std::sqrt(variance), dim, clip / n};
}

double VerifyBudget(const NoiseSpec& spec, const PrivacyBudget& budget,
                    std::size_t iterations, std::size_t samples, double clip) {
  const double alpha = RdpOrder(budget);
  const NoiseSpec per_step{spec.sigma, spec.dim,
                           clip / static_cast<double>(samples)};
  const RdpGuarantee step = RdpOfGaussian(per_step, alpha);
  const std::vector<RdpGuarantee> ledger(iterations, step);
  return RdpToDp(ComposeRdp(ledger, alpha), budget.delta);
}

NoiseSource::NoiseSource(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

NoiseSource NoiseSource::Stream(std::uint64_t seed, std::uint64_t stream) {
  return NoiseSource(SplitMix64(seed ^ SplitMix64(stream)));
}

Vector NoiseSource::Sample(const NoiseSpec& spec) {
  Vector out(spec.dim);
  for (auto& e : out) e = spec.sigma * normal_(engine_);
  return out;
}

}  // namespace dpadmm
