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

#ifndef DPADMM_DATASET_HPP_
#define DPADMM_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpadmm/linalg.hpp"

namespace dpadmm {

// Binary classification samples: one feature row per sample, labels +/-1.
struct Dataset {
  SparseMatrix features;
  std::vector<int> labels;
  std::string name;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols(); }

  // Throws InvalidArgument when labels are not +/-1 or counts disagree.
  void Validate() const;
  Dataset SelectRows(std::span<const std::size_t> rows) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Reads LIBSVM text: "<label> <index>:<value> ...", 1-based ascending
// indices, '#' comments. Labels already in {-1,+1} are kept; any other
// two-valued labeling maps the smaller value to -1. Dimension is expected_dim
// when given, otherwise 1 + the largest index seen.
Dataset ParseLibsvm(std::istream& in,
                    std::optional<std::size_t> expected_dim = std::nullopt,
                    std::string name = "");
Dataset ParseLibsvmFile(const std::filesystem::path& path,
                        std::optional<std::size_t> expected_dim = std::nullopt);

// Values rendered with 17 significant digits so a re-parse is exact.
void WriteLibsvm(std::ostream& out, const Dataset& d);

// Rows with Euclidean norm > 1 are scaled onto the unit sphere.
Dataset NormalizeRows(const Dataset& d);

// Seeded shuffle, then the first ceil(n * (1 - test_fraction)) samples go to
// train and the rest to test.
std::pair<Dataset, Dataset> Split(const Dataset& d, double test_fraction,
                                  std::uint64_t seed);

}  // namespace dpadmm

#endif  // DPADMM_DATASET_HPP_
