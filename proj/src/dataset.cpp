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

#include "dpadmm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string_view>

#include "dpadmm/errors.hpp"

namespace dpadmm {

void Dataset::Validate() const {
  if (features.rows() != labels.size()) {
    throw InvalidArgument("Dataset: " + std::to_string(features.rows()) +
                          " feature rows but " +
                          std::to_string(labels.size()) + " labels");
  }
  for (int m : labels) {
    if (m != 1 && m != -1) throw InvalidArgument("Dataset: label not +/-1");
  }
}

Dataset Dataset::SelectRows(std::span<const std::size_t> rows) const {
  Dataset out{features.SelectRows(rows), {}, name};
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) out.labels.push_back(labels[r]);
  return out;
}

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

// Splits on whitespace; views point into `line`.
std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !IsSpace(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseDouble(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool ParseIndex(std::string_view s, long long& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Dataset ParseLibsvm(std::istream& in, std::optional<std::size_t> expected_dim,
                    std::string name) {
  std::vector<std::size_t> row_start{0};
  std::vector<std::size_t> col_index;
  std::vector<double> values;
  std::vector<double> raw_labels;
  std::vector<std::size_t> label_lines;
  std::size_t max_index = 0;  // 1-based; 0 means none seen

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    const auto tokens = Tokenize(view);
    if (tokens.empty()) continue;

    double label = 0.0;
    if (!ParseDouble(tokens[0], label)) {
      throw ParseError(line_no, "bad label '" + std::string(tokens[0]) + "'");
    }
    long long prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected index:value, got '" +
                                      std::string(tok) + "'");
      }
      long long index = 0;
      double value = 0.0;
      if (!ParseIndex(tok.substr(0, colon), index)) {
        throw ParseError(line_no, "bad index in '" + std::string(tok) + "'");
      }
      if (!ParseDouble(tok.substr(colon + 1), value)) {
        throw ParseError(line_no, "bad value in '" + std::string(tok) + "'");
      }
      if (index <= 0) {
        throw ParseError(line_no, "index must be >= 1, got " +
                                      std::to_string(index));
      }
      if (index <= prev) {
        throw ParseError(line_no, "indices not increasing at " +
                                      std::to_string(index));
      }
      if (expected_dim && static_cast<std::size_t>(index) > *expected_dim) {
        throw ParseError(line_no, "index " + std::to_string(index) +
                                      " exceeds dimension " +
                                      std::to_string(*expected_dim));
      }
      prev = index;
      max_index = std::max(max_index, static_cast<std::size_t>(index));
      if (value != 0.0) {
        col_index.push_back(static_cast<std::size_t>(index - 1));
        values.push_back(value);
      }
    }
    raw_labels.push_back(label);
    label_lines.push_back(line_no);
    row_start.push_back(values.size());
  }

  const std::set<double> distinct(raw_labels.begin(), raw_labels.end());
  if (distinct.size() > 2) {
    throw InvalidArgument("labels are not binary: " +
                          std::to_string(distinct.size()) +
                          " distinct values");
  }
  const bool signed_labels = std::all_of(
      distinct.begin(), distinct.end(), [](double v) { return v == 1.0 || v == -1.0; });
  if (!signed_labels && distinct.size() == 1) {
    throw ParseError(label_lines.front(),
                     "single label value cannot be mapped to +/-1");
  }
  std::vector<int> labels;
  labels.reserve(raw_labels.size());
  const double low = distinct.empty() ? 0.0 : *distinct.begin();
  for (double v : raw_labels) {
    if (signed_labels) {
      labels.push_back(v > 0 ? 1 : -1);
    } else {
      labels.push_back(v == low ? -1 : 1);
    }
  }

  const std::size_t dim = expected_dim.value_or(max_index);
  const std::size_t n = labels.size();
  return Dataset{SparseMatrix(n, dim, std::move(row_start),
                              std::move(col_index), std::move(values)),
                 std::move(labels), std::move(name)};
}

Dataset ParseLibsvmFile(const std::filesystem::path& path,
                        std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return ParseLibsvm(in, expected_dim, path.filename().string());
}

void WriteLibsvm(std::ostream& out, const Dataset& d) {
  char buf[64];
  for (std::size_t r = 0; r < d.size(); ++r) {
    out << (d.labels[r] > 0 ? "+1" : "-1");
    const auto idx = d.features.row_indices(r);
    const auto val = d.features.row_values(r);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", val[k]);
      out << ' ' << (idx[k] + 1) << ':' << buf;
    }
    out << '\n';
  }
}

Dataset NormalizeRows(const Dataset& d) {
  const auto& f = d.features;
  std::vector<double> values = f.values();
  for (std::size_t r = 0; r < f.rows(); ++r) {
    const double norm = Norm2(f.row_values(r));
    if (norm > 1.0) {
      for (std::size_t k = f.row_start()[r]; k < f.row_start()[r + 1]; ++k) {
        values[k] /= norm;
      }
    }
  }
  return Dataset{SparseMatrix(f.rows(), f.cols(), f.row_start(), f.col_index(),
                              std::move(values)),
                 d.labels, d.name};
}

std::pair<Dataset, Dataset> Split(const Dataset& d, double test_fraction,
                                  std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InvalidArgument("Split: test_fraction must be in (0, 1)");
  }
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Fisher-Yates with our own index draw: std::shuffle's sequence is
  // library-specific.
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  const auto n_train = std::min<std::size_t>(
      n, static_cast<std::size_t>(
             std::ceil(static_cast<double>(n) * (1.0 - test_fraction) - 1e-9)));
  const std::span<const std::size_t> all(order);
  return {d.SelectRows(all.first(n_train)), d.SelectRows(all.subspan(n_train))};
}

}  // namespace dpadmm
