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

#ifndef DPADMM_ERRORS_HPP_
#define DPADMM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpadmm {

// Rejected input: dimension mismatch, out-of-range parameter.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// LIBSVM parse failure. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Iterative solver did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) +
                           ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

// A NaN/Inf appeared in a solver iterate.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::size_t iteration, const std::string& quantity)
      : std::runtime_error("non-finite " + quantity + " at iteration " +
                           std::to_string(iteration)),
        iteration_(iteration),
        quantity_(quantity) {}

  std::size_t iteration() const { return iteration_; }
  const std::string& quantity() const { return quantity_; }

 private:
  std::size_t iteration_;
  std::string quantity_;
};

// Configuration that is well-formed but not handled (e.g. B != -I).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment config failure; key() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(key) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace dpadmm

#endif  // DPADMM_ERRORS_HPP_
