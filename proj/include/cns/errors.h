// Copyright 2026 The Cognitive Neurosecurity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CNS_ERRORS_H_
#define CNS_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace cns {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands disagree in length or Hilbert-space dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A renormalization hit a zero-norm vector under the throwing policy.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// A value violates its type invariant (density matrix, unitary, pmf).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numerical method cannot be applied to this input.
class MethodInapplicableError : public Error {
 public:
  using Error::Error;
};

// Bad scenario or objective configuration. Collects every violation.
class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& message)
      : Error(message), violations_{message} {}
  explicit ConfigurationError(std::vector<std::string> violations)
      : Error(Join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> violations_;
};

// Filesystem failures in the harness.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cns

#endif  // CNS_ERRORS_H_
