// Copyright 2026 The eprbsim Authors
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

#ifndef EPRB_CORE_ERROR_H
#define EPRB_CORE_ERROR_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eprb {

/// A configuration value violates one of its documented invariants.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive or fixed-order quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The analysis pipeline was asked for something the data cannot provide
/// (empty coincidence table, missing setting pair, mismatched records).
class AnalysisError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A probability at 0 or 1 (or a correlation at +-1), where the Fisher
/// information is undefined.
class DegenerateError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A station file or settings file could not be parsed.
class FormatError : public std::runtime_error {
   public:
    FormatError(const std::string &message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {
    }

    std::size_t line() const noexcept {
        return line_;
    }

   private:
    std::size_t line_;
};

}  // namespace eprb

#endif
