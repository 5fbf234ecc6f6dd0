// Copyright 2026 The vqderiv Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception type shared by every vqderiv module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace vqderiv {

enum class ErrorKind {
    ParameterCount,
    InvalidCircuit,
    InvalidShotCount,
    SingularShift,
    UnsupportedShift,
    InvalidStep,
    UnsupportedScheme,
    InvalidArgument,
    UndefinedOptimum,
    NonPositiveSpectrum,
    SingularMatrix,
    Size,
    Parse,
    Io,
};

inline const char *toString(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParameterCount:
        return "parameter-count";
    case ErrorKind::InvalidCircuit:
        return "invalid-circuit";
    case ErrorKind::InvalidShotCount:
        return "invalid-shot-count";
    case ErrorKind::SingularShift:
        return "singular-shift";
    case ErrorKind::UnsupportedShift:
        return "unsupported-shift";
    case ErrorKind::InvalidStep:
        return "invalid-step";
    case ErrorKind::UnsupportedScheme:
        return "unsupported-scheme";
    case ErrorKind::InvalidArgument:
        return "invalid-argument";
    case ErrorKind::UndefinedOptimum:
        return "undefined-optimum";
    case ErrorKind::NonPositiveSpectrum:
        return "non-positive-spectrum";
    case ErrorKind::SingularMatrix:
        return "singular-matrix";
    case ErrorKind::Size:
        return "size";
    case ErrorKind::Parse:
        return "parse";
    case ErrorKind::Io:
        return "io";
    }
    return "unknown";
}

/// Thrown for every contract violation in the library.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(toString(kind)) + ": " + message),
          kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace vqderiv
