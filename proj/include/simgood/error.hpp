// Copyright 2026 The simgood Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace simgood {

enum class ErrorKind {
  kParse,
  kLabel,
  kDimensionMismatch,
  kTooSmall,
  kDegenerateData,
  kNonSymmetric,
  kNoConvergence,
  kInvalidParameter,
  kInvalidK,
  kFormat,
  kVersion,
  kIo,
};

const char* error_kind_name(ErrorKind kind);

// Data errors map to CLI exit code 2, numerical failures to 3.
bool is_numerical_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Errors that point at a location in a text input.
class LineError : public Error {
 public:
  LineError(ErrorKind kind, std::size_t line, const std::string& message);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace simgood
