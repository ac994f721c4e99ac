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

#include "simgood/error.hpp"

namespace simgood {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kLabel: return "LabelError";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kTooSmall: return "TooSmall";
    case ErrorKind::kDegenerateData: return "DegenerateData";
    case ErrorKind::kNonSymmetric: return "NonSymmetric";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kInvalidParameter: return "InvalidParameter";
    case ErrorKind::kInvalidK: return "InvalidK";
    case ErrorKind::kFormat: return "FormatError";
    case ErrorKind::kVersion: return "VersionError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

bool is_numerical_error(ErrorKind kind) {
  return kind == ErrorKind::kNonSymmetric || kind == ErrorKind::kNoConvergence;
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

LineError::LineError(ErrorKind kind, std::size_t line, const std::string& message)
    : Error(kind, "line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace simgood
