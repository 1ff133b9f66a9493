//  Copyright 2026 The bohrspec Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bohrspec {

enum class ErrorKind {
  MismatchedParent,
  NotSelfAdjoint,
  NotSurjective,
  UnknownGenerator,
  TooManyGenerators,
  TooLarge,
  ParseError,
  ElementNotInLattice,
  MismatchedLattice,
  NotNormal,
  NotWellInside,
  SearchExhausted,
  InvalidPoset,
  InvalidDiagram,
  NotMonotone,
  NotComparable,
  DiagramMismatch,
  InconsistentOrder,
  InvalidNet,
  Schema,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MismatchedParent: return "MismatchedParent";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::TooManyGenerators: return "TooManyGenerators";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ElementNotInLattice: return "ElementNotInLattice";
    case ErrorKind::MismatchedLattice: return "MismatchedLattice";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotWellInside: return "NotWellInside";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::InvalidPoset: return "InvalidPoset";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::DiagramMismatch: return "DiagramMismatch";
    case ErrorKind::InconsistentOrder: return "InconsistentOrder";
    case ErrorKind::InvalidNet: return "InvalidNet";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

/// Every failure raised by the library. `path` names the offending input
/// location (a JSON pointer for schema problems), empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string path = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        message_(what),
        path_(std::move(path)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::string path_;
};

}  // namespace bohrspec
