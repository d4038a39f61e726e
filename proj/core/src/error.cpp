// Copyright 2026 The vle-miner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vle/error.hpp"

namespace vle {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::NonIntegerClicks: return "NonIntegerClicks";
    case ErrorKind::NegativeClicks: return "NegativeClicks";
    case ErrorKind::UnknownContentType: return "UnknownContentType";
    case ErrorKind::DayOutOfWindow: return "DayOutOfWindow";
    case ErrorKind::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorKind::DuplicateAssessment: return "DuplicateAssessment";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::TooFewValues: return "TooFewValues";
    case ErrorKind::EmptyCohort: return "EmptyCohort";
    case ErrorKind::SingleClassCohort: return "SingleClassCohort";
    case ErrorKind::FlagLengthMismatch: return "FlagLengthMismatch";
    case ErrorKind::UnknownAttribute: return "UnknownAttribute";
    case ErrorKind::EmptyAttributeSpace: return "EmptyAttributeSpace";
    case ErrorKind::EmptySequences: return "EmptySequences";
    case ErrorKind::EmptyModel: return "EmptyModel";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

DataError::DataError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

DataError::DataError(ErrorKind kind, const std::string& source, std::size_t line,
                     const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + source + ":" +
                         std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line) {}

}  // namespace vle
