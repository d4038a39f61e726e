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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vle {

/// Every data-level failure the library reports. The CLI maps these to exit
/// code 1 and prints the kind name in its diagnostic.
enum class ErrorKind {
  MissingColumn,
  MalformedRow,
  NonIntegerClicks,
  NegativeClicks,
  UnknownContentType,
  DayOutOfWindow,
  ScoreOutOfRange,
  DuplicateAssessment,
  InvalidConfig,
  TooFewValues,
  EmptyCohort,
  SingleClassCohort,
  FlagLengthMismatch,
  UnknownAttribute,
  EmptyAttributeSpace,
  EmptySequences,
  EmptyModel,
  InvalidSpec,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class DataError : public std::runtime_error {
public:
  DataError(ErrorKind kind, const std::string& message);
  DataError(ErrorKind kind, const std::string& source, std::size_t line,
            const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }

private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

}  // namespace vle
