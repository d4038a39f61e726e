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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vle {

struct StudentId {
  std::string value;

  friend auto operator<=>(const StudentId&, const StudentId&) = default;
};

/// Which students count as the failing class for risk scoring.
enum class FailClass { NotSubmittedOrFailed, NotSubmittedOnly };

struct PresentationConfig {
  std::vector<std::string> content_vocabulary = default_vocabulary();
  int num_weeks = 5;
  int pass_threshold = 40;
  int tma_of_interest = 1;
  /// Optional bounds on day offsets; records outside are rejected.
  std::optional<std::int64_t> min_day;
  std::optional<std::int64_t> max_day;
  FailClass fail_class = FailClass::NotSubmittedOrFailed;

  static std::vector<std::string> default_vocabulary();

  /// Throws DataError(InvalidConfig) when an invariant is broken.
  void check() const;
  /// Index of `name` in the vocabulary, or -1.
  int type_index(const std::string& name) const;
};

/// Parses the `key=value` configuration format. Unknown keys are rejected.
PresentationConfig load_config(const std::string& path);
PresentationConfig parse_config(const std::string& text, const std::string& source = "<config>");
std::string format_config(const PresentationConfig& config);

struct ClickRecord {
  StudentId student;
  std::int64_t day_offset = 0;
  std::string content_type;
  std::int64_t clicks = 0;

  friend bool operator==(const ClickRecord&, const ClickRecord&) = default;
};

struct AssessmentRecord {
  StudentId student;
  int tma_index = 1;
  std::optional<int> score;  // present iff submitted

  bool submitted() const { return score.has_value(); }
  friend bool operator==(const AssessmentRecord&, const AssessmentRecord&) = default;
};

/// Immutable after construction; every analysis module reads it concurrently.
class Dataset {
public:
  Dataset() = default;
  Dataset(std::vector<ClickRecord> clicks, std::vector<AssessmentRecord> assessments,
          PresentationConfig config);

  const std::vector<ClickRecord>& clicks() const { return clicks_; }
  const std::vector<AssessmentRecord>& assessments() const { return assessments_; }
  const std::set<StudentId>& roster() const { return roster_; }
  const PresentationConfig& config() const { return config_; }

private:
  std::vector<ClickRecord> clicks_;
  std::vector<AssessmentRecord> assessments_;
  std::set<StudentId> roster_;
  PresentationConfig config_;
};

/// Duplicate (student, day, type) rows are summed. Result is sorted by
/// (student, day, type).
std::vector<ClickRecord> load_clicks(const std::string& path, const PresentationConfig& config);
std::vector<AssessmentRecord> load_assessments(const std::string& path);

/// Convenience: both files plus config into one Dataset.
Dataset load_dataset(const std::string& clicks_path, const std::string& assessments_path,
                     const PresentationConfig& config);

struct ValidationReport {
  std::size_t students = 0;
  std::size_t click_records = 0;
  std::size_t assessment_records = 0;
  std::int64_t total_clicks = 0;
  /// Distinct study weeks that carry at least one click.
  std::size_t weeks_covered = 0;
  /// Students with click records but no record for the TMA of interest.
  std::vector<StudentId> missing_tma;
  /// Assessment records whose student has no click records at all.
  std::vector<StudentId> without_clicks;
};

ValidationReport validate(const Dataset& dataset);
std::string format_report(const ValidationReport& report);

}  // namespace vle
