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

#include "vle/ingest.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vle {

enum class Outcome { NotSubmitted, Failed, Passed };

std::string_view to_string(Outcome outcome) noexcept;
/// Accepts the names produced by to_string.
Outcome parse_outcome(std::string_view name);

/// Week 0 is everything before module start; week k >= 1 covers days
/// [7(k-1), 7k). Weeks past num_weeks are folded into the last week.
int day_to_week(std::int64_t day_offset, const PresentationConfig& config);

/// Weekly click totals and per-content-type counts for one student. Activity
/// flags are derived from the counts so the two can never disagree.
class WeeklyFeatures {
public:
  WeeklyFeatures() = default;
  WeeklyFeatures(int num_weeks, std::size_t num_types);

  int num_weeks() const { return static_cast<int>(totals_.size()) - 1; }
  std::size_t num_types() const { return num_types_; }

  std::int64_t total_clicks(int week) const { return totals_.at(week); }
  std::int64_t type_clicks(int week, std::size_t type) const;
  bool week_active(int week) const { return total_clicks(week) > 0; }
  bool type_active(int week, std::size_t type) const { return type_clicks(week, type) > 0; }

  void add(int week, std::size_t type, std::int64_t clicks);
  std::int64_t sum() const;

  friend bool operator==(const WeeklyFeatures&, const WeeklyFeatures&) = default;

private:
  std::vector<std::int64_t> totals_;
  std::vector<std::int64_t> type_counts_;  // week-major
  std::size_t num_types_ = 0;
};

struct FeatureTable {
  std::vector<std::string> content_types;
  int num_weeks = 0;
  std::map<StudentId, WeeklyFeatures> students;

  const WeeklyFeatures& at(const StudentId& id) const { return students.at(id); }
  int type_index(std::string_view name) const;
};

/// One entry per roster student; students without clicks get all-zero rows.
/// Partitioned across worker threads (see parallel.hpp) with an identical
/// result for any thread count.
FeatureTable aggregate_weekly(const Dataset& dataset);

Outcome label_outcome(const std::vector<AssessmentRecord>& assessments, const StudentId& student,
                      const PresentationConfig& config);

/// label_outcome for every roster student.
std::map<StudentId, Outcome> label_outcomes(const Dataset& dataset);

/// True when the outcome belongs to the failing class under `fail_class`.
bool is_fail_class(Outcome outcome, FailClass fail_class);

/// `id_student,w0_total,w0_<type>...,outcome` rows.
std::string feature_matrix_csv(const FeatureTable& table,
                               const std::map<StudentId, Outcome>& outcomes);

}  // namespace vle
