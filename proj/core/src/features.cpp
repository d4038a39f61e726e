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

#include "vle/features.hpp"

#include "vle/csv.hpp"
#include "vle/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vle {

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::NotSubmitted: return "NotSubmitted";
    case Outcome::Failed: return "Failed";
    case Outcome::Passed: return "Passed";
  }
  return "NotSubmitted";
}

Outcome parse_outcome(std::string_view name) {
  if (name == "NotSubmitted") return Outcome::NotSubmitted;
  if (name == "Failed") return Outcome::Failed;
  if (name == "Passed") return Outcome::Passed;
  throw std::invalid_argument("unknown outcome '" + std::string(name) + "'");
}

int day_to_week(std::int64_t day_offset, const PresentationConfig& config) {
  if (day_offset < 0) return 0;
  const std::int64_t week = day_offset / 7 + 1;
  return static_cast<int>(std::min<std::int64_t>(week, config.num_weeks));
}

WeeklyFeatures::WeeklyFeatures(int num_weeks, std::size_t num_types)
    : totals_(static_cast<std::size_t>(num_weeks) + 1, 0),
      type_counts_((static_cast<std::size_t>(num_weeks) + 1) * num_types, 0),
      num_types_(num_types) {}

std::int64_t WeeklyFeatures::type_clicks(int week, std::size_t type) const {
  if (type >= num_types_) throw std::out_of_range("content type index");
  return type_counts_.at(static_cast<std::size_t>(week) * num_types_ + type);
}

void WeeklyFeatures::add(int week, std::size_t type, std::int64_t clicks) {
  if (type >= num_types_) throw std::out_of_range("content type index");
  totals_.at(week) += clicks;
  type_counts_.at(static_cast<std::size_t>(week) * num_types_ + type) += clicks;
}

std::int64_t WeeklyFeatures::sum() const {
  return std::accumulate(totals_.begin(), totals_.end(), std::int64_t{0});
}

int FeatureTable::type_index(std::string_view name) const {
  const auto it = std::find(content_types.begin(), content_types.end(), name);
  return it == content_types.end() ? -1 : static_cast<int>(it - content_types.begin());
}

FeatureTable aggregate_weekly(const Dataset& dataset) {
  const auto& config = dataset.config();
  FeatureTable table;
  table.content_types = config.content_vocabulary;
  table.num_weeks = config.num_weeks;

  const std::vector<StudentId> roster(dataset.roster().begin(), dataset.roster().end());
  std::vector<WeeklyFeatures> rows(roster.size(),
                                   WeeklyFeatures(config.num_weeks, table.content_types.size()));

  // Clicks are sorted by student; each worker owns a contiguous student slice
  // and finds its records by binary search.
  const auto& clicks = dataset.clicks();
  std::vector<std::size_t> order(clicks.size());
  std::iota(order.begin(), order.end(), 0);
  if (!std::is_sorted(clicks.begin(), clicks.end(), [](const auto& l, const auto& r) {
        return l.student < r.student;
      })) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return clicks[l].student < clicks[r].student;
    });
  }

  parallel_for(roster.size(), worker_count(), [&](std::size_t begin, std::size_t end) {
    auto it = std::lower_bound(order.begin(), order.end(), roster[begin],
                               [&](std::size_t i, const StudentId& id) { return clicks[i].student < id; });
    for (std::size_t s = begin; s < end; ++s) {
      while (it != order.end() && clicks[*it].student < roster[s]) ++it;
      for (; it != order.end() && clicks[*it].student == roster[s]; ++it) {
        const auto& rec = clicks[*it];
        const int type = config.type_index(rec.content_type);
        if (type < 0) throw std::invalid_argument("record outside content vocabulary");
        rows[s].add(day_to_week(rec.day_offset, config), static_cast<std::size_t>(type), rec.clicks);
      }
    }
  });

  for (std::size_t s = 0; s < roster.size(); ++s) {
    table.students.emplace(roster[s], std::move(rows[s]));
  }
  return table;
}

Outcome label_outcome(const std::vector<AssessmentRecord>& assessments, const StudentId& student,
                      const PresentationConfig& config) {
  for (const auto& a : assessments) {
    if (a.student != student || a.tma_index != config.tma_of_interest) continue;
    if (!a.submitted()) return Outcome::NotSubmitted;
    return *a.score >= config.pass_threshold ? Outcome::Passed : Outcome::Failed;
  }
  return Outcome::NotSubmitted;
}

std::map<StudentId, Outcome> label_outcomes(const Dataset& dataset) {
  const auto& config = dataset.config();
  std::map<StudentId, Outcome> out;
  for (const auto& s : dataset.roster()) out.emplace(s, Outcome::NotSubmitted);
  for (const auto& a : dataset.assessments()) {
    if (a.tma_index != config.tma_of_interest || !a.submitted()) continue;
    out[a.student] = *a.score >= config.pass_threshold ? Outcome::Passed : Outcome::Failed;
  }
  return out;
}

bool is_fail_class(Outcome outcome, FailClass fail_class) {
  if (outcome == Outcome::NotSubmitted) return true;
  return outcome == Outcome::Failed && fail_class == FailClass::NotSubmittedOrFailed;
}

std::string feature_matrix_csv(const FeatureTable& table,
                               const std::map<StudentId, Outcome>& outcomes) {
  std::string out = "id_student";
  for (int w = 0; w <= table.num_weeks; ++w) {
    const std::string prefix = "w" + std::to_string(w) + "_";
    out += "," + prefix + "total";
    for (const auto& t : table.content_types) out += "," + csv::escape(prefix + t);
  }
  out += ",outcome\n";
  for (const auto& [id, f] : table.students) {
    out += csv::escape(id.value);
    for (int w = 0; w <= table.num_weeks; ++w) {
      out += "," + std::to_string(f.total_clicks(w));
      for (std::size_t t = 0; t < table.content_types.size(); ++t) {
        out += "," + std::to_string(f.type_clicks(w, t));
      }
    }
    const auto it = outcomes.find(id);
    out += ",";
    out += to_string(it == outcomes.end() ? Outcome::NotSubmitted : it->second);
    out += '\n';
  }
  return out;
}

}  // namespace vle
