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

#include "vle/discretize.hpp"
#include "vle/features.hpp"
#include "vle/ingest.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vle {

/// One behavioural group of the synthetic cohort. Weekly vectors are indexed
/// by study week 0..num_weeks.
struct Archetype {
  std::string name;
  double weight = 0.0;
  /// Probability the student makes no click at all in the week.
  std::vector<double> zero_probability;
  /// Mean click count of an active week (counts are 1 + Poisson(mean - 1)).
  std::vector<double> mean_clicks;
  /// Relative use of each vocabulary type; normalized internally.
  std::vector<double> type_propensity;
  /// NotSubmitted, Failed, Passed.
  std::array<double, 3> outcome{};
};

struct CohortSpec {
  std::size_t n_students = 0;
  std::uint64_t seed = 0;
  PresentationConfig config;
  std::vector<Archetype> archetypes;

  /// Throws DataError(InvalidSpec).
  void check() const;

  /// Engaged / lurker / at-risk cohort of 10,000 students, seed 7. At-risk
  /// students fall silent more often each week from week 1 and mostly do not
  /// submit TMA 1.
  static CohortSpec default_spec();

  std::string to_json() const;
  static CohortSpec from_json(const std::string& text);
};

/// Analytic truth derived from the spec alone (nothing sampled).
struct GroundTruth {
  std::vector<double> archetype_weights;
  /// [archetype][week][bin] probability of the weekly-total bin.
  std::vector<std::vector<std::vector<double>>> state_distribution;
  /// [archetype][step][from * bins + to]; weeks are independent given the
  /// archetype, so each row is the next week's distribution.
  std::vector<std::vector<std::vector<double>>> archetype_transitions;
  /// [step][from * bins + to] for the whole cohort; rows of unreachable
  /// states are all zero.
  std::vector<std::vector<double>> pooled_transitions;
  std::vector<bool> pooled_row_defined;  // [step * bins + from]
  /// NotSubmitted, Failed, Passed over the cohort.
  std::array<double, 3> outcome_rates{};
  std::size_t bins = 0;

  double pooled(std::size_t step, std::size_t from, std::size_t to) const {
    return pooled_transitions[step][from * bins + to];
  }
};

GroundTruth ground_truth(const CohortSpec& spec, const Binning& binning);

/// p(flag = 1 | class) under the spec, for a week flag (type empty) or a
/// per-type flag.
struct FlagTruth {
  double p_given_fail = 0.0;
  double p_given_pass = 0.0;
};
FlagTruth flag_truth(const CohortSpec& spec, int week, std::optional<std::size_t> type,
                     FailClass fail_class = FailClass::NotSubmittedOrFailed);

struct GeneratedCohort {
  Dataset dataset;
  /// Emitted per-student facts, in student order.
  std::vector<StudentId> students;
  std::vector<std::size_t> archetype;
  std::vector<std::vector<std::int64_t>> weekly_totals;
  std::vector<Outcome> outcomes;
};

GeneratedCohort generate(const CohortSpec& spec);

std::string student_name(std::size_t index, std::size_t n_students);

/// Writes clicks.csv, assessments.csv, config.txt and ground_truth/ (spec
/// echo, step-30 transitions, flag conditionals, outcome rates).
void write_cohort(const CohortSpec& spec, const GeneratedCohort& cohort, const std::string& dir);

std::string clicks_csv(const std::vector<ClickRecord>& clicks);
std::string assessments_csv(const std::vector<AssessmentRecord>& assessments);

}  // namespace vle
