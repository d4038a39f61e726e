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

#include "vle/features.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vle {

/// Inclusive range of study weeks.
struct WeekRange {
  int first = 0;
  int last = 0;

  int size() const { return last - first + 1; }
  bool contains(int week) const { return week >= first && week <= last; }
  friend bool operator==(const WeekRange&, const WeekRange&) = default;
};

/// Parses "A-B" (or a single week "A").
WeekRange parse_week_range(const std::string& text);

struct TypeSuccessRow {
  std::string content_type;
  std::size_t n_active = 0;
  std::size_t n_inactive = 0;
  std::size_t passed_active = 0;
  std::size_t passed_inactive = 0;

  /// Empty group => no rate.
  std::optional<double> pass_rate_active() const;
  std::optional<double> pass_rate_inactive() const;
  std::optional<double> rate_difference() const;
};

/// Pass rates of students active vs inactive in each content type over a
/// week range ("active" = at least one click of that type in the range).
struct TypeSuccessTable {
  WeekRange weeks;
  std::vector<TypeSuccessRow> rows;  // vocabulary order
};

TypeSuccessTable type_success_table(const FeatureTable& features,
                                    const std::map<StudentId, Outcome>& outcomes,
                                    WeekRange weeks);

/// Pooled two-proportion z statistic of active vs inactive pass rates; 0 when
/// either group is empty or the pooled rate is 0 or 1.
double two_proportion_z(const TypeSuccessRow& row);

/// Types whose activity significantly changes the pass rate (two-sided test
/// at alpha) with both groups at least min_group large. Vocabulary order.
std::vector<std::string> select_significant_types(const TypeSuccessTable& table,
                                                  double alpha = 0.05,
                                                  std::size_t min_group = 30);

/// A binary flag: whole-week activity, or activity in one content type.
struct FlagRef {
  int week = 0;
  std::optional<std::size_t> type;

  std::string id(const std::vector<std::string>& content_types) const;
  bool value(const WeeklyFeatures& features) const;
  friend bool operator==(const FlagRef&, const FlagRef&) = default;
};

class BayesModel {
public:
  struct Conditional {
    std::string flag_id;
    double p_given_fail = 0.5;
    double p_given_pass = 0.5;
  };

  BayesModel(double prior_fail, std::vector<FlagRef> flags, std::vector<Conditional> conditionals);

  double prior_fail() const { return prior_fail_; }
  const std::vector<FlagRef>& flags() const { return flags_; }
  const std::vector<Conditional>& conditionals() const { return conditionals_; }

  /// log P(fail|x) - log P(pass|x).
  double log_odds(const std::vector<bool>& flags) const;

private:
  double prior_fail_;
  std::vector<FlagRef> flags_;
  std::vector<Conditional> conditionals_;
};

/// Naive Bayes over binary flags with add-one smoothing:
/// p(f=1|c) = (count(f=1,c) + 1) / (count(c) + 2).
BayesModel fit_bayes(const FeatureTable& features, const std::map<StudentId, Outcome>& outcomes,
                     const std::vector<FlagRef>& flags,
                     FailClass fail_class = FailClass::NotSubmittedOrFailed);

struct Posterior {
  double fail = 0.5;
  double pass = 0.5;
};

Posterior posterior(const BayesModel& model, const std::vector<bool>& flags);
/// Strictly inside (0,1).
double fail_probability(const BayesModel& model, const std::vector<bool>& flags);

std::vector<bool> flag_values(const BayesModel& model, const WeeklyFeatures& features);

std::string type_success_csv(const TypeSuccessTable& table);
/// `prior_fail,<p>` line, then `flag_id,p_given_fail,p_given_pass` rows.
std::string model_csv(const BayesModel& model);
/// `id_student,p_fail` for every student in the table.
std::string scores_csv(const BayesModel& model, const FeatureTable& features);

}  // namespace vle
