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

#include "vle/bayes.hpp"

#include "vle/csv.hpp"
#include "vle/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vle {
namespace {

Outcome outcome_of(const std::map<StudentId, Outcome>& outcomes, const StudentId& id) {
  const auto it = outcomes.find(id);
  return it == outcomes.end() ? Outcome::NotSubmitted : it->second;
}

void check_weeks(const FeatureTable& features, WeekRange weeks) {
  if (weeks.first < 0 || weeks.last > features.num_weeks || weeks.first > weeks.last) {
    throw std::invalid_argument("week range " + std::to_string(weeks.first) + "-" +
                                std::to_string(weeks.last) + " outside 0.." +
                                std::to_string(features.num_weeks));
  }
}

std::string optional_rate(const std::optional<double>& v) { return v ? csv::fixed6(*v) : ""; }

}  // namespace

WeekRange parse_week_range(const std::string& text) {
  const auto t = csv::trim(text);
  const auto dash = t.find('-', 1);
  std::int64_t first = 0, last = 0;
  bool ok = false;
  if (dash == std::string_view::npos) {
    ok = csv::parse_int(t, first);
    last = first;
  } else {
    ok = csv::parse_int(t.substr(0, dash), first) && csv::parse_int(t.substr(dash + 1), last);
  }
  if (!ok || first < 0 || last < first) {
    throw std::invalid_argument("week range must look like A-B with 0 <= A <= B, got '" + text + "'");
  }
  return WeekRange{static_cast<int>(first), static_cast<int>(last)};
}

std::optional<double> TypeSuccessRow::pass_rate_active() const {
  if (n_active == 0) return std::nullopt;
  return static_cast<double>(passed_active) / static_cast<double>(n_active);
}

std::optional<double> TypeSuccessRow::pass_rate_inactive() const {
  if (n_inactive == 0) return std::nullopt;
  return static_cast<double>(passed_inactive) / static_cast<double>(n_inactive);
}

std::optional<double> TypeSuccessRow::rate_difference() const {
  const auto a = pass_rate_active();
  const auto i = pass_rate_inactive();
  if (!a || !i) return std::nullopt;
  return *a - *i;
}

TypeSuccessTable type_success_table(const FeatureTable& features,
                                    const std::map<StudentId, Outcome>& outcomes,
                                    WeekRange weeks) {
  if (features.students.empty()) throw DataError(ErrorKind::EmptyCohort, "no students to tabulate");
  check_weeks(features, weeks);
  TypeSuccessTable table;
  table.weeks = weeks;
  table.rows.resize(features.content_types.size());
  for (std::size_t t = 0; t < table.rows.size(); ++t) table.rows[t].content_type = features.content_types[t];

  for (const auto& [id, f] : features.students) {
    const bool passed = outcome_of(outcomes, id) == Outcome::Passed;
    for (std::size_t t = 0; t < table.rows.size(); ++t) {
      bool active = false;
      for (int w = weeks.first; w <= weeks.last && !active; ++w) active = f.type_active(w, t);
      auto& row = table.rows[t];
      if (active) {
        ++row.n_active;
        row.passed_active += passed;
      } else {
        ++row.n_inactive;
        row.passed_inactive += passed;
      }
    }
  }
  return table;
}

double two_proportion_z(const TypeSuccessRow& row) {
  if (row.n_active == 0 || row.n_inactive == 0) return 0.0;
  const double n1 = static_cast<double>(row.n_active);
  const double n2 = static_cast<double>(row.n_inactive);
  const double p1 = static_cast<double>(row.passed_active) / n1;
  const double p2 = static_cast<double>(row.passed_inactive) / n2;
  const double pooled = static_cast<double>(row.passed_active + row.passed_inactive) / (n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  if (!(se > 0.0)) return 0.0;
  return (p1 - p2) / se;
}

std::vector<std::string> select_significant_types(const TypeSuccessTable& table, double alpha,
                                                  std::size_t min_group) {
  std::vector<std::string> selected;
  for (const auto& row : table.rows) {
    if (row.n_active < min_group || row.n_inactive < min_group) continue;
    const double z = two_proportion_z(row);
    const double p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
    if (p_value < alpha) selected.push_back(row.content_type);
  }
  return selected;
}

std::string FlagRef::id(const std::vector<std::string>& content_types) const {
  const std::string prefix = "w" + std::to_string(week) + "_";
  if (!type) return prefix + "active";
  return prefix + content_types.at(*type);
}

bool FlagRef::value(const WeeklyFeatures& features) const {
  return type ? features.type_active(week, *type) : features.week_active(week);
}

BayesModel::BayesModel(double prior_fail, std::vector<FlagRef> flags,
                       std::vector<Conditional> conditionals)
    : prior_fail_(prior_fail), flags_(std::move(flags)), conditionals_(std::move(conditionals)) {
  if (!(prior_fail_ > 0.0 && prior_fail_ < 1.0)) throw std::invalid_argument("prior_fail outside (0,1)");
  if (flags_.size() != conditionals_.size()) throw std::invalid_argument("one conditional per flag");
}

double BayesModel::log_odds(const std::vector<bool>& flags) const {
  if (flags.size() != flags_.size()) {
    throw DataError(ErrorKind::FlagLengthMismatch, "model has " + std::to_string(flags_.size()) +
                                                       " flags, got " + std::to_string(flags.size()));
  }
  double fail = std::log(prior_fail_);
  double pass = std::log1p(-prior_fail_);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const auto& c = conditionals_[i];
    fail += flags[i] ? std::log(c.p_given_fail) : std::log1p(-c.p_given_fail);
    pass += flags[i] ? std::log(c.p_given_pass) : std::log1p(-c.p_given_pass);
  }
  return fail - pass;
}

BayesModel fit_bayes(const FeatureTable& features, const std::map<StudentId, Outcome>& outcomes,
                     const std::vector<FlagRef>& flags, FailClass fail_class) {
  for (const auto& f : flags) {
    if (f.week < 0 || f.week > features.num_weeks ||
        (f.type && *f.type >= features.content_types.size())) {
      throw std::invalid_argument("flag outside the feature table");
    }
  }
  std::size_t n_fail = 0, n_pass = 0;
  std::vector<std::size_t> on_fail(flags.size(), 0), on_pass(flags.size(), 0);
  for (const auto& [id, f] : features.students) {
    const bool fail = is_fail_class(outcome_of(outcomes, id), fail_class);
    (fail ? n_fail : n_pass) += 1;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (flags[i].value(f)) (fail ? on_fail : on_pass)[i] += 1;
    }
  }
  if (n_fail == 0 || n_pass == 0) {
    throw DataError(ErrorKind::SingleClassCohort,
                    "cohort needs both failing and passing students (fail=" +
                        std::to_string(n_fail) + ", pass=" + std::to_string(n_pass) + ")");
  }
  std::vector<BayesModel::Conditional> conditionals;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    conditionals.push_back({flags[i].id(features.content_types),
                            (static_cast<double>(on_fail[i]) + 1.0) / (static_cast<double>(n_fail) + 2.0),
                            (static_cast<double>(on_pass[i]) + 1.0) / (static_cast<double>(n_pass) + 2.0)});
  }
  const double prior = static_cast<double>(n_fail) / static_cast<double>(n_fail + n_pass);
  return BayesModel(prior, flags, std::move(conditionals));
}

Posterior posterior(const BayesModel& model, const std::vector<bool>& flags) {
  const double d = model.log_odds(flags);
  constexpr double lo = std::numeric_limits<double>::min();
  const double hi = std::nextafter(1.0, 0.0);
  Posterior p;
  p.fail = std::clamp(1.0 / (1.0 + std::exp(-d)), lo, hi);
  p.pass = std::clamp(1.0 / (1.0 + std::exp(d)), lo, hi);
  return p;
}

double fail_probability(const BayesModel& model, const std::vector<bool>& flags) {
  return posterior(model, flags).fail;
}

std::vector<bool> flag_values(const BayesModel& model, const WeeklyFeatures& features) {
  std::vector<bool> values;
  values.reserve(model.flags().size());
  for (const auto& f : model.flags()) values.push_back(f.value(features));
  return values;
}

std::string type_success_csv(const TypeSuccessTable& table) {
  std::string out =
      "content_type,n_active,n_inactive,pass_rate_active,pass_rate_inactive,rate_difference,z\n";
  for (const auto& r : table.rows) {
    out += csv::escape(r.content_type) + "," + std::to_string(r.n_active) + "," +
           std::to_string(r.n_inactive) + "," + optional_rate(r.pass_rate_active()) + "," +
           optional_rate(r.pass_rate_inactive()) + "," + optional_rate(r.rate_difference()) + "," +
           csv::fixed6(two_proportion_z(r)) + "\n";
  }
  return out;
}

std::string model_csv(const BayesModel& model) {
  std::string out = "prior_fail," + csv::fixed6(model.prior_fail()) + "\n";
  out += "flag_id,p_given_fail,p_given_pass\n";
  for (const auto& c : model.conditionals()) {
    out += csv::escape(c.flag_id) + "," + csv::fixed6(c.p_given_fail) + "," +
           csv::fixed6(c.p_given_pass) + "\n";
  }
  return out;
}

std::string scores_csv(const BayesModel& model, const FeatureTable& features) {
  std::string out = "id_student,p_fail\n";
  for (const auto& [id, f] : features.students) {
    out += csv::escape(id.value) + "," + csv::fixed6(fail_probability(model, flag_values(model, f))) + "\n";
  }
  return out;
}

}  // namespace vle
