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

#include "vle/bayes.hpp"
#include "vle/discretize.hpp"
#include "vle/features.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vle {

/// The per-week state alphabet of a chain: intensity bins of the weekly total,
/// or the subset of selected content types a student touched that week.
class StateSpace {
public:
  enum class Kind { Intensity, TypeCombination, Labels };

  static constexpr std::size_t kMaxCombinationTypes = 6;

  static StateSpace intensity(Binning binning);
  /// State index is a bitmask: bit i set <=> selected type i active.
  static StateSpace type_combination(std::vector<std::size_t> type_indices,
                                     std::vector<std::string> type_names);
  /// Opaque labelled states, used when reading exported chains back.
  static StateSpace labels(std::vector<std::string> labels);

  /// `intensity:<step>[:<max>]` or `types:<t1,t2,...>`.
  static StateSpace parse(const std::string& text, const std::vector<std::string>& content_types);

  Kind kind() const { return kind_; }
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t state) const { return labels_.at(state); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Binning& binning() const { return binning_; }
  const std::vector<std::size_t>& type_indices() const { return type_indices_; }

  std::size_t state_of(const WeeklyFeatures& features, int week) const;

private:
  Kind kind_ = Kind::Labels;
  Binning binning_;
  std::vector<std::size_t> type_indices_;
  std::vector<std::string> labels_;
};

struct StateSequence {
  StudentId student;
  int first_week = 0;
  std::vector<std::size_t> states;  // states[i] is week first_week + i
};

/// Sequences in student order.
std::vector<StateSequence> build_sequences(const FeatureTable& features, const StateSpace& space,
                                           WeekRange weeks);

/// Time-inhomogeneous chain: one count matrix per week step w -> w+1.
class TransitionModel {
public:
  TransitionModel(StateSpace space, WeekRange weeks);

  /// Rebuilds a model from step-major S x S count blocks. Throws
  /// std::invalid_argument unless every step carries the same total and the
  /// mass entering week w+1 equals the mass leaving it.
  static TransitionModel from_counts(StateSpace space, WeekRange weeks,
                                     std::vector<std::int64_t> counts);

  const StateSpace& space() const { return space_; }
  WeekRange weeks() const { return weeks_; }
  std::size_t steps() const { return static_cast<std::size_t>(weeks_.size() - 1); }
  std::size_t sequences() const { return sequences_; }
  bool empty() const { return sequences_ == 0; }

  std::int64_t count(std::size_t step, std::size_t from, std::size_t to) const;
  std::int64_t row_total(std::size_t step, std::size_t from) const;
  /// A row with no outgoing mass is undefined, never a silent uniform row.
  bool row_defined(std::size_t step, std::size_t from) const { return row_total(step, from) > 0; }
  /// Row-normalized count; 0 for undefined rows.
  double probability(std::size_t step, std::size_t from, std::size_t to) const;
  /// Number of sequences in `state` at the week with offset `week_offset`.
  std::int64_t occupancy(std::size_t week_offset, std::size_t state) const;

  void add_sequence(const StateSequence& sequence);
  /// Entrywise sum; both models must share shape.
  void merge(const TransitionModel& other);

private:
  std::size_t index(std::size_t step, std::size_t from, std::size_t to) const;

  StateSpace space_;
  WeekRange weeks_;
  std::size_t sequences_ = 0;
  std::vector<std::int64_t> counts_;     // step-major S x S blocks
  std::vector<std::int64_t> occupancy_;  // week-major
};

/// Throws DataError(EmptySequences).
TransitionModel fit_transitions(const std::vector<StateSequence>& sequences,
                                const StateSpace& space);

/// A class without members gets an empty model, not an error.
/// Sequences of students outside `classes` are ignored.
std::map<Outcome, TransitionModel> split_by_outcome(const std::vector<StateSequence>& sequences,
                                                    const StateSpace& space,
                                                    const std::map<StudentId, Outcome>& outcomes,
                                                    const std::vector<Outcome>& classes);

/// Draws sequences from the fitted chain, starting from its first-week
/// occupancy. Deterministic in seed.
std::vector<StateSequence> sample_sequences(const TransitionModel& model, std::size_t count,
                                            std::uint64_t seed);

/// Students with at least one zero-click week in the range.
std::set<StudentId> cohort_filter(const FeatureTable& features, WeekRange weeks);

enum class WeekConstraint { Zero, NonZero, Any };

struct ScenarioSpec {
  std::string name;
  std::map<int, WeekConstraint> weeks;
  std::optional<WeekRange> exists_zero_in;

  /// Throws DataError(InvalidSpec) on overlap of exists_zero_in with a
  /// NonZero week or a week outside 0..num_weeks.
  void check(int num_weeks) const;
};

/// The twelve activity scenarios over weeks 0-4, in catalog order.
std::vector<ScenarioSpec> default_scenario_catalog();

/// One scenario per line: `name | w0=Z w1=N ... | exists_zero=<A-B or ->`.
std::vector<ScenarioSpec> parse_scenario_catalog(const std::string& text,
                                                 const std::string& source = "<catalog>");
std::vector<ScenarioSpec> load_scenario_catalog(const std::string& path);
std::string format_scenario_catalog(const std::vector<ScenarioSpec>& specs);

bool match_scenario(const ScenarioSpec& spec, const WeeklyFeatures& features);
bool match_scenario(const ScenarioSpec& spec, const FeatureTable& features,
                    const StudentId& student);

struct ScenarioRow {
  std::string name;
  std::size_t matched = 0;
  std::size_t not_submitted = 0;
  std::size_t failed = 0;
  std::size_t passed = 0;

  std::optional<double> pct_not_submitted() const;
  std::optional<double> pct_failed() const;
  std::optional<double> pct_passed() const;
};

struct ScenarioReport {
  std::size_t cohort_size = 0;
  std::vector<ScenarioRow> rows;
};

/// Matches every scenario against the zero-week cohort of `weeks` and breaks
/// the matched students down by outcome.
ScenarioReport scenario_report(const std::vector<ScenarioSpec>& specs,
                               const FeatureTable& features,
                               const std::map<StudentId, Outcome>& outcomes, WeekRange weeks);

}  // namespace vle
