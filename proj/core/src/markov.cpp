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

#include "vle/markov.hpp"

#include "vle/csv.hpp"
#include "vle/error.hpp"
#include "vle/random.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vle {
namespace {

void check_weeks(const FeatureTable& features, WeekRange weeks) {
  if (weeks.first < 0 || weeks.last > features.num_weeks || weeks.first > weeks.last) {
    throw std::invalid_argument("week range outside 0.." + std::to_string(features.num_weeks));
  }
}

char constraint_code(WeekConstraint c) {
  switch (c) {
    case WeekConstraint::Zero: return 'Z';
    case WeekConstraint::NonZero: return 'N';
    case WeekConstraint::Any: return 'A';
  }
  return 'A';
}

ScenarioSpec only_zero_in(int first, int last) {
  ScenarioSpec s;
  s.name = first == last ? "zero only in " + std::to_string(first)
                         : "zero only in " + std::to_string(first) + "-" + std::to_string(last);
  for (int w = 0; w <= 4; ++w) {
    s.weeks[w] = (w >= first && w <= last) ? WeekConstraint::Zero : WeekConstraint::NonZero;
  }
  return s;
}

ScenarioSpec zero_then_active(int zero_last) {
  ScenarioSpec s;
  const std::string active = zero_last + 1 == 4 ? "4" : std::to_string(zero_last + 1) + "-4";
  s.name = "zero in at least one of 0-" + std::to_string(zero_last) + ", non-zero in " + active;
  for (int w = 0; w <= 4; ++w) s.weeks[w] = w <= zero_last ? WeekConstraint::Any : WeekConstraint::NonZero;
  s.exists_zero_in = WeekRange{0, zero_last};
  return s;
}

}  // namespace

StateSpace StateSpace::intensity(Binning binning) {
  StateSpace s;
  s.kind_ = Kind::Intensity;
  for (std::size_t i = 0; i < binning.bin_count(); ++i) s.labels_.push_back(binning.label(i));
  s.binning_ = std::move(binning);
  return s;
}

StateSpace StateSpace::type_combination(std::vector<std::size_t> type_indices,
                                        std::vector<std::string> type_names) {
  if (type_indices.empty() || type_indices.size() > kMaxCombinationTypes) {
    throw std::invalid_argument("type combination space needs 1.." +
                                std::to_string(kMaxCombinationTypes) + " content types");
  }
  if (type_names.size() != type_indices.size()) throw std::invalid_argument("one name per type");
  StateSpace s;
  s.kind_ = Kind::TypeCombination;
  const std::size_t states = std::size_t{1} << type_indices.size();
  for (std::size_t mask = 0; mask < states; ++mask) {
    std::string label;
    for (std::size_t i = 0; i < type_names.size(); ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      if (!label.empty()) label += '+';
      label += type_names[i];
    }
    s.labels_.push_back(label.empty() ? "none" : label);
  }
  s.type_indices_ = std::move(type_indices);
  return s;
}

StateSpace StateSpace::labels(std::vector<std::string> labels) {
  StateSpace s;
  s.kind_ = Kind::Labels;
  s.labels_ = std::move(labels);
  return s;
}

StateSpace StateSpace::parse(const std::string& text, const std::vector<std::string>& content_types) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "intensity") {
    std::int64_t step = 30, max_boundary = 0;
    const auto sep = rest.find(':');
    if (!rest.empty() && !csv::parse_int(rest.substr(0, sep), step)) {
      throw std::invalid_argument("intensity step must be an integer");
    }
    if (step < 1) throw std::invalid_argument("intensity step must be >= 1");
    max_boundary = 3 * step;
    if (sep != std::string::npos && !csv::parse_int(rest.substr(sep + 1), max_boundary)) {
      throw std::invalid_argument("intensity max boundary must be an integer");
    }
    return intensity(fixed_cutpoint_bins(step, max_boundary));
  }
  if (kind == "types") {
    std::vector<std::size_t> indices;
    std::vector<std::string> names;
    for (const auto& field : csv::split_line(rest)) {
      const std::string name(csv::trim(field));
      const auto it = std::find(content_types.begin(), content_types.end(), name);
      if (it == content_types.end()) throw std::invalid_argument("unknown content type '" + name + "'");
      const auto index = static_cast<std::size_t>(it - content_types.begin());
      if (std::find(indices.begin(), indices.end(), index) != indices.end()) {
        throw std::invalid_argument("content type '" + name + "' listed twice");
      }
      indices.push_back(index);
      names.push_back(name);
    }
    return type_combination(std::move(indices), std::move(names));
  }
  throw std::invalid_argument("state space must be intensity:<step>[:<max>] or types:<t1,...>");
}

std::size_t StateSpace::state_of(const WeeklyFeatures& features, int week) const {
  switch (kind_) {
    case Kind::Intensity: return apply(binning_, features.total_clicks(week));
    case Kind::TypeCombination: {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < type_indices_.size(); ++i) {
        if (features.type_active(week, type_indices_[i])) mask |= std::size_t{1} << i;
      }
      return mask;
    }
    case Kind::Labels: break;
  }
  throw std::logic_error("labelled state space cannot classify features");
}

std::vector<StateSequence> build_sequences(const FeatureTable& features, const StateSpace& space,
                                           WeekRange weeks) {
  check_weeks(features, weeks);
  std::vector<StateSequence> out;
  out.reserve(features.students.size());
  for (const auto& [id, f] : features.students) {
    StateSequence seq{id, weeks.first, {}};
    for (int w = weeks.first; w <= weeks.last; ++w) seq.states.push_back(space.state_of(f, w));
    out.push_back(std::move(seq));
  }
  return out;
}

TransitionModel::TransitionModel(StateSpace space, WeekRange weeks)
    : space_(std::move(space)), weeks_(weeks) {
  if (weeks_.first > weeks_.last) throw std::invalid_argument("empty week range");
  const std::size_t s = space_.size();
  counts_.assign(steps() * s * s, 0);
  occupancy_.assign(static_cast<std::size_t>(weeks_.size()) * s, 0);
}

TransitionModel TransitionModel::from_counts(StateSpace space, WeekRange weeks,
                                            std::vector<std::int64_t> counts) {
  TransitionModel model(std::move(space), weeks);
  if (counts.size() != model.counts_.size()) throw std::invalid_argument("count block shape mismatch");
  if (model.steps() == 0) throw std::invalid_argument("a chain needs at least two weeks");
  model.counts_ = std::move(counts);
  const std::size_t s = model.space_.size();
  for (auto v : model.counts_) {
    if (v < 0) throw std::invalid_argument("negative transition count");
  }
  for (std::size_t step = 0; step < model.steps(); ++step) {
    for (std::size_t from = 0; from < s; ++from) {
      model.occupancy_[step * s + from] = model.row_total(step, from);
    }
  }
  const std::size_t last = model.steps();
  for (std::size_t to = 0; to < s; ++to) {
    std::int64_t in = 0;
    for (std::size_t from = 0; from < s; ++from) in += model.count(last - 1, from, to);
    model.occupancy_[last * s + to] = in;
  }
  for (std::size_t step = 1; step < model.steps(); ++step) {
    for (std::size_t state = 0; state < s; ++state) {
      std::int64_t in = 0;
      for (std::size_t from = 0; from < s; ++from) in += model.count(step - 1, from, state);
      if (in != model.row_total(step, state)) {
        throw std::invalid_argument("transition counts do not conserve mass between steps");
      }
    }
  }
  std::int64_t total = 0;
  for (std::size_t from = 0; from < s; ++from) total += model.row_total(0, from);
  model.sequences_ = static_cast<std::size_t>(total);
  return model;
}

std::size_t TransitionModel::index(std::size_t step, std::size_t from, std::size_t to) const {
  const std::size_t s = space_.size();
  if (step >= steps() || from >= s || to >= s) throw std::out_of_range("transition index");
  return (step * s + from) * s + to;
}

std::int64_t TransitionModel::count(std::size_t step, std::size_t from, std::size_t to) const {
  return counts_[index(step, from, to)];
}

std::int64_t TransitionModel::row_total(std::size_t step, std::size_t from) const {
  const auto begin = counts_.begin() + static_cast<std::ptrdiff_t>(index(step, from, 0));
  return std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(space_.size()), std::int64_t{0});
}

double TransitionModel::probability(std::size_t step, std::size_t from, std::size_t to) const {
  const auto total = row_total(step, from);
  if (total == 0) return 0.0;
  return static_cast<double>(count(step, from, to)) / static_cast<double>(total);
}

std::int64_t TransitionModel::occupancy(std::size_t week_offset, std::size_t state) const {
  if (week_offset >= static_cast<std::size_t>(weeks_.size()) || state >= space_.size()) {
    throw std::out_of_range("occupancy index");
  }
  return occupancy_[week_offset * space_.size() + state];
}

void TransitionModel::add_sequence(const StateSequence& sequence) {
  if (sequence.first_week != weeks_.first ||
      sequence.states.size() != static_cast<std::size_t>(weeks_.size())) {
    throw std::invalid_argument("sequence for " + sequence.student.value + " does not cover weeks " +
                                std::to_string(weeks_.first) + "-" + std::to_string(weeks_.last));
  }
  const std::size_t s = space_.size();
  for (auto state : sequence.states) {
    if (state >= s) throw std::invalid_argument("state index outside the state space");
  }
  for (std::size_t w = 0; w < sequence.states.size(); ++w) {
    ++occupancy_[w * s + sequence.states[w]];
    if (w + 1 < sequence.states.size()) ++counts_[index(w, sequence.states[w], sequence.states[w + 1])];
  }
  ++sequences_;
}

void TransitionModel::merge(const TransitionModel& other) {
  if (other.weeks_ != weeks_ || other.space_.size() != space_.size()) {
    throw std::invalid_argument("cannot merge transition models of different shape");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  for (std::size_t i = 0; i < occupancy_.size(); ++i) occupancy_[i] += other.occupancy_[i];
  sequences_ += other.sequences_;
}

TransitionModel fit_transitions(const std::vector<StateSequence>& sequences,
                                const StateSpace& space) {
  if (sequences.empty()) throw DataError(ErrorKind::EmptySequences, "no sequences to fit");
  const auto& first = sequences.front();
  if (first.states.empty()) throw std::invalid_argument("empty state sequence");
  TransitionModel model(space, WeekRange{first.first_week,
                                         first.first_week + static_cast<int>(first.states.size()) - 1});
  for (const auto& seq : sequences) model.add_sequence(seq);
  return model;
}

std::map<Outcome, TransitionModel> split_by_outcome(const std::vector<StateSequence>& sequences,
                                                    const StateSpace& space,
                                                    const std::map<StudentId, Outcome>& outcomes,
                                                    const std::vector<Outcome>& classes) {
  if (sequences.empty()) throw DataError(ErrorKind::EmptySequences, "no sequences to split");
  const auto& first = sequences.front();
  const WeekRange weeks{first.first_week, first.first_week + static_cast<int>(first.states.size()) - 1};
  std::map<Outcome, TransitionModel> out;
  for (auto c : classes) out.try_emplace(c, space, weeks);
  for (const auto& seq : sequences) {
    const auto it = outcomes.find(seq.student);
    if (it == outcomes.end()) {
      throw std::invalid_argument("no outcome for student " + seq.student.value);
    }
    const auto model = out.find(it->second);
    if (model != out.end()) model->second.add_sequence(seq);
  }
  return out;
}

std::vector<StateSequence> sample_sequences(const TransitionModel& model, std::size_t count,
                                            std::uint64_t seed) {
  if (model.empty()) throw DataError(ErrorKind::EmptyModel, "cannot sample an empty chain");
  const std::size_t s = model.space().size();
  std::vector<double> initial(s);
  for (std::size_t i = 0; i < s; ++i) initial[i] = static_cast<double>(model.occupancy(0, i));
  std::vector<double> row(s);
  std::vector<StateSequence> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    KeyedStream rng(seed, {n});
    StateSequence seq{StudentId{"sample" + std::to_string(n)}, model.weeks().first, {}};
    std::size_t state = rng.categorical(initial);
    seq.states.push_back(state);
    for (std::size_t step = 0; step < model.steps(); ++step) {
      for (std::size_t to = 0; to < s; ++to) row[to] = static_cast<double>(model.count(step, state, to));
      state = rng.categorical(row);
      seq.states.push_back(state);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

std::set<StudentId> cohort_filter(const FeatureTable& features, WeekRange weeks) {
  check_weeks(features, weeks);
  std::set<StudentId> out;
  for (const auto& [id, f] : features.students) {
    for (int w = weeks.first; w <= weeks.last; ++w) {
      if (f.total_clicks(w) == 0) {
        out.insert(id);
        break;
      }
    }
  }
  return out;
}

void ScenarioSpec::check(int num_weeks) const {
  for (const auto& [w, c] : weeks) {
    if (w < 0 || w > num_weeks) {
      throw DataError(ErrorKind::InvalidSpec, "scenario '" + name + "' constrains week " +
                                                  std::to_string(w) + " outside 0.." +
                                                  std::to_string(num_weeks));
    }
  }
  if (exists_zero_in) {
    if (exists_zero_in->first < 0 || exists_zero_in->last > num_weeks ||
        exists_zero_in->first > exists_zero_in->last) {
      throw DataError(ErrorKind::InvalidSpec, "scenario '" + name + "' has a bad exists_zero range");
    }
    for (int w = exists_zero_in->first; w <= exists_zero_in->last; ++w) {
      const auto it = weeks.find(w);
      if (it != weeks.end() && it->second == WeekConstraint::NonZero) {
        throw DataError(ErrorKind::InvalidSpec, "scenario '" + name + "' requires week " +
                                                    std::to_string(w) +
                                                    " both non-zero and inside exists_zero");
      }
    }
  }
}

std::vector<ScenarioSpec> default_scenario_catalog() {
  std::vector<ScenarioSpec> catalog;
  ScenarioSpec any;
  any.name = "zero in any of 0-4";
  for (int w = 0; w <= 4; ++w) any.weeks[w] = WeekConstraint::Any;
  any.exists_zero_in = WeekRange{0, 4};
  catalog.push_back(any);
  for (int first = 1; first <= 4; ++first) catalog.push_back(only_zero_in(first, 4));
  for (int last = 0; last <= 3; ++last) catalog.push_back(only_zero_in(0, last));
  for (int last = 3; last >= 1; --last) catalog.push_back(zero_then_active(last));
  return catalog;
}

std::vector<ScenarioSpec> parse_scenario_catalog(const std::string& text, const std::string& source) {
  std::vector<ScenarioSpec> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = csv::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& msg) {
      throw DataError(ErrorKind::InvalidSpec, source, line_no, msg);
    };
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t bar; (bar = line.find('|', start)) != std::string_view::npos; start = bar + 1) {
      parts.emplace_back(csv::trim(line.substr(start, bar - start)));
    }
    parts.emplace_back(csv::trim(line.substr(start)));
    if (parts.size() != 3) fail("expected 'name | w0=.. w1=.. | exists_zero=..'");
    ScenarioSpec spec;
    spec.name = parts[0];
    if (spec.name.empty()) fail("scenario name is empty");

    std::istringstream tokens(parts[1]);
    for (std::string tok; tokens >> tok;) {
      const auto eq = tok.find('=');
      std::int64_t week = 0;
      if (tok.size() < 4 || tok[0] != 'w' || eq == std::string::npos || eq + 2 != tok.size() ||
          !csv::parse_int(std::string_view(tok).substr(1, eq - 1), week)) {
        fail("bad week constraint '" + tok + "'");
      }
      WeekConstraint c{};
      switch (tok.back()) {
        case 'Z': c = WeekConstraint::Zero; break;
        case 'N': c = WeekConstraint::NonZero; break;
        case 'A': c = WeekConstraint::Any; break;
        default: fail("week constraint must be Z, N or A in '" + tok + "'");
      }
      if (!spec.weeks.emplace(static_cast<int>(week), c).second) fail("week listed twice");
    }

    const std::string_view ez = parts[2];
    constexpr std::string_view key = "exists_zero=";
    if (ez.substr(0, key.size()) != key) fail("third field must be exists_zero=<A-B or ->");
    const auto range = csv::trim(ez.substr(key.size()));
    if (range != "-") {
      try {
        spec.exists_zero_in = parse_week_range(std::string(range));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    try {
      spec.check(1 << 20);
    } catch (const DataError& e) {
      fail(e.what());
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> load_scenario_catalog(const std::string& path) {
  return parse_scenario_catalog(csv::read_text(path), path);
}

std::string format_scenario_catalog(const std::vector<ScenarioSpec>& specs) {
  std::string out;
  for (const auto& s : specs) {
    out += s.name + " |";
    for (const auto& [w, c] : s.weeks) out += " w" + std::to_string(w) + "=" + constraint_code(c);
    out += " | exists_zero=";
    out += s.exists_zero_in ? std::to_string(s.exists_zero_in->first) + "-" +
                                  std::to_string(s.exists_zero_in->last)
                            : "-";
    out += '\n';
  }
  return out;
}

bool match_scenario(const ScenarioSpec& spec, const WeeklyFeatures& features) {
  for (const auto& [w, c] : spec.weeks) {
    if (w < 0 || w > features.num_weeks()) return false;
    const bool zero = features.total_clicks(w) == 0;
    if (c == WeekConstraint::Zero && !zero) return false;
    if (c == WeekConstraint::NonZero && zero) return false;
  }
  if (spec.exists_zero_in) {
    for (int w = spec.exists_zero_in->first; w <= spec.exists_zero_in->last; ++w) {
      if (w >= 0 && w <= features.num_weeks() && features.total_clicks(w) == 0) return true;
    }
    return false;
  }
  return true;
}

bool match_scenario(const ScenarioSpec& spec, const FeatureTable& features, const StudentId& student) {
  return match_scenario(spec, features.at(student));
}

namespace {
std::optional<double> percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}
}  // namespace

std::optional<double> ScenarioRow::pct_not_submitted() const { return percent(not_submitted, matched); }
std::optional<double> ScenarioRow::pct_failed() const { return percent(failed, matched); }
std::optional<double> ScenarioRow::pct_passed() const { return percent(passed, matched); }

ScenarioReport scenario_report(const std::vector<ScenarioSpec>& specs, const FeatureTable& features,
                               const std::map<StudentId, Outcome>& outcomes, WeekRange weeks) {
  for (const auto& s : specs) s.check(features.num_weeks);
  const auto cohort = cohort_filter(features, weeks);
  ScenarioReport report;
  report.cohort_size = cohort.size();
  for (const auto& spec : specs) {
    ScenarioRow row;
    row.name = spec.name;
    for (const auto& id : cohort) {
      if (!match_scenario(spec, features.at(id))) continue;
      ++row.matched;
      const auto it = outcomes.find(id);
      switch (it == outcomes.end() ? Outcome::NotSubmitted : it->second) {
        case Outcome::NotSubmitted: ++row.not_submitted; break;
        case Outcome::Failed: ++row.failed; break;
        case Outcome::Passed: ++row.passed; break;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace vle
