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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vle {

struct WeekFlagSource {
  int week = 0;
};
struct TypeFlagSource {
  int week = 0;
  std::size_t type = 0;
};
struct BinnedCountSource {
  int week = 0;
  std::optional<std::size_t> type;  // empty = weekly total
  Binning binning;
};
/// monostate: a column that is already categorical (tests, external data).
using AttributeSource =
    std::variant<std::monostate, WeekFlagSource, TypeFlagSource, BinnedCountSource>;

struct Attribute {
  std::string id;
  std::size_t arity = 2;
  AttributeSource source;

  /// Category of this attribute for one student. Not valid for raw columns.
  std::size_t category(const WeeklyFeatures& features) const;
  /// `w3_total=bin2`, `w2_forum=0`.
  std::string render(std::size_t category) const;
};

/// Weekly activity flags, per-type flags and equal-frequency binned weekly
/// totals over a week range.
struct AttributeSpaceOptions {
  WeekRange weeks{0, 4};
  bool week_flags = true;
  bool type_flags = true;
  /// Restrict type flags to these vocabulary indices; empty = all types.
  std::vector<std::size_t> types;
  bool binned_totals = true;
  bool binned_type_counts = false;
  std::size_t bins = 5;
};

/// Binned attributes whose cohort values collapse to a single bin are
/// dropped (arity must stay >= 2).
std::vector<Attribute> build_attribute_space(const FeatureTable& features,
                                             const AttributeSpaceOptions& options);

/// Students x attributes, each cell a category index, plus the outcome.
class CategoricalMatrix {
public:
  CategoricalMatrix(std::vector<Attribute> attributes, std::vector<StudentId> students,
                    std::vector<std::uint16_t> cells, std::vector<Outcome> outcomes);

  static CategoricalMatrix build(const FeatureTable& features,
                                 const std::map<StudentId, Outcome>& outcomes,
                                 std::vector<Attribute> attributes);

  std::size_t rows() const { return students_.size(); }
  std::size_t columns() const { return attributes_.size(); }
  const std::vector<Attribute>& attributes() const { return attributes_; }
  const std::vector<StudentId>& students() const { return students_; }
  std::size_t category(std::size_t row, std::size_t column) const {
    return cells_[row * attributes_.size() + column];
  }
  Outcome outcome(std::size_t row) const { return outcomes_[row]; }

private:
  std::vector<Attribute> attributes_;
  std::vector<StudentId> students_;
  std::vector<std::uint16_t> cells_;  // row-major
  std::vector<Outcome> outcomes_;
};

struct Literal {
  std::size_t attribute = 0;
  std::size_t category = 0;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Conjunction of literals, at most one per attribute, kept sorted by attribute.
struct Antecedent {
  std::vector<Literal> literals;

  friend bool operator==(const Antecedent&, const Antecedent&) = default;
};

std::string render(const Antecedent& antecedent, const std::vector<Attribute>& attributes);

struct FourFtTable {
  std::int64_t a = 0;  // antecedent and succedent
  std::int64_t b = 0;  // antecedent, not succedent
  std::int64_t c = 0;  // succedent only
  std::int64_t d = 0;  // neither

  std::int64_t n() const { return a + b + c + d; }
  friend bool operator==(const FourFtTable&, const FourFtTable&) = default;
};

/// Throws DataError(UnknownAttribute) for literals outside the matrix.
FourFtTable build_4ft(const Antecedent& antecedent, Outcome succedent,
                      const CategoricalMatrix& matrix);

struct QuantifierSpec {
  enum class Kind { FoundedImplication, AboveAverage };

  Kind kind = Kind::FoundedImplication;
  /// p for founded implication, q for above-average dependence.
  double threshold = 0.9;
  std::int64_t base = 20;

  static QuantifierSpec founded_implication(double p, std::int64_t base);
  static QuantifierSpec above_average(double q, std::int64_t base);
  /// `fi:<p>:<base>` or `aa:<q>:<base>`; throws std::invalid_argument.
  static QuantifierSpec parse(const std::string& text);
  std::string to_string() const;
};

struct QuantifierResult {
  bool satisfied = false;
  double confidence = 0.0;  // a/(a+b), 0 when a+b = 0
  double support = 0.0;     // a/n
};

/// Ratio comparisons allow 1e-12 slack so boundary cases such as
/// a/(a+b) == p are not lost to rounding.
QuantifierResult eval_quantifier(const FourFtTable& table, const QuantifierSpec& spec);

/// False only when no extension of an antecedent with this `a` can reach the
/// base: adding a literal never increases a.
bool prune_bound(std::int64_t partial_a, const QuantifierSpec& spec);

struct Hypothesis {
  Antecedent antecedent;
  std::string antecedent_text;
  Outcome succedent = Outcome::NotSubmitted;
  FourFtTable table;
  double confidence = 0.0;
  double support = 0.0;
  bool quantifier_satisfied = false;
};

/// Confidence desc, support desc, antecedent text asc, succedent asc. Ratios
/// are compared by cross-multiplication, so the order is exact.
bool hypothesis_before(const Hypothesis& lhs, const Hypothesis& rhs);

struct MineOptions {
  std::size_t max_length = 3;
  bool prune = true;
  /// 0 = take the worker count from VLE_MINER_THREADS / hardware.
  unsigned threads = 0;
};

/// Every antecedent up to max_length literals over the matrix attributes,
/// checked against each succedent; returns the satisfied hypotheses sorted by
/// hypothesis_before. Throws DataError(EmptyAttributeSpace / EmptyCohort).
std::vector<Hypothesis> mine_assoc(const CategoricalMatrix& matrix,
                                   const std::vector<Outcome>& succedents,
                                   const QuantifierSpec& spec, const MineOptions& options = {});

}  // namespace vle
