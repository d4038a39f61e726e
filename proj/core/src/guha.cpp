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

#include "vle/guha.hpp"

#include "vle/csv.hpp"
#include "vle/error.hpp"
#include "vle/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace vle {

std::size_t Attribute::category(const WeeklyFeatures& features) const {
  struct Visitor {
    const WeeklyFeatures& f;
    std::size_t operator()(std::monostate) const {
      throw std::logic_error("raw attribute has no feature source");
    }
    std::size_t operator()(const WeekFlagSource& s) const { return f.week_active(s.week) ? 1 : 0; }
    std::size_t operator()(const TypeFlagSource& s) const {
      return f.type_active(s.week, s.type) ? 1 : 0;
    }
    std::size_t operator()(const BinnedCountSource& s) const {
      return apply(s.binning, s.type ? f.type_clicks(s.week, *s.type) : f.total_clicks(s.week));
    }
  };
  return std::visit(Visitor{features}, source);
}

std::string Attribute::render(std::size_t category) const {
  if (std::holds_alternative<BinnedCountSource>(source)) return id + "=bin" + std::to_string(category);
  return id + "=" + std::to_string(category);
}

std::vector<Attribute> build_attribute_space(const FeatureTable& features,
                                             const AttributeSpaceOptions& options) {
  const auto& weeks = options.weeks;
  if (weeks.first < 0 || weeks.last > features.num_weeks || weeks.first > weeks.last) {
    throw std::invalid_argument("attribute space weeks outside the feature table");
  }
  std::vector<std::size_t> types = options.types;
  if (types.empty()) {
    for (std::size_t t = 0; t < features.content_types.size(); ++t) types.push_back(t);
  }
  for (auto t : types) {
    if (t >= features.content_types.size()) throw std::invalid_argument("type index out of range");
  }

  auto binned = [&](int week, std::optional<std::size_t> type, std::string id,
                    std::vector<Attribute>& out) {
    std::vector<std::int64_t> values;
    values.reserve(features.students.size());
    for (const auto& [sid, f] : features.students) {
      values.push_back(type ? f.type_clicks(week, *type) : f.total_clicks(week));
    }
    if (values.size() < options.bins) return;
    Binning binning = equal_frequency_bins(values, options.bins);
    if (binning.bin_count() < 2) return;
    const auto arity = binning.bin_count();
    out.push_back(Attribute{std::move(id), arity, BinnedCountSource{week, type, std::move(binning)}});
  };

  std::vector<Attribute> attributes;
  for (int w = weeks.first; w <= weeks.last; ++w) {
    const std::string prefix = "w" + std::to_string(w) + "_";
    if (options.week_flags) attributes.push_back(Attribute{prefix + "active", 2, WeekFlagSource{w}});
    if (options.type_flags) {
      for (auto t : types) {
        attributes.push_back(Attribute{prefix + features.content_types[t], 2, TypeFlagSource{w, t}});
      }
    }
    if (options.binned_totals) binned(w, std::nullopt, prefix + "total", attributes);
    if (options.binned_type_counts) {
      for (auto t : types) binned(w, t, prefix + features.content_types[t] + "_clicks", attributes);
    }
  }
  return attributes;
}

CategoricalMatrix::CategoricalMatrix(std::vector<Attribute> attributes,
                                     std::vector<StudentId> students,
                                     std::vector<std::uint16_t> cells, std::vector<Outcome> outcomes)
    : attributes_(std::move(attributes)),
      students_(std::move(students)),
      cells_(std::move(cells)),
      outcomes_(std::move(outcomes)) {
  if (cells_.size() != students_.size() * attributes_.size() || outcomes_.size() != students_.size()) {
    throw std::invalid_argument("categorical matrix shape mismatch");
  }
  for (const auto& a : attributes_) {
    if (a.arity < 2 || a.arity > 0xFFFF) throw std::invalid_argument("attribute arity must be >= 2");
  }
  for (std::size_t r = 0; r < students_.size(); ++r) {
    for (std::size_t c = 0; c < attributes_.size(); ++c) {
      if (cells_[r * attributes_.size() + c] >= attributes_[c].arity) {
        throw std::invalid_argument("category outside attribute arity");
      }
    }
  }
}

CategoricalMatrix CategoricalMatrix::build(const FeatureTable& features,
                                           const std::map<StudentId, Outcome>& outcomes,
                                           std::vector<Attribute> attributes) {
  std::vector<StudentId> students;
  std::vector<std::uint16_t> cells;
  std::vector<Outcome> labels;
  students.reserve(features.students.size());
  cells.reserve(features.students.size() * attributes.size());
  for (const auto& [id, f] : features.students) {
    students.push_back(id);
    for (const auto& a : attributes) cells.push_back(static_cast<std::uint16_t>(a.category(f)));
    const auto it = outcomes.find(id);
    labels.push_back(it == outcomes.end() ? Outcome::NotSubmitted : it->second);
  }
  return CategoricalMatrix(std::move(attributes), std::move(students), std::move(cells),
                           std::move(labels));
}

std::string render(const Antecedent& antecedent, const std::vector<Attribute>& attributes) {
  std::string out;
  for (std::size_t i = 0; i < antecedent.literals.size(); ++i) {
    const auto& lit = antecedent.literals[i];
    if (i) out += " & ";
    out += attributes.at(lit.attribute).render(lit.category);
  }
  return out;
}

FourFtTable build_4ft(const Antecedent& antecedent, Outcome succedent,
                      const CategoricalMatrix& matrix) {
  for (const auto& lit : antecedent.literals) {
    if (lit.attribute >= matrix.columns() || lit.category >= matrix.attributes()[lit.attribute].arity) {
      throw DataError(ErrorKind::UnknownAttribute,
                      "literal " + std::to_string(lit.attribute) + "=" + std::to_string(lit.category) +
                          " is not in the matrix");
    }
  }
  FourFtTable t;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    bool ante = true;
    for (const auto& lit : antecedent.literals) {
      if (matrix.category(r, lit.attribute) != lit.category) {
        ante = false;
        break;
      }
    }
    const bool succ = matrix.outcome(r) == succedent;
    if (ante && succ) ++t.a;
    else if (ante) ++t.b;
    else if (succ) ++t.c;
    else ++t.d;
  }
  return t;
}

QuantifierSpec QuantifierSpec::founded_implication(double p, std::int64_t base) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("founded implication needs p in (0,1]");
  if (base < 1) throw std::invalid_argument("base must be >= 1");
  return QuantifierSpec{Kind::FoundedImplication, p, base};
}

QuantifierSpec QuantifierSpec::above_average(double q, std::int64_t base) {
  if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("above-average needs q > 1");
  if (base < 1) throw std::invalid_argument("base must be >= 1");
  return QuantifierSpec{Kind::AboveAverage, q, base};
}

QuantifierSpec QuantifierSpec::parse(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) {
    throw std::invalid_argument("quantifier must look like fi:<p>:<base> or aa:<q>:<base>");
  }
  const auto kind = text.substr(0, first);
  double threshold = 0;
  std::int64_t base = 0;
  if (!csv::parse_double(text.substr(first + 1, second - first - 1), threshold) ||
      !csv::parse_int(text.substr(second + 1), base)) {
    throw std::invalid_argument("quantifier '" + text + "' has a non-numeric parameter");
  }
  if (kind == "fi") return founded_implication(threshold, base);
  if (kind == "aa") return above_average(threshold, base);
  throw std::invalid_argument("unknown quantifier kind '" + kind + "'");
}

std::string QuantifierSpec::to_string() const {
  return std::string(kind == Kind::FoundedImplication ? "fi:" : "aa:") + csv::exact(threshold) + ":" +
         std::to_string(base);
}

QuantifierResult eval_quantifier(const FourFtTable& table, const QuantifierSpec& spec) {
  constexpr double kSlack = 1e-12;
  QuantifierResult r;
  const auto n = table.n();
  const auto covered = table.a + table.b;
  if (covered > 0) r.confidence = static_cast<double>(table.a) / static_cast<double>(covered);
  if (n > 0) r.support = static_cast<double>(table.a) / static_cast<double>(n);
  if (covered == 0 || table.a < spec.base) return r;
  switch (spec.kind) {
    case QuantifierSpec::Kind::FoundedImplication:
      r.satisfied = r.confidence >= spec.threshold - kSlack;
      break;
    case QuantifierSpec::Kind::AboveAverage: {
      const double base_rate = static_cast<double>(table.a + table.c) / static_cast<double>(n);
      r.satisfied = r.confidence >= spec.threshold * base_rate - kSlack;
      break;
    }
  }
  return r;
}

bool prune_bound(std::int64_t partial_a, const QuantifierSpec& spec) { return partial_a >= spec.base; }

bool hypothesis_before(const Hypothesis& lhs, const Hypothesis& rhs) {
  using Wide = __int128;
  // An antecedent covering nobody has confidence 0/1, not 0/0.
  const auto covered = [](const FourFtTable& t) { return std::max<std::int64_t>(t.a + t.b, 1); };
  const Wide lc = static_cast<Wide>(lhs.table.a) * covered(rhs.table);
  const Wide rc = static_cast<Wide>(rhs.table.a) * covered(lhs.table);
  if (lc != rc) return lc > rc;
  const Wide ls = static_cast<Wide>(lhs.table.a) * rhs.table.n();
  const Wide rs = static_cast<Wide>(rhs.table.a) * lhs.table.n();
  if (ls != rs) return ls > rs;
  if (lhs.antecedent_text != rhs.antecedent_text) return lhs.antecedent_text < rhs.antecedent_text;
  return static_cast<int>(lhs.succedent) < static_cast<int>(rhs.succedent);
}

namespace {

using Bits = std::vector<std::uint64_t>;

std::int64_t popcount(const Bits& bits) {
  std::int64_t n = 0;
  for (auto w : bits) n += std::popcount(w);
  return n;
}

std::int64_t popcount_and(const Bits& x, const Bits& y) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) n += std::popcount(x[i] & y[i]);
  return n;
}

class Miner {
public:
  Miner(const CategoricalMatrix& matrix, const std::vector<Outcome>& succedents,
        const QuantifierSpec& spec, const MineOptions& options)
      : matrix_(matrix), succedents_(succedents), spec_(spec), options_(options) {
    const std::size_t words = (matrix.rows() + 63) / 64;
    literal_bits_.resize(matrix.columns());
    for (std::size_t j = 0; j < matrix.columns(); ++j) {
      literal_bits_[j].assign(matrix.attributes()[j].arity, Bits(words, 0));
    }
    succedent_bits_.assign(succedents.size(), Bits(words, 0));
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      const std::uint64_t bit = std::uint64_t{1} << (r % 64);
      for (std::size_t j = 0; j < matrix.columns(); ++j) {
        literal_bits_[j][matrix.category(r, j)][r / 64] |= bit;
      }
      for (std::size_t s = 0; s < succedents.size(); ++s) {
        if (matrix.outcome(r) == succedents[s]) succedent_bits_[s][r / 64] |= bit;
      }
    }
    for (const auto& b : succedent_bits_) succedent_totals_.push_back(popcount(b));
  }

  /// Antecedents whose first literal is `first`, depth-first.
  void mine_from(const Literal& first, std::vector<Hypothesis>& out) const {
    std::vector<Literal> literals{first};
    visit(literals, literal_bits_[first.attribute][first.category], out);
  }

private:
  void visit(std::vector<Literal>& literals, const Bits& cover, std::vector<Hypothesis>& out) const {
    const std::int64_t covered = popcount(cover);
    const std::int64_t n = static_cast<std::int64_t>(matrix_.rows());
    bool extendable = !options_.prune;
    for (std::size_t s = 0; s < succedents_.size(); ++s) {
      FourFtTable t;
      t.a = popcount_and(cover, succedent_bits_[s]);
      t.b = covered - t.a;
      t.c = succedent_totals_[s] - t.a;
      t.d = n - t.a - t.b - t.c;
      const auto q = eval_quantifier(t, spec_);
      if (q.satisfied) {
        Hypothesis h;
        h.antecedent.literals = literals;
        h.antecedent_text = render(h.antecedent, matrix_.attributes());
        h.succedent = succedents_[s];
        h.table = t;
        h.confidence = q.confidence;
        h.support = q.support;
        h.quantifier_satisfied = true;
        out.push_back(std::move(h));
      }
      extendable = extendable || prune_bound(t.a, spec_);
    }
    if (literals.size() >= options_.max_length || !extendable) return;

    Bits next(cover.size());
    for (std::size_t j = literals.back().attribute + 1; j < matrix_.columns(); ++j) {
      for (std::size_t c = 0; c < literal_bits_[j].size(); ++c) {
        const auto& lit = literal_bits_[j][c];
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = cover[i] & lit[i];
        literals.push_back(Literal{j, c});
        visit(literals, next, out);
        literals.pop_back();
      }
    }
  }

  const CategoricalMatrix& matrix_;
  const std::vector<Outcome>& succedents_;
  const QuantifierSpec& spec_;
  const MineOptions& options_;
  std::vector<std::vector<Bits>> literal_bits_;  // [attribute][category]
  std::vector<Bits> succedent_bits_;
  std::vector<std::int64_t> succedent_totals_;
};

}  // namespace

std::vector<Hypothesis> mine_assoc(const CategoricalMatrix& matrix,
                                   const std::vector<Outcome>& succedents,
                                   const QuantifierSpec& spec, const MineOptions& options) {
  if (matrix.columns() == 0) throw DataError(ErrorKind::EmptyAttributeSpace, "no attributes to mine");
  if (matrix.rows() == 0) throw DataError(ErrorKind::EmptyCohort, "no students to mine");
  if (options.max_length < 1) throw std::invalid_argument("max_length must be >= 1");

  const Miner miner(matrix, succedents, spec, options);
  std::vector<Literal> roots;
  for (std::size_t j = 0; j < matrix.columns(); ++j) {
    for (std::size_t c = 0; c < matrix.attributes()[j].arity; ++c) roots.push_back(Literal{j, c});
  }
  std::vector<std::vector<Hypothesis>> found(roots.size());
  // Subtrees of early roots are far larger, so workers pull roots one at a
  // time instead of taking fixed slices.
  const unsigned workers = worker_count(options.threads);
  std::atomic<std::size_t> next_root{0};
  parallel_for(workers, workers, [&](std::size_t, std::size_t) {
    for (std::size_t i = next_root++; i < roots.size(); i = next_root++) {
      miner.mine_from(roots[i], found[i]);
    }
  });

  std::vector<Hypothesis> all;
  for (auto& part : found) {
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(all.begin(), all.end(), hypothesis_before);
  return all;
}

}  // namespace vle
