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

#include "vle/guha.hpp"
#include "vle/markov.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace vle {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  std::string hex() const;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct GraphStyle {
  static constexpr Rgb kLow{255, 255, 255};
  static constexpr Rgb kHigh{255, 0, 0};

  /// Edges with a lower transition probability are left out.
  double min_edge_probability = 0.01;
  std::string graph_name = "chain";
};

/// Linear white->red blend, clamped to [0,1].
Rgb edge_color(double probability);

/// Layered digraph: one rank per week, one node per visited (week, state),
/// one edge per kept transition. Throws DataError(EmptyModel) when the model
/// has no defined row.
std::string to_dot(const TransitionModel& model, const GraphStyle& style = {});

/// `week_step,from_state,to_state,count,probability` over every defined row.
std::string transitions_csv(const TransitionModel& model);
/// Rebuilds counts from a transitions CSV. State order follows `space` when
/// given, else first appearance in the file.
TransitionModel parse_transitions_csv(const std::string& text,
                                      const StateSpace* space = nullptr);

std::string scenario_report_csv(const ScenarioReport& report);

/// `antecedent,succedent,a,b,c,d,confidence,support,quantifier`, miner order.
/// Ratios use the shortest exact representation so they parse back bit-for-bit.
std::string rules_to_table(const std::vector<Hypothesis>& hypotheses, const QuantifierSpec& spec);
std::string rules_to_json(const std::vector<Hypothesis>& hypotheses, const QuantifierSpec& spec);

struct RuleRow {
  std::string antecedent;
  std::string succedent;
  FourFtTable table;
  double confidence = 0.0;
  double support = 0.0;
  std::string quantifier;
};

std::vector<RuleRow> parse_rules_table(const std::string& text);

}  // namespace vle
