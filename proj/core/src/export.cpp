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

#include "vle/export.hpp"

#include "vle/csv.hpp"
#include "vle/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace vle {
namespace {

constexpr std::array<const char*, 10> kNodePalette = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
    "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd"};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string node_id(int week, std::size_t state) {
  return quote("w" + std::to_string(week) + "_s" + std::to_string(state));
}

std::string pct(const std::optional<double>& v) { return v ? csv::fixed6(*v) : ""; }

}  // namespace

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

Rgb edge_color(double probability) {
  const double p = std::clamp(std::isnan(probability) ? 0.0 : probability, 0.0, 1.0);
  auto blend = [p](std::uint8_t lo, std::uint8_t hi) {
    return static_cast<std::uint8_t>(std::lround(lo + (static_cast<double>(hi) - lo) * p));
  };
  constexpr auto lo = GraphStyle::kLow;
  constexpr auto hi = GraphStyle::kHigh;
  return Rgb{blend(lo.r, hi.r), blend(lo.g, hi.g), blend(lo.b, hi.b)};
}

std::string to_dot(const TransitionModel& model, const GraphStyle& style) {
  bool any_row = false;
  for (std::size_t step = 0; step < model.steps() && !any_row; ++step) {
    for (std::size_t s = 0; s < model.space().size() && !any_row; ++s) any_row = model.row_defined(step, s);
  }
  if (!any_row) throw DataError(ErrorKind::EmptyModel, "transition model has no defined row");

  const auto weeks = model.weeks();
  const std::size_t states = model.space().size();
  std::ostringstream out;
  out << "digraph " << quote(style.graph_name) << " {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box, style=filled, fontname=\"Helvetica\"];\n";
  out << "  edge [fontname=\"Helvetica\", fontsize=9];\n";
  for (int w = weeks.first; w <= weeks.last; ++w) {
    const auto offset = static_cast<std::size_t>(w - weeks.first);
    out << "  subgraph " << quote("week_" + std::to_string(w)) << " {\n";
    out << "    rank=same;\n";
    out << "    " << quote("week_" + std::to_string(w)) << " [shape=plaintext, style=solid, label="
        << quote("Week " + std::to_string(w)) << "];\n";
    for (std::size_t s = 0; s < states; ++s) {
      if (model.occupancy(offset, s) == 0) continue;
      out << "    " << node_id(w, s) << " [label=" << quote(model.space().label(s))
          << ", fillcolor=" << quote(kNodePalette[s % kNodePalette.size()]) << "];\n";
    }
    out << "  }\n";
  }
  for (int w = weeks.first; w < weeks.last; ++w) {
    out << "  " << quote("week_" + std::to_string(w)) << " -> " << quote("week_" + std::to_string(w + 1))
        << " [style=invis];\n";
  }
  for (std::size_t step = 0; step < model.steps(); ++step) {
    const int w = weeks.first + static_cast<int>(step);
    for (std::size_t from = 0; from < states; ++from) {
      if (!model.row_defined(step, from)) continue;
      for (std::size_t to = 0; to < states; ++to) {
        if (model.count(step, from, to) == 0) continue;
        const double p = model.probability(step, from, to);
        if (p < style.min_edge_probability) continue;
        out << "  " << node_id(w, from) << " -> " << node_id(w + 1, to)
            << " [color=" << quote(edge_color(p).hex()) << ", label=" << quote(csv::fixed6(p))
            << ", weight=" << model.count(step, from, to) << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string transitions_csv(const TransitionModel& model) {
  std::string out = "week_step,from_state,to_state,count,probability\n";
  const auto weeks = model.weeks();
  for (std::size_t step = 0; step < model.steps(); ++step) {
    const int w = weeks.first + static_cast<int>(step);
    const std::string step_name = std::to_string(w) + "-" + std::to_string(w + 1);
    for (std::size_t from = 0; from < model.space().size(); ++from) {
      if (!model.row_defined(step, from)) continue;
      for (std::size_t to = 0; to < model.space().size(); ++to) {
        out += step_name + "," + csv::escape(model.space().label(from)) + "," +
               csv::escape(model.space().label(to)) + "," + std::to_string(model.count(step, from, to)) +
               "," + csv::fixed6(model.probability(step, from, to)) + "\n";
      }
    }
  }
  return out;
}

TransitionModel parse_transitions_csv(const std::string& text, const StateSpace* space) {
  struct Row {
    int from_week;
    std::string from, to;
    std::int64_t count;
  };
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw DataError(ErrorKind::MalformedRow, "<transitions>", line_no, msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (!header) {
      if (f != std::vector<std::string>{"week_step", "from_state", "to_state", "count", "probability"}) {
        throw DataError(ErrorKind::MissingColumn, "<transitions>", line_no,
                        "expected header week_step,from_state,to_state,count,probability");
      }
      header = true;
      continue;
    }
    if (f.size() != 5) fail("expected 5 fields");
    WeekRange step;
    try {
      step = parse_week_range(f[0]);
    } catch (const std::invalid_argument&) {
      fail("bad week_step '" + f[0] + "'");
    }
    if (step.last != step.first + 1) fail("week_step must join consecutive weeks");
    std::int64_t count = 0;
    if (!csv::parse_int(f[3], count) || count < 0) fail("bad count '" + f[3] + "'");
    rows.push_back(Row{step.first, f[1], f[2], count});
  }
  if (rows.empty()) throw DataError(ErrorKind::EmptyModel, "transitions file has no rows");

  std::vector<std::string> labels;
  if (space) {
    labels = space->labels();
  } else {
    // Each exported row block lists every to-state in space order.
    auto note = [&](const std::string& l) {
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    };
    for (const auto& r : rows) note(r.to);
    for (const auto& r : rows) note(r.from);
  }
  auto state_index = [&](const std::string& label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw DataError(ErrorKind::MalformedRow, "unknown state '" + label + "' for the given space");
    }
    return static_cast<std::size_t>(it - labels.begin());
  };
  int first = rows.front().from_week, last = first;
  for (const auto& r : rows) {
    first = std::min(first, r.from_week);
    last = std::max(last, r.from_week + 1);
  }
  const WeekRange weeks{first, last};
  const std::size_t s = labels.size();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(weeks.size() - 1) * s * s, 0);
  for (const auto& r : rows) {
    const auto step = static_cast<std::size_t>(r.from_week - first);
    counts[(step * s + state_index(r.from)) * s + state_index(r.to)] += r.count;
  }
  StateSpace rebuilt = space ? *space : StateSpace::labels(labels);
  try {
    return TransitionModel::from_counts(std::move(rebuilt), weeks, std::move(counts));
  } catch (const std::invalid_argument& e) {
    throw DataError(ErrorKind::MalformedRow, e.what());
  }
}

std::string scenario_report_csv(const ScenarioReport& report) {
  std::string out = "scenario,matched,pct_not_submitted,pct_passed,pct_failed\n";
  for (const auto& row : report.rows) {
    out += csv::escape(row.name) + "," + std::to_string(row.matched) + "," +
           pct(row.pct_not_submitted()) + "," + pct(row.pct_passed()) + "," + pct(row.pct_failed()) + "\n";
  }
  return out;
}

std::string rules_to_table(const std::vector<Hypothesis>& hypotheses, const QuantifierSpec& spec) {
  std::string out = "antecedent,succedent,a,b,c,d,confidence,support,quantifier\n";
  const std::string quantifier = spec.to_string();
  for (const auto& h : hypotheses) {
    out += csv::escape(h.antecedent_text) + "," + std::string(to_string(h.succedent)) + "," +
           std::to_string(h.table.a) + "," + std::to_string(h.table.b) + "," +
           std::to_string(h.table.c) + "," + std::to_string(h.table.d) + "," +
           csv::exact(h.confidence) + "," + csv::exact(h.support) + "," + quantifier + "\n";
  }
  return out;
}

std::string rules_to_json(const std::vector<Hypothesis>& hypotheses, const QuantifierSpec& spec) {
  nlohmann::ordered_json doc;
  doc["quantifier"] = spec.to_string();
  doc["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& h : hypotheses) {
    nlohmann::ordered_json j;
    j["antecedent"] = h.antecedent_text;
    j["succedent"] = std::string(to_string(h.succedent));
    j["a"] = h.table.a;
    j["b"] = h.table.b;
    j["c"] = h.table.c;
    j["d"] = h.table.d;
    j["confidence"] = h.confidence;
    j["support"] = h.support;
    j["quantifier_satisfied"] = h.quantifier_satisfied;
    doc["hypotheses"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::vector<RuleRow> parse_rules_table(const std::string& text) {
  std::vector<RuleRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (!header) {
      if (f.size() != 9 || f[0] != "antecedent" || f[8] != "quantifier") {
        throw DataError(ErrorKind::MissingColumn, "<rules>", line_no, "not a rules table header");
      }
      header = true;
      continue;
    }
    if (f.size() != 9) throw DataError(ErrorKind::MalformedRow, "<rules>", line_no, "expected 9 fields");
    RuleRow r;
    r.antecedent = f[0];
    r.succedent = f[1];
    if (!csv::parse_int(f[2], r.table.a) || !csv::parse_int(f[3], r.table.b) ||
        !csv::parse_int(f[4], r.table.c) || !csv::parse_int(f[5], r.table.d) ||
        !csv::parse_double(f[6], r.confidence) || !csv::parse_double(f[7], r.support)) {
      throw DataError(ErrorKind::MalformedRow, "<rules>", line_no, "non-numeric rule field");
    }
    r.quantifier = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace vle
