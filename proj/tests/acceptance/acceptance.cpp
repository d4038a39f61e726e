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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "dot_check.hpp"
#include "oracles.hpp"

#include "vle/bayes.hpp"
#include "vle/csv.hpp"
#include "vle/datagen.hpp"
#include "vle/discretize.hpp"
#include "vle/export.hpp"
#include "vle/guha.hpp"
#include "vle/markov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace vle;

namespace {

// Tolerances.
constexpr double kMinerBudgetSeconds = 60.0;
constexpr double kTransitionL1 = 0.05;
constexpr double kTransitionBudgetSeconds = 10.0;
constexpr double kReportTolerance = 0.1;
constexpr double kLateSilenceNotSubmitted = 80.0;
constexpr double kEarlySilencePassed = 70.0;
constexpr double kPosteriorTolerance = 1e-12;
constexpr double kConditionalTolerance = 0.05;
constexpr double kRowSumTolerance = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const CohortSpec& default_spec() {
  static const CohortSpec spec = CohortSpec::default_spec();
  return spec;
}

struct DefaultCohort {
  GeneratedCohort cohort;
  FeatureTable features;
  std::map<StudentId, Outcome> outcomes;
};

const DefaultCohort& default_cohort() {
  static const DefaultCohort c = [] {
    DefaultCohort d;
    d.cohort = generate(default_spec());
    d.features = aggregate_weekly(d.cohort.dataset);
    d.outcomes = label_outcomes(d.cohort.dataset);
    return d;
  }();
  return c;
}

std::string fixture(const std::string& name) {
  return std::string(VLE_FIXTURE_DIR) + "/table1/" + name;
}

Dataset fixture_dataset() {
  return load_dataset(fixture("clicks.csv"), fixture("assessments.csv"),
                      parse_config(csv::read_text(fixture("config.txt"))));
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << v;
  return s.str();
}

// 1 ------------------------------------------------------------------------
Check miner_oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(2026);
  const auto start = Clock::now();
  std::size_t rules = 0;
  for (int round = 0; round < 50; ++round) {
    const std::size_t columns = 1 + rng() % 12;
    const std::size_t rows = 1 + rng() % 300;
    const auto m = testing::random_matrix(rng, columns, rows);
    const std::size_t max_length = 1 + rng() % 3;
    const bool fi = rng() % 2 == 0;
    const auto kind = fi ? QuantifierSpec::Kind::FoundedImplication : QuantifierSpec::Kind::AboveAverage;
    const testing::Percent p{fi ? static_cast<std::int64_t>(50 + rng() % 51)
                                : static_cast<std::int64_t>(110 + rng() % 100)};
    const std::int64_t base = 1 + static_cast<std::int64_t>(rng() % 15);
    const auto spec = fi ? QuantifierSpec::founded_implication(p.value(), base)
                         : QuantifierSpec::above_average(p.value(), base);
    const std::vector<Outcome> succ{Outcome::NotSubmitted, Outcome::Passed};
    const auto mined = mine_assoc(m, succ, spec, MineOptions{max_length, true, 0});
    const auto oracle = testing::brute_force_assoc(m, succ, kind, p, base, max_length);
    rules += oracle.size();
    bool same = mined.size() == oracle.size();
    for (std::size_t i = 0; same && i < mined.size(); ++i) {
      same = mined[i].antecedent_text == oracle[i].antecedent && mined[i].succedent == oracle[i].succedent &&
             mined[i].table == oracle[i].table;
    }
    if (!same) c.fail("dataset " + std::to_string(round) + " differs from brute force");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= kMinerBudgetSeconds) c.fail("took " + fmt(elapsed, 1) + " s");
  if (c.ok) c.detail = "50 datasets, " + std::to_string(rules) + " rules, " + fmt(elapsed, 2) + " s";
  return c;
}

// 2 ------------------------------------------------------------------------
Check transition_recovery() {
  Check c;
  const auto start = Clock::now();
  const auto cohort = generate(default_spec());
  const auto features = aggregate_weekly(cohort.dataset);
  const auto space = StateSpace::parse("intensity:30", features.content_types);
  const auto model = fit_transitions(build_sequences(features, space, WeekRange{0, features.num_weeks}), space);
  const double elapsed = seconds_since(start);
  const auto truth = ground_truth(default_spec(), space.binning());
  double worst = 0.0;
  std::size_t rows = 0;
  for (std::size_t step = 0; step < model.steps(); ++step) {
    for (std::size_t from = 0; from < space.size(); ++from) {
      if (!model.row_defined(step, from)) continue;
      ++rows;
      double l1 = 0.0;
      for (std::size_t to = 0; to < space.size(); ++to) {
        l1 += std::abs(model.probability(step, from, to) - truth.pooled(step, from, to));
      }
      worst = std::max(worst, l1);
    }
  }
  if (worst > kTransitionL1) c.fail("max row L1 " + fmt(worst));
  if (elapsed >= kTransitionBudgetSeconds) c.fail("took " + fmt(elapsed, 1) + " s");
  if (c.ok) c.detail = std::to_string(rows) + " rows, max L1 " + fmt(worst) + ", " + fmt(elapsed, 2) + " s";
  return c;
}

// 3 ------------------------------------------------------------------------
Check fixture_report() {
  Check c;
  const auto d = fixture_dataset();
  const auto features = aggregate_weekly(d);
  const auto catalog = default_scenario_catalog();
  const WeekRange weeks{0, 4};
  const auto report = scenario_report(catalog, features, label_outcomes(d), weeks);

  std::ifstream in(fixture("expected_report.csv"));
  std::vector<std::vector<std::string>> expected;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    expected.push_back(csv::split_line(line));
  }
  if (expected.size() != report.rows.size() + 1) {
    c.fail("expected " + std::to_string(expected.size() - 1) + " rows");
    return c;
  }
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const auto& want = expected[i + 1];
    const bool ok = row.name == want[0] && std::to_string(row.matched) == want[1] &&
                    std::abs(*row.pct_not_submitted() - std::stod(want[2])) <= kReportTolerance &&
                    std::abs(*row.pct_passed() - std::stod(want[3])) <= kReportTolerance &&
                    std::abs(*row.pct_failed() - std::stod(want[4])) <= kReportTolerance;
    if (!ok) c.fail("row '" + row.name + "' differs");
  }
  const auto cohort = cohort_filter(features, weeks);
  if (report.rows[0].matched != cohort.size()) c.fail("scenario 1 does not cover the cohort");
  for (const auto& id : cohort) {
    int hits = 0;
    for (std::size_t s = 1; s <= 8; ++s) hits += match_scenario(catalog[s], features, id);
    if (hits > 1) c.fail(id.value + " matches several 'zero only' scenarios");
  }
  if (c.ok) c.detail = "12 rows within 0.1 over a cohort of " + std::to_string(cohort.size());
  return c;
}

// 4 ------------------------------------------------------------------------
Check synthetic_contrast() {
  Check c;
  const auto& d = default_cohort();
  const auto report = scenario_report(default_scenario_catalog(), d.features, d.outcomes, WeekRange{0, 4});
  auto find = [&](const std::string& name) -> const ScenarioRow& {
    for (const auto& r : report.rows) {
      if (r.name == name) return r;
    }
    throw std::out_of_range(name);
  };
  std::string detail;
  for (const char* name : {"zero only in 1-4", "zero only in 2-4", "zero only in 3-4"}) {
    const auto pct = find(name).pct_not_submitted();
    if (!pct || *pct <= kLateSilenceNotSubmitted) c.fail(std::string(name) + " NotSubmitted " + fmt(pct.value_or(0), 2));
    detail += std::string(name) + " NS " + fmt(pct.value_or(0), 1) + "%, ";
  }
  const auto passed = find("zero only in 0-1").pct_passed();
  if (!passed || *passed <= kEarlySilencePassed) c.fail("zero only in 0-1 Passed " + fmt(passed.value_or(0), 2));
  if (c.ok) c.detail = detail + "zero only in 0-1 Passed " + fmt(passed.value_or(0), 1) + "%";
  return c;
}

// 5 ------------------------------------------------------------------------
Check bayes_posteriors() {
  Check c;
  struct Case {
    double prior, p_fail, p_pass;
    bool flag;
    double expected;
  };
  // P(fail|x) = prior * p(x|fail) / (prior * p(x|fail) + (1 - prior) * p(x|pass)).
  const std::vector<Case> cases{{0.5, 0.8, 0.2, true, 0.8},   {0.5, 0.8, 0.2, false, 0.2},
                                {0.3, 0.6, 0.1, true, 0.72},  {0.3, 0.6, 0.1, false, 0.16},
                                {0.25, 0.5, 0.5, true, 0.25}, {0.9, 0.1, 0.9, true, 0.5}};
  for (const auto& k : cases) {
    const BayesModel m(k.prior, {FlagRef{0, std::nullopt}}, {{"w0_active", k.p_fail, k.p_pass}});
    const double got = fail_probability(m, {k.flag});
    if (std::abs(got - k.expected) > kPosteriorTolerance) c.fail("posterior " + fmt(got, 15) + " vs " + fmt(k.expected));
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  double worst_sum = 0.0;
  for (int round = 0; round < 1000; ++round) {
    const std::size_t k = 1 + rng() % 30;
    std::vector<FlagRef> flags(k, FlagRef{1, std::nullopt});
    std::vector<BayesModel::Conditional> cond;
    std::vector<bool> x;
    for (std::size_t i = 0; i < k; ++i) {
      cond.push_back({"f", unit(rng), unit(rng)});
      x.push_back(rng() % 2);
    }
    const auto p = posterior(BayesModel(unit(rng), flags, cond), x);
    worst_sum = std::max(worst_sum, std::abs(p.fail + p.pass - 1.0));
  }
  if (worst_sum > kPosteriorTolerance) c.fail("posteriors sum off by " + fmt(worst_sum, 15));

  const auto& d = default_cohort();
  std::vector<FlagRef> flags;
  for (int w = 0; w <= 4; ++w) {
    flags.push_back(FlagRef{w, std::nullopt});
    for (std::size_t t = 0; t < d.features.content_types.size(); ++t) flags.push_back(FlagRef{w, t});
  }
  const auto model = fit_bayes(d.features, d.outcomes, flags);
  double worst = 0.0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const auto truth = flag_truth(default_spec(), flags[i].week, flags[i].type);
    worst = std::max({worst, std::abs(model.conditionals()[i].p_given_fail - truth.p_given_fail),
                      std::abs(model.conditionals()[i].p_given_pass - truth.p_given_pass)});
  }
  if (worst > kConditionalTolerance) c.fail("conditional off by " + fmt(worst));
  if (c.ok) {
    c.detail = "hand cases exact, sum error " + fmt(worst_sum, 17) + ", " + std::to_string(flags.size()) +
               " conditionals within " + fmt(worst);
  }
  return c;
}

// 6 ------------------------------------------------------------------------
Check discretization() {
  Check c;
  std::mt19937_64 rng(66);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 5 + rng() % 400;
    std::vector<std::int64_t> values(n);
    const int shape = static_cast<int>(rng() % 3);
    std::geometric_distribution<int> tail(0.05);
    for (auto& v : values) {
      v = shape == 0 ? static_cast<std::int64_t>(rng() % 10000)
          : shape == 1 ? static_cast<std::int64_t>(rng() % 12)
                       : (rng() % 3 == 0 ? 0 : tail(rng));
    }
    const std::size_t k = std::min<std::size_t>(2 + rng() % 6, n);
    const auto b = equal_frequency_bins(values, k);
    std::vector<std::size_t> sizes(b.bin_count(), 0);
    std::map<std::int64_t, std::size_t> ties;
    for (auto v : values) {
      ++sizes[apply(b, v)];
      ++ties[v];
    }
    std::size_t largest = 0;
    for (const auto& [v, t] : ties) largest = std::max(largest, t);
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    if (*hi - *lo > largest) c.fail("multiset " + std::to_string(round) + " spread " + std::to_string(*hi - *lo));
    std::size_t previous = 0;
    for (std::int64_t v = 0; v <= 10000; v += 7) {
      const auto bin = apply(b, v);
      if (bin < previous) c.fail("apply not monotone");
      previous = bin;
    }
  }
  const auto step = fixed_cutpoint_bins(30, 90);
  if (apply(step, 0) != 0) c.fail("0 not in its own bin");
  if (apply(step, 1) == 0) c.fail("1 shares the zero bin");
  if (apply(step, 30) != 1) c.fail("30 not in bin 1");
  if (c.ok) c.detail = "100 multisets, monotone apply, step-30 0->0 and 30->1";
  return c;
}

// 7 ------------------------------------------------------------------------
void check_invariants(const Dataset& d, Check& c, const std::string& label) {
  const auto features = aggregate_weekly(d);
  std::map<StudentId, std::int64_t> raw;
  for (const auto& r : d.clicks()) raw[r.student] += r.clicks;
  for (const auto& [id, f] : features.students) {
    std::int64_t weekly = 0;
    for (int w = 0; w <= features.num_weeks; ++w) {
      weekly += f.total_clicks(w);
      std::int64_t by_type = 0;
      for (std::size_t t = 0; t < f.num_types(); ++t) by_type += f.type_clicks(w, t);
      if (by_type != f.total_clicks(w)) c.fail(label + ": type split loses clicks");
    }
    if (weekly != raw[id]) c.fail(label + ": weekly totals lose clicks for " + id.value);
  }
  const auto outcomes = label_outcomes(d);
  for (const char* space_text : {"intensity:30", "intensity:7:35"}) {
    const auto space = StateSpace::parse(space_text, features.content_types);
    const auto seqs = build_sequences(features, space, WeekRange{0, features.num_weeks});
    std::vector<TransitionModel> models{fit_transitions(seqs, space)};
    for (auto& [o, m] : split_by_outcome(seqs, space, outcomes,
                                         {Outcome::NotSubmitted, Outcome::Failed, Outcome::Passed})) {
      models.push_back(m);
    }
    for (const auto& m : models) {
      for (std::size_t step = 0; step < m.steps(); ++step) {
        std::int64_t layer = 0;
        for (std::size_t from = 0; from < space.size(); ++from) {
          layer += m.row_total(step, from);
          if (!m.row_defined(step, from)) continue;
          double sum = 0.0;
          for (std::size_t to = 0; to < space.size(); ++to) sum += m.probability(step, from, to);
          if (std::abs(sum - 1.0) > kRowSumTolerance) c.fail(label + ": row sums to " + fmt(sum, 12));
        }
        if (layer != static_cast<std::int64_t>(m.sequences())) c.fail(label + ": layer mass not conserved");
      }
    }
  }
}

Check invariants() {
  Check c;
  check_invariants(fixture_dataset(), c, "fixture");
  check_invariants(default_cohort().cohort.dataset, c, "default cohort");
  std::mt19937_64 rng(77);
  for (int round = 0; round < 100; ++round) {
    check_invariants(testing::random_dataset(rng, 1 + rng() % 150), c, "random " + std::to_string(round));
  }
  if (c.ok) c.detail = "fixture, default cohort and 100 random datasets";
  return c;
}

// 8 ------------------------------------------------------------------------
std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out.push_back(ch);
    }
  }
  return out + "'";
}

int run_tool(const std::vector<std::string>& args, const std::string& threads, const std::string& log) {
  std::string cmd = "VLE_MINER_THREADS=" + threads + " " + shell_quote(VLE_MINER_EXE);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " >" + shell_quote(log) + " 2>&1";
  return std::system(cmd.c_str());
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = csv::read_text(e.path().string());
  }
  return files;
}

Check determinism() {
  Check c;
  testing::TempDir root;
  const fs::path base(root.path());
  const fs::path data = base / "data";
  const fs::path out = base / "out";
  const std::string log = (base / "log.txt").string();

  if (run_tool({"generate", "--spec", "default", "--students", "3000", "--out", data.string()}, "1", log) != 0) {
    c.fail("generate failed: " + csv::read_text(log));
    return c;
  }
  const std::vector<std::string> inputs{"--clicks", (data / "clicks.csv").string(), "--assessments",
                                        (data / "assessments.csv").string(), "--config",
                                        (data / "config.txt").string(), "--out", out.string()};
  auto with = [&](std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), inputs.begin(), inputs.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  std::vector<std::vector<std::string>> commands{
      {"generate", "--spec", "default", "--seed", "11", "--students", "2000", "--out", out.string()},
      with({"ingest-check"}, {}),
      with({"features"}, {}),
      with({"bayes"}, {"--weeks", "0-4"}),
      with({"guha"}, {"--quantifier", "fi:0.8:20", "--max-length", "3"}),
      with({"guha"}, {"--quantifier", "aa:1.5:20", "--max-length", "2", "--bins", "3"}),
      with({"markov"}, {"--space", "intensity:30", "--split-outcome"}),
      with({"markov"}, {"--space", "types:forum,quiz,resource", "--zero-cohort"}),
      with({"markov"}, {"--scenario", "zero only in 3-4", "--weeks", "0-4"}),
      with({"scenarios"}, {"--weeks", "0-4"}),
  };
  std::size_t compared = 0;
  auto check_command = [&](const std::vector<std::string>& args, const std::string& name) {
    std::map<std::string, std::string> reference;
    bool first = true;
    for (const char* threads : {"1", "8", "8", "1"}) {
      fs::remove_all(out);
      if (run_tool(args, threads, log) != 0) {
        c.fail(name + " failed: " + csv::read_text(log));
        return;
      }
      auto files = snapshot(out);
      if (first) {
        reference = std::move(files);
        first = false;
      } else if (files != reference) {
        c.fail(name + " output differs at VLE_MINER_THREADS=" + threads);
      }
    }
    compared += reference.size();
  };
  for (const auto& args : commands) check_command(args, args.front());

  // render-dot reads a transitions file produced above.
  const fs::path chain = base / "chain";
  fs::remove_all(out);
  run_tool(with({"markov"}, {"--space", "intensity:30"}), "1", log);
  fs::create_directories(chain);
  fs::copy_file(out / "transitions.csv", chain / "transitions.csv");
  check_command({"render-dot", "--transitions", (chain / "transitions.csv").string(), "--space",
                 "intensity:30", "--out", out.string()},
                "render-dot");

  // replay reproduces the run that wrote the manifest.
  fs::remove_all(out);
  run_tool(with({"scenarios"}, {"--weeks", "0-4"}), "8", log);
  const auto before = snapshot(out);
  fs::copy_file(out / "manifest.json", base / "manifest.json");
  fs::remove_all(out);
  if (run_tool({"replay", "--manifest", (base / "manifest.json").string()}, "1", log) != 0 ||
      snapshot(out) != before) {
    c.fail("replay does not reproduce its manifest's outputs");
  }
  if (c.ok) c.detail = std::to_string(commands.size() + 2) + " invocations, " + std::to_string(compared) +
                       " files identical at 1 and 8 threads";
  return c;
}

// 9 ------------------------------------------------------------------------
void check_dot(const TransitionModel& m, double min_edge, Check& c, const std::string& label) {
  GraphStyle style;
  style.min_edge_probability = min_edge;
  testing::DotGraph g;
  try {
    g = testing::parse_dot(to_dot(m, style));
  } catch (const testing::DotSyntaxError& e) {
    c.fail(label + ": " + e.what());
    return;
  }
  auto week = [&](const std::string& node) {
    const auto& sub = g.nodes.at(node).subgraph;
    return sub.rfind("week_", 0) == 0 ? std::stoi(sub.substr(5)) : -1;
  };
  std::vector<std::pair<double, int>> shade;
  for (const auto& e : g.edges) {
    const int from = week(e.from);
    if (from < 0 || week(e.to) != from + 1) c.fail(label + ": edge " + e.from + " -> " + e.to);
    const auto colour = e.attrs.find("color");
    if (colour == e.attrs.end()) continue;
    const auto& hex = colour->second;
    const int paleness = std::stoi(hex.substr(3, 2), nullptr, 16) + std::stoi(hex.substr(5, 2), nullptr, 16);
    shade.emplace_back(std::stod(e.attrs.at("label")), paleness);
  }
  std::sort(shade.begin(), shade.end());
  for (std::size_t i = 1; i < shade.size(); ++i) {
    if (shade[i].second > shade[i - 1].second) c.fail(label + ": colour not monotone in probability");
  }
}

Check dot_validity() {
  Check c;
  std::size_t graphs = 0;
  auto models_of = [&](const Dataset& d, const std::string& label) {
    const auto features = aggregate_weekly(d);
    const auto outcomes = label_outcomes(d);
    std::vector<std::string> spaces{"intensity:30", "intensity:10:50"};
    if (features.content_types.size() >= 3) {
      spaces.push_back("types:" + features.content_types[0] + "," + features.content_types[1] + "," +
                       features.content_types[2]);
    }
    for (const auto& text : spaces) {
      const auto space = StateSpace::parse(text, features.content_types);
      const auto seqs = build_sequences(features, space, WeekRange{0, features.num_weeks});
      for (double min_edge : {0.0, 0.01, 0.2}) {
        check_dot(fit_transitions(seqs, space), min_edge, c, label + " " + text);
        ++graphs;
      }
      for (const auto& [o, m] : split_by_outcome(seqs, space, outcomes, {Outcome::NotSubmitted, Outcome::Passed})) {
        if (m.empty()) continue;
        check_dot(m, 0.01, c, label + " " + text);
        ++graphs;
      }
    }
  };
  models_of(fixture_dataset(), "fixture");
  models_of(default_cohort().cohort.dataset, "default cohort");
  std::mt19937_64 rng(99);
  for (int round = 0; round < 30; ++round) {
    models_of(testing::random_dataset(rng, 1 + rng() % 120), "random " + std::to_string(round));
  }
  if (c.ok) c.detail = std::to_string(graphs) + " graphs parsed, layered and monotone";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"miner matches brute-force enumeration", miner_oracle_equivalence},
      {"transition recovery on the default cohort", transition_recovery},
      {"fixture scenario report", fixture_report},
      {"synthetic scenario contrast", synthetic_contrast},
      {"bayes posteriors and conditionals", bayes_posteriors},
      {"discretization properties", discretization},
      {"conservation invariants", invariants},
      {"byte-identical CLI outputs", determinism},
      {"DOT validity", dot_validity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    failures += !result.ok;
    std::cout << (result.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << result.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
