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

#include "vle/datagen.hpp"

#include "vle/csv.hpp"
#include "vle/error.hpp"
#include "vle/parallel.hpp"
#include "vle/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

namespace vle {
namespace {

constexpr double kSumTolerance = 1e-9;

/// Distribution of one week's click total over the bins of `binning`.
std::vector<double> week_distribution(double zero_probability, double mean_clicks,
                                      const Binning& binning) {
  std::vector<double> dist(binning.bin_count(), 0.0);
  dist[apply(binning, 0)] += zero_probability;
  const double lambda = std::max(mean_clicks - 1.0, 0.0);
  const double active = 1.0 - zero_probability;
  const double last_boundary = binning.boundaries.empty() ? 0.0 : binning.boundaries.back();
  const auto limit = static_cast<std::int64_t>(
      std::max(lambda + 60.0 * std::sqrt(lambda) + 200.0, last_boundary + 2.0));
  double covered = 0.0;
  for (std::int64_t k = 0; k <= limit; ++k) {
    const double pmf = lambda == 0.0
                           ? (k == 0 ? 1.0 : 0.0)
                           : std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                                      std::lgamma(static_cast<double>(k) + 1.0));
    dist[apply(binning, k + 1)] += active * pmf;
    covered += pmf;
  }
  // The remaining tail lies beyond every boundary.
  dist[apply(binning, limit + 2)] += active * std::max(0.0, 1.0 - covered);
  return dist;
}

std::vector<double> normalized(const std::vector<double>& w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] / total;
  return out;
}

double fail_rate(const Archetype& a, FailClass fail_class) {
  return a.outcome[0] + (fail_class == FailClass::NotSubmittedOrFailed ? a.outcome[1] : 0.0);
}

nlohmann::ordered_json config_json(const PresentationConfig& c) {
  nlohmann::ordered_json j;
  j["num_weeks"] = c.num_weeks;
  j["pass_threshold"] = c.pass_threshold;
  j["tma_of_interest"] = c.tma_of_interest;
  j["content_types"] = c.content_vocabulary;
  return j;
}

}  // namespace

void CohortSpec::check() const {
  auto fail = [](const std::string& msg) { throw DataError(ErrorKind::InvalidSpec, msg); };
  try {
    config.check();
  } catch (const DataError& e) {
    fail(e.what());
  }
  if (archetypes.empty()) {
    if (n_students > 0) fail("a non-empty cohort needs at least one archetype");
    return;
  }
  const auto weeks = static_cast<std::size_t>(config.num_weeks) + 1;
  double weight_sum = 0.0;
  for (const auto& a : archetypes) {
    const std::string who = "archetype '" + a.name + "': ";
    if (!(a.weight >= 0.0 && a.weight <= 1.0)) fail(who + "weight outside [0,1]");
    weight_sum += a.weight;
    if (a.zero_probability.size() != weeks || a.mean_clicks.size() != weeks) {
      fail(who + "weekly vectors need " + std::to_string(weeks) + " entries");
    }
    for (double z : a.zero_probability) {
      if (!(z >= 0.0 && z <= 1.0)) fail(who + "zero probability outside [0,1]");
    }
    for (double m : a.mean_clicks) {
      if (!(m >= 0.0) || !std::isfinite(m)) fail(who + "mean clicks must be >= 0");
    }
    if (a.type_propensity.size() != config.content_vocabulary.size()) {
      fail(who + "needs one type propensity per content type");
    }
    double prop = 0.0;
    for (double p : a.type_propensity) {
      if (!(p >= 0.0) || !std::isfinite(p)) fail(who + "negative type propensity");
      prop += p;
    }
    if (!(prop > 0.0)) fail(who + "type propensities sum to zero");
    double out = 0.0;
    for (double p : a.outcome) {
      if (!(p >= 0.0)) fail(who + "negative outcome probability");
      out += p;
    }
    if (std::abs(out - 1.0) > kSumTolerance) fail(who + "outcome distribution must sum to 1");
  }
  if (std::abs(weight_sum - 1.0) > kSumTolerance) fail("archetype weights must sum to 1");
}

CohortSpec CohortSpec::default_spec() {
  CohortSpec spec;
  spec.n_students = 10000;
  spec.seed = 7;
  // vocabulary: forum wiki resource quiz oucontent url subpage homepage glossary page collaborate
  // Intensities sit far from the 30/60/90 cut points so Poisson tails never
  // seed near-empty transition rows: engaged students land above 90 clicks,
  // lurkers and at-risk students below 30.
  Archetype engaged{"engaged", 0.45,
                    {0.35, 0.15, 0.02, 0.02, 0.02, 0.02},
                    {150, 150, 150, 150, 150, 150},
                    {0.15, 0.03, 0.12, 0.15, 0.25, 0.05, 0.08, 0.12, 0.02, 0.02, 0.01},
                    {0.07, 0.03, 0.90}};
  Archetype lurker{"lurker", 0.30,
                   {0.05, 0.05, 0.05, 0.05, 0.05, 0.05},
                   {10, 10, 10, 10, 10, 10},
                   {0.05, 0.0, 0.20, 0.0, 0.35, 0.10, 0.10, 0.20, 0.0, 0.0, 0.0},
                   {0.20, 0.15, 0.65}};
  Archetype at_risk{"at-risk", 0.25,
                    {0.03, 0.40, 0.70, 0.85, 0.90, 0.90},
                    {10, 10, 10, 10, 10, 10},
                    {0.20, 0.0, 0.15, 0.0, 0.25, 0.05, 0.05, 0.30, 0.0, 0.0, 0.0},
                    {0.92, 0.03, 0.05}};
  spec.archetypes = {engaged, lurker, at_risk};
  return spec;
}

std::string CohortSpec::to_json() const {
  nlohmann::ordered_json j;
  j["n_students"] = n_students;
  j["seed"] = seed;
  j["config"] = config_json(config);
  j["archetypes"] = nlohmann::ordered_json::array();
  for (const auto& a : archetypes) {
    nlohmann::ordered_json aj;
    aj["name"] = a.name;
    aj["weight"] = a.weight;
    aj["zero_probability"] = a.zero_probability;
    aj["mean_clicks"] = a.mean_clicks;
    aj["type_propensity"] = a.type_propensity;
    aj["outcome"] = {{"not_submitted", a.outcome[0]}, {"failed", a.outcome[1]}, {"passed", a.outcome[2]}};
    j["archetypes"].push_back(std::move(aj));
  }
  return j.dump(2) + "\n";
}

CohortSpec CohortSpec::from_json(const std::string& text) {
  CohortSpec spec;
  try {
    const auto j = nlohmann::json::parse(text);
    spec.n_students = j.at("n_students").get<std::size_t>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("config")) {
      const auto& c = j.at("config");
      spec.config.num_weeks = c.value("num_weeks", spec.config.num_weeks);
      spec.config.pass_threshold = c.value("pass_threshold", spec.config.pass_threshold);
      spec.config.tma_of_interest = c.value("tma_of_interest", spec.config.tma_of_interest);
      if (c.contains("content_types")) {
        spec.config.content_vocabulary = c.at("content_types").get<std::vector<std::string>>();
      }
    }
    for (const auto& aj : j.at("archetypes")) {
      Archetype a;
      a.name = aj.at("name").get<std::string>();
      a.weight = aj.at("weight").get<double>();
      a.zero_probability = aj.at("zero_probability").get<std::vector<double>>();
      a.mean_clicks = aj.at("mean_clicks").get<std::vector<double>>();
      a.type_propensity = aj.at("type_propensity").get<std::vector<double>>();
      const auto& o = aj.at("outcome");
      a.outcome = {o.at("not_submitted").get<double>(), o.at("failed").get<double>(),
                   o.at("passed").get<double>()};
      spec.archetypes.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(ErrorKind::InvalidSpec, std::string("cohort spec JSON: ") + e.what());
  }
  spec.check();
  return spec;
}

GroundTruth ground_truth(const CohortSpec& spec, const Binning& binning) {
  spec.check();
  GroundTruth truth;
  truth.bins = binning.bin_count();
  if (spec.archetypes.empty()) return truth;
  const std::size_t weeks = static_cast<std::size_t>(spec.config.num_weeks) + 1;
  const std::size_t bins = truth.bins;
  for (const auto& a : spec.archetypes) {
    truth.archetype_weights.push_back(a.weight);
    std::vector<std::vector<double>> per_week;
    for (std::size_t w = 0; w < weeks; ++w) {
      per_week.push_back(week_distribution(a.zero_probability[w], a.mean_clicks[w], binning));
    }
    std::vector<std::vector<double>> transitions;
    for (std::size_t step = 0; step + 1 < weeks; ++step) {
      std::vector<double> m(bins * bins);
      for (std::size_t from = 0; from < bins; ++from) {
        for (std::size_t to = 0; to < bins; ++to) m[from * bins + to] = per_week[step + 1][to];
      }
      transitions.push_back(std::move(m));
    }
    truth.state_distribution.push_back(std::move(per_week));
    truth.archetype_transitions.push_back(std::move(transitions));
    for (std::size_t o = 0; o < 3; ++o) truth.outcome_rates[o] += a.weight * a.outcome[o];
  }
  // P(s' at w+1 | s at w) over the mixture; weeks are independent given the
  // archetype.
  truth.pooled_row_defined.assign((weeks - 1) * bins, false);
  for (std::size_t step = 0; step + 1 < weeks; ++step) {
    std::vector<double> m(bins * bins, 0.0);
    for (std::size_t from = 0; from < bins; ++from) {
      double mass = 0.0;
      for (std::size_t a = 0; a < spec.archetypes.size(); ++a) {
        mass += truth.archetype_weights[a] * truth.state_distribution[a][step][from];
      }
      if (!(mass > 0.0)) continue;
      truth.pooled_row_defined[step * bins + from] = true;
      for (std::size_t to = 0; to < bins; ++to) {
        double joint = 0.0;
        for (std::size_t a = 0; a < spec.archetypes.size(); ++a) {
          joint += truth.archetype_weights[a] * truth.state_distribution[a][step][from] *
                   truth.state_distribution[a][step + 1][to];
        }
        m[from * bins + to] = joint / mass;
      }
    }
    truth.pooled_transitions.push_back(std::move(m));
  }
  return truth;
}

FlagTruth flag_truth(const CohortSpec& spec, int week, std::optional<std::size_t> type,
                     FailClass fail_class) {
  spec.check();
  if (week < 0 || week > spec.config.num_weeks) throw std::invalid_argument("week out of range");
  double fail_mass = 0.0, pass_mass = 0.0, fail_on = 0.0, pass_on = 0.0;
  for (const auto& a : spec.archetypes) {
    const auto w = static_cast<std::size_t>(week);
    double p_on = 1.0 - a.zero_probability[w];
    if (type) {
      // Each click picks type t with probability pi; clicks = 1 + Poisson(l),
      // so P(no click on t) = (1 - pi) * exp(-l * pi).
      const double pi = normalized(a.type_propensity).at(*type);
      const double lambda = std::max(a.mean_clicks[w] - 1.0, 0.0);
      p_on *= 1.0 - (1.0 - pi) * std::exp(-lambda * pi);
    }
    const double f = fail_rate(a, fail_class);
    fail_mass += a.weight * f;
    pass_mass += a.weight * (1.0 - f);
    fail_on += a.weight * f * p_on;
    pass_on += a.weight * (1.0 - f) * p_on;
  }
  FlagTruth t;
  if (fail_mass > 0.0) t.p_given_fail = fail_on / fail_mass;
  if (pass_mass > 0.0) t.p_given_pass = pass_on / pass_mass;
  return t;
}

std::string student_name(std::size_t index, std::size_t n_students) {
  const std::size_t width = std::max<std::size_t>(5, std::to_string(n_students).size());
  std::string digits = std::to_string(index + 1);
  return "s" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

GeneratedCohort generate(const CohortSpec& spec) {
  spec.check();
  const auto& config = spec.config;
  const std::size_t n = spec.n_students;
  const std::size_t weeks = static_cast<std::size_t>(config.num_weeks) + 1;
  const std::size_t types = config.content_vocabulary.size();

  std::vector<double> weights;
  std::vector<std::vector<double>> propensity;
  for (const auto& a : spec.archetypes) {
    weights.push_back(a.weight);
    propensity.push_back(normalized(a.type_propensity));
  }

  GeneratedCohort cohort;
  cohort.students.resize(n);
  cohort.archetype.resize(n);
  cohort.weekly_totals.assign(n, std::vector<std::int64_t>(weeks, 0));
  cohort.outcomes.resize(n);
  std::vector<std::vector<ClickRecord>> clicks(n);
  std::vector<AssessmentRecord> assessments(n);

  parallel_for(n, worker_count(), [&](std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> per_type(types);
    for (std::size_t i = begin; i < end; ++i) {
      const StudentId id{student_name(i, n)};
      cohort.students[i] = id;
      KeyedStream pick(spec.seed, {i, 0});
      const std::size_t a = pick.categorical(weights);
      cohort.archetype[i] = a;
      const auto& arch = spec.archetypes[a];

      for (std::size_t w = 0; w < weeks; ++w) {
        KeyedStream rng(spec.seed, {i, 1, w});
        if (rng.bernoulli(arch.zero_probability[w])) continue;
        const std::int64_t total = 1 + rng.poisson(std::max(arch.mean_clicks[w] - 1.0, 0.0));
        cohort.weekly_totals[i][w] = total;
        std::fill(per_type.begin(), per_type.end(), 0);
        for (std::int64_t c = 0; c < total; ++c) ++per_type[rng.categorical(propensity[a])];
        for (std::size_t t = 0; t < types; ++t) {
          if (per_type[t] == 0) continue;
          const std::int64_t day = w == 0 ? rng.uniform_int(-7, -1)
                                          : 7 * static_cast<std::int64_t>(w - 1) + rng.uniform_int(0, 6);
          clicks[i].push_back(ClickRecord{id, day, config.content_vocabulary[t], per_type[t]});
        }
      }

      KeyedStream grade(spec.seed, {i, 2});
      const auto outcome = static_cast<Outcome>(grade.categorical(arch.outcome));
      cohort.outcomes[i] = outcome;
      AssessmentRecord rec{id, config.tma_of_interest, std::nullopt};
      if (outcome == Outcome::Failed) {
        rec.score = static_cast<int>(grade.uniform_int(0, config.pass_threshold - 1));
      } else if (outcome == Outcome::Passed) {
        rec.score = static_cast<int>(grade.uniform_int(config.pass_threshold, 100));
      }
      assessments[i] = std::move(rec);
    }
  });

  std::vector<ClickRecord> all;
  for (auto& part : clicks) {
    std::sort(part.begin(), part.end(), [](const ClickRecord& l, const ClickRecord& r) {
      return std::tie(l.day_offset, l.content_type) < std::tie(r.day_offset, r.content_type);
    });
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  cohort.dataset = Dataset(std::move(all), std::move(assessments), config);
  return cohort;
}

std::string clicks_csv(const std::vector<ClickRecord>& clicks) {
  std::string out = "id_student,date,activity_type,sum_click\n";
  for (const auto& c : clicks) {
    out += csv::escape(c.student.value) + "," + std::to_string(c.day_offset) + "," +
           csv::escape(c.content_type) + "," + std::to_string(c.clicks) + "\n";
  }
  return out;
}

std::string assessments_csv(const std::vector<AssessmentRecord>& assessments) {
  std::string out = "id_student,assessment,score\n";
  for (const auto& a : assessments) {
    out += csv::escape(a.student.value) + "," + std::to_string(a.tma_index) + "," +
           (a.score ? std::to_string(*a.score) : std::string()) + "\n";
  }
  return out;
}

void write_cohort(const CohortSpec& spec, const GeneratedCohort& cohort, const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  const fs::path truth_dir = root / "ground_truth";
  csv::write_text((root / "clicks.csv").string(), clicks_csv(cohort.dataset.clicks()));
  csv::write_text((root / "assessments.csv").string(), assessments_csv(cohort.dataset.assessments()));
  csv::write_text((root / "config.txt").string(), format_config(spec.config));
  csv::write_text((truth_dir / "spec.json").string(), spec.to_json());

  const Binning intensity = fixed_cutpoint_bins(30, 90);
  const auto truth = ground_truth(spec, intensity);
  std::string pooled = "week_step,from_state,to_state,probability\n";
  std::string per_archetype = "archetype,week_step,from_state,to_state,probability\n";
  for (std::size_t step = 0; step < truth.pooled_transitions.size(); ++step) {
    const std::string step_name = std::to_string(step) + "-" + std::to_string(step + 1);
    for (std::size_t from = 0; from < truth.bins; ++from) {
      for (std::size_t to = 0; to < truth.bins; ++to) {
        const std::string cell = step_name + "," + csv::escape(intensity.label(from)) + "," + csv::escape(intensity.label(to));
        if (truth.pooled_row_defined[step * truth.bins + from]) {
          pooled += cell + "," + csv::fixed6(truth.pooled(step, from, to)) + "\n";
        }
        for (std::size_t a = 0; a < spec.archetypes.size(); ++a) {
          per_archetype += csv::escape(spec.archetypes[a].name) + "," + cell + "," +
                           csv::fixed6(truth.archetype_transitions[a][step][from * truth.bins + to]) + "\n";
        }
      }
    }
  }
  csv::write_text((truth_dir / "transitions_intensity30.csv").string(), pooled);
  csv::write_text((truth_dir / "archetype_transitions_intensity30.csv").string(), per_archetype);

  std::string conditionals = "flag_id,p_given_fail,p_given_pass\n";
  if (!spec.archetypes.empty()) {
    for (int w = 0; w <= spec.config.num_weeks; ++w) {
      for (int t = -1; t < static_cast<int>(spec.config.content_vocabulary.size()); ++t) {
        const std::optional<std::size_t> type =
            t < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(t));
        const auto ft = flag_truth(spec, w, type, spec.config.fail_class);
        const std::string id = "w" + std::to_string(w) + "_" +
                               (type ? spec.config.content_vocabulary[*type] : std::string("active"));
        conditionals += id + "," + csv::fixed6(ft.p_given_fail) + "," + csv::fixed6(ft.p_given_pass) + "\n";
      }
    }
  }
  csv::write_text((truth_dir / "conditionals.csv").string(), conditionals);

  std::string outcomes = "outcome,rate\n";
  for (std::size_t o = 0; o < 3; ++o) {
    outcomes += std::string(to_string(static_cast<Outcome>(o))) + "," + csv::fixed6(truth.outcome_rates[o]) + "\n";
  }
  csv::write_text((truth_dir / "outcomes.csv").string(), outcomes);

  std::string students = "id_student,archetype";
  for (int w = 0; w <= spec.config.num_weeks; ++w) students += ",w" + std::to_string(w) + "_total";
  students += ",outcome\n";
  for (std::size_t i = 0; i < cohort.students.size(); ++i) {
    students += cohort.students[i].value + "," + csv::escape(spec.archetypes[cohort.archetype[i]].name);
    for (auto v : cohort.weekly_totals[i]) students += "," + std::to_string(v);
    students += "," + std::string(to_string(cohort.outcomes[i])) + "\n";
  }
  csv::write_text((truth_dir / "students.csv").string(), students);
}

}  // namespace vle
