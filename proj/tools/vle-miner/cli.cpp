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

#include "cli.hpp"

#include "vle/bayes.hpp"
#include "vle/csv.hpp"
#include "vle/datagen.hpp"
#include "vle/error.hpp"
#include "vle/export.hpp"
#include "vle/features.hpp"
#include "vle/guha.hpp"
#include "vle/ingest.hpp"
#include "vle/markov.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#ifndef VLE_MINER_VERSION
#define VLE_MINER_VERSION "dev"
#endif

namespace vle::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Flag values shared by the analysis subcommands.
struct Inputs {
  std::string clicks;
  std::string assessments;
  std::string config;
  std::string out;
  std::string weeks = "0-4";
  int tma = 0;
};

struct Context {
  std::vector<std::string> args;
  std::ostream& out;
};

PresentationConfig resolve_config(const Inputs& in) {
  PresentationConfig config = in.config.empty() ? PresentationConfig{} : load_config(in.config);
  if (in.tma > 0) config.tma_of_interest = in.tma;
  config.check();
  return config;
}

struct Loaded {
  Dataset dataset;
  FeatureTable features;
  std::map<StudentId, Outcome> outcomes;
};

Loaded load(const Inputs& in) {
  Loaded l;
  l.dataset = load_dataset(in.clicks, in.assessments, resolve_config(in));
  l.features = aggregate_weekly(l.dataset);
  l.outcomes = label_outcomes(l.dataset);
  return l;
}

WeekRange weeks_for(const Inputs& in, const FeatureTable& features) {
  const auto w = parse_week_range(in.weeks);
  if (w.last > features.num_weeks) {
    throw std::invalid_argument("--weeks " + in.weeks + " exceeds num_weeks " +
                                std::to_string(features.num_weeks));
  }
  return w;
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

/// Written next to every output set; `replay` re-executes `argv`.
void write_manifest(const Context& ctx, const std::string& subcommand, const Inputs& in,
                    Json parameters, std::optional<std::uint64_t> seed = std::nullopt) {
  Json m;
  m["tool"] = "vle-miner";
  m["version"] = VLE_MINER_VERSION;
  m["subcommand"] = subcommand;
  m["argv"] = ctx.args;
  m["inputs"] = {{"clicks", in.clicks}, {"assessments", in.assessments}, {"config", in.config}};
  m["out"] = in.out;
  m["parameters"] = std::move(parameters);
  if (seed) m["seed"] = *seed;
  csv::write_text(out_path(in.out, "manifest.json"), m.dump(2) + "\n");
}

void add_data_flags(CLI::App* sub, Inputs& in) {
  sub->add_option("--clicks", in.clicks, "Clickstream CSV (id_student,date,activity_type,sum_click)")
      ->required();
  sub->add_option("--assessments", in.assessments, "Assessment CSV (id_student,assessment,score)")
      ->required();
  sub->add_option("--config", in.config, "Presentation config (key=value)");
  sub->add_option("--out", in.out, "Output directory")->required();
  sub->add_option("--tma", in.tma, "TMA of interest (overrides the config)");
}

std::vector<ScenarioSpec> catalog_for(const std::string& path) {
  return path.empty() ? default_scenario_catalog() : load_scenario_catalog(path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Student VLE activity analysis: weekly features, Bayes risk scoring, "
               "ASSOC rule mining, Markov chains and activity scenarios.",
               "vle-miner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", VLE_MINER_VERSION);

  Context ctx{args, out};
  Inputs in;
  std::function<void()> action;

  // ingest-check
  auto* ingest = app.add_subcommand("ingest-check", "Load and validate the input files");
  add_data_flags(ingest, in);
  ingest->callback([&] {
    action = [&] {
      const auto dataset = load_dataset(in.clicks, in.assessments, resolve_config(in));
      const auto report = validate(dataset);
      const auto text = format_report(report);
      csv::write_text(out_path(in.out, "validation_report.txt"), text);
      write_manifest(ctx, "ingest-check", in, Json::object());
      out << text;
    };
  });

  // features
  auto* features = app.add_subcommand("features", "Export the weekly feature matrix");
  add_data_flags(features, in);
  features->callback([&] {
    action = [&] {
      const auto l = load(in);
      csv::write_text(out_path(in.out, "features.csv"), feature_matrix_csv(l.features, l.outcomes));
      write_manifest(ctx, "features", in, Json::object());
      out << "features: " << l.features.students.size() << " students, weeks 0-"
          << l.features.num_weeks << "\n";
    };
  });

  // bayes
  double alpha = 0.05;
  std::size_t min_group = 30;
  auto* bayes = app.add_subcommand("bayes", "Content-type success table, significant types and "
                                            "naive Bayes failure scores");
  add_data_flags(bayes, in);
  bayes->add_option("--weeks", in.weeks, "Week range A-B for flags and activity")->capture_default_str();
  bayes->add_option("--alpha", alpha, "Significance level of the two-proportion z-test")->capture_default_str();
  bayes->add_option("--min-group", min_group, "Minimum size of both activity groups")->capture_default_str();
  bayes->callback([&] {
    action = [&] {
      const auto l = load(in);
      const auto weeks = weeks_for(in, l.features);
      const auto table = type_success_table(l.features, l.outcomes, weeks);
      const auto significant = select_significant_types(table, alpha, min_group);
      std::vector<FlagRef> flags;
      for (int w = weeks.first; w <= weeks.last; ++w) {
        flags.push_back(FlagRef{w, std::nullopt});
        for (const auto& name : significant) {
          flags.push_back(FlagRef{w, static_cast<std::size_t>(l.features.type_index(name))});
        }
      }
      const auto model = fit_bayes(l.features, l.outcomes, flags, l.dataset.config().fail_class);
      std::string sig;
      for (const auto& s : significant) sig += s + "\n";
      csv::write_text(out_path(in.out, "type_success.csv"), type_success_csv(table));
      csv::write_text(out_path(in.out, "significant_types.txt"), sig);
      csv::write_text(out_path(in.out, "bayes_model.csv"), model_csv(model));
      csv::write_text(out_path(in.out, "scores.csv"), scores_csv(model, l.features));
      write_manifest(ctx, "bayes", in,
                     Json{{"weeks", in.weeks}, {"alpha", alpha}, {"min_group", min_group}});
      out << "bayes: " << significant.size() << " significant content types, " << flags.size()
          << " flags\n";
    };
  });

  // guha
  std::string quantifier = "fi:0.9:20";
  std::size_t max_length = 3;
  std::size_t bins = 5;
  auto* guha = app.add_subcommand("guha", "Mine ASSOC hypotheses against TMA outcomes");
  add_data_flags(guha, in);
  guha->add_option("--weeks", in.weeks, "Week range A-B of the attributes")->capture_default_str();
  guha->add_option("--quantifier", quantifier, "fi:<p>:<base> or aa:<q>:<base>")->capture_default_str();
  guha->add_option("--max-length", max_length, "Maximum antecedent length")->capture_default_str();
  guha->add_option("--bins", bins, "Equal-frequency bins for weekly click totals")->capture_default_str();
  guha->callback([&] {
    action = [&] {
      const auto spec = QuantifierSpec::parse(quantifier);
      if (max_length < 1) throw std::invalid_argument("--max-length must be >= 1");
      if (bins < 2) throw std::invalid_argument("--bins must be >= 2");
      const auto l = load(in);
      AttributeSpaceOptions options;
      options.weeks = weeks_for(in, l.features);
      options.bins = bins;
      auto matrix = CategoricalMatrix::build(l.features, l.outcomes,
                                             build_attribute_space(l.features, options));
      MineOptions mine;
      mine.max_length = max_length;
      const auto rules = mine_assoc(matrix, {Outcome::NotSubmitted, Outcome::Passed}, spec, mine);
      csv::write_text(out_path(in.out, "rules.csv"), rules_to_table(rules, spec));
      csv::write_text(out_path(in.out, "rules.json"), rules_to_json(rules, spec));
      write_manifest(ctx, "guha", in,
                     Json{{"weeks", in.weeks},
                          {"quantifier", spec.to_string()},
                          {"max_length", max_length},
                          {"bins", bins},
                          {"attributes", matrix.columns()}});
      out << "guha: " << rules.size() << " hypotheses over " << matrix.columns() << " attributes\n";
    };
  });

  // markov
  std::string space_text = "intensity:30";
  bool split = false;
  bool zero_cohort = false;
  std::string scenario;
  std::string catalog_path;
  double min_edge = 0.01;
  auto* markov = app.add_subcommand("markov", "Fit week-by-week transition chains and render them");
  add_data_flags(markov, in);
  markov->add_option("--weeks", in.weeks, "Week range A-B of the chain")->capture_default_str();
  markov->add_option("--space", space_text, "intensity:<step>[:<max>] or types:<t1,t2,...>")->capture_default_str();
  markov->add_flag("--split-outcome", split, "Fit separate chains for NotSubmitted and Passed");
  markov->add_flag("--zero-cohort", zero_cohort,
                   "Keep only students with a zero-activity week in the range");
  markov->add_option("--scenario", scenario, "Keep only students matching this catalog scenario "
                                             "(1-based index or name)");
  markov->add_option("--scenario-catalog", catalog_path, "Scenario catalog file");
  markov->add_option("--min-edge", min_edge, "Omit DOT edges below this probability")->capture_default_str();
  markov->callback([&] {
    action = [&] {
      if (min_edge < 0.0 || min_edge > 1.0) throw std::invalid_argument("--min-edge must be in [0,1]");
      const auto l = load(in);
      const auto weeks = weeks_for(in, l.features);
      const auto space = StateSpace::parse(space_text, l.features.content_types);
      auto sequences = build_sequences(l.features, space, weeks);

      if (zero_cohort) {
        const auto cohort = cohort_filter(l.features, weeks);
        std::erase_if(sequences, [&](const StateSequence& s) { return !cohort.contains(s.student); });
      }
      if (!scenario.empty()) {
        const auto catalog = catalog_for(catalog_path);
        const ScenarioSpec* chosen = nullptr;
        std::int64_t index = 0;
        if (csv::parse_int(scenario, index) && index >= 1 &&
            index <= static_cast<std::int64_t>(catalog.size())) {
          chosen = &catalog[static_cast<std::size_t>(index - 1)];
        }
        for (const auto& s : catalog) {
          if (!chosen && s.name == scenario) chosen = &s;
        }
        if (!chosen) throw std::invalid_argument("no scenario '" + scenario + "' in the catalog");
        chosen->check(l.features.num_weeks);
        std::erase_if(sequences, [&](const StateSequence& s) {
          return !match_scenario(*chosen, l.features, s.student);
        });
      }
      if (sequences.empty()) throw DataError(ErrorKind::EmptySequences, "no students left to model");

      GraphStyle style;
      style.min_edge_probability = min_edge;
      Json written = Json::array();
      auto emit = [&](const TransitionModel& model, const std::string& suffix) {
        csv::write_text(out_path(in.out, "transitions" + suffix + ".csv"), transitions_csv(model));
        written.push_back("transitions" + suffix + ".csv");
        if (!model.empty() && model.steps() > 0) {
          style.graph_name = "chain" + suffix;
          csv::write_text(out_path(in.out, "chain" + suffix + ".dot"), to_dot(model, style));
          written.push_back("chain" + suffix + ".dot");
        }
      };
      if (split) {
        const auto models = split_by_outcome(sequences, space, l.outcomes,
                                             {Outcome::NotSubmitted, Outcome::Passed});
        for (const auto& [outcome, model] : models) {
          emit(model, "_" + std::string(to_string(outcome)));
          out << "markov: " << to_string(outcome) << " chain on " << model.sequences() << " students\n";
        }
      } else {
        const auto model = fit_transitions(sequences, space);
        emit(model, "");
        out << "markov: chain on " << model.sequences() << " students\n";
      }
      write_manifest(ctx, "markov", in,
                     Json{{"weeks", in.weeks},
                          {"space", space_text},
                          {"split_outcome", split},
                          {"zero_cohort", zero_cohort},
                          {"scenario", scenario},
                          {"scenario_catalog", catalog_path},
                          {"min_edge", min_edge},
                          {"files", written}});
    };
  });

  // scenarios
  auto* scenarios = app.add_subcommand("scenarios", "Outcome breakdown of the activity scenarios");
  add_data_flags(scenarios, in);
  scenarios->add_option("--weeks", in.weeks, "Weeks considered by the zero-activity filter")->capture_default_str();
  scenarios->add_option("--scenario-catalog", catalog_path, "Scenario catalog file "
                                                            "(default: the built-in twelve)");
  scenarios->callback([&] {
    action = [&] {
      const auto l = load(in);
      const auto weeks = weeks_for(in, l.features);
      const auto catalog = catalog_for(catalog_path);
      const auto report = scenario_report(catalog, l.features, l.outcomes, weeks);
      csv::write_text(out_path(in.out, "scenario_report.csv"), scenario_report_csv(report));
      write_manifest(ctx, "scenarios", in,
                     Json{{"weeks", in.weeks}, {"scenario_catalog", catalog_path}});
      out << "scenarios: " << report.rows.size() << " scenarios over a cohort of "
          << report.cohort_size << " students\n";
    };
  });

  // render-dot
  std::string transitions_path;
  auto* render = app.add_subcommand("render-dot", "Render an exported transitions CSV as DOT");
  render->add_option("--transitions", transitions_path, "transitions CSV from `markov`")->required();
  render->add_option("--out", in.out, "Output directory")->required();
  render->add_option("--space", space_text, "State space fixing the state order (optional)");
  render->add_option("--config", in.config, "Presentation config for types:<...> spaces");
  render->add_option("--min-edge", min_edge, "Omit edges below this probability")->capture_default_str();
  bool space_given = false;
  render->callback([&] {
    space_given = render->count("--space") > 0;
    action = [&] {
      const auto text = csv::read_text(transitions_path);
      std::optional<StateSpace> space;
      if (space_given) space = StateSpace::parse(space_text, resolve_config(in).content_vocabulary);
      const auto model = parse_transitions_csv(text, space ? &*space : nullptr);
      GraphStyle style;
      style.min_edge_probability = min_edge;
      style.graph_name = fs::path(transitions_path).stem().string();
      const auto name = fs::path(transitions_path).stem().string() + ".dot";
      csv::write_text(out_path(in.out, name), to_dot(model, style));
      write_manifest(ctx, "render-dot", in,
                     Json{{"transitions", transitions_path},
                          {"space", space_given ? space_text : std::string()},
                          {"min_edge", min_edge}});
      out << "render-dot: wrote " << name << "\n";
    };
  });

  // generate
  std::string spec_source = "default";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> students;
  auto* gen = app.add_subcommand("generate", "Write a synthetic cohort with its ground truth");
  gen->add_option("--spec", spec_source, "`default` or a cohort spec JSON file")->capture_default_str();
  gen->add_option("--seed", seed, "Override the spec seed");
  gen->add_option("--students", students, "Override the number of students");
  gen->add_option("--out", in.out, "Output directory")->required();
  gen->callback([&] {
    action = [&] {
      CohortSpec spec = spec_source == "default" ? CohortSpec::default_spec()
                                                 : CohortSpec::from_json(csv::read_text(spec_source));
      if (seed) spec.seed = *seed;
      if (students) spec.n_students = *students;
      const auto cohort = generate(spec);
      write_cohort(spec, cohort, in.out);
      write_manifest(ctx, "generate", in,
                     Json{{"spec", spec_source}, {"n_students", spec.n_students}}, spec.seed);
      out << "generate: " << spec.n_students << " students, " << cohort.dataset.clicks().size()
          << " click records, seed " << spec.seed << "\n";
    };
  });

  // replay
  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run the invocation recorded in a manifest");
  replay->add_option("--manifest", manifest_path, "manifest.json written by an earlier run")->required();
  replay->callback([&] {
    action = [&] {
      std::vector<std::string> recorded;
      try {
        recorded = Json::parse(csv::read_text(manifest_path)).at("argv").get<std::vector<std::string>>();
      } catch (const nlohmann::json::exception& e) {
        throw DataError(ErrorKind::MalformedRow, manifest_path + ": " + e.what());
      }
      if (!recorded.empty() && recorded.front() == "replay") {
        throw std::invalid_argument("manifest records a replay; refusing to recurse");
      }
      const int code = run(recorded, out, err);
      if (code != 0) throw DataError(ErrorKind::IoError, "replayed command exited with " + std::to_string(code));
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // --help and --version surface as parse errors with a success code.
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (action) action();
    return 0;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vle::cli
