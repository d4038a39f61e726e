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
#include "vle/discretize.hpp"
#include "vle/export.hpp"
#include "vle/features.hpp"
#include "vle/guha.hpp"
#include "vle/markov.hpp"

#include <benchmark/benchmark.h>

namespace {

vle::CohortSpec sized(std::int64_t students) {
  auto spec = vle::CohortSpec::default_spec();
  spec.n_students = static_cast<std::size_t>(students);
  return spec;
}

void BM_Generate(benchmark::State& state) {
  const auto spec = sized(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vle::generate(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AggregateWeekly(benchmark::State& state) {
  const auto cohort = vle::generate(sized(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vle::aggregate_weekly(cohort.dataset));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cohort.dataset.clicks().size()));
}
BENCHMARK(BM_AggregateWeekly)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EqualFrequencyBins(benchmark::State& state) {
  const auto cohort = vle::generate(sized(10000));
  std::vector<std::int64_t> totals;
  for (const auto& weekly : cohort.weekly_totals) totals.push_back(weekly[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(vle::equal_frequency_bins(totals, 5));
}
BENCHMARK(BM_EqualFrequencyBins)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

void BM_MineAssoc(benchmark::State& state) {
  const auto cohort = vle::generate(sized(state.range(0)));
  const auto features = vle::aggregate_weekly(cohort.dataset);
  const auto matrix = vle::CategoricalMatrix::build(features, vle::label_outcomes(cohort.dataset),
                                                    vle::build_attribute_space(features, {}));
  const auto spec = vle::QuantifierSpec::founded_implication(0.9, 20);
  vle::MineOptions options;
  options.max_length = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vle::mine_assoc(matrix, {vle::Outcome::NotSubmitted, vle::Outcome::Passed}, spec, options));
  }
}
BENCHMARK(BM_MineAssoc)->Args({2000, 2})->Args({2000, 3})->Args({10000, 3})->Unit(benchmark::kMillisecond);

void BM_FitTransitions(benchmark::State& state) {
  const auto cohort = vle::generate(sized(state.range(0)));
  const auto features = vle::aggregate_weekly(cohort.dataset);
  const auto space = vle::StateSpace::parse("intensity:30", features.content_types);
  const auto sequences = vle::build_sequences(features, space, vle::WeekRange{0, features.num_weeks});
  for (auto _ : state) benchmark::DoNotOptimize(vle::fit_transitions(sequences, space));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitTransitions)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_ToDot(benchmark::State& state) {
  const auto cohort = vle::generate(sized(10000));
  const auto features = vle::aggregate_weekly(cohort.dataset);
  const auto space = vle::StateSpace::parse("types:forum,quiz,resource,wiki", features.content_types);
  const auto model =
      vle::fit_transitions(vle::build_sequences(features, space, vle::WeekRange{0, features.num_weeks}), space);
  for (auto _ : state) benchmark::DoNotOptimize(vle::to_dot(model));
}
BENCHMARK(BM_ToDot)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
