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

#include "oracles.hpp"

#include "vle/discretize.hpp"
#include "vle/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace vle;

namespace {

std::vector<std::size_t> bin_sizes(const Binning& b, const std::vector<std::int64_t>& values) {
  std::vector<std::size_t> sizes(b.bin_count(), 0);
  for (auto v : values) ++sizes[apply(b, v)];
  return sizes;
}

std::size_t largest_tie_group(const std::vector<std::int64_t>& values) {
  std::map<std::int64_t, std::size_t> count;
  for (auto v : values) ++count[v];
  std::size_t best = 0;
  for (const auto& [v, c] : count) best = std::max(best, c);
  return best;
}

std::vector<std::int64_t> random_multiset(std::mt19937_64& rng) {
  const std::size_t n = 5 + rng() % 400;
  std::vector<std::int64_t> values(n);
  switch (rng() % 3) {
    case 0:  // wide, few ties
      for (auto& v : values) v = static_cast<std::int64_t>(rng() % 10000);
      break;
    case 1:  // narrow, heavy ties
      for (auto& v : values) v = static_cast<std::int64_t>(rng() % 12);
      break;
    default: {  // click-like: many zeros, long tail
      std::geometric_distribution<int> tail(0.05);
      for (auto& v : values) v = rng() % 3 == 0 ? 0 : tail(rng);
    }
  }
  return values;
}

}  // namespace

TEST_SUITE("discretize") {

TEST_CASE("eight distinct values into four bins") {
  const std::vector<std::int64_t> values{1, 2, 3, 4, 5, 6, 7, 8};
  const auto b = equal_frequency_bins(values, 4);
  CHECK(b.boundaries == std::vector<double>{2.5, 4.5, 6.5});
  CHECK_FALSE(b.degenerate);
  CHECK(bin_sizes(b, values) == std::vector<std::size_t>{2, 2, 2, 2});
}

TEST_CASE("constant input collapses to one degenerate bin") {
  const std::vector<std::int64_t> values(10, 5);
  const auto b = equal_frequency_bins(values, 3);
  CHECK(b.degenerate);
  CHECK(b.bin_count() == 1);
  CHECK(apply(b, 5) == 0);
}

TEST_CASE("fewer distinct values than bins keeps every value apart") {
  const std::vector<std::int64_t> values{0, 0, 0, 7, 7, 9};
  const auto b = equal_frequency_bins(values, 5);
  CHECK(b.degenerate);
  CHECK(b.boundaries == std::vector<double>{3.5, 8.0});
}

TEST_CASE("too few values is a data error") {
  const std::vector<std::int64_t> values{1, 2};
  try {
    (void)equal_frequency_bins(values, 3);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.kind() == ErrorKind::TooFewValues);
  }
  CHECK_THROWS_AS((void)equal_frequency_bins(values, 1), std::invalid_argument);
}

TEST_CASE("equal-frequency spread stays within the largest tie group") {
  std::mt19937_64 rng(424242);
  for (int round = 0; round < 100; ++round) {
    const auto values = random_multiset(rng);
    const std::size_t k = 2 + rng() % 6;
    if (values.size() < k) continue;
    const auto b = equal_frequency_bins(values, k);
    const auto sizes = bin_sizes(b, values);
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    CAPTURE(round);
    CAPTURE(k);
    CHECK(*hi - *lo <= largest_tie_group(values));
    CHECK(std::is_sorted(b.boundaries.begin(), b.boundaries.end()));
    if (!b.degenerate) {
      CHECK(b.bin_count() == k);
      CHECK(*lo > 0);
    }
    // Ties never straddle a boundary.
    for (auto v : values) CHECK(apply(b, v) == testing::scan_bin(b, v));
  }
}

TEST_CASE("apply agrees with a linear scan and is monotone") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 100; ++round) {
    const auto values = random_multiset(rng);
    const auto b = round % 2 ? fixed_cutpoint_bins(1 + static_cast<std::int64_t>(rng() % 50), 200)
                             : equal_frequency_bins(values, 2 + rng() % 4);
    std::size_t previous = 0;
    for (std::int64_t v = 0; v < 400; ++v) {
      const auto bin = apply(b, v);
      CHECK(bin == testing::scan_bin(b, v));
      CHECK(bin >= previous);
      CHECK(bin < b.bin_count());
      previous = bin;
    }
  }
}

TEST_CASE("step-30 cut points") {
  const auto b = fixed_cutpoint_bins(30, 90);
  CHECK(b.zero_separate);
  CHECK(b.bin_count() == 5);
  CHECK(apply(b, 0) == 0);
  CHECK(apply(b, 1) == 1);
  CHECK(apply(b, 30) == 1);
  CHECK(apply(b, 31) == 2);
  CHECK(apply(b, 45) == 2);
  CHECK(apply(b, 90) == 3);
  CHECK(apply(b, 91) == 4);
  CHECK(apply(b, 100000) == 4);
  CHECK(b.label(0) == "0");
  CHECK(b.label(1) == "(0,30]");
  CHECK(b.label(4) == "(90,inf)");
  CHECK_THROWS_AS((void)apply(b, -1), std::invalid_argument);
  CHECK_THROWS_AS((void)fixed_cutpoint_bins(0, 90), std::invalid_argument);
}

TEST_CASE("serialization round-trips") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    const auto values = random_multiset(rng);
    const auto b = equal_frequency_bins(values, 3);
    CHECK(parse_binning(serialize(b)).boundaries == b.boundaries);
  }
  const auto fixed = fixed_cutpoint_bins(30, 90);
  CHECK(parse_binning(serialize(fixed)) == fixed);
  CHECK(serialize(fixed) == "fixed_cutpoints;1;30,60,90");
  CHECK_THROWS_AS((void)parse_binning("fixed_cutpoints;1;60,30"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_binning("quantile;0;1"), std::invalid_argument);
}

}  // TEST_SUITE
