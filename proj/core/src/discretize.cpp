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

#include "vle/discretize.hpp"

#include "vle/csv.hpp"
#include "vle/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vle {
namespace {

std::string number(double v) {
  if (std::isinf(v)) return "inf";
  return csv::exact(v);
}

}  // namespace

std::string Binning::label(std::size_t bin) const {
  if (bin >= bin_count()) throw std::out_of_range("bin index");
  std::size_t i = bin;
  std::string lower = "0";
  bool lower_open = false;
  if (zero_separate) {
    if (bin == 0) return "0";
    --i;
    lower_open = true;
  }
  if (i > 0) {
    lower = number(boundaries[i - 1]);
    lower_open = true;
  }
  if (i == boundaries.size()) return (lower_open ? "(" : "[") + lower + ",inf)";
  return (lower_open ? "(" : "[") + lower + "," + number(boundaries[i]) + "]";
}

Binning equal_frequency_bins(std::span<const std::int64_t> values, std::size_t k) {
  if (k < 2) throw std::invalid_argument("equal_frequency_bins: k must be >= 2");
  if (values.size() < k) {
    throw DataError(ErrorKind::TooFewValues, std::to_string(values.size()) +
                                                 " values cannot fill " + std::to_string(k) +
                                                 " bins");
  }
  std::vector<std::int64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0) throw std::invalid_argument("equal_frequency_bins: negative value");

  // Tie groups: equal values always share a bin.
  std::vector<std::int64_t> distinct;
  std::vector<std::size_t> group_size;
  for (auto v : sorted) {
    if (distinct.empty() || distinct.back() != v) {
      distinct.push_back(v);
      group_size.push_back(0);
    }
    ++group_size.back();
  }
  auto cut_after = [&](std::size_t g) {
    return (static_cast<double>(distinct[g]) + static_cast<double>(distinct[g + 1])) / 2.0;
  };

  Binning binning;
  binning.kind = BinningKind::EqualFrequency;
  const std::size_t groups = distinct.size();
  if (groups < k) {
    binning.degenerate = true;
    for (std::size_t g = 0; g + 1 < groups; ++g) binning.boundaries.push_back(cut_after(g));
    return binning;
  }

  // Exact search: the smallest spread D such that some window [L, L + D]
  // admits a split of the tie groups into k runs with every run size in the
  // window. Runs are found by reachability over group prefixes.
  std::vector<std::size_t> prefix(groups + 1, 0);
  for (std::size_t i = 0; i < groups; ++i) prefix[i + 1] = prefix[i] + group_size[i];
  const std::size_t n = sorted.size();

  // reach[j * (groups + 1) + i]: the first i groups split into j runs with
  // sizes in [lo, hi]. Buffers are shared across attempts.
  std::vector<char> reach((k + 1) * (groups + 1));
  std::vector<std::size_t> count(groups + 2);
  auto split = [&](std::size_t lo, std::size_t hi) -> std::vector<std::size_t> {
    const std::size_t width = groups + 1;
    std::fill(reach.begin(), reach.end(), 0);
    reach[0] = 1;
    for (std::size_t j = 1; j <= k; ++j) {
      const char* prev = &reach[(j - 1) * width];
      char* cur = &reach[j * width];
      for (std::size_t i = 0; i <= groups; ++i) count[i + 1] = count[i] + static_cast<std::size_t>(prev[i]);
      // Admissible predecessors p of i form the index range [first, last):
      // prefix[i] - hi <= prefix[p] <= prefix[i] - lo. Both ends only grow with i.
      std::size_t first = 0, last = 0;
      for (std::size_t i = 1; i <= groups; ++i) {
        if (prefix[i] < lo) continue;
        while (first < i && prefix[first] + hi < prefix[i]) ++first;
        while (last < i && prefix[last] + lo <= prefix[i]) ++last;
        cur[i] = last > first && count[last] > count[first];
      }
    }
    if (!reach[k * width + groups]) return {};
    // Walk back taking the earliest admissible predecessor.
    std::vector<std::size_t> cut(k + 1, 0);
    cut[k] = groups;
    for (std::size_t j = k; j > 1; --j) {
      const std::size_t i = cut[j];
      for (std::size_t p = 0; p < i; ++p) {
        const std::size_t size = prefix[i] - prefix[p];
        if (reach[(j - 1) * width + p] && size >= lo && size <= hi) {
          cut[j - 1] = p;
          break;
        }
      }
    }
    return cut;
  };

  // The largest run holds at least max(g, ceil(n/k)) values and the
  // smallest at most floor(n/k), which bounds both D and the window start.
  const std::size_t largest_group = *std::max_element(group_size.begin(), group_size.end());
  const std::size_t floor_mean = n / k;
  const std::size_t top_floor = std::max(largest_group, (n + k - 1) / k);
  auto attempt = [&](std::size_t spread) -> std::vector<std::size_t> {
    if (top_floor > floor_mean + spread) return {};
    const std::size_t first_lo = std::max<std::size_t>(top_floor > spread ? top_floor - spread : 1, 1);
    for (std::size_t lo = floor_mean; lo >= first_lo; --lo) {
      auto cut = split(lo, lo + spread);
      if (!cut.empty()) return cut;
    }
    return {};
  };

  // Greedy seed: each run aims at ceil(remaining / runs left) and takes whole
  // tie groups while that lands closer to the target. Always feasible, so its
  // spread caps the search.
  std::vector<std::size_t> best(k + 1, 0);
  {
    std::size_t remaining = n;
    std::size_t g = 0;
    for (std::size_t j = 1; j < k; ++j) {
      const std::size_t runs_left = k - j + 1;
      const std::size_t target = (remaining + runs_left - 1) / runs_left;
      const std::size_t last_allowed = groups - (runs_left - 1);
      std::size_t size = group_size[g++];
      while (g < last_allowed && size < target &&
             (size + group_size[g] <= target || size + group_size[g] - target <= target - size)) {
        size += group_size[g++];
      }
      best[j] = g;
      remaining -= size;
    }
    best[k] = groups;
  }
  auto spread_of = [&](const std::vector<std::size_t>& cut) {
    std::size_t lo = n, hi = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      const std::size_t size = prefix[cut[j]] - prefix[cut[j - 1]];
      lo = std::min(lo, size);
      hi = std::max(hi, size);
    }
    return hi - lo;
  };

  std::size_t low = top_floor - floor_mean;
  std::size_t high = spread_of(best);
  while (low < high) {
    const std::size_t mid = low + (high - low) / 2;
    auto cut = attempt(mid);
    if (cut.empty()) {
      low = mid + 1;
    } else {
      high = mid;
      best = std::move(cut);
    }
  }
  for (std::size_t j = 1; j < k; ++j) binning.boundaries.push_back(cut_after(best[j] - 1));
  return binning;
}

Binning fixed_cutpoint_bins(std::int64_t step, std::int64_t max_boundary) {
  if (step < 1) throw std::invalid_argument("fixed_cutpoint_bins: step must be >= 1");
  Binning binning;
  binning.kind = BinningKind::FixedCutpoints;
  binning.zero_separate = true;
  for (std::int64_t b = step; b <= max_boundary; b += step) {
    binning.boundaries.push_back(static_cast<double>(b));
  }
  return binning;
}

std::size_t apply(const Binning& binning, std::int64_t value) {
  if (value < 0) throw std::invalid_argument("apply: negative value");
  if (binning.zero_separate && value == 0) return 0;
  const auto v = static_cast<double>(value);
  // Right-closed: the first boundary b with v <= b closes v's interval.
  const auto it = std::lower_bound(binning.boundaries.begin(), binning.boundaries.end(), v);
  return static_cast<std::size_t>(it - binning.boundaries.begin()) + (binning.zero_separate ? 1 : 0);
}

std::string serialize(const Binning& binning) {
  std::string out = binning.kind == BinningKind::EqualFrequency ? "equal_frequency" : "fixed_cutpoints";
  out += binning.zero_separate ? ";1;" : ";0;";
  for (std::size_t i = 0; i < binning.boundaries.size(); ++i) {
    if (i) out += ',';
    out += csv::exact(binning.boundaries[i]);
  }
  return out;
}

Binning parse_binning(const std::string& text) {
  const auto first = text.find(';');
  const auto second = first == std::string::npos ? first : text.find(';', first + 1);
  if (second == std::string::npos) throw std::invalid_argument("binning: expected kind;zero;bounds");
  Binning binning;
  const auto kind = csv::trim(std::string_view(text).substr(0, first));
  if (kind == "equal_frequency") {
    binning.kind = BinningKind::EqualFrequency;
  } else if (kind == "fixed_cutpoints") {
    binning.kind = BinningKind::FixedCutpoints;
  } else {
    throw std::invalid_argument("binning: unknown kind '" + std::string(kind) + "'");
  }
  const auto zero = csv::trim(std::string_view(text).substr(first + 1, second - first - 1));
  if (zero != "0" && zero != "1") throw std::invalid_argument("binning: zero_separate must be 0 or 1");
  binning.zero_separate = zero == "1";
  const auto bounds = csv::trim(std::string_view(text).substr(second + 1));
  if (!bounds.empty()) {
    for (const auto& field : csv::split_line(bounds)) {
      double v = 0;
      if (!csv::parse_double(field, v)) throw std::invalid_argument("binning: bad boundary '" + field + "'");
      if (!binning.boundaries.empty() && !(v > binning.boundaries.back())) {
        throw std::invalid_argument("binning: boundaries must be strictly increasing");
      }
      binning.boundaries.push_back(v);
    }
  }
  return binning;
}

}  // namespace vle
