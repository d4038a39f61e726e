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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vle {

enum class BinningKind { EqualFrequency, FixedCutpoints };

/// Ordinal bins over non-negative integers. Intervals are right-closed,
/// (b[i-1], b[i]]; with zero_separate the value 0 gets bin 0 on its own and
/// the first positive bin is (0, b[0]].
struct Binning {
  BinningKind kind = BinningKind::FixedCutpoints;
  std::vector<double> boundaries;
  bool zero_separate = false;
  /// Set by equal_frequency_bins when fewer distinct values than requested
  /// bins were available.
  bool degenerate = false;

  std::size_t bin_count() const { return boundaries.size() + 1 + (zero_separate ? 1 : 0); }
  /// Human-readable interval for a bin, e.g. "0", "(0,30]", "(90,inf)".
  std::string label(std::size_t bin) const;

  friend bool operator==(const Binning&, const Binning&) = default;
};

/// Throws DataError(TooFewValues) when values.size() < k, and
/// std::invalid_argument when k < 2.
Binning equal_frequency_bins(std::span<const std::int64_t> values, std::size_t k);

/// Boundaries step, 2*step, ... up to the largest multiple <= max_boundary.
Binning fixed_cutpoint_bins(std::int64_t step, std::int64_t max_boundary);

std::size_t apply(const Binning& binning, std::int64_t value);

/// `kind;zero_separate;b1,b2,...`
std::string serialize(const Binning& binning);
Binning parse_binning(const std::string& text);

}  // namespace vle
