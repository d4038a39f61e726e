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
#include <initializer_list>
#include <span>

namespace vle {

/// Counter-based random stream: the state is derived from (seed, key...) so
/// every (student, week) draw is independent of iteration order and threads.
class KeyedStream {
public:
  KeyedStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p);
  /// Index drawn proportionally to non-negative weights.
  std::size_t categorical(std::span<const double> weights);
  /// Poisson by sequential inversion; large means are split into chunks.
  std::int64_t poisson(double mean);

private:
  std::uint64_t state_;
};

}  // namespace vle
