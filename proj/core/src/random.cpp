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

#include "vle/random.hpp"

#include <cmath>
#include <stdexcept>

namespace vle {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kPoissonChunk = 500.0;

}  // namespace

KeyedStream::KeyedStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key)
    : state_(mix64(seed + kGolden)) {
  for (std::uint64_t k : key) state_ = mix64(state_ ^ mix64(k + kGolden));
}

std::uint64_t KeyedStream::next() {
  state_ += kGolden;
  return mix64(state_);
}

double KeyedStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::int64_t KeyedStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

bool KeyedStream::bernoulli(double p) { return uniform() < p; }

std::size_t KeyedStream::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("categorical: weights sum to zero");
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

std::int64_t KeyedStream::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) throw std::invalid_argument("poisson: bad mean");
  std::int64_t total = 0;
  while (mean > kPoissonChunk) {
    total += poisson(kPoissonChunk);
    mean -= kPoissonChunk;
  }
  if (mean == 0.0) return total;
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  const double cap = mean + 40.0 * std::sqrt(mean) + 100.0;
  while (u > cdf && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return total + k;
}

}  // namespace vle
