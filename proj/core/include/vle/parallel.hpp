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

#include <cstddef>
#include <functional>

namespace vle {

/// Worker count: `requested` if non-zero, else VLE_MINER_THREADS if set and
/// non-zero, else the hardware concurrency.
unsigned worker_count(unsigned requested = 0);

/// Splits [0, n) into contiguous chunks, one per worker, and runs `body` on
/// each. Runs inline for a single worker.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace vle
