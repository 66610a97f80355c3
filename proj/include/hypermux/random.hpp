// Copyright 2026 The Hypermux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace hypermux {

using Rng = std::mt19937_64;

/// Seed of an independent substream, derived from a master seed and a
/// (point, trial) counter pair. Pure function of its arguments, so work can
/// be scheduled in any order and still draw the same numbers.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial = 0);

inline Rng make_substream(std::uint64_t master, std::uint64_t point, std::uint64_t trial = 0) {
    return Rng(substream_seed(master, point, trial));
}

double uniform01(Rng& rng);

/// Chooses a measurement outcome given the Born probabilities of all outcomes.
using OutcomePicker = std::function<std::size_t(std::span<const double>)>;

/// Samples outcomes from `rng`. The picker keeps a reference to `rng`.
OutcomePicker sample_with(Rng& rng);

/// Replays `outcomes` in order; throws std::logic_error when exhausted or
/// when a forced outcome has zero probability.
OutcomePicker forced_outcomes(std::vector<std::size_t> outcomes);

}  // namespace hypermux
