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

#include "hypermux/random.hpp"

#include <memory>
#include <stdexcept>

namespace hypermux {
namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
    return mix(mix(mix(master) ^ point) ^ (trial * 0xd1342543de82ef95ULL + 1));
}

double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

OutcomePicker sample_with(Rng& rng) {
    return [&rng](std::span<const double> probs) -> std::size_t {
        const double u = uniform01(rng);
        double acc = 0.0;
        std::size_t last_nonzero = 0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            if (probs[k] <= 0.0) continue;
            last_nonzero = k;
            acc += probs[k];
            if (u < acc) return k;
        }
        // u landed in the rounding slack above the cumulative sum.
        return last_nonzero;
    };
}

OutcomePicker forced_outcomes(std::vector<std::size_t> outcomes) {
    auto queue = std::make_shared<std::vector<std::size_t>>(std::move(outcomes));
    auto next = std::make_shared<std::size_t>(0);
    return [queue, next](std::span<const double> probs) -> std::size_t {
        if (*next >= queue->size()) throw std::logic_error("forced outcomes exhausted");
        const std::size_t k = (*queue)[(*next)++];
        if (k >= probs.size() || probs[k] <= 0.0)
            throw std::logic_error("forced outcome " + std::to_string(k) + " has zero probability");
        return k;
    };
}

}  // namespace hypermux
