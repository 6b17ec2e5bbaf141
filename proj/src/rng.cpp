// Copyright 2026 The szeno Authors
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

#include "szeno/rng.hpp"

#include <vector>

namespace szeno {

namespace {

// splitmix64 finalizer; spreads nearby keys before they reach seed_seq.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    std::vector<std::uint32_t> words;
    auto push = [&](std::uint64_t v) {
        const std::uint64_t m = mix(v);
        words.push_back(static_cast<std::uint32_t>(m));
        words.push_back(static_cast<std::uint32_t>(m >> 32));
    };
    push(seed);
    for (std::uint64_t id : stream) {
        push(id);
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

}  // namespace szeno
