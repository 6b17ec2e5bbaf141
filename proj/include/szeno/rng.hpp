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

#ifndef SZENO_RNG_HPP
#define SZENO_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace szeno {

/// A reproducible random stream keyed by (seed, stream ids...). Doubles are
/// built from the top 53 bits of mt19937_64 so sequences do not depend on
/// the standard library's distribution implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1].
    double uniform_open_closed() { return 1.0 - uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace szeno

#endif  // SZENO_RNG_HPP
