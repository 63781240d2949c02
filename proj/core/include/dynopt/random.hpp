// Copyright 2026 The dynopt Authors
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

#ifndef DYNOPT_RANDOM_HPP
#define DYNOPT_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace dynopt {

/// Named sub-streams. Splitting a generator by tag yields a stream that is
/// independent of every other tag and of how much the parent has been used.
enum class Stream : std::uint64_t {
    root = 0,
    environment = 1,
    init = 2,
    search = 3,
    sensor = 4,
    adaptation = 5,
    baseline = 6,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seeded pseudo random stream built on mt19937_64.
///
/// Distributions are computed directly from engine output, so a seed yields
/// the same values with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed, Stream stream = Stream::root);

    Rng split(Stream stream) const;
    Rng split(std::uint64_t tag) const;

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform01();
    /// Uniform in (0, 1].
    double uniform01_upper_closed();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). Unbiased (rejection sampling).
    std::size_t index(std::size_t n);
    /// Standard normal via Box-Muller.
    double normal();
    /// Standard Cauchy.
    double cauchy();

    std::uint64_t seed_material() const noexcept { return material_; }

private:
    std::uint64_t material_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace dynopt

#endif
