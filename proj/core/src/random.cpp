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

#include "dynopt/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace dynopt {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, Stream stream)
    : material_(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream) * 0xD1B54A32D192ED03ULL)),
      engine_(material_)
{
}

Rng Rng::split(Stream stream) const { return split(static_cast<std::uint64_t>(stream)); }

Rng Rng::split(std::uint64_t tag) const
{
    Rng child(material_, Stream::root);
    child.material_ = splitmix64(material_ ^ splitmix64(tag + 0x632BE59BD9B4E019ULL));
    child.engine_.seed(child.material_);
    return child;
}

double Rng::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform01_upper_closed()
{
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform01();
}

std::size_t Rng::index(std::size_t n)
{
    if (n <= 1) {
        return 0;
    }
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r = engine_();
    while (r >= limit) {
        r = engine_();
    }
    return static_cast<std::size_t>(r % bound);
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01_upper_closed();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double Rng::cauchy()
{
    double u = uniform01();
    while (u == 0.0) {
        u = uniform01();
    }
    return std::tan(std::numbers::pi * (u - 0.5));
}

} // namespace dynopt
