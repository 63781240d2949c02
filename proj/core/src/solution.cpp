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
#include "dynopt/solution.hpp"

#include "dynopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dynopt {

BoxBounds::BoxBounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_.size() != upper_.size()) {
        throw DimensionError("bounds: lower has " + std::to_string(lower_.size()) + " components, upper has "
                             + std::to_string(upper_.size()));
    }
    if (lower_.empty()) {
        throw ConfigError("bounds: dimension must be at least 1");
    }
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
            throw ConfigError("bounds: axis " + std::to_string(i) + " requires finite lower < upper");
        }
    }
}

BoxBounds BoxBounds::uniform(std::size_t dimension, double lower, double upper)
{
    return BoxBounds(std::vector<double>(dimension, lower), std::vector<double>(dimension, upper));
}

bool BoxBounds::contains(const SolutionVector& x) const
{
    if (x.size() != dimension()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lower_[i] || x[i] > upper_[i]) {
            return false;
        }
    }
    return true;
}

SolutionVector clamp_to_bounds(SolutionVector x, const BoxBounds& bounds)
{
    if (x.size() != bounds.dimension()) {
        throw DimensionError("clamp_to_bounds: vector has " + std::to_string(x.size()) + " components, bounds have "
                             + std::to_string(bounds.dimension()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::clamp(x[i], bounds.lower(i), bounds.upper(i));
    }
    return x;
}

double squared_distance(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw DimensionError("squared_distance: length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

double distance(std::span<const double> a, std::span<const double> b)
{
    return std::sqrt(squared_distance(a, b));
}

} // namespace dynopt
