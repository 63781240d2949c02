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
#ifndef DYNOPT_SOLUTION_HPP
#define DYNOPT_SOLUTION_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dynopt {

/// D-dimensional real decision vector.
class SolutionVector {
public:
    SolutionVector() = default;
    explicit SolutionVector(std::size_t dimension, double fill = 0.0) : components_(dimension, fill) {}
    explicit SolutionVector(std::vector<double> components) : components_(std::move(components)) {}
    SolutionVector(std::initializer_list<double> components) : components_(components) {}

    std::size_t size() const noexcept { return components_.size(); }
    bool empty() const noexcept { return components_.empty(); }

    double& operator[](std::size_t i) { return components_[i]; }
    double operator[](std::size_t i) const { return components_[i]; }

    std::span<double> view() noexcept { return components_; }
    std::span<const double> view() const noexcept { return components_; }
    const std::vector<double>& components() const noexcept { return components_; }

    auto begin() noexcept { return components_.begin(); }
    auto end() noexcept { return components_.end(); }
    auto begin() const noexcept { return components_.begin(); }
    auto end() const noexcept { return components_.end(); }

    friend bool operator==(const SolutionVector&, const SolutionVector&) = default;

private:
    std::vector<double> components_;
};

/// Axis-aligned box. lower[i] < upper[i] for every axis.
class BoxBounds {
public:
    BoxBounds(std::vector<double> lower, std::vector<double> upper);
    /// Same interval on every axis.
    static BoxBounds uniform(std::size_t dimension, double lower, double upper);

    std::size_t dimension() const noexcept { return lower_.size(); }
    double lower(std::size_t i) const { return lower_[i]; }
    double upper(std::size_t i) const { return upper_[i]; }
    double range(std::size_t i) const { return upper_[i] - lower_[i]; }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }

    bool contains(const SolutionVector& x) const;

    friend bool operator==(const BoxBounds&, const BoxBounds&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Componentwise projection onto the box. Throws DimensionError on length mismatch.
SolutionVector clamp_to_bounds(SolutionVector x, const BoxBounds& bounds);

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

} // namespace dynopt

#endif
