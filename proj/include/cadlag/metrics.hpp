/*
 * Copyright 2026 The cadlag Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cadlag/path.hpp"

namespace cadlag {

/// Ground metric on the value space.
class GroundMetric {
  public:
    static GroundMetric absolute();   // |a - b| on R
    static GroundMetric euclidean();  // L2 on R^k
    static GroundMetric max_norm();   // Chebyshev on R^k
    static GroundMetric custom(std::function<double(const Vec&, const Vec&)> fn);

    double operator()(const Vec& a, const Vec& b) const;
    const std::string& name() const { return name_; }

  private:
    GroundMetric(std::string name, std::function<double(const Vec&, const Vec&)> fn)
        : name_(std::move(name)), fn_(std::move(fn)) {}
    std::string name_;
    std::function<double(const Vec&, const Vec&)> fn_;
};

enum class J1Penalty { Absolute, LogSlope };

struct DistanceReport {
    double value = 0.0;
    std::string method;        // "exact" or "discretized"
    double error_bound = 0.0;  // 0 for exact
    std::optional<TimeChange> witness;                 // J1 family
    std::vector<std::array<double, 4>> coupling;       // M1: (t_f, z_f, t_g, z_g)
};

/// Exact sup over the merged breakpoint structure of d_E(f(t), g(t)),
/// including left limits.
DistanceReport uniform_distance(const CadlagPath& f, const CadlagPath& g,
                                const GroundMetric& d = GroundMetric::absolute());

/// Skorokhod J1 distance. Exact (threshold search over jump matchings) for
/// piecewise-constant paths; discretized time-change search otherwise.
DistanceReport j1_distance(const CadlagPath& f, const CadlagPath& g,
                           J1Penalty penalty = J1Penalty::Absolute,
                           const GroundMetric& d = GroundMetric::absolute(),
                           std::size_t resolution = 64);

/// Independent brute force: exhaustive enumeration of monotone jump
/// matchings and interleavings. Piecewise-constant paths with at most
/// `max_jumps` jumps in total.
DistanceReport j1_oracle(const CadlagPath& f, const CadlagPath& g,
                         J1Penalty penalty = J1Penalty::Absolute,
                         const GroundMetric& d = GroundMetric::absolute(),
                         std::size_t max_jumps = 8);

/// M1 distance between scalar paths via densified completed graphs and a
/// threshold search over monotone vertex couplings. The densification error
/// is reported, never absorbed.
DistanceReport m1_distance(const CadlagPath& f, const CadlagPath& g,
                           std::size_t resolution = 200);

/// Exact discrete optimum over monotone couplings by a full Pareto-frontier
/// dynamic program; completed graphs limited to `max_vertices` in total.
DistanceReport m1_oracle(const CadlagPath& f, const CadlagPath& g,
                         std::size_t max_vertices = 40);

/// Product (weak) J1 on k-tuples: max over coordinates of the scalar J1
/// distance, independent time changes per coordinate.
DistanceReport weak_product_j1(const std::vector<CadlagPath>& f,
                               const std::vector<CadlagPath>& g,
                               J1Penalty penalty = J1Penalty::Absolute);

/// Half-line distance proxy on a common large horizon: exponentially
/// weighted quadrature of clamped restriction distances, horizons perturbed
/// away from jump times.
DistanceReport halfline_distance(const CadlagPath& f, const CadlagPath& g,
                                 J1Penalty penalty = J1Penalty::Absolute,
                                 std::size_t grid_points = 256);

}  // namespace cadlag
