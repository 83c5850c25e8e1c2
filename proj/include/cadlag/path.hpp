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

#include <cstddef>
#include <string>
#include <vector>

namespace cadlag {

/// Global tolerance for breakpoint deduplication and comparisons.
inline constexpr double kTolerance = 1e-9;

using Vec = std::vector<double>;

struct Jump {
    double time;
    Vec left;
    Vec right;
};

/// A finite-horizon cadlag path: right-continuous with left limits,
/// piecewise constant or piecewise linear between finitely many breakpoints.
///
/// Segment i lives on [times_[i], next_i) where next_i is times_[i+1] for
/// interior segments and the horizon for the last one. start_[i] is the
/// (right-continuous) value at times_[i]; end_[i] is the left limit at the
/// segment's right end. If the last breakpoint equals the horizon, the path
/// jumps at the terminal time and start_.back() is the terminal value.
class CadlagPath {
  public:
    CadlagPath(double horizon, std::vector<double> times,
               std::vector<Vec> start_values, std::vector<Vec> end_values);

    /// Piecewise-constant path: values[i] holds on [times[i], times[i+1]).
    static CadlagPath step(double horizon, const std::vector<double>& times,
                           const std::vector<double>& values);
    static CadlagPath step_vec(double horizon, const std::vector<double>& times,
                               const std::vector<Vec>& values);

    /// Continuous piecewise-linear path through (times[i], values[i]); the
    /// last node must sit at the horizon. Optional jumps override the left
    /// limit at interior node times.
    static CadlagPath piecewise_linear(double horizon,
                                       const std::vector<double>& times,
                                       const std::vector<double>& values,
                                       const std::vector<std::pair<double, double>>& jumps = {});

    static CadlagPath constant(double horizon, double value);

    double horizon() const { return horizon_; }
    std::size_t dim() const { return dim_; }
    bool is_scalar() const { return dim_ == 1; }
    std::size_t segment_count() const { return times_.size(); }
    const std::vector<double>& breakpoints() const { return times_; }
    const std::vector<Vec>& start_values() const { return start_; }
    const std::vector<Vec>& end_values() const { return end_; }

    /// f(t), the right-continuous value. Requires 0 <= t <= horizon.
    Vec eval(double t) const;
    double eval1(double t) const;

    /// f(t-), the left limit. Requires 0 < t <= horizon.
    Vec left_limit(double t) const;
    double left_limit1(double t) const;

    /// All discontinuities (time, left value, right value), increasing in time.
    std::vector<Jump> jumps() const;

    bool is_piecewise_constant() const;
    bool has_jumps() const { return !jumps().empty(); }

    double sup_norm() const;

    /// Restriction to [0, T'], right-continuous with value f(T') at the new
    /// endpoint. Requires 0 < T' <= horizon.
    CadlagPath restrict(double new_horizon) const;

    /// Nondecreasing? (scalar only)
    bool is_monotone() const;

    bool approx_equal(const CadlagPath& other, double tol = kTolerance) const;

  private:
    double horizon_;
    std::size_t dim_;
    std::vector<double> times_;
    std::vector<Vec> start_;
    std::vector<Vec> end_;

    std::size_t segment_index(double t) const;
    double segment_end(std::size_t i) const;
    void normalize();
};

/// A strictly increasing piecewise-linear bijection of [0, T], stored as
/// node pairs with lambda(0) = 0 and lambda(T) = T.
class TimeChange {
  public:
    TimeChange(double horizon, std::vector<double> times, std::vector<double> values);

    static TimeChange identity(double horizon);

    double horizon() const { return horizon_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(double t) const;

    TimeChange inverse() const;
    /// (*this) after `inner`: t -> this(inner(t)).
    TimeChange compose(const TimeChange& inner) const;

    /// sup_t |lambda(t) - t|; attained at a node by piecewise linearity.
    double sup_deviation() const;

    /// sup over chords of |log difference quotient|; for piecewise-linear
    /// lambda this is the max over segments of |log slope|.
    double log_slope_norm() const;

    bool is_identity(double tol = kTolerance) const;

  private:
    double horizon_;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Ordered polyline of the graph of a scalar path together with the vertical
/// segments joining f(t-) to f(t) at jump times.
struct CompletedGraph {
    std::vector<double> times;   // nondecreasing
    std::vector<double> values;

    std::size_t size() const { return times.size(); }

    /// Total polyline length in the L1 metric |dt| + |dz|.
    double arc_length() const;

    /// New graph with every segment split so no piece exceeds
    /// arc_length()/resolution; original vertices are retained.
    CompletedGraph densified(std::size_t resolution) const;

    /// Longest remaining piece, measured as |dt| + |dz|.
    double max_segment_length() const;
};

/// Gamma(f) for a scalar path.
CompletedGraph completed_graph(const CadlagPath& path);

/// Reads right limits off the polyline to reconstruct the step/linear path.
CadlagPath path_from_completed_graph(const CompletedGraph& graph, double horizon);

/// Exact representation of f composed with lambda; breakpoints are the
/// preimages of f's breakpoints union lambda's nodes.
CadlagPath apply_time_change(const CadlagPath& path, const TimeChange& lambda);

}  // namespace cadlag
