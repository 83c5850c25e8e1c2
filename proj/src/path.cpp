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
#include "cadlag/path.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cadlag {

namespace {

bool vec_close(const Vec& a, const Vec& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

Vec lerp(const Vec& a, const Vec& b, double w) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + w * (b[i] - a[i]);
    return out;
}

}  // namespace

CadlagPath::CadlagPath(double horizon, std::vector<double> times,
                       std::vector<Vec> start_values, std::vector<Vec> end_values)
    : horizon_(horizon),
      times_(std::move(times)),
      start_(std::move(start_values)),
      end_(std::move(end_values)) {
    if (!(horizon_ > 0)) throw std::invalid_argument("CadlagPath: horizon must be positive");
    if (times_.empty() || times_.size() != start_.size() || times_.size() != end_.size())
        throw std::invalid_argument("CadlagPath: inconsistent segment data");
    if (std::abs(times_.front()) > kTolerance)
        throw std::invalid_argument("CadlagPath: first breakpoint must be 0");
    times_.front() = 0.0;
    dim_ = start_.front().size();
    if (dim_ == 0) throw std::invalid_argument("CadlagPath: empty value");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (start_[i].size() != dim_ || end_[i].size() != dim_)
            throw std::invalid_argument("CadlagPath: inconsistent value dimension");
        if (i > 0 && times_[i] <= times_[i - 1] + kTolerance)
            throw std::invalid_argument("CadlagPath: breakpoints must be strictly increasing");
        if (times_[i] > horizon_ + kTolerance)
            throw std::invalid_argument("CadlagPath: breakpoint beyond horizon");
    }
    if (times_.back() > horizon_ - kTolerance) times_.back() = horizon_;
    normalize();
}

void CadlagPath::normalize() {
    // Merge adjacent segments that are continuous with matching slope and
    // drop degenerate pieces created by composition.
    std::vector<double> times;
    std::vector<Vec> start, end;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const double seg_end = (i + 1 < times_.size()) ? times_[i + 1] : horizon_;
        const double len = seg_end - times_[i];
        if (!times.empty() && vec_close(end.back(), start_[i], 0.0) && len > 0) {
            // continuous junction: merge when slopes agree
            const double prev_len = seg_end == horizon_ && i + 1 == times_.size()
                                        ? times_[i] - times.back()
                                        : times_[i] - times.back();
            bool same_slope = true;
            for (std::size_t d = 0; d < dim_; ++d) {
                const double s_prev = prev_len > 0 ? (end.back()[d] - start.back()[d]) / prev_len : 0.0;
                const double s_cur = (end_[i][d] - start_[i][d]) / len;
                if (std::abs(s_prev - s_cur) > kTolerance) { same_slope = false; break; }
            }
            if (same_slope) {
                end.back() = end_[i];
                continue;
            }
        }
        times.push_back(times_[i]);
        start.push_back(start_[i]);
        end.push_back(end_[i]);
    }
    // A trailing zero-length segment at the horizon is kept only if it is a
    // genuine terminal jump.
    if (times.size() > 1 && times.back() == horizon_ &&
        vec_close(end[times.size() - 2], start.back(), 0.0)) {
        times.pop_back();
        start.pop_back();
        end.pop_back();
    }
    times_ = std::move(times);
    start_ = std::move(start);
    end_ = std::move(end);
}

CadlagPath CadlagPath::step(double horizon, const std::vector<double>& times,
                            const std::vector<double>& values) {
    std::vector<Vec> vals;
    vals.reserve(values.size());
    for (double v : values) vals.push_back(Vec{v});
    return step_vec(horizon, times, vals);
}

CadlagPath CadlagPath::step_vec(double horizon, const std::vector<double>& times,
                                const std::vector<Vec>& values) {
    if (times.size() != values.size() || times.empty())
        throw std::invalid_argument("CadlagPath::step: times/values size mismatch");
    return CadlagPath(horizon, times, values, values);
}

CadlagPath CadlagPath::piecewise_linear(double horizon, const std::vector<double>& times,
                                        const std::vector<double>& values,
                                        const std::vector<std::pair<double, double>>& jumps) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("CadlagPath::piecewise_linear: need at least two nodes");
    if (std::abs(times.back() - horizon) > kTolerance)
        throw std::invalid_argument("CadlagPath::piecewise_linear: last node must sit at the horizon");
    std::vector<double> seg_times(times.begin(), times.end() - 1);
    std::vector<Vec> start, end;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        start.push_back(Vec{values[i]});
        end.push_back(Vec{values[i + 1]});
    }
    // jump overrides: left limit differs from the node value
    bool terminal_jump = false;
    double terminal_left = 0.0;
    for (const auto& [t, left] : jumps) {
        bool found = false;
        for (std::size_t i = 0; i < seg_times.size(); ++i) {
            if (std::abs(seg_times[i] - t) <= kTolerance && i > 0) {
                end[i - 1] = Vec{left};
                found = true;
                break;
            }
        }
        if (!found && std::abs(t - horizon) <= kTolerance) {
            terminal_jump = true;
            terminal_left = left;
            found = true;
        }
        if (!found) throw std::invalid_argument("CadlagPath::piecewise_linear: jump time is not a node");
    }
    if (terminal_jump) {
        end.back() = Vec{terminal_left};
        seg_times.push_back(horizon);
        start.push_back(Vec{values.back()});
        end.push_back(Vec{values.back()});
    }
    return CadlagPath(horizon, seg_times, start, end);
}

CadlagPath CadlagPath::constant(double horizon, double value) {
    return step(horizon, {0.0}, {value});
}

double CadlagPath::segment_end(std::size_t i) const {
    return (i + 1 < times_.size()) ? times_[i + 1] : horizon_;
}

std::size_t CadlagPath::segment_index(double t) const {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return static_cast<std::size_t>(it - times_.begin()) - 1;
}

Vec CadlagPath::eval(double t) const {
    if (t < -kTolerance || t > horizon_ + kTolerance)
        throw std::domain_error("CadlagPath::eval: time outside [0, horizon]");
    t = std::clamp(t, 0.0, horizon_);
    if (t == horizon_) {
        if (times_.back() == horizon_) return start_.back();
        return end_.back();
    }
    const std::size_t i = segment_index(t);
    const double a = times_[i], b = segment_end(i);
    if (b <= a) return start_[i];
    return lerp(start_[i], end_[i], (t - a) / (b - a));
}

double CadlagPath::eval1(double t) const { return eval(t)[0]; }

Vec CadlagPath::left_limit(double t) const {
    if (t <= kTolerance || t > horizon_ + kTolerance)
        throw std::domain_error("CadlagPath::left_limit: time outside (0, horizon]");
    t = std::min(t, horizon_);
    // locate the segment whose half-open interval has t as interior point or
    // right endpoint
    std::size_t i = segment_index(t);
    if (times_[i] == t) {
        i -= 1;  // t is a breakpoint: limit comes from the previous segment
    }
    const double a = times_[i], b = segment_end(i);
    if (t >= b || b <= a) return end_[i];
    return lerp(start_[i], end_[i], (t - a) / (b - a));
}

double CadlagPath::left_limit1(double t) const { return left_limit(t)[0]; }

std::vector<Jump> CadlagPath::jumps() const {
    std::vector<Jump> out;
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!vec_close(end_[i - 1], start_[i], kTolerance))
            out.push_back(Jump{times_[i], end_[i - 1], start_[i]});
    }
    return out;
}

bool CadlagPath::is_piecewise_constant() const {
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!vec_close(start_[i], end_[i], 0.0)) return false;
    }
    return true;
}

double CadlagPath::sup_norm() const {
    double m = 0.0;
    auto norm = [&](const Vec& v) {
        double s = 0.0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    };
    for (std::size_t i = 0; i < times_.size(); ++i) {
        m = std::max(m, std::max(norm(start_[i]), norm(end_[i])));
    }
    return m;
}

CadlagPath CadlagPath::restrict(double new_horizon) const {
    if (new_horizon <= kTolerance || new_horizon > horizon_ + kTolerance)
        throw std::domain_error("CadlagPath::restrict: horizon outside (0, T]");
    new_horizon = std::min(new_horizon, horizon_);
    std::vector<double> times;
    std::vector<Vec> start, end;
    for (std::size_t i = 0; i < times_.size() && times_[i] < new_horizon - kTolerance; ++i) {
        times.push_back(times_[i]);
        start.push_back(start_[i]);
        const double b = segment_end(i);
        if (b <= new_horizon + kTolerance) {
            end.push_back(end_[i]);
        } else {
            const double a = times_[i];
            end.push_back(lerp(start_[i], end_[i], (new_horizon - a) / (b - a)));
        }
    }
    // terminal value is f(T'), which may create a jump at the new endpoint
    const Vec terminal = eval(new_horizon);
    if (!vec_close(end.back(), terminal, kTolerance)) {
        times.push_back(new_horizon);
        start.push_back(terminal);
        end.push_back(terminal);
    }
    return CadlagPath(new_horizon, times, start, end);
}

bool CadlagPath::is_monotone() const {
    if (!is_scalar()) throw std::invalid_argument("is_monotone: scalar paths only");
    double prev = start_[0][0];
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (start_[i][0] < prev - kTolerance) return false;
        if (end_[i][0] < start_[i][0] - kTolerance) return false;
        prev = end_[i][0];
    }
    return true;
}

bool CadlagPath::approx_equal(const CadlagPath& other, double tol) const {
    if (std::abs(horizon_ - other.horizon_) > tol) return false;
    if (times_.size() != other.times_.size() || dim_ != other.dim_) return false;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (std::abs(times_[i] - other.times_[i]) > tol) return false;
        if (!vec_close(start_[i], other.start_[i], tol)) return false;
        if (!vec_close(end_[i], other.end_[i], tol)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// TimeChange

TimeChange::TimeChange(double horizon, std::vector<double> times, std::vector<double> values)
    : horizon_(horizon), times_(std::move(times)), values_(std::move(values)) {
    if (!(horizon_ > 0)) throw std::invalid_argument("TimeChange: horizon must be positive");
    if (times_.size() != values_.size() || times_.size() < 2)
        throw std::invalid_argument("TimeChange: need at least the two endpoint nodes");
    if (std::abs(times_.front()) > kTolerance || std::abs(values_.front()) > kTolerance ||
        std::abs(times_.back() - horizon_) > kTolerance ||
        std::abs(values_.back() - horizon_) > kTolerance)
        throw std::invalid_argument("TimeChange: must fix 0 and the horizon");
    times_.front() = values_.front() = 0.0;
    times_.back() = values_.back() = horizon_;
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (times_[i] <= times_[i - 1] || values_[i] <= values_[i - 1])
            throw std::invalid_argument("TimeChange: nodes must be strictly increasing");
    }
}

TimeChange TimeChange::identity(double horizon) {
    return TimeChange(horizon, {0.0, horizon}, {0.0, horizon});
}

double TimeChange::operator()(double t) const {
    t = std::clamp(t, 0.0, horizon_);
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times_.begin());
    if (i == times_.size()) return horizon_;
    if (i == 0) return 0.0;
    const double a = times_[i - 1], b = times_[i];
    const double w = (t - a) / (b - a);
    return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

TimeChange TimeChange::inverse() const { return TimeChange(horizon_, values_, times_); }

TimeChange TimeChange::compose(const TimeChange& inner) const {
    if (std::abs(horizon_ - inner.horizon_) > kTolerance)
        throw std::invalid_argument("TimeChange::compose: horizon mismatch");
    // node set: inner's nodes plus preimages of this's nodes under inner
    std::set<double> ts(inner.times_.begin(), inner.times_.end());
    const TimeChange inner_inv = inner.inverse();
    for (double t : times_) ts.insert(inner_inv(t));
    std::vector<double> times, values;
    double last_t = -1.0, last_v = -1.0;
    for (double t : ts) {
        const double v = (*this)(inner(t));
        if (!times.empty() && (t - last_t <= kTolerance || v - last_v <= kTolerance)) continue;
        times.push_back(t);
        values.push_back(v);
        last_t = t;
        last_v = v;
    }
    times.back() = horizon_;
    values.back() = horizon_;
    return TimeChange(horizon_, times, values);
}

double TimeChange::sup_deviation() const {
    double m = 0.0;
    for (std::size_t i = 0; i < times_.size(); ++i)
        m = std::max(m, std::abs(values_[i] - times_[i]));
    return m;
}

double TimeChange::log_slope_norm() const {
    double m = 0.0;
    for (std::size_t i = 1; i < times_.size(); ++i) {
        const double slope = (values_[i] - values_[i - 1]) / (times_[i] - times_[i - 1]);
        if (slope <= 0) throw std::domain_error("TimeChange::log_slope_norm: nonpositive slope");
        m = std::max(m, std::abs(std::log(slope)));
    }
    return m;
}

bool TimeChange::is_identity(double tol) const {
    for (std::size_t i = 0; i < times_.size(); ++i)
        if (std::abs(values_[i] - times_[i]) > tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// CompletedGraph

double CompletedGraph::arc_length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
        len += std::abs(times[i] - times[i - 1]) + std::abs(values[i] - values[i - 1]);
    return len;
}

double CompletedGraph::max_segment_length() const {
    double m = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
        m = std::max(m, std::abs(times[i] - times[i - 1]) + std::abs(values[i] - values[i - 1]));
    return m;
}

CompletedGraph CompletedGraph::densified(std::size_t resolution) const {
    if (resolution < 2) resolution = 2;
    const double pitch = std::max(arc_length() / static_cast<double>(resolution), 1e-12);
    CompletedGraph out;
    out.times.push_back(times.front());
    out.values.push_back(values.front());
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double len = std::abs(times[i] - times[i - 1]) + std::abs(values[i] - values[i - 1]);
        const std::size_t pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / pitch)));
        for (std::size_t k = 1; k <= pieces; ++k) {
            const double w = static_cast<double>(k) / static_cast<double>(pieces);
            out.times.push_back(times[i - 1] + w * (times[i] - times[i - 1]));
            out.values.push_back(values[i - 1] + w * (values[i] - values[i - 1]));
        }
    }
    return out;
}

CompletedGraph completed_graph(const CadlagPath& path) {
    if (!path.is_scalar()) throw std::invalid_argument("completed_graph: scalar paths only");
    CompletedGraph g;
    const auto& times = path.breakpoints();
    const auto& start = path.start_values();
    const auto& end = path.end_values();
    g.times.push_back(0.0);
    g.values.push_back(start[0][0]);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && std::abs(end[i - 1][0] - start[i][0]) > 0) {
            // vertical jump segment from (t, f(t-)) to (t, f(t))
            g.times.push_back(times[i]);
            g.values.push_back(start[i][0]);
        }
        const double seg_end = (i + 1 < times.size()) ? times[i + 1] : path.horizon();
        if (seg_end > times[i]) {
            if (g.times.back() != seg_end || g.values.back() != end[i][0]) {
                g.times.push_back(seg_end);
                g.values.push_back(end[i][0]);
            }
        }
    }
    return g;
}

CadlagPath path_from_completed_graph(const CompletedGraph& graph, double horizon) {
    if (graph.size() < 1) throw std::invalid_argument("path_from_completed_graph: empty graph");
    std::vector<double> times;
    std::vector<Vec> start, end;
    std::size_t i = 0;
    while (i + 1 < graph.size()) {
        // skip vertical runs: the right limit is the last value at this time
        std::size_t j = i;
        while (j + 1 < graph.size() && graph.times[j + 1] == graph.times[j]) ++j;
        const double t = graph.times[j];
        if (j + 1 < graph.size()) {
            times.push_back(t);
            start.push_back(Vec{graph.values[j]});
            end.push_back(Vec{graph.values[j + 1]});
            i = j + 1;
        } else {
            // trailing vertical at the horizon: terminal jump
            times.push_back(t);
            start.push_back(Vec{graph.values[j]});
            end.push_back(Vec{graph.values[j]});
            i = j + 1;
        }
    }
    if (times.empty()) {
        times.push_back(0.0);
        start.push_back(Vec{graph.values.front()});
        end.push_back(Vec{graph.values.front()});
    } else if (graph.times.back() == graph.times[graph.size() - 2] &&
               graph.values.back() != graph.values[graph.size() - 2]) {
        // terminal vertical segment
        times.push_back(graph.times.back());
        start.push_back(Vec{graph.values.back()});
        end.push_back(Vec{graph.values.back()});
    }
    return CadlagPath(horizon, times, start, end);
}

CadlagPath apply_time_change(const CadlagPath& path, const TimeChange& lambda) {
    if (std::abs(path.horizon() - lambda.horizon()) > kTolerance)
        throw std::invalid_argument("apply_time_change: horizon mismatch");
    const TimeChange lambda_inv = lambda.inverse();
    std::set<double> cut_set(lambda.times().begin(), lambda.times().end());
    for (double t : path.breakpoints()) cut_set.insert(lambda_inv(t));
    std::vector<double> cuts;
    for (double t : cut_set) {
        if (!cuts.empty() && t - cuts.back() <= kTolerance) continue;
        cuts.push_back(t);
    }
    if (cuts.back() < path.horizon()) cuts.push_back(path.horizon());
    cuts.back() = path.horizon();

    std::vector<double> times;
    std::vector<Vec> start, end;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        times.push_back(cuts[i]);
        start.push_back(path.eval(lambda(cuts[i])));
        end.push_back(path.left_limit(lambda(cuts[i + 1])));
    }
    const Vec terminal = path.eval(path.horizon());
    const Vec terminal_left = path.left_limit(path.horizon());
    bool term_jump = false;
    for (std::size_t d = 0; d < terminal.size(); ++d)
        if (std::abs(terminal[d] - terminal_left[d]) > kTolerance) term_jump = true;
    if (term_jump) {
        times.push_back(path.horizon());
        start.push_back(terminal);
        end.push_back(terminal);
    }
    return CadlagPath(path.horizon(), times, start, end);
}

}  // namespace cadlag
