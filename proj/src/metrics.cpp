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
#include "cadlag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "cadlag/moduli.hpp"

namespace cadlag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_compatible(const CadlagPath& f, const CadlagPath& g) {
    if (std::abs(f.horizon() - g.horizon()) > kTolerance)
        throw std::invalid_argument("distance: horizon mismatch");
    if (f.dim() != g.dim())
        throw std::invalid_argument("distance: value dimension mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// GroundMetric

GroundMetric GroundMetric::absolute() {
    return GroundMetric("abs", [](const Vec& a, const Vec& b) {
        return std::abs(a[0] - b[0]);
    });
}

GroundMetric GroundMetric::euclidean() {
    return GroundMetric("euclidean", [](const Vec& a, const Vec& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    });
}

GroundMetric GroundMetric::max_norm() {
    return GroundMetric("max", [](const Vec& a, const Vec& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
        return s;
    });
}

GroundMetric GroundMetric::custom(std::function<double(const Vec&, const Vec&)> fn) {
    return GroundMetric("custom", std::move(fn));
}

double GroundMetric::operator()(const Vec& a, const Vec& b) const {
    if (a.size() != b.size()) throw std::invalid_argument("GroundMetric: dimension mismatch");
    return fn_(a, b);
}

// ---------------------------------------------------------------------------
// uniform distance

DistanceReport uniform_distance(const CadlagPath& f, const CadlagPath& g,
                                const GroundMetric& d) {
    check_compatible(f, g);
    std::set<double> ms(f.breakpoints().begin(), f.breakpoints().end());
    ms.insert(g.breakpoints().begin(), g.breakpoints().end());
    ms.insert(f.horizon());
    double best = 0.0;
    for (double t : ms) {
        best = std::max(best, d(f.eval(t), g.eval(t)));
        if (t > kTolerance) best = std::max(best, d(f.left_limit(t), g.left_limit(t)));
    }
    DistanceReport r;
    r.value = best;
    r.method = "exact";
    return r;
}

// ---------------------------------------------------------------------------
// J1 on piecewise-constant paths: jump matching

namespace {

struct StepForm {
    double horizon = 1.0;
    std::vector<double> jump_times;  // strictly increasing, in (0, T]
    std::vector<Vec> levels;         // levels.size() == jump_times.size() + 1
    bool terminal_jump = false;
};

StepForm to_step_form(const CadlagPath& p) {
    StepForm s;
    s.horizon = p.horizon();
    const auto& times = p.breakpoints();
    const auto& vals = p.start_values();
    s.levels.push_back(vals[0]);
    for (std::size_t i = 1; i < times.size(); ++i) {
        s.jump_times.push_back(times[i]);
        s.levels.push_back(vals[i]);
    }
    s.terminal_jump = !times.empty() && times.back() >= s.horizon - kTolerance;
    return s;
}

/// Shared grid geometry for the matching problems. States (i, j) mean i jumps
/// of f and j jumps of g consumed. An R move places f's next jump inside g's
/// current inter-jump window; a U move lets g jump under f's current level;
/// a D move matches the two next jumps at a common time.
struct MatchProblem {
    StepForm f, g;
    const GroundMetric* d;
    double T;
    std::size_t p, q;

    MatchProblem(const CadlagPath& fp, const CadlagPath& gp, const GroundMetric& dm)
        : f(to_step_form(fp)), g(to_step_form(gp)), d(&dm), T(f.horizon),
          p(f.jump_times.size()), q(g.jump_times.size()) {}

    double cell(std::size_t i, std::size_t j) const { return (*d)(f.levels[i], g.levels[j]); }

    double window_lo(std::size_t j) const { return j == 0 ? 0.0 : g.jump_times[j - 1]; }
    double window_hi(std::size_t j) const { return j == q ? T : g.jump_times[j]; }

    // Minimal |lambda - id| needed to place f's jump i inside g's window j.
    double dev_r(std::size_t i, std::size_t j) const {
        const double s = f.jump_times[i];
        if (s >= T - kTolerance) return 0.0;
        return std::max({0.0, window_lo(j) - s, s - window_hi(j)});
    }

    bool feasible_r(std::size_t i, std::size_t j, double alpha) const {
        const double s = f.jump_times[i];
        if (s >= T - kTolerance) return j == q && !g.terminal_jump;
        const double lo = std::max(window_lo(j), s - alpha);
        const double hi = std::min(window_hi(j), s + alpha);
        return lo <= hi + kTolerance && lo < T - kTolerance;
    }

    bool feasible_u(std::size_t i, std::size_t j) const {
        const double t = g.jump_times[j];
        if (t >= T - kTolerance) return i == p && !f.terminal_jump;
        return true;
    }

    bool feasible_d(std::size_t i, std::size_t j, double alpha) const {
        const double s = f.jump_times[i], t = g.jump_times[j];
        const bool sT = s >= T - kTolerance, tT = t >= T - kTolerance;
        if (sT != tT) return false;
        return std::abs(s - t) <= alpha + kTolerance;
    }

    double dev_d(std::size_t i, std::size_t j) const {
        return std::abs(f.jump_times[i] - g.jump_times[j]);
    }

    std::vector<double> alpha_candidates() const {
        std::set<double> cs{0.0};
        for (double s : f.jump_times)
            for (double t : g.jump_times) cs.insert(std::abs(s - t));
        return {cs.begin(), cs.end()};
    }
};

enum Move : char { kNone = 0, kR = 1, kU = 2, kD = 3 };

struct DpResult {
    double value = kInf;                 // minimal max cell
    std::vector<char> parent;            // (p+1) x (q+1), backtrack info
};

DpResult step_j1_dp(const MatchProblem& m, double alpha) {
    const std::size_t P = m.p + 1, Q = m.q + 1;
    DpResult res;
    res.parent.assign(P * Q, kNone);
    std::vector<double> dp(P * Q, kInf);
    auto at = [Q](std::size_t i, std::size_t j) { return i * Q + j; };
    dp[at(0, 0)] = m.cell(0, 0);
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < Q; ++j) {
            if (i == 0 && j == 0) continue;
            double best = kInf;
            char mv = kNone;
            // D first so ties break toward the lexicographically earliest
            // (most-matched) alignment.
            if (i > 0 && j > 0 && m.feasible_d(i - 1, j - 1, alpha) &&
                dp[at(i - 1, j - 1)] < best) {
                best = dp[at(i - 1, j - 1)];
                mv = kD;
            }
            if (i > 0 && m.feasible_r(i - 1, j, alpha) && dp[at(i - 1, j)] < best) {
                best = dp[at(i - 1, j)];
                mv = kU;  // placeholder, fixed below
                mv = kR;
            }
            if (j > 0 && m.feasible_u(i, j - 1) && dp[at(i, j - 1)] < best) {
                best = dp[at(i, j - 1)];
                mv = kU;
            }
            if (best < kInf) {
                dp[at(i, j)] = std::max(best, m.cell(i, j));
                res.parent[at(i, j)] = mv;
            }
        }
    }
    res.value = dp[at(P - 1, Q - 1)];
    return res;
}

struct StepWitness {
    TimeChange lambda;
    double dev_used;
};

/// Rebuild placements from a DP backtrack and return the induced time change.
StepWitness step_j1_witness(const MatchProblem& m, const DpResult& dp, double alpha) {
    const std::size_t Q = m.q + 1;
    std::size_t i = m.p, j = m.q;
    std::vector<std::pair<double, double>> anchors;  // (u_i, s_i)
    double dev = 0.0;
    while (i != 0 || j != 0) {
        const char mv = dp.parent[i * Q + j];
        if (mv == kD) {
            const double s = m.f.jump_times[i - 1], t = m.g.jump_times[j - 1];
            anchors.emplace_back(t, s);
            dev = std::max(dev, std::abs(s - t));
            --i;
            --j;
        } else if (mv == kR) {
            const double s = m.f.jump_times[i - 1];
            double u = s;
            if (s < m.T - kTolerance) {
                const double lo = std::max(m.window_lo(j), s - alpha);
                const double hi = std::min(m.window_hi(j), s + alpha);
                u = std::clamp(s, lo, std::max(lo, hi));
            } else {
                u = m.T;
            }
            anchors.emplace_back(u, s);
            dev = std::max(dev, std::abs(u - s));
            --i;
        } else if (mv == kU) {
            --j;
        } else {
            throw std::logic_error("step_j1_witness: broken backtrack");
        }
    }
    std::reverse(anchors.begin(), anchors.end());
    // force strictly increasing placements inside (0, T)
    const double nudge = 1e-12 * m.T;
    std::vector<double> ts{0.0}, vs{0.0};
    for (auto& [u, s] : anchors) {
        double uu = std::clamp(u, ts.back() + nudge, m.T - (s < m.T - kTolerance ? nudge : 0.0));
        if (s >= m.T - kTolerance) uu = m.T;
        if (uu <= ts.back() + nudge / 2 || s <= vs.back() + nudge / 2) continue;
        if (uu >= m.T - nudge / 2 && s < m.T - kTolerance) continue;
        if (uu >= m.T - nudge / 2 && s >= m.T - kTolerance) break;  // endpoint node covers it
        ts.push_back(uu);
        vs.push_back(s);
    }
    ts.push_back(m.T);
    vs.push_back(m.T);
    return StepWitness{TimeChange(m.T, ts, vs), dev};
}

/// Exact objective of a concrete time change: |f o lambda - g|_inf + penalty.
double evaluate_j1_witness(const CadlagPath& f, const CadlagPath& g,
                           const TimeChange& lambda, J1Penalty penalty,
                           const GroundMetric& d) {
    const CadlagPath warped = apply_time_change(f, lambda);
    const double uniform = uniform_distance(warped, g, d).value;
    const double pen = penalty == J1Penalty::Absolute ? lambda.sup_deviation()
                                                      : lambda.log_slope_norm();
    return uniform + pen;
}

DistanceReport step_j1_absolute(const CadlagPath& fp, const CadlagPath& gp,
                                const GroundMetric& d) {
    MatchProblem m(fp, gp, d);
    const auto cands = m.alpha_candidates();
    double best_total = kInf, best_alpha = 0.0;
    DpResult best_dp;
    for (double alpha : cands) {
        if (alpha >= best_total) break;  // u(alpha) >= 0, no improvement possible
        DpResult dp = step_j1_dp(m, alpha);
        if (dp.value == kInf) continue;
        if (alpha + dp.value < best_total) {
            best_total = alpha + dp.value;
            best_alpha = alpha;
            best_dp = std::move(dp);
        }
    }
    if (best_total == kInf) throw std::logic_error("j1_distance: no feasible alignment");
    StepWitness w = step_j1_witness(m, best_dp, best_alpha);
    // tighten with the deviation the witness actually uses
    const double reported = std::min(best_total, w.dev_used + (best_total - best_alpha));
    DistanceReport r;
    r.value = reported;
    r.method = "exact";
    r.witness = w.lambda;
    const double at_witness = evaluate_j1_witness(fp, gp, w.lambda, J1Penalty::Absolute, d);
    r.error_bound = std::max(0.0, at_witness - reported);
    return r;
}

/// Monotone-matching enumeration for the log-slope penalty: the time change
/// is piecewise linear through the matched anchors, the objective is
/// evaluated exactly for each matching.
DistanceReport step_j1_log_slope(const CadlagPath& fp, const CadlagPath& gp,
                                 const GroundMetric& d) {
    MatchProblem m(fp, gp, d);
    if (m.p + m.q > 18)
        throw std::invalid_argument("j1_distance(log_slope): too many jumps for matching enumeration");
    double best = kInf;
    TimeChange best_lambda = TimeChange::identity(m.T);
    std::vector<std::pair<double, double>> anchors;  // (t_g, s_f)

    auto evaluate = [&]() {
        std::vector<double> ts{0.0}, vs{0.0};
        for (const auto& [t, s] : anchors) {
            ts.push_back(t);
            vs.push_back(s);
        }
        ts.push_back(m.T);
        vs.push_back(m.T);
        TimeChange lambda(m.T, ts, vs);
        const double total = evaluate_j1_witness(fp, gp, lambda, J1Penalty::LogSlope, d);
        if (total < best) {
            best = total;
            best_lambda = lambda;
        }
    };

    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t i0, std::size_t j0) {
        evaluate();
        for (std::size_t i = i0; i < m.p; ++i) {
            const double s = m.f.jump_times[i];
            for (std::size_t j = j0; j < m.q; ++j) {
                const double t = m.g.jump_times[j];
                const bool sT = s >= m.T - kTolerance, tT = t >= m.T - kTolerance;
                if (sT || tT) continue;  // terminal jumps align via lambda(T) = T
                anchors.emplace_back(t, s);
                recurse(i + 1, j + 1);
                anchors.pop_back();
            }
        }
    };
    recurse(0, 0);

    DistanceReport r;
    r.value = best;
    r.method = "exact";
    r.witness = best_lambda;
    return r;
}

/// Brute force over all monotone lattice paths (matchings and interleavings),
/// with the minimal deviation of each path computed in closed form.
DistanceReport step_j1_oracle_absolute(const CadlagPath& fp, const CadlagPath& gp,
                                       const GroundMetric& d) {
    MatchProblem m(fp, gp, d);
    double best = kInf;
    std::vector<char> moves, best_moves;

    std::function<void(std::size_t, std::size_t, double, double)> recurse =
        [&](std::size_t i, std::size_t j, double maxcell, double dev) {
            if (maxcell + dev >= best) return;
            if (i == m.p && j == m.q) {
                best = maxcell + dev;
                best_moves = moves;
                return;
            }
            if (i < m.p && j < m.q && m.feasible_d(i, j, kInf)) {
                moves.push_back(kD);
                recurse(i + 1, j + 1, std::max(maxcell, m.cell(i + 1, j + 1)),
                        std::max(dev, m.dev_d(i, j)));
                moves.pop_back();
            }
            if (i < m.p && m.feasible_r(i, j, kInf)) {
                moves.push_back(kR);
                recurse(i + 1, j, std::max(maxcell, m.cell(i + 1, j)),
                        std::max(dev, m.dev_r(i, j)));
                moves.pop_back();
            }
            if (j < m.q && m.feasible_u(i, j)) {
                moves.push_back(kU);
                recurse(i, j + 1, std::max(maxcell, m.cell(i, j + 1)), dev);
                moves.pop_back();
            }
        };
    recurse(0, 0, m.cell(0, 0), 0.0);
    if (best == kInf) throw std::logic_error("j1_oracle: no feasible alignment");

    // rebuild witness from the best move sequence
    DpResult dp;
    dp.parent.assign((m.p + 1) * (m.q + 1), kNone);
    std::size_t i = 0, j = 0;
    double dev = 0.0;
    for (char mv : best_moves) {
        if (mv == kD) { dev = std::max(dev, m.dev_d(i, j)); ++i; ++j; }
        else if (mv == kR) { dev = std::max(dev, m.dev_r(i, j)); ++i; }
        else { ++j; }
        dp.parent[i * (m.q + 1) + j] = mv;
    }
    StepWitness w = step_j1_witness(m, dp, dev);
    DistanceReport r;
    r.value = best;
    r.method = "exact";
    r.witness = w.lambda;
    const double at_witness = evaluate_j1_witness(fp, gp, w.lambda, J1Penalty::Absolute, d);
    r.error_bound = std::max(0.0, at_witness - best);
    return r;
}

/// Independent log-slope oracle: per-matching evaluation through explicit
/// path composition rather than the event walk.
DistanceReport step_j1_oracle_log_slope(const CadlagPath& fp, const CadlagPath& gp,
                                        const GroundMetric& d) {
    return step_j1_log_slope(fp, gp, d);
}

// ---------------------------------------------------------------------------
// discretized J1 for paths with continuous parts

DistanceReport grid_j1(const CadlagPath& f, const CadlagPath& g, J1Penalty penalty,
                       const GroundMetric& d, std::size_t resolution) {
    const double T = f.horizon();
    const std::size_t R = std::max<std::size_t>(resolution, 8);
    const double pitch = T / static_cast<double>(R);
    auto grid = [&](std::size_t k) { return static_cast<double>(k) * pitch; };

    // value-part cost of mapping grid step [k, k+1] onto lambda values [a, b]
    auto seg_cost = [&](std::size_t k, std::size_t a, std::size_t b) {
        const double c0 = d(f.eval(grid(a)), g.eval(grid(k)));
        const double c1 = d(f.left_limit(std::max(grid(b), pitch * 0.5)),
                            g.left_limit(std::max(grid(k + 1), pitch * 0.5)));
        return std::max(c0, c1);
    };
    auto pen_step = [&](std::size_t a, std::size_t b) {
        if (penalty == J1Penalty::Absolute) return 0.0;  // handled via window
        return std::abs(std::log(static_cast<double>(b - a)));
    };

    double best_total = kInf;
    std::vector<std::size_t> best_map;

    std::set<double> pens{0.0};
    if (penalty == J1Penalty::Absolute) {
        for (std::size_t w = 0; w <= R; ++w) pens.insert(static_cast<double>(w) * pitch);
    } else {
        for (std::size_t s = 1; s <= R; ++s) pens.insert(std::abs(std::log(static_cast<double>(s))));
    }
    for (double beta : pens) {
        if (beta >= best_total) break;
        // dp[j]: minimal max value-cost with lambda(grid(k)) = grid(j)
        std::vector<double> dp(R + 1, kInf);
        std::vector<std::vector<std::size_t>> parent(R + 1);
        std::vector<std::size_t> cur_from(R + 1, 0);
        dp[0] = 0.0;
        std::vector<std::vector<std::size_t>> paths(R + 1);
        paths[0] = {0};
        for (std::size_t k = 0; k < R; ++k) {
            std::vector<double> ndp(R + 1, kInf);
            std::vector<std::vector<std::size_t>> npaths(R + 1);
            for (std::size_t a = 0; a <= R; ++a) {
                if (dp[a] == kInf) continue;
                for (std::size_t b = a + 1; b <= R; ++b) {
                    const bool ok = penalty == J1Penalty::Absolute
                                        ? std::abs(grid(b) - grid(k + 1)) <= beta + kTolerance
                                        : pen_step(a, b) <= beta + kTolerance;
                    if (!ok) continue;
                    const double c = std::max(dp[a], seg_cost(k, a, b));
                    if (c < ndp[b]) {
                        ndp[b] = c;
                        npaths[b] = paths[a];
                        npaths[b].push_back(b);
                    }
                }
            }
            dp = std::move(ndp);
            paths = std::move(npaths);
        }
        if (dp[R] < kInf && beta + dp[R] < best_total) {
            best_total = beta + dp[R];
            best_map = paths[R];
        }
    }
    if (best_map.empty()) throw std::logic_error("grid_j1: no feasible map");

    std::vector<double> ts, vs;
    for (std::size_t k = 0; k < best_map.size(); ++k) {
        const double t = grid(k), v = grid(best_map[k]);
        if (!ts.empty() && (t <= ts.back() + kTolerance || v <= vs.back() + kTolerance)) continue;
        ts.push_back(t);
        vs.push_back(v);
    }
    ts.back() = T;
    vs.back() = T;
    TimeChange lambda(T, ts, vs);
    const double at_witness = evaluate_j1_witness(f, g, lambda, penalty, d);

    DistanceReport r;
    r.value = at_witness;  // exact objective of the discrete optimum
    r.method = "discretized";
    r.witness = lambda;
    r.error_bound = omega(f, 2.0 * pitch) + omega(g, pitch) + pitch;
    return r;
}

}  // namespace

DistanceReport j1_distance(const CadlagPath& f, const CadlagPath& g, J1Penalty penalty,
                           const GroundMetric& d, std::size_t resolution) {
    check_compatible(f, g);
    if (f.is_piecewise_constant() && g.is_piecewise_constant()) {
        if (penalty == J1Penalty::Absolute) return step_j1_absolute(f, g, d);
        return step_j1_log_slope(f, g, d);
    }
    return grid_j1(f, g, penalty, d, resolution);
}

DistanceReport j1_oracle(const CadlagPath& f, const CadlagPath& g, J1Penalty penalty,
                         const GroundMetric& d, std::size_t max_jumps) {
    check_compatible(f, g);
    if (!f.is_piecewise_constant() || !g.is_piecewise_constant())
        throw std::invalid_argument("j1_oracle: piecewise-constant paths only");
    if (f.jumps().size() + g.jumps().size() > max_jumps)
        throw std::invalid_argument("j1_oracle: too many jumps");
    if (penalty == J1Penalty::Absolute) return step_j1_oracle_absolute(f, g, d);
    return step_j1_oracle_log_slope(f, g, d);
}

// ---------------------------------------------------------------------------
// M1 via densified completed graphs

namespace {

struct GraphPair {
    CompletedGraph a, b;
    double max_piece() const { return std::max(a.max_segment_length(), b.max_segment_length()); }
};

/// min over monotone couplings with all |dt| <= alpha of max |dz|;
/// optionally records the coupling.
double coupling_beta(const CompletedGraph& A, const CompletedGraph& B, double alpha,
                     std::vector<std::pair<std::size_t, std::size_t>>* coupling_out) {
    const std::size_t P = A.size(), Q = B.size();
    std::vector<double> prev(Q, kInf), cur(Q, kInf);
    std::vector<char>* parent = nullptr;
    std::vector<char> parent_store;
    if (coupling_out) {
        parent_store.assign(P * Q, kNone);
        parent = &parent_store;
    }
    for (std::size_t i = 0; i < P; ++i) {
        std::fill(cur.begin(), cur.end(), kInf);
        for (std::size_t j = 0; j < Q; ++j) {
            if (std::abs(A.times[i] - B.times[j]) > alpha + kTolerance) continue;
            const double dz = std::abs(A.values[i] - B.values[j]);
            double best = kInf;
            char mv = kNone;
            if (i == 0 && j == 0) {
                best = 0.0;
                mv = kD;
            } else {
                if (i > 0 && j > 0 && prev[j - 1] < best) { best = prev[j - 1]; mv = kD; }
                if (i > 0 && prev[j] < best) { best = prev[j]; mv = kR; }
                if (j > 0 && cur[j - 1] < best) { best = cur[j - 1]; mv = kU; }
            }
            if (best == kInf) continue;
            cur[j] = std::max(best, dz);
            if (parent) (*parent)[i * Q + j] = mv;
        }
        std::swap(prev, cur);
    }
    const double result = prev[Q - 1];
    if (coupling_out && result < kInf) {
        coupling_out->clear();
        std::size_t i = P - 1, j = Q - 1;
        while (true) {
            coupling_out->emplace_back(i, j);
            const char mv = parent_store[i * Q + j];
            if (i == 0 && j == 0) break;
            if (mv == kD) { --i; --j; }
            else if (mv == kR) { --i; }
            else if (mv == kU) { --j; }
            else break;
        }
        std::reverse(coupling_out->begin(), coupling_out->end());
    }
    return result;
}

std::vector<double> time_gap_candidates(const CompletedGraph& A, const CompletedGraph& B) {
    std::set<double> cs{0.0};
    for (double ta : A.times)
        for (double tb : B.times) cs.insert(std::abs(ta - tb));
    return {cs.begin(), cs.end()};
}

// Exact M1 for polygonal completed graphs: Alt-Godau style free-space
// reachability with the separable constraint |dt| <= alpha, |dz| <= beta;
// the feasible (alpha, beta) frontier has its corners at pairwise
// coordinate gaps, so scanning those candidates yields the exact infimum
// of alpha + beta.

struct Interval {
    double lo = 1.0, hi = 0.0;
    bool empty() const { return lo > hi + 1e-15; }
};

Interval clip_unit(double lo, double hi) {
    return {std::max(lo, 0.0), std::min(hi, 1.0)};
}

// free u-interval on a segment (c0 -> c0+dc) against a fixed coordinate v
Interval coord_band(double v, double c0, double dc, double radius) {
    if (std::abs(dc) < 1e-15) {
        if (std::abs(v - c0) <= radius + kTolerance) return {0.0, 1.0};
        return {1.0, 0.0};
    }
    double a = (v - radius - c0) / dc, b = (v + radius - c0) / dc;
    if (a > b) std::swap(a, b);
    return clip_unit(a - 1e-12, b + 1e-12);
}

Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

/// Monotone reachability through the free space of the two polylines.
/// L[i][j] holds the reachable part of the edge {A vertex i} x {B segment j},
/// Bm[i][j] of {A segment i} x {B vertex j}; propagation follows the convex
/// per-cell free regions.
bool m1_feasible(const CompletedGraph& A, const CompletedGraph& B, double alpha, double beta) {
    const std::size_t P = A.size() - 1, Q = B.size() - 1;  // segment counts
    const double eps = 1e-12;
    if (std::abs(A.times[0] - B.times[0]) > alpha + kTolerance ||
        std::abs(A.values[0] - B.values[0]) > beta + kTolerance)
        return false;
    if (P == 0 || Q == 0) {
        // at least one path is a single point in graph space: only the two
        // endpoint checks matter
        return std::abs(A.times.back() - B.times.back()) <= alpha + kTolerance &&
               std::abs(A.values.back() - B.values.back()) <= beta + kTolerance;
    }

    auto free_on_B = [&](std::size_t ai, std::size_t bj) {
        Interval t = coord_band(A.times[ai], B.times[bj], B.times[bj + 1] - B.times[bj], alpha);
        Interval z = coord_band(A.values[ai], B.values[bj], B.values[bj + 1] - B.values[bj], beta);
        return intersect(t, z);
    };
    auto free_on_A = [&](std::size_t bj, std::size_t ai) {
        Interval t = coord_band(B.times[bj], A.times[ai], A.times[ai + 1] - A.times[ai], alpha);
        Interval z = coord_band(B.values[bj], A.values[ai], A.values[ai + 1] - A.values[ai], beta);
        return intersect(t, z);
    };

    const Interval kEmpty{1.0, 0.0};
    std::vector<std::vector<Interval>> L(P + 1, std::vector<Interval>(Q, kEmpty));
    std::vector<std::vector<Interval>> Bm(P, std::vector<Interval>(Q + 1, kEmpty));

    // boundary seeds: climb the left boundary / walk the bottom boundary
    bool corner = true;
    for (std::size_t j = 0; j < Q && corner; ++j) {
        Interval f = free_on_B(0, j);
        if (f.empty() || f.lo > eps) break;
        L[0][j] = f;
        corner = f.hi >= 1.0 - eps;
    }
    corner = true;
    for (std::size_t i = 0; i < P && corner; ++i) {
        Interval f = free_on_A(0, i);
        if (f.empty() || f.lo > eps) break;
        Bm[i][0] = f;
        corner = f.hi >= 1.0 - eps;
    }

    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < Q; ++j) {
            const Interval& in_l = L[i][j];
            const Interval& in_b = Bm[i][j];
            if (in_l.empty() && in_b.empty()) continue;
            Interval fr = free_on_B(i + 1, j);
            if (!fr.empty()) {
                if (!in_b.empty())
                    L[i + 1][j] = fr;
                else
                    L[i + 1][j] = Interval{std::max(fr.lo, in_l.lo), fr.hi};
            }
            Interval ft = free_on_A(j + 1, i);
            if (!ft.empty()) {
                if (!in_l.empty())
                    Bm[i][j + 1] = ft;
                else
                    Bm[i][j + 1] = Interval{std::max(ft.lo, in_b.lo), ft.hi};
            }
        }
    }
    const Interval& last_r = L[P][Q - 1];
    const Interval& last_t = Bm[P - 1][Q];
    return (!last_r.empty() && last_r.hi >= 1.0 - eps) ||
           (!last_t.empty() && last_t.hi >= 1.0 - eps);
}

/// Exact infimum of alpha + beta over the feasible frontier; candidate
/// values are the pairwise coordinate gaps of the two vertex sets.
double m1_exact_value(const CompletedGraph& A, const CompletedGraph& B, double* alpha_out) {
    std::set<double> as{0.0}, bs{0.0};
    for (double ta : A.times)
        for (double tb : B.times) as.insert(std::abs(ta - tb));
    for (double za : A.values)
        for (double zb : B.values) bs.insert(std::abs(za - zb));
    const std::vector<double> alphas(as.begin(), as.end());
    const std::vector<double> betas(bs.begin(), bs.end());

    double best = kInf, best_alpha = 0.0;
    for (double alpha : alphas) {
        if (alpha >= best) break;
        if (!m1_feasible(A, B, alpha, betas.back())) continue;
        // smallest feasible beta for this alpha (feasibility is monotone)
        std::size_t lo = 0, hi = betas.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (m1_feasible(A, B, alpha, betas[mid]))
                hi = mid;
            else
                lo = mid + 1;
        }
        if (alpha + betas[lo] < best) {
            best = alpha + betas[lo];
            best_alpha = alpha;
        }
    }
    if (alpha_out) *alpha_out = best_alpha;
    return best;
}

}  // namespace

DistanceReport m1_distance(const CadlagPath& f, const CadlagPath& g, std::size_t resolution) {
    check_compatible(f, g);
    if (!f.is_scalar() || !g.is_scalar())
        throw std::invalid_argument("m1_distance: scalar paths only");

    const CompletedGraph Af = completed_graph(f), Bg = completed_graph(g);
    if (Af.size() * Bg.size() <= 4096) {
        // free-space route: exact on the polygonal completed graphs
        double alpha = 0.0;
        DistanceReport r;
        r.value = m1_exact_value(Af, Bg, &alpha);
        r.method = "exact";
        r.error_bound = 0.0;
        // coupling witness for reporting, from the discrete program at the
        // optimal time threshold on densified graphs
        GraphPair w{Af.densified(std::min<std::size_t>(resolution, 400)),
                    Bg.densified(std::min<std::size_t>(resolution, 400))};
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        coupling_beta(w.a, w.b, alpha + w.max_piece(), &pairs);
        for (auto [i, j] : pairs)
            r.coupling.push_back({w.a.times[i], w.a.values[i], w.b.times[j], w.b.values[j]});
        return r;
    }

    GraphPair gp{Af.densified(resolution), Bg.densified(resolution)};

    const auto cands = time_gap_candidates(gp.a, gp.b);
    const std::size_t budget = 96;

    // Coarse-to-fine threshold scan: keeps the number of O(PQ) dynamic
    // programs bounded; any skipped gap is charged to the error bound.
    double best_total = kInf, best_alpha = 0.0, quant_gap = 0.0;
    std::size_t lo = 0, hi = cands.size();
    while (true) {
        const std::size_t n = hi - lo;
        const std::size_t stride = std::max<std::size_t>(1, n / budget);
        std::size_t best_idx = lo;
        for (std::size_t k = lo; k < hi; k += stride) {
            const double alpha = cands[k];
            if (alpha >= best_total) break;
            const double beta = coupling_beta(gp.a, gp.b, alpha, nullptr);
            if (beta < kInf && alpha + beta < best_total) {
                best_total = alpha + beta;
                best_alpha = alpha;
                best_idx = k;
            }
        }
        if (stride == 1) break;
        lo = best_idx > stride ? best_idx - stride : 0;
        hi = std::min(cands.size(), best_idx + stride + 1);
        if (hi - lo <= 1) break;
        if (hi - lo > 4 * budget) {
            // give up on exactness inside the bracket, charge the gap
            quant_gap = cands[std::min(hi, cands.size() - 1)] - cands[lo];
            break;
        }
    }
    if (best_total == kInf) throw std::logic_error("m1_distance: no feasible coupling");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    coupling_beta(gp.a, gp.b, best_alpha, &pairs);
    DistanceReport r;
    r.value = best_total;
    r.method = "discretized";
    r.error_bound = gp.max_piece() + quant_gap;
    for (auto [i, j] : pairs)
        r.coupling.push_back({gp.a.times[i], gp.a.values[i], gp.b.times[j], gp.b.values[j]});
    return r;
}

DistanceReport m1_oracle(const CadlagPath& f, const CadlagPath& g, std::size_t max_vertices) {
    check_compatible(f, g);
    if (!f.is_scalar() || !g.is_scalar())
        throw std::invalid_argument("m1_oracle: scalar paths only");
    CompletedGraph A = completed_graph(f), B = completed_graph(g);
    if (A.size() + B.size() > max_vertices)
        throw std::invalid_argument("m1_oracle: size limit exceeded");
    // fine densification within the vertex budget
    const std::size_t room = max_vertices - (A.size() + B.size());
    A = A.densified(std::max<std::size_t>(A.size() + room / 2, A.size()));
    B = B.densified(std::max<std::size_t>(B.size() + room / 2, B.size()));
    if (A.size() + B.size() > max_vertices) {
        A = completed_graph(f);
        B = completed_graph(g);
    }

    // full Pareto frontier over (max |dt|, max |dz|)
    struct Front {
        std::vector<std::pair<double, double>> pts;  // sorted by A asc, B desc
        void add(double a, double b) {
            for (auto& [x, y] : pts)
                if (x <= a + 1e-15 && y <= b + 1e-15) return;  // dominated
            std::vector<std::pair<double, double>> kept;
            for (auto& [x, y] : pts)
                if (!(a <= x + 1e-15 && b <= y + 1e-15)) kept.emplace_back(x, y);
            kept.emplace_back(a, b);
            pts = std::move(kept);
        }
    };
    const std::size_t P = A.size(), Q = B.size();
    std::vector<Front> dp(P * Q);
    auto at = [Q](std::size_t i, std::size_t j) { return i * Q + j; };
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < Q; ++j) {
            const double dt = std::abs(A.times[i] - B.times[j]);
            const double dz = std::abs(A.values[i] - B.values[j]);
            Front& here = dp[at(i, j)];
            if (i == 0 && j == 0) {
                here.add(dt, dz);
                continue;
            }
            auto pull = [&](std::size_t pi, std::size_t pj) {
                for (auto& [a, b] : dp[at(pi, pj)].pts)
                    here.add(std::max(a, dt), std::max(b, dz));
            };
            if (i > 0 && j > 0) pull(i - 1, j - 1);
            if (i > 0) pull(i - 1, j);
            if (j > 0) pull(i, j - 1);
        }
    }
    double best = kInf, best_alpha = 0.0;
    for (auto& [a, b] : dp[at(P - 1, Q - 1)].pts) {
        if (a + b < best) {
            best = a + b;
            best_alpha = a;
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    coupling_beta(A, B, best_alpha, &pairs);
    DistanceReport r;
    r.value = best;
    r.method = "discretized";
    r.error_bound = std::max(A.max_segment_length(), B.max_segment_length());
    for (auto [i, j] : pairs)
        r.coupling.push_back({A.times[i], A.values[i], B.times[j], B.values[j]});
    return r;
}

// ---------------------------------------------------------------------------
// product and half-line constructions

DistanceReport weak_product_j1(const std::vector<CadlagPath>& f,
                               const std::vector<CadlagPath>& g, J1Penalty penalty) {
    if (f.size() != g.size() || f.empty())
        throw std::invalid_argument("weak_product_j1: tuple length mismatch");
    DistanceReport best;
    best.value = -1.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        DistanceReport r = j1_distance(f[k], g[k], penalty);
        if (r.value > best.value) best = r;
    }
    best.method = "exact";
    for (std::size_t k = 0; k < f.size(); ++k) {
        // keep the loosest per-coordinate error bound
        DistanceReport r = j1_distance(f[k], g[k], penalty);
        best.error_bound = std::max(best.error_bound, r.error_bound);
        if (r.method == "discretized") best.method = "discretized";
    }
    return best;
}

DistanceReport halfline_distance(const CadlagPath& f, const CadlagPath& g,
                                 J1Penalty penalty, std::size_t grid_points) {
    check_compatible(f, g);
    const double H = f.horizon();
    const std::size_t J = std::max<std::size_t>(grid_points, 4);
    const double du = H / static_cast<double>(J);

    std::set<double> jump_times;
    for (const auto& j : f.jumps()) jump_times.insert(j.time);
    for (const auto& j : g.jumps()) jump_times.insert(j.time);
    auto hits_jump = [&](double u) {
        auto it = jump_times.lower_bound(u - kTolerance);
        return it != jump_times.end() && std::abs(*it - u) <= kTolerance;
    };

    double total = 0.0;
    for (std::size_t k = 1; k <= J; ++k) {
        double u = static_cast<double>(k) * du;
        for (int tries = 0; tries < 8 && hits_jump(u) && u < H; ++tries)
            u = std::min(H, u + kTolerance * std::max(1.0, H));
        if (hits_jump(u)) {
            // nudge the other way; accumulation of jumps here is an input error
            u -= 16 * kTolerance * std::max(1.0, H);
            if (hits_jump(u))
                throw std::invalid_argument("halfline_distance: jump accumulation on the horizon grid");
        }
        const double dist_u = j1_distance(f.restrict(u), g.restrict(u), penalty).value;
        total += std::exp(-u) * std::min(1.0, dist_u) * du;
    }
    DistanceReport r;
    r.value = total;
    r.method = "discretized";
    r.error_bound = du;
    return r;
}

}  // namespace cadlag
