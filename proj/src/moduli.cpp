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
#include "cadlag/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace cadlag {

namespace {

constexpr double kEps = 1e-12;

double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::vector<double> sorted_unique(std::set<double>&& s) {
    std::vector<double> out;
    for (double x : s) {
        if (!out.empty() && x - out.back() <= kEps) continue;
        out.push_back(x);
    }
    return out;
}

}  // namespace

double omega(const CadlagPath& f, double delta) {
    if (!(delta > 0)) throw std::domain_error("omega: delta must be positive");
    const double T = f.horizon();
    std::set<double> cs{0.0, T};
    for (double b : f.breakpoints()) {
        cs.insert(b);
        if (b - delta > 0) cs.insert(b - delta);
        if (b + delta < T) cs.insert(b + delta);
    }
    const auto times = sorted_unique(std::move(cs));

    struct Variant {
        double t;
        Vec value;
        bool left;  // left-limit variant
    };
    std::vector<Variant> vs;
    for (double t : times) {
        if (t > kEps) vs.push_back({t, f.left_limit(t), true});
        vs.push_back({t, f.eval(t), false});
    }

    double best = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i; j < vs.size(); ++j) {
            const double gap = vs[j].t - vs[i].t;
            if (gap > delta + kEps) break;
            if (gap < delta - kEps) {
                best = std::max(best, dist(vs[i].value, vs[j].value));
            } else if (!(vs[i].left && !vs[j].left)) {
                // pairs exactly delta apart: the open constraint |t-s| < delta
                // reaches (left,left), (right,right) and (right,left) limits,
                // but not a left limit followed by a right value
                best = std::max(best, dist(vs[i].value, vs[j].value));
            }
        }
    }
    return best;
}

double omega_prime(const CadlagPath& f, double delta, std::size_t max_candidates) {
    if (!(delta > 0)) throw std::domain_error("omega_prime: delta must be positive");
    const double T = f.horizon();
    if (delta >= T) throw std::domain_error("omega_prime: no admissible partition for delta >= horizon");

    std::set<double> cs{0.0, T};
    for (double b : f.breakpoints()) cs.insert(b);
    double pitch = delta / 4.0;
    if (T / pitch > static_cast<double>(max_candidates))
        pitch = T / static_cast<double>(max_candidates);
    // grid points must not displace exact jump times under the dedup tolerance
    for (std::size_t k = 1; k * pitch < T; ++k) {
        const double t = static_cast<double>(k) * pitch;
        auto it = cs.lower_bound(t - kEps);
        if (it != cs.end() && *it <= t + kEps) continue;
        cs.insert(t);
    }
    const auto c = sorted_unique(std::move(cs));
    const std::size_t n = c.size();

    if (!f.is_scalar())
        throw std::invalid_argument("omega_prime: scalar paths only");

    // right values at c[k] and left limits at c[k+1] per elementary interval
    std::vector<double> right(n), left(n);
    for (std::size_t k = 0; k < n; ++k) {
        right[k] = f.eval1(c[k]);
        left[k] = k > 0 ? f.left_limit1(c[k]) : right[0];
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(n, inf);
    dp[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double run_max = -inf, run_min = inf;
        for (std::size_t jj = i; jj-- > 0;) {
            // extend the window to [c[jj], c[i]): add f(c[jj]) and f(c[jj+1]-)
            run_max = std::max(run_max, std::max(right[jj], left[jj + 1]));
            run_min = std::min(run_min, std::min(right[jj], left[jj + 1]));
            if (c[i] - c[jj] > delta && dp[jj] < inf)
                dp[i] = std::min(dp[i], std::max(dp[jj], run_max - run_min));
        }
    }
    if (dp[n - 1] == inf)
        throw std::domain_error("omega_prime: no admissible partition");
    return dp[n - 1];
}

double w_osc(const CadlagPath& f, double t, double delta) {
    if (!f.is_scalar()) throw std::invalid_argument("w_osc: scalar paths only");
    if (!(delta > 0)) throw std::domain_error("w_osc: delta must be positive");
    const double T = f.horizon();
    if (t < -kEps || t > T + kEps) throw std::domain_error("w_osc: t outside [0, horizon]");
    const double lo = std::max(0.0, t - delta);
    const double hi = std::min(t + delta, T);
    if (hi - lo <= kEps) return 0.0;

    std::set<double> cs{lo, hi};
    for (double b : f.breakpoints())
        if (b > lo + kEps && b < hi - kEps) cs.insert(b);
    const auto times = sorted_unique(std::move(cs));

    // ordered value variants inside [lo, hi): left limits precede right values
    std::vector<double> v;
    for (double x : times) {
        const bool at_lo = x <= lo + kEps;
        const bool at_hi = x >= hi - kEps;
        if (!at_lo) v.push_back(f.left_limit1(x));
        if (!at_hi) v.push_back(f.eval1(x));
    }
    const std::size_t m = v.size();
    if (m < 3) return 0.0;

    std::vector<double> pre_min(m), pre_max(m), post_min(m), post_max(m);
    pre_min[0] = pre_max[0] = v[0];
    for (std::size_t i = 1; i < m; ++i) {
        pre_min[i] = std::min(pre_min[i - 1], v[i]);
        pre_max[i] = std::max(pre_max[i - 1], v[i]);
    }
    post_min[m - 1] = post_max[m - 1] = v[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        post_min[i] = std::min(post_min[i + 1], v[i]);
        post_max[i] = std::max(post_max[i + 1], v[i]);
    }

    double best = 0.0;
    for (std::size_t k = 1; k + 1 < m; ++k) {
        const double below = v[k] - std::max(pre_min[k - 1], post_min[k + 1]);
        const double above = std::min(pre_max[k - 1], post_max[k + 1]) - v[k];
        best = std::max({best, below, above});
    }
    return best;
}

double omega_double_prime(const CadlagPath& f, double delta) {
    if (!(delta > 0)) throw std::domain_error("omega_double_prime: delta must be positive");
    const double T = f.horizon();
    std::set<double> cs{0.0, T};
    for (double b : f.breakpoints()) {
        cs.insert(b);
        if (b - delta > 0) cs.insert(b - delta);
        if (b + delta < T) cs.insert(b + delta);
    }
    auto centers = sorted_unique(std::move(cs));
    // midpoints guard against windows that straddle two critical layouts
    std::vector<double> all(centers);
    for (std::size_t i = 1; i < centers.size(); ++i)
        all.push_back(0.5 * (centers[i - 1] + centers[i]));

    double best = 0.0;
    for (double t : all) best = std::max(best, w_osc(f, t, delta));
    return best;
}

std::pair<double, double> endpoint_oscillations(const CadlagPath& f, double delta) {
    const double T = f.horizon();
    if (!(delta > 0) || delta >= T)
        throw std::domain_error("endpoint_oscillations: need 0 < delta < horizon");
    const double head = dist(f.eval(delta), f.eval(0.0));
    const double tail = dist(f.left_limit(T), f.eval(T - delta));
    return {head, tail};
}

ModulusCurve modulus_ladder(const CadlagPath& f, ModulusKind kind,
                            const std::vector<double>& deltas) {
    ModulusCurve curve;
    curve.kind = kind;
    curve.deltas = deltas;
    for (double d : deltas) {
        switch (kind) {
            case ModulusKind::Omega: curve.values.push_back(omega(f, d)); break;
            case ModulusKind::OmegaPrime: curve.values.push_back(omega_prime(f, d)); break;
            case ModulusKind::OmegaDoublePrime: curve.values.push_back(omega_double_prime(f, d)); break;
        }
    }
    return curve;
}

std::string modulus_kind_name(ModulusKind kind) {
    switch (kind) {
        case ModulusKind::Omega: return "omega";
        case ModulusKind::OmegaPrime: return "omegaprime";
        case ModulusKind::OmegaDoublePrime: return "omegadoubleprime";
    }
    return "unknown";
}

}  // namespace cadlag
