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
#include "cadlag/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <atomic>
#include <thread>

#include "cadlag/moduli.hpp"

namespace cadlag {

namespace {

double path_sup_norm(const CadlagPath& f) { return f.sup_norm(); }

double binom_se(double p, std::size_t m) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(m));
}

/// Deterministic parallel map: each index writes only its own slot, so the
/// result is independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min(thread_budget(), std::max<std::size_t>(count, 1));
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

double m1_modulus(const CadlagPath& f, double delta) { return omega_double_prime(f, delta); }

double topology_modulus(const CadlagPath& f, double delta, Topology topo) {
    switch (topo) {
        case Topology::Uniform: return omega(f, delta);
        case Topology::J1: return omega_prime(f, delta);
        case Topology::M1: return m1_modulus(f, delta);
    }
    throw std::logic_error("topology_modulus: bad topology");
}

double ks_asymptotic_p(double lambda) {
    if (lambda < 1e-9) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

std::size_t thread_budget() {
    if (const char* env = std::getenv("CADLAG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

double PathEnsemble::horizon() const {
    validate();
    return paths.front().horizon();
}

void PathEnsemble::validate() const {
    if (paths.empty()) throw std::invalid_argument("PathEnsemble: empty ensemble");
    const double T = paths.front().horizon();
    const std::size_t dim = paths.front().dim();
    for (const auto& p : paths) {
        if (std::abs(p.horizon() - T) > kTolerance)
            throw std::invalid_argument("PathEnsemble: horizon mismatch");
        if (p.dim() != dim) throw std::invalid_argument("PathEnsemble: dimension mismatch");
    }
}

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::Uniform: return "uniform";
        case Topology::J1: return "j1";
        case Topology::M1: return "m1";
    }
    return "?";
}

std::string metric_kind_name(MetricKind m) {
    switch (m) {
        case MetricKind::Uniform: return "uniform";
        case MetricKind::J1: return "j1";
        case MetricKind::J1LogSlope: return "j1_log_slope";
        case MetricKind::M1: return "m1";
    }
    return "?";
}

CompactnessReport compactness_report(const PathEnsemble& K, const std::vector<double>& deltas,
                                     Topology topology) {
    K.validate();
    CompactnessReport rep;
    rep.topology = topology;
    rep.deltas = deltas;
    for (const auto& f : K.paths) rep.sup_norm = std::max(rep.sup_norm, path_sup_norm(f));

    rep.sup_modulus.assign(deltas.size(), 0.0);
    if (topology == Topology::M1) rep.endpoint_terms.assign(deltas.size(), {0.0, 0.0});
    parallel_for(deltas.size(), [&](std::size_t di) {
        double sup = 0.0;
        double ep_l = 0.0, ep_r = 0.0;
        for (const auto& f : K.paths) {
            sup = std::max(sup, topology_modulus(f, deltas[di], topology));
            if (topology == Topology::M1) {
                auto [l, r] = endpoint_oscillations(f, deltas[di]);
                ep_l = std::max(ep_l, l);
                ep_r = std::max(ep_r, r);
            }
        }
        rep.sup_modulus[di] = sup;
        if (topology == Topology::M1) rep.endpoint_terms[di] = {ep_l, ep_r};
    });
    return rep;
}

TightnessReport tightness_report(const std::vector<PathEnsemble>& sequence,
                                 const std::vector<double>& deltas,
                                 const std::vector<double>& eps_list, Topology topology,
                                 const std::vector<double>& thresholds) {
    if (sequence.empty()) throw std::invalid_argument("tightness_report: empty sequence");
    if (topology == Topology::Uniform)
        throw std::invalid_argument("tightness_report: topology must be j1 or m1");
    for (const auto& e : sequence) e.validate();

    TightnessReport rep;
    rep.topology = topology;
    rep.thresholds = thresholds;

    for (const auto& ens : sequence) {
        std::vector<double> tail;
        for (double C : thresholds) {
            std::size_t hits = 0;
            for (const auto& f : ens.paths)
                if (path_sup_norm(f) >= C) ++hits;
            tail.push_back(static_cast<double>(hits) / static_cast<double>(ens.paths.size()));
        }
        rep.supnorm_tail.push_back(std::move(tail));
    }

    // modulus per (ensemble, path, delta), computed once and reused per eps
    std::vector<std::vector<std::vector<double>>> mods(sequence.size());
    std::vector<std::vector<std::vector<std::pair<double, double>>>> eps_ends(sequence.size());
    for (std::size_t si = 0; si < sequence.size(); ++si) {
        const auto& paths = sequence[si].paths;
        mods[si].assign(paths.size(), std::vector<double>(deltas.size(), 0.0));
        if (topology == Topology::M1)
            eps_ends[si].assign(paths.size(),
                                std::vector<std::pair<double, double>>(deltas.size(), {0.0, 0.0}));
        parallel_for(paths.size(), [&](std::size_t pi) {
            for (std::size_t di = 0; di < deltas.size(); ++di) {
                mods[si][pi][di] = topology_modulus(paths[pi], deltas[di], topology);
                if (topology == Topology::M1)
                    eps_ends[si][pi][di] = endpoint_oscillations(paths[pi], deltas[di]);
            }
        });
    }

    for (std::size_t si = 0; si < sequence.size(); ++si) {
        const std::size_t m = sequence[si].paths.size();
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            for (double eps : eps_list) {
                std::size_t hits = 0, hl = 0, hr = 0;
                for (std::size_t pi = 0; pi < m; ++pi) {
                    if (mods[si][pi][di] >= eps) ++hits;
                    if (topology == Topology::M1) {
                        if (eps_ends[si][pi][di].first >= eps) ++hl;
                        if (eps_ends[si][pi][di].second >= eps) ++hr;
                    }
                }
                const double p = static_cast<double>(hits) / static_cast<double>(m);
                rep.cells.push_back({si, deltas[di], eps, p, binom_se(p, m)});
                if (topology == Topology::M1) {
                    const double pl = static_cast<double>(hl) / static_cast<double>(m);
                    const double pr = static_cast<double>(hr) / static_cast<double>(m);
                    rep.endpoint_left.push_back({si, deltas[di], eps, pl, binom_se(pl, m)});
                    rep.endpoint_right.push_back({si, deltas[di], eps, pr, binom_se(pr, m)});
                }
            }
        }
    }

    // finite-sample trend on the last ensemble: frequencies nonincreasing as
    // delta decreases along the given ladder
    const std::size_t last = sequence.size() - 1;
    for (double eps : eps_list) {
        std::vector<std::pair<double, double>> freq;  // (delta, p)
        for (const auto& c : rep.cells)
            if (c.ensemble_index == last && c.eps == eps) freq.emplace_back(c.delta, c.frequency);
        std::sort(freq.begin(), freq.end(),
                  [](auto& a, auto& b) { return a.first > b.first; });  // delta decreasing
        bool decreasing = true;
        for (std::size_t i = 1; i < freq.size(); ++i)
            if (freq[i].second > freq[i - 1].second + 1e-12) decreasing = false;
        rep.trend.emplace_back(eps, decreasing);
    }
    return rep;
}

ConvergenceReport convergence_report(const std::vector<CadlagPath>& family,
                                     const std::vector<std::size_t>& indices,
                                     const CadlagPath& limit, MetricKind metric) {
    if (family.size() != indices.size() || family.size() < 3)
        throw std::invalid_argument("convergence_report: need >= 3 indexed paths");
    ConvergenceReport rep;
    rep.metric = metric;
    rep.indices = indices;
    rep.distances.assign(family.size(), 0.0);
    rep.error_bounds.assign(family.size(), 0.0);
    parallel_for(family.size(), [&](std::size_t i) {
        DistanceReport r;
        switch (metric) {
            case MetricKind::Uniform: r = uniform_distance(family[i], limit); break;
            case MetricKind::J1: r = j1_distance(family[i], limit); break;
            case MetricKind::J1LogSlope:
                r = j1_distance(family[i], limit, J1Penalty::LogSlope);
                break;
            case MetricKind::M1: r = m1_distance(family[i], limit, 2000); break;
        }
        rep.distances[i] = r.value;
        rep.error_bounds[i] = r.error_bound;
    });

    // log-log least squares over strictly positive distances
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (rep.distances[i] <= 1e-14) continue;
        const double x = std::log(static_cast<double>(indices[i]));
        const double y = std::log(rep.distances[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++k;
    }
    if (k >= 2) {
        const double denom = static_cast<double>(k) * sxx - sx * sx;
        if (std::abs(denom) > 1e-15) rep.fitted_rate = (static_cast<double>(k) * sxy - sx * sy) / denom;
    }
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.distances.size(); ++i)
        if (rep.distances[i] > rep.distances[i - 1] + 1e-12) rep.monotone = false;
    return rep;
}

std::vector<double> continuity_times(const PathEnsemble& ensemble, const std::vector<double>& grid,
                                     double threshold) {
    ensemble.validate();
    const double T = ensemble.paths.front().horizon();
    const double tau = 1e-6 * T;
    std::vector<double> out{0.0};
    for (double t : grid) {
        if (t < -kTolerance || t > T + kTolerance)
            throw std::invalid_argument("continuity_times: grid point outside horizon");
        if (t <= tau) continue;  // 0 is already reported
        std::size_t hits = 0;
        for (const auto& f : ensemble.paths) {
            for (const auto& j : f.jumps()) {
                if (std::abs(j.time - t) <= tau) {
                    ++hits;
                    break;
                }
            }
        }
        const double p = static_cast<double>(hits) / static_cast<double>(ensemble.paths.size());
        if (p < threshold) out.push_back(t);
    }
    return out;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b, double* p_value) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    if (p_value) {
        const double ne = na * nb / (na + nb);
        const double lam = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
        *p_value = ks_asymptotic_p(lam);
    }
    return d;
}

double ks_statistic_standard_normal(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("ks: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = standard_normal_cdf(samples[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
    }
    return d;
}

std::vector<std::vector<KsResult>> fdd_compare(const std::vector<PathEnsemble>& ensembles,
                                               const PathEnsemble& reference,
                                               const std::vector<double>& times) {
    reference.validate();
    const double T = reference.paths.front().horizon();
    for (double t : times)
        if (t < -kTolerance || t > T + kTolerance)
            throw std::invalid_argument("fdd_compare: time outside horizon");

    std::vector<std::vector<KsResult>> out(ensembles.size());
    for (std::size_t ei = 0; ei < ensembles.size(); ++ei) {
        ensembles[ei].validate();
        for (double t : times) {
            std::vector<double> a, b;
            for (const auto& f : ensembles[ei].paths) a.push_back(f.eval1(t));
            for (const auto& f : reference.paths) b.push_back(f.eval1(t));
            const bool degen_a = std::equal(a.begin() + 1, a.end(), a.begin());
            const bool degen_b = std::equal(b.begin() + 1, b.end(), b.begin());
            if (degen_a && degen_b && a[0] == b[0]) {
                out[ei].push_back({t, 0.0, 1.0});
                continue;
            }
            double p = 0.0;
            const double d = ks_two_sample(a, b, &p);
            out[ei].push_back({t, d, p});
        }
    }
    return out;
}

}  // namespace cadlag
