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
#include "cadlag/processes.hpp"

#include <cmath>
#include <stdexcept>

namespace cadlag {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ (0xA0761D6478BD642FULL * (stream + 1)))) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

double CounterRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_exponential(double rate) {
    if (!(rate > 0)) throw std::invalid_argument("next_exponential: rate must be positive");
    double u = next_double();
    if (u <= 0.0) u = 0x1.0p-53;
    return -std::log1p(-u) / rate;
}

int CounterRng::next_sign() { return (next_u64() & 1u) ? 1 : -1; }

CadlagPath donsker_path(std::size_t N, std::uint64_t seed, bool interpolated) {
    if (N < 1) throw std::invalid_argument("donsker_path: N must be positive");
    CounterRng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    std::vector<double> walk(N + 1, 0.0);
    for (std::size_t k = 1; k <= N; ++k)
        walk[k] = walk[k - 1] + static_cast<double>(rng.next_sign()) * scale;

    std::vector<double> times(N + 1);
    for (std::size_t k = 0; k <= N; ++k) times[k] = static_cast<double>(k) / static_cast<double>(N);

    if (interpolated) return CadlagPath::piecewise_linear(1.0, times, walk);
    // t -> S_{floor(Nt)} / sqrt(N): last step lands exactly at t = 1
    return CadlagPath::step(1.0, times, walk);
}

CadlagPath poisson_path(double rate, double horizon, std::uint64_t seed) {
    if (!(rate > 0)) throw std::invalid_argument("poisson_path: rate must be positive");
    if (!(horizon > 0)) throw std::invalid_argument("poisson_path: horizon must be positive");
    CounterRng rng(seed);
    std::vector<double> times{0.0};
    std::vector<double> values{0.0};
    double t = rng.next_exponential(rate);
    double level = 0.0;
    while (t < horizon) {
        level += 1.0;
        times.push_back(t);
        values.push_back(level);
        t += rng.next_exponential(rate);
    }
    return CadlagPath::step(horizon, times, values);
}

FamilyMember example_family(const std::string& name, std::size_t n) {
    if (n < 1) throw std::invalid_argument("example_family: n must be positive");
    const double dn = static_cast<double>(n);
    if (name == "j1_shift") {
        // jump at 1/2 - 1/n must stay interior
        if (n < 3) throw std::invalid_argument("example_family: j1_shift needs n >= 3");
        return {CadlagPath::step(1.0, {0.0, 0.5 - 1.0 / dn}, {0.0, 1.0}), std::nullopt};
    }
    if (name == "m1_staircase") {
        if (n < 3) throw std::invalid_argument("example_family: m1_staircase needs n >= 3");
        return {CadlagPath::step(1.0, {0.0, 0.5 - 1.0 / dn, 0.5}, {0.0, 0.5, 1.0}), std::nullopt};
    }
    if (name == "j2_spikepair") {
        // illustrative: a transient unit pulse ahead of the main jump
        if (n < 3) throw std::invalid_argument("example_family: j2_spikepair needs n >= 3");
        return {CadlagPath::step(1.0, {0.0, 0.5 - 1.0 / dn, 0.5 - 0.5 / dn, 0.5},
                                 {0.0, 1.0, 0.0, 1.0}),
                std::nullopt};
    }
    if (name == "m2_variant") {
        // illustrative: overshoot above the limit level, decaying after 1/n
        if (n < 3) throw std::invalid_argument("example_family: m2_variant needs n >= 3");
        return {CadlagPath::step(1.0, {0.0, 0.5, 0.5 + 1.0 / dn}, {0.0, 1.0 + 0.5, 1.0}),
                std::nullopt};
    }
    if (name == "incompleteness") {
        const double a = std::pow(2.0, -static_cast<double>(n));
        CadlagPath f = CadlagPath::step(1.0, {0.0, a}, {1.0, 0.0});
        TimeChange lam(1.0, {0.0, a, 1.0}, {0.0, a / 2.0, 1.0});
        return {f, lam};
    }
    if (name == "halfline_shift") {
        return {CadlagPath::step(2.0, {0.0, 1.0 + 1.0 / dn}, {0.0, 1.0}), std::nullopt};
    }
    throw std::invalid_argument("example_family: unknown name '" + name + "'");
}

CadlagPath generate(const ProcessSpec& spec) {
    if (spec.kind == "donsker_interpolated") return donsker_path(spec.N, spec.seed, true);
    if (spec.kind == "donsker_step") return donsker_path(spec.N, spec.seed, false);
    if (spec.kind == "poisson") return poisson_path(spec.rate, spec.horizon, spec.seed);
    return example_family(spec.kind, spec.n).path;
}

}  // namespace cadlag
