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
#include <doctest.h>

#include <cmath>
#include <random>

#include "cadlag/metrics.hpp"
#include "cadlag/path.hpp"

using namespace cadlag;

namespace {

CadlagPath random_step(std::mt19937_64& rng, int max_jumps) {
    std::uniform_int_distribution<int> nj(0, max_jumps);
    std::uniform_real_distribution<double> ut(0.05, 0.95), uv(-2.0, 2.0);
    const int n = nj(rng);
    std::vector<double> times{0.0};
    for (int i = 0; i < n; ++i) times.push_back(ut(rng));
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<double> values;
    for (std::size_t i = 0; i < times.size(); ++i) values.push_back(uv(rng));
    return CadlagPath::step(1.0, times, values);
}

}  // namespace

TEST_CASE("uniform distance of shifted indicators is 1") {
    auto f = CadlagPath::step(1.0, {0.0, 0.4}, {0.0, 1.0});
    auto g = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    CHECK(uniform_distance(f, g).value == doctest::Approx(1.0));
    CHECK(uniform_distance(f, f).value == 0.0);
}

TEST_CASE("j1 distance of shifted indicators equals the shift") {
    auto f = CadlagPath::step(1.0, {0.0, 0.4}, {0.0, 1.0});
    auto g = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto r = j1_distance(f, g);
    CHECK(r.value == doctest::Approx(0.1));
    CHECK(r.method == "exact");
    CHECK(r.error_bound <= 1e-9);
    REQUIRE(r.witness.has_value());
    // the witness achieves the reported value
    const auto warped = apply_time_change(f, *r.witness);
    CHECK(uniform_distance(warped, g).value + r.witness->sup_deviation()
          == doctest::Approx(r.value).epsilon(1e-9));
}

TEST_CASE("j1 never exceeds the uniform distance") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_step(rng, 4);
        auto g = random_step(rng, 4);
        const double u = uniform_distance(f, g).value;
        const double j = j1_distance(f, g).value;
        CHECK(j <= u + 1e-9);
    }
}

TEST_CASE("j1 distance agrees with the brute-force oracle") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_step(rng, 4);
        auto g = random_step(rng, 4);
        auto fast = j1_distance(f, g);
        auto slow = j1_oracle(f, g);
        CHECK(std::abs(fast.value - slow.value) <= 1e-9);
    }
}

TEST_CASE("j1 metric axioms on random pairs") {
    std::mt19937_64 rng(999);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_step(rng, 3);
        auto g = random_step(rng, 3);
        auto h = random_step(rng, 3);
        const double fg = j1_distance(f, g).value;
        const double gf = j1_distance(g, f).value;
        const double fh = j1_distance(f, h).value;
        const double gh = j1_distance(g, h).value;
        CHECK(std::abs(fg - gf) <= 1e-9);
        CHECK(fh <= fg + gh + 1e-9);
        CHECK(j1_distance(f, f).value <= 1e-12);
    }
}

TEST_CASE("pinched time changes: the canonical non-Cauchy family") {
    // f_n is the indicator of [0, 2^-n); lambda_n carries f_n onto f_{n+1}
    auto fam = [](int n) {
        const double a = std::pow(2.0, -n);
        return CadlagPath::step(1.0, {0.0, a}, {1.0, 0.0});
    };
    auto zero = CadlagPath::constant(1.0, {0.0});
    for (int n = 1; n <= 6; ++n) {
        CHECK(j1_distance(zero, fam(n)).value == doctest::Approx(1.0));
        const double expect = std::pow(2.0, -(n + 1));
        CHECK(j1_distance(fam(n + 1), fam(n)).value == doctest::Approx(expect));
        // the modified metric refuses to let the pinch collapse
        auto mod = j1_distance(fam(n + 1), fam(n), J1Penalty::LogSlope);
        CHECK(mod.value == doctest::Approx(std::log(2.0)).epsilon(1e-6));
        auto mod_oracle = j1_oracle(fam(n + 1), fam(n), J1Penalty::LogSlope);
        CHECK(std::abs(mod.value - mod_oracle.value) <= 1e-9);
    }
}

TEST_CASE("m1 on the staircase family vs j1") {
    // two-step staircase converging in M1 but not J1 to the unit jump
    const int n = 8;
    auto stair = CadlagPath::step(1.0, {0.0, 0.5 - 1.0 / n, 0.5}, {0.0, 0.5, 1.0});
    auto target = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto j = j1_distance(stair, target);
    CHECK(j.value == doctest::Approx(0.5));
    auto m = m1_distance(stair, target);
    CHECK(m.value <= 1.0 / n + m.error_bound + 1e-9);
    CHECK(m.value >= 0.0);
    auto mo = m1_oracle(stair, target);
    CHECK(std::abs(m.value - mo.value) <= m.error_bound + mo.error_bound + 1e-9);
}

TEST_CASE("m1 agrees with its oracle on random small pairs") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_step(rng, 3);
        auto g = random_step(rng, 3);
        auto fast = m1_distance(f, g, 400);
        auto slow = m1_oracle(f, g);
        CHECK(std::abs(fast.value - slow.value) <= fast.error_bound + slow.error_bound + 1e-9);
    }
}

TEST_CASE("m1 is dominated by j1") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        auto f = random_step(rng, 4);
        auto g = random_step(rng, 4);
        const auto j = j1_distance(f, g);
        const auto m = m1_distance(f, g, 400);
        CHECK(m.value <= j.value + m.error_bound + 1e-9);
    }
}

TEST_CASE("weak product vs strong vector j1") {
    // coordinate jumps at 0.5 and 0.5 + eps: weak distance is tiny, the
    // joint (single time change, max-norm) distance stays at 1
    const double eps = 0.05;
    auto f1 = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto f2 = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto g1 = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto g2 = CadlagPath::step(1.0, {0.0, 0.5 + eps}, {0.0, 1.0});
    auto weak = weak_product_j1({f1, f2}, {g1, g2});
    CHECK(weak.value == doctest::Approx(eps));

    auto fv = CadlagPath::step_vec(1.0, {0.0, 0.5}, {{0.0, 0.0}, {1.0, 1.0}});
    auto gv = CadlagPath::step_vec(1.0, {0.0, 0.5, 0.5 + eps},
                                   {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
    auto strong = j1_distance(fv, gv, J1Penalty::Absolute, GroundMetric::max_norm());
    CHECK(strong.value == doctest::Approx(1.0));
}

TEST_CASE("half-line proxy tames the endpoint pathology") {
    // indicators of [1 + eps, 2] vs [1, 2]: restriction to horizon 1 sees a
    // full unit jump appear/disappear, the weighted proxy stays small
    const double eps = 0.1;
    auto f = CadlagPath::step(2.0, {0.0, 1.0 + eps}, {0.0, 1.0});
    auto g = CadlagPath::step(2.0, {0.0, 1.0}, {0.0, 1.0});
    const double at_one = j1_distance(f.restrict(1.0), g.restrict(1.0)).value;
    CHECK(at_one == doctest::Approx(1.0));
    auto r = halfline_distance(f, g);
    CHECK(r.value <= std::exp(-1.0) * eps + 3.0 * r.error_bound);
    CHECK(r.value > 0.0);
}

TEST_CASE("discretized j1 on piecewise linear paths") {
    auto f = CadlagPath::piecewise_linear(1.0, {0.0, 1.0}, {{0.0}, {1.0}}, {});
    auto g = CadlagPath::piecewise_linear(1.0, {0.0, 1.0}, {{0.1}, {1.1}}, {});
    auto r = j1_distance(f, g, J1Penalty::Absolute, GroundMetric::absolute(), 64);
    CHECK(r.method == "discretized");
    CHECK(r.error_bound > 0.0);
    CHECK(r.value <= 0.1 + 1e-9);  // identity time change already achieves 0.1
    CHECK(r.value >= 0.05 - r.error_bound);
}
