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

#include "cadlag/diagnostics.hpp"
#include "cadlag/processes.hpp"

using namespace cadlag;

namespace {

PathEnsemble shift_ensemble() {
    PathEnsemble e;
    e.label = "j1_shift";
    for (std::size_t n = 3; n <= 50; ++n) e.paths.push_back(example_family("j1_shift", n).path);
    return e;
}

}  // namespace

TEST_CASE("compactness report on the shift ensemble") {
    // ladder below 1/6, the smallest gap from a member's jump to the endpoints
    auto rep = compactness_report(shift_ensemble(), {0.15, 0.1, 0.05, 0.01}, Topology::J1);
    CHECK(rep.sup_norm == doctest::Approx(1.0));
    // each member has a single jump: the cadlag modulus vanishes on the ladder
    for (double v : rep.sup_modulus) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("compactness report flags the spike family under m1") {
    PathEnsemble e;
    for (std::size_t n = 3; n <= 20; ++n) e.paths.push_back(example_family("j2_spikepair", n).path);
    auto rep = compactness_report(e, {0.2, 0.1}, Topology::M1);
    // the up-down excursion never shrinks: the m1 oscillation is pinned at 1
    CHECK(rep.sup_modulus[0] == doctest::Approx(1.0));
    REQUIRE(rep.endpoint_terms.size() == 2);
}

TEST_CASE("compactness ladder of a continuous singleton tends to zero") {
    PathEnsemble e;
    e.paths.push_back(CadlagPath::piecewise_linear(1.0, {0.0, 1.0}, {{0.0}, {1.0}}, {}));
    auto rep = compactness_report(e, {0.4, 0.2, 0.1, 0.05}, Topology::Uniform);
    for (std::size_t i = 1; i < rep.sup_modulus.size(); ++i)
        CHECK(rep.sup_modulus[i] <= rep.sup_modulus[i - 1] + 1e-12);
    CHECK(rep.sup_modulus.back() == doctest::Approx(0.05));
}

TEST_CASE("tightness report on constant ensembles is all zeros") {
    std::vector<PathEnsemble> seq;
    for (int n = 0; n < 3; ++n) {
        PathEnsemble e;
        for (int r = 0; r < 10; ++r) e.paths.push_back(CadlagPath::constant(1.0, {double(r)}));
        seq.push_back(e);
    }
    auto rep = tightness_report(seq, {0.2, 0.1}, {0.25, 0.5}, Topology::J1);
    for (const auto& c : rep.cells) {
        CHECK(c.frequency == 0.0);
        CHECK(c.std_error == 0.0);
    }
    for (auto& [eps, dec] : rep.trend) CHECK(dec);
}

TEST_CASE("tightness report flags the deterministic spike family") {
    std::vector<PathEnsemble> seq;
    // spikes of width 1/(2n) stay strictly inside every delta window
    for (std::size_t n : {20, 40, 80}) {
        PathEnsemble e;
        e.index = n;
        e.paths.push_back(example_family("j2_spikepair", n).path);
        seq.push_back(e);
    }
    auto rep = tightness_report(seq, {0.2, 0.1, 0.05}, {0.5}, Topology::M1);
    for (const auto& c : rep.cells) CHECK(c.frequency == 1.0);  // eps < spike height 1
    for (auto& [eps, dec] : rep.trend) CHECK(dec);  // constant ladder still counts as nonincreasing
}

TEST_CASE("convergence report recovers the 1/n rate") {
    std::vector<CadlagPath> fam;
    std::vector<std::size_t> idx;
    for (std::size_t n = 3; n <= 50; ++n) {
        fam.push_back(example_family("j1_shift", n).path);
        idx.push_back(n);
    }
    auto limit = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto rep = convergence_report(fam, idx, limit, MetricKind::J1);
    for (std::size_t i = 0; i < idx.size(); ++i)
        CHECK(rep.distances[i] == doctest::Approx(1.0 / static_cast<double>(idx[i])));
    CHECK(rep.fitted_rate == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(rep.monotone);
}

TEST_CASE("convergence report: staircase separates j1 from m1") {
    std::vector<CadlagPath> fam;
    std::vector<std::size_t> idx;
    for (std::size_t n : {5, 10, 20, 40}) {
        fam.push_back(example_family("m1_staircase", n).path);
        idx.push_back(n);
    }
    auto limit = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto j1 = convergence_report(fam, idx, limit, MetricKind::J1);
    for (double d : j1.distances) CHECK(d == doctest::Approx(0.5).epsilon(1e-6));
    auto m1 = convergence_report(fam, idx, limit, MetricKind::M1);
    for (std::size_t i = 0; i < idx.size(); ++i)
        CHECK(m1.distances[i] <= 1.0 / static_cast<double>(idx[i]) + m1.error_bounds[i] + 1e-9);
}

TEST_CASE("convergence report of a constant family is identically zero") {
    auto f = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    auto rep = convergence_report({f, f, f}, {1, 2, 3}, f, MetricKind::J1);
    for (double d : rep.distances) CHECK(d <= 1e-12);
    CHECK(rep.monotone);
}

TEST_CASE("continuity times exclude common jump points") {
    PathEnsemble e;
    for (int r = 0; r < 20; ++r)
        e.paths.push_back(CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0 + r}));
    auto times = continuity_times(e, {0.25, 0.5, 0.75}, 0.5);
    CHECK(times == std::vector<double>{0.0, 0.25, 0.75});

    PathEnsemble cont;
    cont.paths.push_back(CadlagPath::piecewise_linear(1.0, {0.0, 1.0}, {{0.0}, {1.0}}, {}));
    auto full = continuity_times(cont, {0.25, 0.5, 0.75}, 0.5);
    CHECK(full.size() == 4);  // 0 plus the whole grid
}

TEST_CASE("poisson ensembles pass the continuity screen on a fine grid") {
    PathEnsemble e;
    for (int r = 0; r < 200; ++r) e.paths.push_back(poisson_path(1.0, 1.0, 900 + r));
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(k / 20.0);
    auto times = continuity_times(e, grid, 0.05);
    CHECK(times.size() == grid.size() + 1);  // atomless jump law: every point passes
}

TEST_CASE("ks helpers behave on identical and disjoint samples") {
    std::vector<double> a, b, c;
    CounterRng rng(5);
    for (int i = 0; i < 500; ++i) {
        const double x = rng.next_double();
        a.push_back(x);
        b.push_back(x);
        c.push_back(x + 10.0);
    }
    double p = 0.0;
    CHECK(ks_two_sample(a, b, &p) == doctest::Approx(0.0));
    CHECK(p == doctest::Approx(1.0));
    CHECK(ks_two_sample(a, c, &p) == doctest::Approx(1.0));
    CHECK(p < 1e-6);
}

TEST_CASE("fdd_compare: identical ensembles give near-zero statistics") {
    PathEnsemble a, b;
    for (int r = 0; r < 100; ++r) {
        a.paths.push_back(donsker_path(50, 100 + r, false));
        b.paths.push_back(donsker_path(50, 100 + r, false));
    }
    auto res = fdd_compare({a}, b, {0.5, 1.0});
    for (const auto& k : res[0]) {
        CHECK(k.statistic == doctest::Approx(0.0));
        CHECK(k.p_value == doctest::Approx(1.0));
    }
    // shifted constants are maximally separated
    PathEnsemble lo, hi;
    for (int r = 0; r < 50; ++r) {
        lo.paths.push_back(CadlagPath::constant(1.0, {0.0 + 1e-3 * r}));
        hi.paths.push_back(CadlagPath::constant(1.0, {5.0 + 1e-3 * r}));
    }
    auto sep = fdd_compare({lo}, hi, {0.5});
    CHECK(sep[0][0].statistic == doctest::Approx(1.0));
}
