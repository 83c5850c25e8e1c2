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
#include <stdexcept>

#include "cadlag/moduli.hpp"
#include "cadlag/path.hpp"

using namespace cadlag;

TEST_CASE("omega of a single jump") {
    auto f = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    CHECK(omega(f, 0.1) == doctest::Approx(1.0));
    CHECK(omega(f, 0.9) == doctest::Approx(1.0));
}

TEST_CASE("omega of a ramp scales with delta") {
    auto f = CadlagPath::piecewise_linear(1.0, {0.0, 1.0}, {{0.0}, {1.0}}, {});
    CHECK(omega(f, 0.25) == doctest::Approx(0.25));
    CHECK(omega(f, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("omega prime ignores a single jump for small delta") {
    auto f = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    CHECK(omega_prime(f, 0.1) == doctest::Approx(0.0));
    // ramps still register
    auto g = CadlagPath::piecewise_linear(1.0, {0.0, 1.0}, {{0.0}, {1.0}}, {});
    CHECK(omega_prime(g, 0.25) >= 0.25 - 1e-9);
}

TEST_CASE("omega prime fails to vanish when jumps cluster inside delta") {
    // two jumps 0.05 apart cannot be separated by a partition of mesh > 0.1
    auto f = CadlagPath::step(1.0, {0.0, 0.5, 0.55}, {0.0, 1.0, 2.0});
    CHECK(omega_prime(f, 0.2) >= 1.0 - 1e-9);
    CHECK(omega_prime(f, 0.01) == doctest::Approx(0.0));
}

TEST_CASE("omega prime rejects delta at or above the horizon") {
    auto f = CadlagPath::constant(1.0, {0.0});
    CHECK_THROWS_AS(omega_prime(f, 1.0), std::domain_error);
}

TEST_CASE("w_osc vanishes on monotone pieces") {
    auto f = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    CHECK(w_osc(f, 0.5, 0.1) == doctest::Approx(0.0));
    CHECK(omega_double_prime(f, 0.25) == doctest::Approx(0.0));
}

TEST_CASE("omega double prime detects an up-down spike") {
    auto f = CadlagPath::step(1.0, {0.0, 0.4, 0.45}, {0.0, 1.0, 0.0});
    CHECK(omega_double_prime(f, 0.1) == doctest::Approx(1.0));
    CHECK(omega_double_prime(f, 0.01) == doctest::Approx(0.0));
}

TEST_CASE("endpoint oscillations") {
    auto f = CadlagPath::piecewise_linear(1.0, {0.0, 1.0}, {{0.0}, {1.0}}, {});
    auto [left, right] = endpoint_oscillations(f, 0.25);
    CHECK(left == doctest::Approx(0.25));
    CHECK(right == doctest::Approx(0.25));
}

TEST_CASE("modulus ladder is monotone in delta") {
    auto f = CadlagPath::step(1.0, {0.0, 0.3, 0.35, 0.7}, {0.0, 0.5, -0.5, 1.0});
    for (auto kind : {ModulusKind::Omega, ModulusKind::OmegaPrime, ModulusKind::OmegaDoublePrime}) {
        auto curve = modulus_ladder(f, kind, {0.01, 0.05, 0.1, 0.2, 0.4});
        REQUIRE(curve.deltas.size() == curve.values.size());
        for (std::size_t i = 1; i < curve.values.size(); ++i)
            CHECK(curve.values[i] >= curve.values[i - 1] - 1e-9);
    }
}
