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

#include <string>
#include <utility>
#include <vector>

#include "cadlag/path.hpp"

namespace cadlag {

enum class ModulusKind { Omega, OmegaPrime, OmegaDoublePrime };

struct ModulusCurve {
    ModulusKind kind;
    std::vector<double> deltas;   // decreasing ladder
    std::vector<double> values;   // nondecreasing in delta
};

/// Classical modulus of continuity: sup over |t - s| < delta of |f(t) - f(s)|.
/// Exact for piecewise-constant/-linear paths.
double omega(const CadlagPath& f, double delta);

/// Cadlag modulus: infimum over partitions 0 = t_0 < ... < t_v = T with every
/// interval length > delta of the max oscillation over [t_{i-1}, t_i).
/// Candidate split points are the jump times plus a uniform grid of pitch
/// delta/4 (grid capped at `max_candidates` points). Exact for
/// piecewise-constant paths.
double omega_prime(const CadlagPath& f, double delta, std::size_t max_candidates = 2048);

/// Local oscillation w(f, t, delta): sup over t1 < t2 < t3 in the clipped
/// window [0 v t-delta, t+delta ^ T) of the distance from f(t2) to the closed
/// interval spanned by f(t1) and f(t3). Zero for monotone paths.
double w_osc(const CadlagPath& f, double t, double delta);

/// sup over t of w(f, t, delta), evaluated on the finite critical-time set.
double omega_double_prime(const CadlagPath& f, double delta);

/// (|f(delta) - f(0)|, |f(T-) - f(T-delta)|), the endpoint terms of the M1
/// compactness criterion.
std::pair<double, double> endpoint_oscillations(const CadlagPath& f, double delta);

ModulusCurve modulus_ladder(const CadlagPath& f, ModulusKind kind,
                            const std::vector<double>& deltas);

std::string modulus_kind_name(ModulusKind kind);

}  // namespace cadlag
