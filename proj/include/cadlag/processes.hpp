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
#ifndef CADLAG_PROCESSES_HPP_
#define CADLAG_PROCESSES_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "cadlag/path.hpp"

namespace cadlag {

/// Counter-based generator: output k of stream s under seed x is a pure
/// function of (x, s, k), so parallel replica generation is deterministic
/// regardless of scheduling. The mixer is SplitMix64.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double next_double();              // uniform on [0, 1)
    double next_exponential(double rate);
    int next_sign();                   // +1 or -1, equiprobable

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct ProcessSpec {
    std::string kind;        // donsker_interpolated | donsker_step | poisson | family tag
    std::size_t N = 0;       // donsker scale
    double rate = 0.0;       // poisson intensity
    std::size_t n = 0;       // family index
    double horizon = 1.0;
    std::uint64_t seed = 0;
};

/// Rescaled simple random walk on [0, 1]: t -> S_{floor(Nt)} / sqrt(N)
/// (step variant) or its piecewise-linear interpolation.
CadlagPath donsker_path(std::size_t N, std::uint64_t seed, bool interpolated);

/// Unit-jump counting path with exponential inter-arrival times.
CadlagPath poisson_path(double rate, double horizon, std::uint64_t seed);

struct FamilyMember {
    CadlagPath path;
    std::optional<TimeChange> lambda;  // only for the incompleteness family
};

/// Named deterministic families indexed by n. Names: j1_shift (n >= 3),
/// m1_staircase, j2_spikepair, m2_variant, incompleteness, halfline_shift.
FamilyMember example_family(const std::string& name, std::size_t n);

CadlagPath generate(const ProcessSpec& spec);

}  // namespace cadlag

#endif  // CADLAG_PROCESSES_HPP_
