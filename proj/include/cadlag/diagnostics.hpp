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
#ifndef CADLAG_DIAGNOSTICS_HPP_
#define CADLAG_DIAGNOSTICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cadlag/metrics.hpp"
#include "cadlag/path.hpp"

namespace cadlag {

struct PathEnsemble {
    std::vector<CadlagPath> paths;
    std::string label;       // process name / family tag
    std::size_t index = 0;   // sequence index n where applicable
    std::uint64_t seed = 0;

    double horizon() const;
    void validate() const;   // nonempty, common horizon and dimension
};

enum class Topology { Uniform, J1, M1 };
std::string topology_name(Topology t);

struct CompactnessReport {
    Topology topology;
    double sup_norm = 0.0;
    std::vector<double> deltas;
    std::vector<double> sup_modulus;                        // per delta
    std::vector<std::pair<double, double>> endpoint_terms;  // M1 only, per delta
    // ladders over a finite ensemble indicate, never prove, compactness
    std::string note = "finite-sample indication";
};

CompactnessReport compactness_report(const PathEnsemble& K, const std::vector<double>& deltas,
                                     Topology topology);

struct TightnessCell {
    std::size_t ensemble_index;  // position in the input sequence
    double delta;
    double eps;
    double frequency;
    double std_error;
};

struct TightnessReport {
    Topology topology;
    std::vector<double> thresholds;                      // sup-norm tail levels C
    std::vector<std::vector<double>> supnorm_tail;       // [ensemble][C]
    std::vector<TightnessCell> cells;                    // modulus exceedance
    std::vector<TightnessCell> endpoint_left;            // M1 only
    std::vector<TightnessCell> endpoint_right;           // M1 only
    std::vector<std::pair<double, bool>> trend;          // per eps: decreasing toward 0?
    std::string note = "finite-sample indication";
};

TightnessReport tightness_report(const std::vector<PathEnsemble>& sequence,
                                 const std::vector<double>& deltas,
                                 const std::vector<double>& eps_list, Topology topology,
                                 const std::vector<double>& thresholds = {0.5, 1.0, 2.0, 4.0, 8.0});

enum class MetricKind { Uniform, J1, J1LogSlope, M1 };
std::string metric_kind_name(MetricKind m);

struct ConvergenceReport {
    MetricKind metric;
    std::vector<std::size_t> indices;
    std::vector<double> distances;
    std::vector<double> error_bounds;
    double fitted_rate = 0.0;  // log-log least-squares slope
    bool monotone = false;     // nonincreasing distances
};

ConvergenceReport convergence_report(const std::vector<CadlagPath>& family,
                                     const std::vector<std::size_t>& indices,
                                     const CadlagPath& limit, MetricKind metric);

/// Grid times where the empirical frequency of a jump within a +-1e-6*T
/// window stays below `threshold`. Zero is always reported.
std::vector<double> continuity_times(const PathEnsemble& ensemble,
                                     const std::vector<double>& grid, double threshold);

struct KsResult {
    double time;
    double statistic;
    double p_value;
};

/// Per-ensemble, per-time two-sample Kolmogorov-Smirnov comparison of the
/// eval-marginals against the reference ensemble (asymptotic p-values).
std::vector<std::vector<KsResult>> fdd_compare(const std::vector<PathEnsemble>& ensembles,
                                               const PathEnsemble& reference,
                                               const std::vector<double>& times);

double ks_two_sample(std::vector<double> a, std::vector<double> b, double* p_value = nullptr);
double ks_statistic_standard_normal(std::vector<double> samples);

/// Thread cap honoring the CADLAG_THREADS environment variable.
std::size_t thread_budget();

}  // namespace cadlag

#endif  // CADLAG_DIAGNOSTICS_HPP_
