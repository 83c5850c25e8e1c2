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
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cadlag/diagnostics.hpp"
#include "cadlag/io.hpp"
#include "cadlag/metrics.hpp"
#include "cadlag/moduli.hpp"
#include "cadlag/path.hpp"
#include "cadlag/processes.hpp"

namespace {

constexpr const char* kSchemaVersion = "1";

using nlohmann::json;
using namespace cadlag;

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
    std::vector<std::size_t> out;
    for (double v : parse_doubles(csv)) out.push_back(static_cast<std::size_t>(v));
    return out;
}

void write_text(const std::string& file, const std::string& text) {
    if (file.empty() || file == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(file);
    if (!os) throw std::invalid_argument("cannot open output file: " + file);
    os << text;
}

DistanceReport run_metric(const std::string& metric, const CadlagPath& a, const CadlagPath& b,
                          std::size_t resolution) {
    if (metric == "uniform") return uniform_distance(a, b);
    if (metric == "j1") return j1_distance(a, b, J1Penalty::Absolute, GroundMetric::absolute(), resolution);
    if (metric == "j1_log_slope")
        return j1_distance(a, b, J1Penalty::LogSlope, GroundMetric::absolute(), resolution);
    if (metric == "m1") return m1_distance(a, b, resolution > 64 ? resolution : 2000);
    if (metric == "halfline") return halfline_distance(a, b);
    throw std::invalid_argument("unknown metric: " + metric);
}

int cmd_dist(const std::string& metric, const std::string& left, const std::string& right,
             bool oracle, std::size_t resolution, const std::string& out, double tolerance) {
    const CadlagPath a = load_path(left), b = load_path(right);
    DistanceReport r = run_metric(metric, a, b, resolution);
    json rep{{"schema_version", kSchemaVersion},
             {"metric", metric},
             {"value", r.value},
             {"method", r.method},
             {"error_bound", r.error_bound}};
    if (oracle) {
        DistanceReport o;
        if (metric == "j1" || metric == "j1_log_slope") {
            o = j1_oracle(a, b, metric == "j1" ? J1Penalty::Absolute : J1Penalty::LogSlope);
        } else if (metric == "m1") {
            o = m1_oracle(a, b);
        } else {
            throw std::invalid_argument("--oracle supports j1, j1_log_slope, m1");
        }
        rep["oracle_value"] = o.value;
        const double slack = tolerance + r.error_bound + o.error_bound;
        if (std::abs(o.value - r.value) > slack) {
            std::cerr << "oracle disagreement: " << r.value << " vs " << o.value
                      << " beyond tolerance " << slack << "\n";
            return 2;
        }
    }
    write_text(out, rep.dump(2) + "\n");
    if (!out.empty() && out != "-") std::cout << r.value << "\n";
    return 0;
}

int cmd_modulus(const std::string& kind_name, const std::string& file, const std::string& deltas_csv,
                const std::string& out) {
    const CadlagPath f = load_path(file);
    ModulusKind kind;
    if (kind_name == "omega") kind = ModulusKind::Omega;
    else if (kind_name == "omega_prime") kind = ModulusKind::OmegaPrime;
    else if (kind_name == "omega_double_prime") kind = ModulusKind::OmegaDoublePrime;
    else throw std::invalid_argument("unknown modulus kind: " + kind_name);
    const auto curve = modulus_ladder(f, kind, parse_doubles(deltas_csv));
    std::ostringstream csv;
    csv << "delta,value\n";
    for (std::size_t i = 0; i < curve.deltas.size(); ++i)
        csv << curve.deltas[i] << "," << curve.values[i] << "\n";
    write_text(out, csv.str());
    return 0;
}

PathEnsemble build_ensemble(const std::string& process, std::size_t n, std::size_t replicas,
                            double rate, double horizon, std::uint64_t seed) {
    PathEnsemble e;
    e.label = process;
    e.index = n;
    e.seed = seed;
    for (std::size_t r = 0; r < replicas; ++r) {
        // per-replica derived seed keeps batches reproducible and splittable
        const std::uint64_t rs = seed * 0x9E3779B97F4A7C15ULL + r;
        if (process == "donsker")
            e.paths.push_back(donsker_path(n, rs, true));
        else if (process == "donsker_step")
            e.paths.push_back(donsker_path(n, rs, false));
        else if (process == "poisson")
            e.paths.push_back(poisson_path(rate, horizon, rs));
        else
            e.paths.push_back(example_family(process, n).path);
    }
    return e;
}

int cmd_diagnose_tightness(const std::string& process, const std::string& topo_name,
                           const std::string& ns_csv, std::size_t replicas,
                           const std::string& deltas_csv, const std::string& eps_csv,
                           double rate, std::uint64_t seed, const std::string& out) {
    const Topology topo = topo_name == "m1" ? Topology::M1 : Topology::J1;
    std::vector<PathEnsemble> seq;
    for (std::size_t n : parse_sizes(ns_csv))
        seq.push_back(build_ensemble(process, n, replicas, rate, 1.0, seed + n));
    const auto rep = tightness_report(seq, parse_doubles(deltas_csv), parse_doubles(eps_csv), topo);
    std::ostringstream csv;
    csv << "n,delta,eps,frequency,std_error\n";
    for (const auto& c : rep.cells)
        csv << seq[c.ensemble_index].index << "," << c.delta << "," << c.eps << ","
            << c.frequency << "," << c.std_error << "\n";
    write_text(out, csv.str());
    for (const auto& [eps, dec] : rep.trend)
        std::cout << "eps=" << eps << " decreasing=" << (dec ? "yes" : "no")
                  << " (finite-sample indication)\n";
    return 0;
}

int cmd_diagnose_compactness(const std::string& family, std::size_t n_max,
                             const std::string& topo_name, const std::string& deltas_csv,
                             const std::string& out) {
    Topology topo = Topology::J1;
    if (topo_name == "m1") topo = Topology::M1;
    else if (topo_name == "uniform") topo = Topology::Uniform;
    PathEnsemble e;
    e.label = family;
    for (std::size_t n = 3; n <= n_max; ++n) e.paths.push_back(example_family(family, n).path);
    const auto rep = compactness_report(e, parse_doubles(deltas_csv), topo);
    std::ostringstream csv;
    csv << "delta,sup_modulus" << (topo == Topology::M1 ? ",endpoint_left,endpoint_right" : "")
        << "\n";
    for (std::size_t i = 0; i < rep.deltas.size(); ++i) {
        csv << rep.deltas[i] << "," << rep.sup_modulus[i];
        if (topo == Topology::M1)
            csv << "," << rep.endpoint_terms[i].first << "," << rep.endpoint_terms[i].second;
        csv << "\n";
    }
    write_text(out, csv.str());
    std::cout << "sup_norm=" << rep.sup_norm << " (" << rep.note << ")\n";
    return 0;
}

int cmd_diagnose_convergence(const std::string& family, const std::string& ns_csv,
                             const std::string& metric_name, const std::string& out) {
    MetricKind metric = MetricKind::J1;
    if (metric_name == "uniform") metric = MetricKind::Uniform;
    else if (metric_name == "m1") metric = MetricKind::M1;
    else if (metric_name == "j1_log_slope") metric = MetricKind::J1LogSlope;
    const auto ns = parse_sizes(ns_csv);
    std::vector<CadlagPath> fam;
    for (std::size_t n : ns) fam.push_back(example_family(family, n).path);
    const auto limit = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    const auto rep = convergence_report(fam, ns, limit, metric);
    std::ostringstream csv;
    csv << "n,distance,error_bound\n";
    for (std::size_t i = 0; i < ns.size(); ++i)
        csv << ns[i] << "," << rep.distances[i] << "," << rep.error_bounds[i] << "\n";
    write_text(out, csv.str());
    std::cout << "fitted_rate=" << rep.fitted_rate << " monotone=" << (rep.monotone ? "yes" : "no")
              << "\n";
    return 0;
}

int cmd_simulate(const std::string& process, std::size_t N, double rate, double horizon,
                 std::uint64_t seed, const std::string& out) {
    ProcessSpec spec;
    spec.kind = process == "donsker" ? "donsker_interpolated" : process;
    spec.N = N;
    spec.rate = rate;
    spec.horizon = horizon;
    spec.seed = seed;
    save_path(generate(spec), out);
    return 0;
}

int cmd_family(const std::string& name, std::size_t n, const std::string& out) {
    save_path(example_family(name, n).path, out);
    return 0;
}

// ---------------------------------------------------------------------------
// demo scenarios

int demo_incompleteness(std::size_t max_n, const std::string& out) {
    std::ostringstream csv;
    csv << "n,d_j1_succ,d_j1_log_slope_succ,d_j1_null\n";
    const auto zero = CadlagPath::constant(1.0, 0.0);
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto fn = example_family("incompleteness", n).path;
        const auto fs = example_family("incompleteness", n + 1).path;
        csv << n << "," << j1_distance(fs, fn).value << ","
            << j1_distance(fs, fn, J1Penalty::LogSlope).value << ","
            << j1_distance(zero, fn).value << "\n";
    }
    write_text(out, csv.str());
    std::cout << "successive unpenalized distances halve; the log-slope column is pinned near "
              << std::log(2.0) << " and the distance to the null path stays 1\n";
    return 0;
}

int demo_j1_shift(std::size_t max_n, const std::string& out) {
    std::vector<CadlagPath> fam;
    std::vector<std::size_t> ns;
    for (std::size_t n = 3; n <= max_n; ++n) {
        fam.push_back(example_family("j1_shift", n).path);
        ns.push_back(n);
    }
    const auto limit = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    const auto rep = convergence_report(fam, ns, limit, MetricKind::J1);
    std::ostringstream csv;
    csv << "n,d_j1\n";
    for (std::size_t i = 0; i < ns.size(); ++i) csv << ns[i] << "," << rep.distances[i] << "\n";
    write_text(out, csv.str());
    std::cout << "fitted_rate=" << rep.fitted_rate << "\n";
    return 0;
}

int demo_m1_vs_j1(const std::string& ns_csv, const std::string& out) {
    std::ostringstream csv;
    csv << "n,d_j1,d_m1,m1_error_bound\n";
    const auto limit = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
    for (std::size_t n : parse_sizes(ns_csv)) {
        const auto f = example_family("m1_staircase", n).path;
        const auto m = m1_distance(f, limit, 2000);
        csv << n << "," << j1_distance(f, limit).value << "," << m.value << "," << m.error_bound
            << "\n";
    }
    write_text(out, csv.str());
    std::cout << "the j1 column is pinned at 0.5; the m1 column vanishes\n";
    return 0;
}

int demo_donsker(std::size_t N, std::size_t replicas, std::uint64_t seed, const std::string& out) {
    std::vector<double> endpoints;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
        const double y = donsker_path(N, seed * 0x9E3779B97F4A7C15ULL + r, false).eval1(1.0);
        endpoints.push_back(y);
        s1 += y;
        s2 += y * y;
    }
    const double m = static_cast<double>(replicas);
    const double var = s2 / m - (s1 / m) * (s1 / m);
    const double ks = ks_statistic_standard_normal(endpoints);

    std::vector<PathEnsemble> seq{
        build_ensemble("donsker", N, std::min<std::size_t>(replicas, 500), 0.0, 1.0, seed)};
    const auto rep = tightness_report(seq, {0.2, 0.1, 0.05}, {0.5}, Topology::J1);
    std::ostringstream csv;
    csv << "delta,eps,frequency,std_error\n";
    for (const auto& c : rep.cells)
        csv << c.delta << "," << c.eps << "," << c.frequency << "," << c.std_error << "\n";
    write_text(out, csv.str());
    std::cout << "endpoint_variance=" << var << " ks_vs_normal=" << ks << "\n";
    return 0;
}

int demo_halfline(std::size_t max_n, const std::string& out) {
    const auto g = CadlagPath::step(2.0, {0.0, 1.0}, {0.0, 1.0});
    std::ostringstream csv;
    csv << "n,restriction_distance_at_1,halfline_distance\n";
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto f = example_family("halfline_shift", n).path;
        csv << n << "," << j1_distance(f.restrict(1.0), g.restrict(1.0)).value << ","
            << halfline_distance(f, g).value << "\n";
    }
    write_text(out, csv.str());
    std::cout << "the fixed-horizon column is stuck at 1; the weighted column vanishes\n";
    return 0;
}

int demo_weak_vs_strong(std::size_t max_n, const std::string& out) {
    std::ostringstream csv;
    csv << "n,weak_product_j1,strong_vector_j1\n";
    for (std::size_t n = 3; n <= max_n; ++n) {
        const double dn = static_cast<double>(n);
        auto f1 = CadlagPath::step(1.0, {0.0, 0.5}, {0.0, 1.0});
        auto g2 = CadlagPath::step(1.0, {0.0, 0.5 + 1.0 / dn}, {0.0, 1.0});
        const double weak = weak_product_j1({f1, f1}, {f1, g2}).value;
        auto fv = CadlagPath::step_vec(1.0, {0.0, 0.5}, {{0.0, 0.0}, {1.0, 1.0}});
        auto gv = CadlagPath::step_vec(1.0, {0.0, 0.5, 0.5 + 1.0 / dn},
                                       {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
        const double strong =
            j1_distance(fv, gv, J1Penalty::Absolute, GroundMetric::max_norm()).value;
        csv << n << "," << weak << "," << strong << "\n";
    }
    write_text(out, csv.str());
    std::cout << "coordinatewise time changes hide the stagger; a single time change cannot\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computable Skorokhod J1/M1 topologies for cadlag paths"};
    app.require_subcommand(1);

    // dist
    std::string d_metric = "j1", d_left, d_right, d_out;
    bool d_oracle = false;
    std::size_t d_resolution = 64;
    double d_tolerance = 1e-9;
    auto* dist = app.add_subcommand("dist", "distance between two path files");
    dist->add_option("--metric", d_metric, "uniform|j1|j1_log_slope|m1|halfline");
    dist->add_option("--left", d_left)->required();
    dist->add_option("--right", d_right)->required();
    dist->add_flag("--oracle", d_oracle, "cross-check against the brute-force oracle");
    dist->add_option("--resolution", d_resolution, "discretization resolution");
    dist->add_option("--tolerance", d_tolerance, "oracle agreement tolerance");
    dist->add_option("--out", d_out, "JSON report file (default: stdout)");

    // modulus
    std::string m_kind = "omega", m_path, m_deltas = "0.2,0.1,0.05", m_out;
    auto* mod = app.add_subcommand("modulus", "modulus-of-continuity ladder");
    mod->add_option("--kind", m_kind, "omega|omega_prime|omega_double_prime");
    mod->add_option("--path", m_path)->required();
    mod->add_option("--deltas", m_deltas, "comma-separated ladder");
    mod->add_option("--out", m_out, "CSV file (default: stdout)");

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "ensemble diagnostics");
    diag->require_subcommand(1);
    std::string t_process = "donsker", t_topo = "j1", t_ns = "50,100,200";
    std::string t_deltas = "0.2,0.1,0.05", t_eps = "0.25,0.5", t_out;
    std::size_t t_replicas = 500;
    double t_rate = 1.0;
    std::uint64_t t_seed = 7;
    auto* tight = diag->add_subcommand("tightness", "modulus exceedance frequencies");
    tight->add_option("--process", t_process, "donsker|donsker_step|poisson|family name");
    tight->add_option("--topology", t_topo, "j1|m1");
    tight->add_option("--ns", t_ns);
    tight->add_option("--replicas", t_replicas);
    tight->add_option("--deltas", t_deltas);
    tight->add_option("--eps", t_eps);
    tight->add_option("--rate", t_rate, "poisson intensity");
    tight->add_option("--seed", t_seed);
    tight->add_option("--out", t_out, "CSV file (default: stdout)");

    std::string c_family = "j1_shift", c_topo = "j1", c_deltas = "0.15,0.1,0.05,0.01", c_out;
    std::size_t c_nmax = 50;
    auto* comp = diag->add_subcommand("compactness", "modulus ladder over an ensemble");
    comp->add_option("--family", c_family);
    comp->add_option("--n-max", c_nmax);
    comp->add_option("--topology", c_topo, "uniform|j1|m1");
    comp->add_option("--deltas", c_deltas);
    comp->add_option("--out", c_out, "CSV file (default: stdout)");

    std::string v_family = "j1_shift", v_ns = "5,10,20,40", v_metric = "j1", v_out;
    auto* conv = diag->add_subcommand("convergence", "distances to the limit with fitted rate");
    conv->add_option("--family", v_family);
    conv->add_option("--ns", v_ns);
    conv->add_option("--metric", v_metric, "uniform|j1|j1_log_slope|m1");
    conv->add_option("--out", v_out, "CSV file (default: stdout)");

    // simulate
    std::string s_process = "donsker", s_out = "path.json";
    std::size_t s_N = 400;
    double s_rate = 1.0, s_horizon = 1.0;
    std::uint64_t s_seed = 7;
    auto* sim = app.add_subcommand("simulate", "generate a seeded sample path");
    sim->add_option("--process", s_process, "donsker|donsker_step|poisson");
    sim->add_option("--N", s_N);
    sim->add_option("--rate", s_rate);
    sim->add_option("--horizon", s_horizon);
    sim->add_option("--seed", s_seed);
    sim->add_option("--out", s_out)->required();

    // family
    std::string f_name, f_out = "family.json";
    std::size_t f_n = 3;
    auto* fam = app.add_subcommand("family", "emit a named example family member");
    fam->add_option("--name", f_name)->required();
    fam->add_option("--n", f_n);
    fam->add_option("--out", f_out)->required();

    // demo
    std::string demo_name, demo_ns = "5,10,20,40", demo_out;
    std::size_t demo_maxn = 12, demo_N = 400, demo_replicas = 2000;
    std::uint64_t demo_seed = 7;
    auto* demo = app.add_subcommand("demo", "end-to-end worked scenarios");
    demo->add_option("--name", demo_name,
                     "incompleteness|j1_shift_convergence|m1_vs_j1|donsker|halfline|"
                     "weak_vs_strong_product")
        ->required();
    demo->add_option("--max-n", demo_maxn);
    demo->add_option("--ns", demo_ns);
    demo->add_option("--N", demo_N);
    demo->add_option("--replicas", demo_replicas);
    demo->add_option("--seed", demo_seed);
    demo->add_option("--out", demo_out, "CSV file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed())
            return cmd_dist(d_metric, d_left, d_right, d_oracle, d_resolution, d_out, d_tolerance);
        if (mod->parsed()) return cmd_modulus(m_kind, m_path, m_deltas, m_out);
        if (diag->parsed()) {
            if (tight->parsed())
                return cmd_diagnose_tightness(t_process, t_topo, t_ns, t_replicas, t_deltas, t_eps,
                                              t_rate, t_seed, t_out);
            if (comp->parsed()) return cmd_diagnose_compactness(c_family, c_nmax, c_topo, c_deltas, c_out);
            if (conv->parsed()) return cmd_diagnose_convergence(v_family, v_ns, v_metric, v_out);
        }
        if (sim->parsed()) return cmd_simulate(s_process, s_N, s_rate, s_horizon, s_seed, s_out);
        if (fam->parsed()) return cmd_family(f_name, f_n, f_out);
        if (demo->parsed()) {
            if (demo_name == "incompleteness") return demo_incompleteness(demo_maxn, demo_out);
            if (demo_name == "j1_shift_convergence")
                return demo_j1_shift(std::max<std::size_t>(demo_maxn, 10), demo_out);
            if (demo_name == "m1_vs_j1") return demo_m1_vs_j1(demo_ns, demo_out);
            if (demo_name == "donsker") return demo_donsker(demo_N, demo_replicas, demo_seed, demo_out);
            if (demo_name == "halfline") return demo_halfline(std::max<std::size_t>(demo_maxn, 8), demo_out);
            if (demo_name == "weak_vs_strong_product")
                return demo_weak_vs_strong(std::max<std::size_t>(demo_maxn, 10), demo_out);
            throw std::invalid_argument("unknown demo: " + demo_name);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
