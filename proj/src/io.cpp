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
#include "cadlag/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cadlag {

using nlohmann::json;

std::string path_to_json(const CadlagPath& path) {
    if (!path.is_scalar())
        throw std::invalid_argument("path_to_json: the file schema is scalar-valued");
    json j;
    j["horizon"] = path.horizon();
    const auto& times = path.breakpoints();
    const auto& start = path.start_values();
    const auto& end = path.end_values();
    if (path.is_piecewise_constant()) {
        j["kind"] = "step";
        std::vector<double> ts, vs;
        for (std::size_t i = 0; i < times.size(); ++i) {
            ts.push_back(times[i]);
            vs.push_back(start[i][0]);
        }
        j["times"] = ts;
        j["values"] = vs;
    } else {
        j["kind"] = "pl";
        std::vector<double> ts, vs;
        json jumps = json::array();
        const bool terminal_jump = times.back() == path.horizon();
        const std::size_t nseg = terminal_jump ? times.size() - 1 : times.size();
        for (std::size_t i = 0; i < nseg; ++i) {
            ts.push_back(times[i]);
            vs.push_back(start[i][0]);
            if (i > 0 && end[i - 1][0] != start[i][0])
                jumps.push_back({{"t", times[i]}, {"left", end[i - 1][0]}});
        }
        ts.push_back(path.horizon());
        vs.push_back(path.eval1(path.horizon()));
        if (end[nseg - 1][0] != vs.back())
            jumps.push_back({{"t", path.horizon()}, {"left", end[nseg - 1][0]}});
        j["times"] = ts;
        j["values"] = vs;
        if (!jumps.empty()) j["jumps"] = jumps;
    }
    return j.dump();
}

CadlagPath path_from_json(const std::string& text) {
    json j = json::parse(text);
    const double horizon = j.at("horizon").get<double>();
    const std::string kind = j.at("kind").get<std::string>();
    const auto times = j.at("times").get<std::vector<double>>();
    const auto values = j.at("values").get<std::vector<double>>();
    if (kind == "step") return CadlagPath::step(horizon, times, values);
    if (kind == "pl") {
        std::vector<std::pair<double, double>> jumps;
        if (j.contains("jumps")) {
            for (const auto& e : j.at("jumps"))
                jumps.emplace_back(e.at("t").get<double>(), e.at("left").get<double>());
        }
        return CadlagPath::piecewise_linear(horizon, times, values, jumps);
    }
    throw std::invalid_argument("path_from_json: unknown kind '" + kind + "'");
}

CadlagPath load_path(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("load_path: cannot open " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return path_from_json(ss.str());
}

void save_path(const CadlagPath& path, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("save_path: cannot open " + file);
    out << path_to_json(path) << "\n";
}

}  // namespace cadlag
