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

#include "cadlag/path.hpp"

namespace cadlag {

/// Path JSON schema:
///   {"horizon": T, "kind": "step"|"pl", "times": [...], "values": [...]}
/// For "step", value i holds on [t_i, t_{i+1}). For "pl", values are node
/// values with linear interpolation and an optional
/// "jumps": [{"t": ..., "left": ...}] list. Round-trips bit-exactly.
std::string path_to_json(const CadlagPath& path);
CadlagPath path_from_json(const std::string& text);

CadlagPath load_path(const std::string& file);
void save_path(const CadlagPath& path, const std::string& file);

}  // namespace cadlag
