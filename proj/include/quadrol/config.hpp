// Copyright 2026 The quadrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUADROL_CONFIG_H_
#define QUADROL_CONFIG_H_

#include <filesystem>
#include <string>
#include <vector>

#include "quadrol/harness.hpp"

namespace quadrol {

// Flat sectioned key = value experiment configuration. Every key has a
// default (the forward-trot scenario with plant mismatch); unknown sections
// or keys are rejected with the offending line. Parsing does not validate
// invariants; call validate()/violations() on the result for that.
EpisodeConfig parse_config_text(const std::string& text,
                                const std::string& source_name = "<string>");
EpisodeConfig parse_config_file(const std::filesystem::path& path);

// Emits every section and key; doubles keep full round-trip precision, so
// parse(serialize(cfg)) reproduces cfg exactly.
std::string serialize_config(const EpisodeConfig& cfg);

}  // namespace quadrol

#endif  // QUADROL_CONFIG_H_
