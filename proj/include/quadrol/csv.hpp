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

#ifndef QUADROL_CSV_H_
#define QUADROL_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace quadrol {

// Shortest decimal representation that parses back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Writes via a temporary file in the same directory plus an atomic rename,
// so an interrupted run never leaves a truncated file under a valid name.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace quadrol

#endif  // QUADROL_CSV_H_
