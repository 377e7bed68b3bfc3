// Copyright 2026 The Shepherd Curriculum Authors. All rights reserved.
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

#pragma once

// Small text helpers shared by the file formats.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shepherd {

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);
/// Parses the whole of `s` as a double; throws Error otherwise.
double parse_double(std::string_view s);
std::uint64_t parse_u64(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace shepherd
