// Copyright 2026 The vrukit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small text and file helpers shared by the parsers and the CLI.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vrukit {

std::string_view trim(std::string_view text) noexcept;
std::string fold_case(std::string_view text);

/// Splits on '\n', dropping a trailing '\r' from each line. A final empty
/// line after the last newline is not returned.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_whitespace(std::string_view line);

std::optional<double> parse_double(std::string_view text) noexcept;
std::optional<int> parse_int(std::string_view text) noexcept;

/// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Left-aligned first column, right-aligned others, rule under the header row.
std::string render_table(const std::vector<std::vector<std::string>>& rows);

}  // namespace vrukit
