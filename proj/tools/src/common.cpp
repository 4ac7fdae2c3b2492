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

#include "common.hpp"

#include <cstdlib>
#include <system_error>

#include "vrukit/error.hpp"
#include "vrukit/text.hpp"

namespace vrukit::cli {

namespace fs = std::filesystem;

void require_dir(const fs::path& path, const char* what) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw IoError(std::string(what) + " '" + path.string() + "' is not a directory");
  }
}

void require_file(const fs::path& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw IoError(std::string(what) + " '" + path.string() + "' is not a readable file");
  }
}

void require_path(const fs::path& path, const char* what) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw IoError(std::string(what) + " '" + path.string() + "' does not exist");
  }
}

void write_json(const fs::path& path, const nlohmann::ordered_json& doc) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
  }
  write_text_file(path, doc.dump(2) + "\n");
}

int thread_count(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("VRUKIT_THREADS"); env && *env) {
    const auto n = parse_int(env);
    if (!n || *n < 1) throw ConfigError("VRUKIT_THREADS must be a positive integer");
    return *n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace vrukit::cli
