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

#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"

namespace vrukit::cli {

/// A registered subcommand: CLI11 fills the options, `run` does the work
/// after parsing and returns the exit code.
struct Command {
  CLI::App* app = nullptr;
  std::function<int()> run;
};

Command add_convert(CLI::App& root);
Command add_stats(CLI::App& root);
Command add_weights(CLI::App& root);
Command add_manifest(CLI::App& root);
Command add_augment(CLI::App& root);
Command add_eval(CLI::App& root);
Command add_fuse(CLI::App& root);
Command add_make_fixtures(CLI::App& root);

/// Throws IoError unless `path` is an existing directory / regular file.
void require_dir(const std::filesystem::path& path, const char* what);
void require_file(const std::filesystem::path& path, const char* what);
void require_path(const std::filesystem::path& path, const char* what);

/// Pretty JSON with a trailing newline; parent directories are created.
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

/// --threads when given, else VRUKIT_THREADS, else the hardware count.
int thread_count(std::optional<int> flag);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Rethrows the
/// exception of the lowest failing index.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace vrukit::cli
