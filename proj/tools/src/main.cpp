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

#include <filesystem>
#include <iostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "common.hpp"
#include "vrukit/error.hpp"

int main(int argc, char** argv) {
  using namespace vrukit::cli;
  CLI::App app{"vrukit: dataset preparation, evaluation and RGB-thermal fusion for VRU detection"};
  app.name("vrukit");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "vrukit 0.3.0");

  std::vector<Command> commands = {add_convert(app),  add_stats(app), add_weights(app),
                                   add_augment(app),  add_eval(app),  add_fuse(app),
                                   add_manifest(app), add_make_fixtures(app)};
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(vrukit::ErrorKind::kConfiguration);
  }

  try {
    for (const Command& c : commands) {
      if (c.app->parsed()) return c.run();
    }
  } catch (const vrukit::Error& e) {
    std::cerr << "vrukit: " << vrukit::to_string(e.kind()) << " error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "vrukit: validation error: " << e.what() << "\n";
    return static_cast<int>(vrukit::ErrorKind::kValidation);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "vrukit: io error: " << e.what() << "\n";
    return static_cast<int>(vrukit::ErrorKind::kIo);
  } catch (const std::exception& e) {
    std::cerr << "vrukit: error: " << e.what() << "\n";
    return static_cast<int>(vrukit::ErrorKind::kIo);
  }
  return 0;
}
