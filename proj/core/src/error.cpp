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

#include "vrukit/error.hpp"

namespace vrukit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return "io";
    case ErrorKind::kValidation:
      return "validation";
    case ErrorKind::kConfiguration:
      return "configuration";
  }
  return "unknown";
}

ParseError::ParseError(const std::string& message, std::size_t line)
    : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + message
                               : message),
      line_(line) {}

}  // namespace vrukit
