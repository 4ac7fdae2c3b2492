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

#include "vrukit/image.hpp"

namespace vrukit {

ImageBuffer ImageBuffer::filled(int width, int height, std::uint8_t r, std::uint8_t g,
                                std::uint8_t b) {
  ImageBuffer img;
  img.width = width;
  img.height = height;
  const std::size_t pixels =
      width > 0 && height > 0 ? static_cast<std::size_t>(width) * static_cast<std::size_t>(height)
                              : 0;
  img.data.resize(pixels * kChannels);
  for (std::size_t i = 0; i < pixels; ++i) {
    img.data[i * 3] = r;
    img.data[i * 3 + 1] = g;
    img.data[i * 3 + 2] = b;
  }
  return img;
}

bool ImageBuffer::valid() const noexcept {
  return !empty() && data.size() == static_cast<std::size_t>(width) *
                                        static_cast<std::size_t>(height) * kChannels;
}

}  // namespace vrukit
