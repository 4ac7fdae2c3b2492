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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace vrukit {

/// 8-bit interleaved RGB, row-major.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  static constexpr int kChannels = 3;

  static ImageBuffer filled(int width, int height, std::uint8_t r, std::uint8_t g,
                            std::uint8_t b);

  bool empty() const noexcept { return width <= 0 || height <= 0; }
  bool valid() const noexcept;

  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
            static_cast<std::size_t>(x)) * kChannels;
  }
  std::uint8_t* pixel(int x, int y) noexcept { return data.data() + offset(x, y); }
  const std::uint8_t* pixel(int x, int y) const noexcept { return data.data() + offset(x, y); }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

struct ImageSize {
  int width = 0;
  int height = 0;
};

/// Decodes PNG or JPEG (chosen by file signature). Grayscale input is
/// replicated to three channels and alpha is discarded. Throws IoError.
ImageBuffer read_image(const std::filesystem::path& path);

/// Encodes by extension: .png (lossless) or .jpg/.jpeg. Throws IoError.
void write_image(const std::filesystem::path& path, const ImageBuffer& image,
                 int jpeg_quality = 95);

/// Reads only the PNG IHDR or JPEG SOF header. Returns nullopt when the file
/// is not a recognised image; throws IoError when it cannot be opened.
std::optional<ImageSize> probe_image_size(const std::filesystem::path& path);

}  // namespace vrukit
