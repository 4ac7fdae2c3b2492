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

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "vrukit/error.hpp"
#include "vrukit/image.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace fs = std::filesystem;

namespace {

enum class Codec { kUnknown, kPng, kJpeg };

Codec sniff(const unsigned char* bytes, std::size_t n) {
  static constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (n >= 8 && std::memcmp(bytes, kPngMagic, 8) == 0) return Codec::kPng;
  if (n >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) return Codec::kJpeg;
  return Codec::kUnknown;
}

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

ImageBuffer read_png(const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    throw IoError("cannot decode PNG '" + path.string() + "': " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  ImageBuffer out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.data.resize(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, out.data.data(), 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG '" + path.string() + "': " + message);
  }
  return out;
}

void write_png(const fs::path& path, const ImageBuffer& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_RGB;
  if (png_image_write_to_file(&image, path.c_str(), 0, img.data.data(), 0, nullptr) == 0) {
    throw IoError("cannot encode PNG '" + path.string() + "': " + image.message);
  }
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr info) {
  auto* err = reinterpret_cast<JpegErrorManager*>(info->err);
  (*info->err->format_message)(info, err->message);
  std::longjmp(err->jump, 1);
}

ImageBuffer read_jpeg(const fs::path& path) {
  FilePtr file = open_file(path, "rb");
  jpeg_decompress_struct info;
  JpegErrorManager err;
  info.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  ImageBuffer out;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&info);
    throw IoError("cannot decode JPEG '" + path.string() + "': " + err.message);
  }
  jpeg_create_decompress(&info);
  jpeg_stdio_src(&info, file.get());
  jpeg_read_header(&info, TRUE);
  info.out_color_space = JCS_RGB;
  jpeg_start_decompress(&info);
  out.width = static_cast<int>(info.output_width);
  out.height = static_cast<int>(info.output_height);
  out.data.resize(static_cast<std::size_t>(out.width) * out.height * 3);
  while (info.output_scanline < info.output_height) {
    JSAMPROW row = out.data.data() + static_cast<std::size_t>(info.output_scanline) * out.width * 3;
    jpeg_read_scanlines(&info, &row, 1);
  }
  jpeg_finish_decompress(&info);
  jpeg_destroy_decompress(&info);
  return out;
}

void write_jpeg(const fs::path& path, const ImageBuffer& img, int quality) {
  FilePtr file = open_file(path, "wb");
  jpeg_compress_struct info;
  JpegErrorManager err;
  info.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&info);
    throw IoError("cannot encode JPEG '" + path.string() + "': " + err.message);
  }
  jpeg_create_compress(&info);
  jpeg_stdio_dest(&info, file.get());
  info.image_width = static_cast<JDIMENSION>(img.width);
  info.image_height = static_cast<JDIMENSION>(img.height);
  info.input_components = 3;
  info.in_color_space = JCS_RGB;
  jpeg_set_defaults(&info);
  jpeg_set_quality(&info, quality, TRUE);
  jpeg_start_compress(&info, TRUE);
  while (info.next_scanline < info.image_height) {
    auto* row = const_cast<JSAMPLE*>(img.data.data() +
                                     static_cast<std::size_t>(info.next_scanline) * img.width * 3);
    jpeg_write_scanlines(&info, &row, 1);
  }
  jpeg_finish_compress(&info);
  jpeg_destroy_compress(&info);
}

std::uint32_t be16(const unsigned char* p) { return (std::uint32_t{p[0]} << 8) | p[1]; }
std::uint32_t be32(const unsigned char* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         p[3];
}

}  // namespace

ImageBuffer read_image(const fs::path& path) {
  unsigned char head[8] = {};
  {
    FilePtr file = open_file(path, "rb");
    const std::size_t n = std::fread(head, 1, sizeof head, file.get());
    switch (sniff(head, n)) {
      case Codec::kPng:
        break;
      case Codec::kJpeg:
        file.reset();
        return read_jpeg(path);
      case Codec::kUnknown:
        throw IoError("'" + path.string() + "' is neither PNG nor JPEG");
    }
  }
  return read_png(path);
}

void write_image(const fs::path& path, const ImageBuffer& image, int jpeg_quality) {
  if (!image.valid()) throw ValidationError("cannot encode an invalid image buffer");
  const std::string ext = fold_case(path.extension().string());
  if (ext == ".png") {
    write_png(path, image);
  } else if (ext == ".jpg" || ext == ".jpeg") {
    write_jpeg(path, image, jpeg_quality);
  } else {
    throw IoError("unsupported image extension '" + ext + "'");
  }
}

std::optional<ImageSize> probe_image_size(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  unsigned char head[24] = {};
  in.read(reinterpret_cast<char*>(head), sizeof head);
  const auto got = static_cast<std::size_t>(in.gcount());
  const Codec codec = sniff(head, got);
  if (codec == Codec::kPng) {
    if (got < 24 || std::memcmp(head + 12, "IHDR", 4) != 0) return std::nullopt;
    return ImageSize{static_cast<int>(be32(head + 16)), static_cast<int>(be32(head + 20))};
  }
  if (codec != Codec::kJpeg) return std::nullopt;

  // Walk JPEG markers until a start-of-frame segment.
  in.clear();
  in.seekg(2);
  for (;;) {
    int c = in.get();
    if (c == EOF) return std::nullopt;
    if (c != 0xFF) continue;
    int marker = in.get();
    while (marker == 0xFF) marker = in.get();
    if (marker == EOF) return std::nullopt;
    if (marker == 0xD8 || marker == 0x01 || (marker >= 0xD0 && marker <= 0xD7)) continue;
    unsigned char len_bytes[2];
    if (!in.read(reinterpret_cast<char*>(len_bytes), 2)) return std::nullopt;
    const std::uint32_t length = be16(len_bytes);
    if (length < 2) return std::nullopt;
    const bool is_sof = marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 &&
                        marker != 0xC8 && marker != 0xCC;
    if (is_sof) {
      unsigned char sof[5];
      if (!in.read(reinterpret_cast<char*>(sof), 5)) return std::nullopt;
      return ImageSize{static_cast<int>(be16(sof + 3)), static_cast<int>(be16(sof + 1))};
    }
    in.seekg(static_cast<std::streamoff>(length) - 2, std::ios::cur);
  }
}

}  // namespace vrukit
