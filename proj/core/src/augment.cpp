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

#include "vrukit/augment.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "vrukit/error.hpp"
#include "vrukit/rng.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace {

constexpr std::array<std::pair<TransformKind, std::string_view>, 10> kTransformNames = {{
    {TransformKind::kBrightnessContrast, "brightness_contrast"},
    {TransformKind::kGaussianBlur, "gaussian_blur"},
    {TransformKind::kGaussNoise, "gauss_noise"},
    {TransformKind::kRain, "rain"},
    {TransformKind::kFog, "fog"},
    {TransformKind::kSnow, "snow"},
    {TransformKind::kCoarseDropout, "coarse_dropout"},
    {TransformKind::kGridDropout, "grid_dropout"},
    {TransformKind::kToGray, "to_gray"},
    {TransformKind::kChannelDropout, "channel_dropout"},
}};

std::uint8_t saturate(double v) {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

}  // namespace

std::string_view to_string(AugmentLevel level) {
  switch (level) {
    case AugmentLevel::kNone:
      return "none";
    case AugmentLevel::kLight:
      return "light";
    case AugmentLevel::kHeavy:
      return "heavy";
    case AugmentLevel::kCustom:
      return "custom";
  }
  return "unknown";
}

AugmentLevel parse_augment_level(std::string_view text) {
  const std::string folded = fold_case(trim(text));
  if (folded == "none") return AugmentLevel::kNone;
  if (folded == "light") return AugmentLevel::kLight;
  if (folded == "heavy") return AugmentLevel::kHeavy;
  if (folded == "custom") return AugmentLevel::kCustom;
  throw ConfigError("unknown augmentation level '" + std::string(text) + "'");
}

std::string_view to_string(TransformKind kind) {
  for (const auto& [k, name] : kTransformNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

TransformKind parse_transform_kind(std::string_view text) {
  std::string folded = fold_case(trim(text));
  // Accept the CamelCase names of the usual augmentation libraries too.
  static const std::pair<std::string_view, TransformKind> kAliases[] = {
      {"randombrightnesscontrast", TransformKind::kBrightnessContrast},
      {"gaussianblur", TransformKind::kGaussianBlur},
      {"gaussnoise", TransformKind::kGaussNoise},
      {"randomrain", TransformKind::kRain},
      {"randomfog", TransformKind::kFog},
      {"randomsnow", TransformKind::kSnow},
      {"coarsedropout", TransformKind::kCoarseDropout},
      {"griddropout", TransformKind::kGridDropout},
      {"togray", TransformKind::kToGray},
      {"channeldropout", TransformKind::kChannelDropout},
  };
  for (const auto& [name, kind] : kAliases) {
    if (folded == name) return kind;
  }
  for (const auto& [kind, name] : kTransformNames) {
    if (folded == name) return kind;
  }
  throw ConfigError("unknown transform '" + std::string(text) + "'");
}

ParamRanges default_params(TransformKind kind) {
  switch (kind) {
    case TransformKind::kBrightnessContrast:
      return {{"brightness", {-0.2, 0.2}}, {"contrast", {-0.2, 0.2}}};
    case TransformKind::kGaussianBlur:
      return {{"sigma", {0.5, 2.0}}};
    case TransformKind::kGaussNoise:
      return {{"sigma", {5.0, 25.0}}};
    case TransformKind::kRain:
      return {{"slant", {-10.0, 10.0}},
              {"drop_length", {20.0, 20.0}},
              {"density", {1.0 / 600.0, 1.0 / 600.0}},
              {"brightness_coefficient", {0.7, 0.7}},
              {"drop_color", {200.0, 200.0}}};
    case TransformKind::kFog:
      return {{"fog_coef", {0.3, 1.0}}, {"haze_color", {230.0, 230.0}}};
    case TransformKind::kSnow:
      return {{"density", {0.01, 0.05}}, {"flake_size", {1.0, 2.0}}};
    case TransformKind::kCoarseDropout:
      return {{"holes", {1.0, 8.0}},
              {"hole_height", {0.05, 0.2}},
              {"hole_width", {0.05, 0.2}},
              {"fill", {0.0, 0.0}}};
    case TransformKind::kGridDropout:
      return {{"ratio", {0.5, 0.5}}, {"unit_size", {0.1, 0.2}}, {"fill", {0.0, 0.0}}};
    case TransformKind::kToGray:
      return {};
    case TransformKind::kChannelDropout:
      return {{"fill", {0.0, 0.0}}};
  }
  return {};
}

TransformSpec make_transform(TransformKind kind) { return {kind, 1.0, default_params(kind)}; }

PipelineSpec preset_pipeline(AugmentLevel level, std::uint64_t master_seed) {
  using K = TransformKind;
  auto single = [](K kind) { return PipelineStep{1.0, {make_transform(kind)}}; };
  auto one_of = [](std::initializer_list<K> kinds) {
    PipelineStep step;
    for (K kind : kinds) step.choices.push_back(make_transform(kind));
    return step;
  };
  PipelineSpec spec;
  spec.level = level;
  spec.master_seed = master_seed;
  switch (level) {
    case AugmentLevel::kNone:
    case AugmentLevel::kCustom:
      break;
    case AugmentLevel::kLight:
      spec.steps = {single(K::kBrightnessContrast), single(K::kGaussianBlur),
                    single(K::kGaussNoise), one_of({K::kRain, K::kFog, K::kSnow})};
      break;
    case AugmentLevel::kHeavy:
      spec.steps = {one_of({K::kCoarseDropout, K::kGridDropout}),
                    one_of({K::kToGray, K::kChannelDropout}),
                    single(K::kBrightnessContrast),
                    one_of({K::kGaussianBlur, K::kGaussNoise}),
                    one_of({K::kRain, K::kFog, K::kSnow})};
      break;
  }
  return spec;
}

void validate_pipeline(const PipelineSpec& spec) {
  for (std::size_t s = 0; s < spec.steps.size(); ++s) {
    const PipelineStep& step = spec.steps[s];
    const std::string where = "pipeline step " + std::to_string(s);
    if (step.choices.empty()) throw ConfigError(where + " has no transforms");
    if (!(step.probability >= 0.0 && step.probability <= 1.0)) {
      throw ConfigError(where + ": probability must be in [0, 1]");
    }
    double total_weight = 0.0;
    for (const TransformSpec& t : step.choices) {
      if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
        throw ConfigError(where + ": weights must be non-negative");
      }
      total_weight += t.weight;
      const ParamRanges defaults = default_params(t.kind);
      for (const auto& [name, range] : t.params) {
        if (defaults.find(name) == defaults.end()) {
          throw ConfigError(where + ": " + std::string(to_string(t.kind)) +
                            " has no parameter '" + name + "'");
        }
        if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || range.lo > range.hi) {
          throw ConfigError(where + ": range for '" + name + "' is inverted or not finite");
        }
      }
      for (const auto& [name, range] : defaults) {
        if (t.params.find(name) == t.params.end()) {
          throw ConfigError(where + ": " + std::string(to_string(t.kind)) +
                            " lacks parameter '" + name + "'");
        }
      }
    }
    if (!(total_weight > 0.0)) throw ConfigError(where + ": weights sum to zero");
  }
}

namespace {

ParamRange parse_range(const nlohmann::json& value, const std::string& name) {
  if (value.is_number()) {
    const double v = value.get<double>();
    return {v, v};
  }
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  throw ConfigError("parameter '" + name + "' must be a number or [lo, hi]");
}

void apply_param_overrides(TransformSpec& t, const nlohmann::json& params) {
  if (!params.is_object()) throw ConfigError("transform params must be an object");
  for (const auto& [name, value] : params.items()) t.params[name] = parse_range(value, name);
}

TransformSpec parse_transform(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("transform") || !doc["transform"].is_string()) {
    throw ConfigError("each transform needs a string 'transform' field");
  }
  TransformSpec t = make_transform(parse_transform_kind(doc["transform"].get<std::string>()));
  if (doc.contains("weight")) {
    if (!doc["weight"].is_number()) throw ConfigError("'weight' must be a number");
    t.weight = doc["weight"].get<double>();
  }
  if (doc.contains("params")) apply_param_overrides(t, doc["params"]);
  return t;
}

}  // namespace

PipelineSpec parse_pipeline_spec(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("pipeline spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("pipeline spec must be a JSON object");

  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      throw ConfigError("'seed' must be a non-negative integer");
    }
    seed = doc["seed"].get<std::uint64_t>();
  }

  PipelineSpec spec;
  if (doc.contains("steps")) {
    if (doc.contains("level") && doc["level"].is_string() &&
        parse_augment_level(doc["level"].get<std::string>()) != AugmentLevel::kCustom) {
      throw ConfigError("'steps' may only be given with level \"custom\"");
    }
    if (!doc["steps"].is_array()) throw ConfigError("'steps' must be an array");
    spec.level = AugmentLevel::kCustom;
    for (const nlohmann::json& step_doc : doc["steps"]) {
      PipelineStep step;
      if (!step_doc.is_object()) throw ConfigError("each step must be an object");
      if (step_doc.contains("probability")) {
        if (!step_doc["probability"].is_number()) throw ConfigError("'probability' must be a number");
        step.probability = step_doc["probability"].get<double>();
      }
      if (step_doc.contains("one_of")) {
        if (!step_doc["one_of"].is_array()) throw ConfigError("'one_of' must be an array");
        for (const nlohmann::json& t : step_doc["one_of"]) step.choices.push_back(parse_transform(t));
      } else {
        step.choices.push_back(parse_transform(step_doc));
      }
      spec.steps.push_back(std::move(step));
    }
  } else {
    const std::string level = doc.contains("level") && doc["level"].is_string()
                                  ? doc["level"].get<std::string>()
                                  : std::string("none");
    spec = preset_pipeline(parse_augment_level(level));
  }
  spec.master_seed = seed;

  if (doc.contains("overrides")) {
    const nlohmann::json& overrides = doc["overrides"];
    if (!overrides.is_object()) throw ConfigError("'overrides' must be an object");
    for (const auto& [name, params] : overrides.items()) {
      const TransformKind kind = parse_transform_kind(name);
      for (PipelineStep& step : spec.steps) {
        for (TransformSpec& t : step.choices) {
          if (t.kind == kind) apply_param_overrides(t, params);
        }
      }
    }
  }
  validate_pipeline(spec);
  return spec;
}

nlohmann::ordered_json to_json(const PipelineSpec& spec) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const PipelineStep& step : spec.steps) {
    nlohmann::ordered_json choices = nlohmann::ordered_json::array();
    for (const TransformSpec& t : step.choices) {
      nlohmann::ordered_json params = nlohmann::ordered_json::object();
      for (const auto& [name, range] : t.params) params[name] = {range.lo, range.hi};
      choices.push_back({{"transform", std::string(to_string(t.kind))},
                         {"weight", t.weight},
                         {"params", std::move(params)}});
    }
    steps.push_back({{"probability", step.probability}, {"one_of", std::move(choices)}});
  }
  return {{"level", std::string(to_string(spec.level))},
          {"seed", spec.master_seed},
          {"steps", std::move(steps)}};
}

std::uint64_t frame_rng_seed(std::uint64_t master_seed, std::uint64_t frame_seed) noexcept {
  return splitmix64(master_seed ^ splitmix64(frame_seed));
}

namespace {

class Sampler {
 public:
  Sampler(Rng& rng, const ParamRanges& ranges, AppliedTransform& log)
      : rng_(rng), ranges_(ranges), log_(log) {}

  double real(std::string_view name) {
    const ParamRange& r = ranges_.find(name)->second;
    return record(name, rng_.uniform(r.lo, r.hi));
  }

  std::int64_t integer(std::string_view name) {
    const ParamRange& r = ranges_.find(name)->second;
    return static_cast<std::int64_t>(record(
        name, static_cast<double>(rng_.uniform_int(std::llround(r.lo), std::llround(r.hi)))));
  }

  double record(std::string_view name, double value) {
    log_.params.emplace_back(std::string(name), value);
    return value;
  }

 private:
  Rng& rng_;
  const ParamRanges& ranges_;
  AppliedTransform& log_;
};

void brightness_contrast(ImageBuffer& img, Sampler& s) {
  const double beta = s.real("brightness");
  const double alpha = 1.0 + s.real("contrast");
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) lut[v] = saturate(alpha * v + beta * 255.0);
  for (std::uint8_t& px : img.data) px = lut[px];
}

void gaussian_blur(ImageBuffer& img, Sampler& s) {
  const double sigma = s.real("sigma");
  if (!(sigma > 0.0)) return;
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  const int w = img.width;
  const int h = img.height;
  std::vector<double> tmp(img.data.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int xx = std::clamp(x + i, 0, w - 1);
          acc += kernel[i + radius] * img.data[img.offset(xx, y) + c];
        }
        tmp[img.offset(x, y) + c] = acc;
      }
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int yy = std::clamp(y + i, 0, h - 1);
          acc += kernel[i + radius] * tmp[img.offset(x, yy) + c];
        }
        img.data[img.offset(x, y) + c] = saturate(acc);
      }
    }
  }
}

void gauss_noise(ImageBuffer& img, Sampler& s, Rng& rng) {
  const double sigma = s.real("sigma");
  for (std::uint8_t& px : img.data) px = saturate(px + sigma * rng.normal());
}

void rain(ImageBuffer& img, Sampler& s, Rng& rng) {
  const double slant = s.real("slant");
  const int length = std::clamp(static_cast<int>(std::lround(s.real("drop_length"))), 1,
                                std::max(1, img.height - 1));
  const double density = s.real("density");
  const double dim = s.real("brightness_coefficient");
  const std::uint8_t color = saturate(s.real("drop_color"));
  const auto drops = std::max<std::int64_t>(
      1, std::llround(density * static_cast<double>(img.width) * img.height));
  s.record("drops", static_cast<double>(drops));

  for (std::uint8_t& px : img.data) px = saturate(px * dim);
  for (std::int64_t d = 0; d < drops; ++d) {
    const auto x0 = rng.uniform_int(0, img.width - 1);
    const auto y0 = rng.uniform_int(0, std::max(0, img.height - 1 - length));
    for (int t = 0; t <= length; ++t) {
      const auto x = x0 + std::lround(slant * t / length);
      const auto y = y0 + t;
      if (x < 0 || x >= img.width || y >= img.height) continue;
      std::uint8_t* p = img.pixel(static_cast<int>(x), static_cast<int>(y));
      p[0] = p[1] = p[2] = color;
    }
  }
}

void fog(ImageBuffer& img, Sampler& s, Rng& rng) {
  const double coef = s.real("fog_coef");
  const double haze = s.real("haze_color");
  constexpr int kCells = 4;
  std::array<double, (kCells + 1) * (kCells + 1)> grid{};
  for (double& g : grid) g = rng.uniform();
  const double sx = img.width > 1 ? static_cast<double>(kCells) / (img.width - 1) : 0.0;
  const double sy = img.height > 1 ? static_cast<double>(kCells) / (img.height - 1) : 0.0;
  for (int y = 0; y < img.height; ++y) {
    const double gy = y * sy;
    const int iy = std::min(kCells - 1, static_cast<int>(gy));
    const double fy = gy - iy;
    for (int x = 0; x < img.width; ++x) {
      const double gx = x * sx;
      const int ix = std::min(kCells - 1, static_cast<int>(gx));
      const double fx = gx - ix;
      auto at = [&](int cx, int cy) { return grid[cy * (kCells + 1) + cx]; };
      const double field = (1 - fx) * (1 - fy) * at(ix, iy) + fx * (1 - fy) * at(ix + 1, iy) +
                           (1 - fx) * fy * at(ix, iy + 1) + fx * fy * at(ix + 1, iy + 1);
      const double alpha = coef * 0.6 * (0.5 + 0.5 * field);
      std::uint8_t* p = img.pixel(x, y);
      for (int c = 0; c < 3; ++c) p[c] = saturate(p[c] * (1.0 - alpha) + haze * alpha);
    }
  }
}

void snow(ImageBuffer& img, Sampler& s, Rng& rng) {
  const double density = s.real("density");
  const double flake_hi = s.real("flake_size");
  const auto flakes =
      std::llround(density * static_cast<double>(img.width) * static_cast<double>(img.height));
  s.record("flakes", static_cast<double>(flakes));
  const auto max_size = std::max<std::int64_t>(1, std::llround(flake_hi));
  for (std::int64_t f = 0; f < flakes; ++f) {
    const auto x0 = rng.uniform_int(0, img.width - 1);
    const auto y0 = rng.uniform_int(0, img.height - 1);
    const auto size_px = rng.uniform_int(1, max_size);
    for (std::int64_t y = y0; y < std::min<std::int64_t>(img.height, y0 + size_px); ++y) {
      for (std::int64_t x = x0; x < std::min<std::int64_t>(img.width, x0 + size_px); ++x) {
        std::uint8_t* p = img.pixel(static_cast<int>(x), static_cast<int>(y));
        p[0] = p[1] = p[2] = 255;
      }
    }
  }
}

void fill_rect(ImageBuffer& img, std::int64_t x0, std::int64_t y0, std::int64_t x1,
               std::int64_t y1, std::uint8_t value) {
  x0 = std::max<std::int64_t>(0, x0);
  y0 = std::max<std::int64_t>(0, y0);
  x1 = std::min<std::int64_t>(img.width, x1);
  y1 = std::min<std::int64_t>(img.height, y1);
  for (auto y = y0; y < y1; ++y) {
    for (auto x = x0; x < x1; ++x) {
      std::uint8_t* p = img.pixel(static_cast<int>(x), static_cast<int>(y));
      p[0] = p[1] = p[2] = value;
    }
  }
}

void coarse_dropout(ImageBuffer& img, Sampler& s, Rng& rng) {
  const auto holes = s.integer("holes");
  const std::uint8_t fill = saturate(s.real("fill"));
  const double h_frac = s.real("hole_height");
  const double w_frac = s.real("hole_width");
  const auto hh = std::clamp<std::int64_t>(std::llround(h_frac * img.height), 1, img.height);
  const auto ww = std::clamp<std::int64_t>(std::llround(w_frac * img.width), 1, img.width);
  for (std::int64_t i = 0; i < holes; ++i) {
    const auto y0 = rng.uniform_int(0, img.height - hh);
    const auto x0 = rng.uniform_int(0, img.width - ww);
    fill_rect(img, x0, y0, x0 + ww, y0 + hh, fill);
  }
}

void grid_dropout(ImageBuffer& img, Sampler& s, Rng& rng) {
  const double ratio = s.real("ratio");
  const double unit_frac = s.real("unit_size");
  const std::uint8_t fill = saturate(s.real("fill"));
  const auto unit = std::max<std::int64_t>(
      2, std::llround(unit_frac * std::min(img.width, img.height)));
  const auto hole = std::clamp<std::int64_t>(std::llround(ratio * unit), 1, unit - 1);
  const auto shift_x = rng.uniform_int(0, unit - 1);
  const auto shift_y = rng.uniform_int(0, unit - 1);
  s.record("unit", static_cast<double>(unit));
  s.record("shift_x", static_cast<double>(shift_x));
  s.record("shift_y", static_cast<double>(shift_y));
  for (auto y = shift_y - unit; y < img.height; y += unit) {
    for (auto x = shift_x - unit; x < img.width; x += unit) {
      fill_rect(img, x, y, x + hole, y + hole, fill);
    }
  }
}

void to_gray(ImageBuffer& img) {
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    const unsigned luma =
        (299u * img.data[i] + 587u * img.data[i + 1] + 114u * img.data[i + 2] + 500u) / 1000u;
    img.data[i] = img.data[i + 1] = img.data[i + 2] = static_cast<std::uint8_t>(luma);
  }
}

void channel_dropout(ImageBuffer& img, Sampler& s, Rng& rng) {
  const std::uint8_t fill = saturate(s.real("fill"));
  const auto channel = rng.uniform_int(0, 2);
  s.record("channel", static_cast<double>(channel));
  for (std::size_t i = static_cast<std::size_t>(channel); i < img.data.size(); i += 3) {
    img.data[i] = fill;
  }
}

void run_transform(ImageBuffer& img, const TransformSpec& t, Rng& rng, AppliedTransform& log) {
  Sampler s(rng, t.params, log);
  switch (t.kind) {
    case TransformKind::kBrightnessContrast:
      brightness_contrast(img, s);
      break;
    case TransformKind::kGaussianBlur:
      gaussian_blur(img, s);
      break;
    case TransformKind::kGaussNoise:
      gauss_noise(img, s, rng);
      break;
    case TransformKind::kRain:
      rain(img, s, rng);
      break;
    case TransformKind::kFog:
      fog(img, s, rng);
      break;
    case TransformKind::kSnow:
      snow(img, s, rng);
      break;
    case TransformKind::kCoarseDropout:
      coarse_dropout(img, s, rng);
      break;
    case TransformKind::kGridDropout:
      grid_dropout(img, s, rng);
      break;
    case TransformKind::kToGray:
      to_gray(img);
      break;
    case TransformKind::kChannelDropout:
      channel_dropout(img, s, rng);
      break;
  }
}

}  // namespace

AugmentResult apply_pipeline(const ImageBuffer& image, std::span<const Annotation> annotations,
                             const PipelineSpec& spec, std::uint64_t frame_seed) {
  if (image.empty()) throw ValidationError("cannot augment a zero-sized image");
  if (!image.valid()) {
    throw ValidationError("image buffer length does not match its dimensions");
  }
  validate_pipeline(spec);

  AugmentResult result{image, {annotations.begin(), annotations.end()}, {}};
  Rng rng(frame_rng_seed(spec.master_seed, frame_seed));
  for (const PipelineStep& step : spec.steps) {
    if (!rng.bernoulli(step.probability)) continue;
    std::size_t pick = 0;
    if (step.choices.size() > 1) {
      double total = 0.0;
      for (const TransformSpec& t : step.choices) total += t.weight;
      double u = rng.uniform() * total;
      pick = step.choices.size() - 1;
      for (std::size_t i = 0; i < step.choices.size(); ++i) {
        if (u < step.choices[i].weight) {
          pick = i;
          break;
        }
        u -= step.choices[i].weight;
      }
    }
    const TransformSpec& t = step.choices[pick];
    AppliedTransform entry{std::string(to_string(t.kind)), {}};
    run_transform(result.image, t, rng, entry);
    result.log.push_back(std::move(entry));
  }
  return result;
}

nlohmann::ordered_json to_json(std::span<const AppliedTransform> log) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const AppliedTransform& entry : log) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [name, value] : entry.params) params[name] = value;
    out.push_back({{"transform", entry.name}, {"params", std::move(params)}});
  }
  return out;
}

}  // namespace vrukit
