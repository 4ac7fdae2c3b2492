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

#include <iostream>
#include <map>
#include <memory>

#include "common.hpp"
#include "vrukit/dataset_tree.hpp"
#include "vrukit/error.hpp"
#include "vrukit/stats.hpp"
#include "vrukit/text.hpp"

namespace vrukit::cli {

namespace fs = std::filesystem;

namespace {

using HistogramKey = std::pair<Modality, Split>;

std::string column_name(const HistogramKey& key) {
  std::string m = key.first == Modality::kRgb ? "RGB" : "Thermal";
  std::string s(to_string(key.second));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return m + " " + s;
}

struct StatsArgs {
  std::vector<fs::path> datasets;
  std::vector<std::string> splits;
  fs::path out;
  std::optional<fs::path> csv;
};

int run_stats(const StatsArgs& a) {
  for (const fs::path& d : a.datasets) require_dir(d, "dataset");
  std::vector<Split> wanted;
  for (const std::string& s : a.splits) wanted.push_back(parse_split(s));

  std::map<HistogramKey, ClassHistogram> histograms;
  std::vector<DatasetIndex> indexes;
  for (const fs::path& d : a.datasets) {
    const TreeInfo info = read_tree_info(d);
    for (Split split : tree_splits(d)) {
      if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), split) == wanted.end()) {
        continue;
      }
      indexes.push_back(scan_tree_split(d, split, info.modality));
      const ClassHistogram h = tree_histogram(d, split);
      const HistogramKey key{info.modality, split};
      if (auto it = histograms.find(key); it != histograms.end()) {
        it->second += h;
      } else {
        histograms.emplace(key, h);
      }
    }
  }
  if (histograms.empty()) throw ValidationError("no matching splits in the given datasets");

  const SummaryTable summary = dataset_summary(indexes);
  nlohmann::ordered_json doc;
  doc["histograms"] = nlohmann::ordered_json::array();
  for (const auto& [key, h] : histograms) doc["histograms"].push_back(to_json(h));
  doc["summary"] = to_json(summary);
  write_json(a.out, doc);
  if (a.csv) write_text_file(*a.csv, summary.to_csv());

  // Class x (modality, split) table; class sets of merged trees agree.
  const std::vector<std::string>& names = histograms.begin()->second.class_names;
  std::vector<std::vector<std::string>> cells = {{"Class"}};
  for (const auto& [key, h] : histograms) cells[0].push_back(column_name(key));
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<std::string> row = {names[i]};
    for (const auto& [key, h] : histograms) {
      row.push_back(i < h.counts.size() ? std::to_string(h.counts[i]) : "-");
    }
    cells.push_back(std::move(row));
  }
  std::vector<std::string> dont_care = {"Don't care"};
  for (const auto& [key, h] : histograms) dont_care.push_back(std::to_string(h.dont_care));
  cells.push_back(std::move(dont_care));
  std::cout << render_table(cells) << "\n" << summary.to_text();
  return 0;
}

struct WeightsArgs {
  std::optional<fs::path> stats;
  std::optional<fs::path> dataset;
  std::string split = "train";
  std::optional<std::string> modality;
  std::string scheme = "inverse_freq";
  double cap = kDefaultWeightCap;
  std::uint64_t floor = kDefaultCountFloor;
  fs::path out;
};

ClassHistogram histogram_for(const WeightsArgs& a) {
  const Split split = parse_split(a.split);
  std::optional<Modality> modality;
  if (a.modality) modality = parse_modality(*a.modality);
  if (a.dataset) {
    require_dir(*a.dataset, "dataset");
    const ClassHistogram h = tree_histogram(*a.dataset, split);
    if (modality && h.modality != *modality) {
      throw ConfigError("dataset holds " + std::string(to_string(h.modality)) + " data");
    }
    return h;
  }
  require_file(*a.stats, "stats");
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(read_text_file(*a.stats));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("stats file: " + std::string(e.what()));
  }
  if (!doc.contains("histograms") || !doc["histograms"].is_array()) {
    throw ValidationError("stats file has no 'histograms' array");
  }
  std::vector<ClassHistogram> matches;
  for (const auto& h : doc["histograms"]) {
    ClassHistogram parsed = histogram_from_json(h.dump());
    if (parsed.split == split && (!modality || parsed.modality == *modality)) {
      matches.push_back(std::move(parsed));
    }
  }
  if (matches.empty()) throw ConfigError("stats file has no histogram for split '" + a.split + "'");
  if (matches.size() > 1) throw ConfigError("several modalities match; pass --modality");
  return matches.front();
}

int run_weights(const WeightsArgs& a) {
  const ClassHistogram h = histogram_for(a);
  const ClassWeights w = compute_class_weights(h, parse_weight_scheme(a.scheme), a.cap, a.floor);
  write_json(a.out, to_json(w));
  std::cout << weights_to_text(w);
  return 0;
}

struct ManifestArgs {
  ExperimentConfig config;
  fs::path out;
};

int run_manifest(const ManifestArgs& a) {
  if (a.config.weights_file) require_file(*a.config.weights_file, "weights file");
  const std::string text = emit_experiment_manifest(a.config);
  write_text_file(a.out, text);
  const auto doc = nlohmann::ordered_json::parse(text);
  std::vector<std::vector<std::string>> cells = {{"Parameter", "Value"}};
  for (const auto& [key, value] : doc.items()) {
    cells.push_back({key, value.is_string() ? value.get<std::string>() : value.dump()});
  }
  std::cout << render_table(cells);
  return 0;
}

}  // namespace

Command add_stats(CLI::App& root) {
  auto args = std::make_shared<StatsArgs>();
  CLI::App* app = root.add_subcommand(
      "stats", "Per-class instance counts and image/label totals of converted trees");
  app->add_option("--dataset", args->datasets,
                  "Converted tree; repeat to combine trees (same class list)")
      ->required();
  app->add_option("--split", args->splits, "Only these splits (default: all present)");
  app->add_option("--out", args->out, "JSON output path")->required();
  app->add_option("--csv", args->csv, "Also write the image/label summary as CSV");
  return {app, [args] { return run_stats(*args); }};
}

Command add_weights(CLI::App& root) {
  auto args = std::make_shared<WeightsArgs>();
  CLI::App* app =
      root.add_subcommand("weights", "Class loss weights from instance counts");
  auto* stats = app->add_option("--stats", args->stats, "JSON written by 'vrukit stats'");
  auto* dataset = app->add_option("--dataset", args->dataset, "Converted tree to count directly");
  stats->excludes(dataset);
  dataset->excludes(stats);
  app->add_option("--split", args->split, "Split to weight")->capture_default_str();
  app->add_option("--modality", args->modality, "rgb or thermal, when --stats holds both");
  app->add_option("--scheme", args->scheme, "inverse_freq, inverse_sqrt or uniform")
      ->capture_default_str();
  app->add_option("--cap", args->cap, "Upper bound on any weight")->capture_default_str();
  app->add_option("--floor", args->floor, "Count floor for rare classes")->capture_default_str();
  app->add_option("--out", args->out, "Weights JSON {class: weight}")->required();
  app->callback([app] {
    if (app->count("--stats") + app->count("--dataset") == 0) {
      throw CLI::RequiredError("--stats or --dataset");
    }
  });
  return {app, [args] { return run_weights(*args); }};
}

Command add_manifest(CLI::App& root) {
  auto args = std::make_shared<ManifestArgs>();
  ExperimentConfig& c = args->config;
  CLI::App* app = root.add_subcommand(
      "manifest", "Training experiment manifest for an external YOLO trainer");
  app->add_option("--resolution", c.resolution, "Input resolution")->capture_default_str();
  app->add_option("--freeze", c.freeze_layers, "Frozen backbone layers, 0-10")
      ->capture_default_str();
  app->add_option("--batch", c.batch, "Batch size")->capture_default_str();
  app->add_option("--epochs", c.epochs, "Epochs")->capture_default_str();
  app->add_option("--patience", c.patience, "Early-stopping patience")->capture_default_str();
  app->add_option("--filter", c.class_filter, "FULL, SEVEN_CLASS, FOUR_CLASS or CUSTOM")
      ->capture_default_str();
  app->add_option("--weights", c.weights_file, "Class weights file from 'vrukit weights'");
  app->add_option("--augment", c.augmentation_level, "none, light, heavy or custom")
      ->capture_default_str();
  app->add_option("--out", args->out, "Manifest JSON path")->required();
  return {app, [args] { return run_manifest(*args); }};
}

}  // namespace vrukit::cli
