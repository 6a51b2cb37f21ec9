// Copyright 2026 The Streammap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streammap/state_io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "streammap/errors.h"

namespace streammap {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kStateFormat = "streammap-state";
constexpr int kStateVersion = 1;

Json ConfigToJson(const EvalConfig& config) {
  Json areas = Json::array();
  for (const auto& [name, range] : config.area_ranges) {
    // JSON has no infinity; null marks an unbounded upper end.
    Json max_area = std::isinf(range.max_area) ? Json(nullptr)
                                               : Json(range.max_area);
    areas.push_back(
        {{"name", name}, {"min_area", range.min_area}, {"max_area", max_area}});
  }
  Json j;
  j["iou_thresholds"] = config.iou_thresholds;
  j["recall_thresholds"] = config.recall_thresholds;
  j["buckets"] = config.buckets;
  j["area_ranges"] = std::move(areas);
  j["max_dets"] = config.max_dets_list;
  j["num_classes"] = config.num_classes;
  return j;
}

EvalConfig ConfigFromJson(const Json& j) {
  EvalConfig config;
  config.iou_thresholds = j.at("iou_thresholds").get<std::vector<double>>();
  config.recall_thresholds =
      j.at("recall_thresholds").get<std::vector<double>>();
  config.buckets = j.at("buckets").get<int>();
  config.area_ranges.clear();
  for (const Json& a : j.at("area_ranges")) {
    NamedAreaRange r;
    r.name = a.at("name").get<std::string>();
    r.range.min_area = a.at("min_area").get<double>();
    const Json& max_area = a.at("max_area");
    r.range.max_area =
        max_area.is_null() ? kUnboundedArea : max_area.get<double>();
    config.area_ranges.push_back(std::move(r));
  }
  config.max_dets_list = j.at("max_dets").get<std::vector<int>>();
  config.num_classes = j.at("num_classes").get<int>();
  config.Validate();
  return config;
}

}  // namespace

std::string SerializeState(const BucketedState& state) {
  Json doc;
  doc["format"] = kStateFormat;
  doc["version"] = kStateVersion;
  doc["config"] = ConfigToJson(state.config());
  Json gts = Json::array();
  for (std::size_t k = 0; k < state.num_classes(); ++k) {
    for (std::size_t a = 0; a < state.num_areas(); ++a) {
      if (const auto n = state.gt_count(k, a); n != 0) {
        gts.push_back({k, a, n});
      }
    }
  }
  doc["gt_counts"] = std::move(gts);
  Json cells = Json::array();
  for (std::size_t t = 0; t < state.num_ious(); ++t) {
    for (std::size_t k = 0; k < state.num_classes(); ++k) {
      for (std::size_t a = 0; a < state.num_areas(); ++a) {
        for (std::size_t m = 0; m < state.num_max_dets(); ++m) {
          const auto counts = state.cell_counts(t, k, a, m);
          for (std::size_t b = 0; 2 * b < counts.size(); ++b) {
            const std::uint64_t tp = counts[2 * b];
            const std::uint64_t fp = counts[2 * b + 1];
            if (tp == 0 && fp == 0) continue;
            cells.push_back({t, k, a, m, b, tp, fp});
          }
        }
      }
    }
  }
  doc["cells"] = std::move(cells);
  return doc.dump() + "\n";
}

BucketedState DeserializeState(std::string_view text,
                               std::string_view source) {
  const std::string where(source);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kStateFormat) {
      throw ParseError(where + ": not a streammap state snapshot");
    }
    if (doc.at("version").get<int>() != kStateVersion) {
      throw ParseError(where + ": unsupported state version " +
                       doc.at("version").dump());
    }
    BucketedState state(ConfigFromJson(doc.at("config")));
    for (const Json& g : doc.at("gt_counts")) {
      const auto k = g.at(0).get<std::size_t>();
      const auto a = g.at(1).get<std::size_t>();
      if (k >= state.num_classes() || a >= state.num_areas()) {
        throw ValidationError(where + ": gt_counts entry " + g.dump() +
                              " out of range");
      }
      state.AddGroundTruth(k, a, g.at(2).get<std::uint64_t>());
    }
    for (const Json& c : doc.at("cells")) {
      const auto t = c.at(0).get<std::size_t>();
      const auto k = c.at(1).get<std::size_t>();
      const auto a = c.at(2).get<std::size_t>();
      const auto m = c.at(3).get<std::size_t>();
      const auto b = c.at(4).get<std::size_t>();
      if (t >= state.num_ious() || k >= state.num_classes() ||
          a >= state.num_areas() || m >= state.num_max_dets() ||
          b >= state.num_buckets()) {
        throw ValidationError(where + ": cells entry " + c.dump() +
                              " out of range");
      }
      state.AddCounts(t, k, a, m, b, c.at(5).get<std::uint64_t>(),
                      c.at(6).get<std::uint64_t>());
    }
    return state;
  } catch (const Json::exception& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

void SaveState(const BucketedState& state, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << SerializeState(state);
  if (!out) throw Error("failed writing " + path.string());
}

BucketedState LoadState(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return DeserializeState(buffer.str(), path.string());
}

}  // namespace streammap
