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

#include "streammap/config.h"

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "streammap/errors.h"

namespace streammap {

namespace {

constexpr double kThresholdMatchTolerance = 1e-9;

template <typename T>
bool StrictlyIncreasing(const std::vector<T>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double ParseDouble(std::string_view token, std::string_view what) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw ConfigError("cannot parse " + std::string(what) + " '" +
                      std::string(token) + "'");
  }
  return value;
}

int ParseInt(std::string_view token, std::string_view what) {
  int value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw ConfigError("cannot parse " + std::string(what) + " '" +
                      std::string(token) + "'");
  }
  return value;
}

}  // namespace

void EvalConfig::Validate() const {
  if (iou_thresholds.empty()) {
    throw ConfigError("IoU threshold list is empty");
  }
  for (double t : iou_thresholds) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw ConfigError("IoU threshold " + std::to_string(t) +
                        " outside (0, 1]");
    }
  }
  if (!StrictlyIncreasing(iou_thresholds)) {
    throw ConfigError("IoU thresholds must be strictly increasing");
  }
  if (recall_thresholds.empty()) {
    throw ConfigError("recall threshold list is empty");
  }
  for (double r : recall_thresholds) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw ConfigError("recall threshold " + std::to_string(r) +
                        " outside [0, 1]");
    }
  }
  if (!StrictlyIncreasing(recall_thresholds)) {
    throw ConfigError("recall thresholds must be strictly increasing");
  }
  if (buckets < 1) {
    throw ConfigError("bucket count must be >= 1, got " +
                      std::to_string(buckets));
  }
  if (area_ranges.empty()) {
    throw ConfigError("area range list is empty");
  }
  for (std::size_t i = 0; i < area_ranges.size(); ++i) {
    const auto& [name, range] = area_ranges[i];
    if (name.empty()) throw ConfigError("area range with empty name");
    if (!(range.min_area >= 0.0) || !(range.max_area > range.min_area)) {
      throw ConfigError("area range '" + name +
                        "' needs 0 <= min_area < max_area");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (area_ranges[j].name == name) {
        throw ConfigError("duplicate area range '" + name + "'");
      }
    }
  }
  if (max_dets_list.empty()) {
    throw ConfigError("max-detections list is empty");
  }
  for (int m : max_dets_list) {
    if (m < 1) throw ConfigError("max-detections values must be positive");
  }
  if (!StrictlyIncreasing(max_dets_list)) {
    throw ConfigError("max-detections list must be strictly increasing");
  }
  if (num_classes < 1) {
    throw ConfigError("num_classes must be >= 1, got " +
                      std::to_string(num_classes));
  }
}

std::optional<std::size_t> EvalConfig::FindIouThreshold(double theta) const {
  for (std::size_t i = 0; i < iou_thresholds.size(); ++i) {
    if (std::abs(iou_thresholds[i] - theta) < kThresholdMatchTolerance) {
      return i;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> EvalConfig::FindAreaRange(
    std::string_view name) const {
  for (std::size_t i = 0; i < area_ranges.size(); ++i) {
    if (area_ranges[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<double> DefaultIouThresholds() {
  std::vector<double> t;
  for (int k = 50; k <= 95; k += 5) t.push_back(k / 100.0);
  return t;
}

std::vector<double> DefaultRecallThresholds() {
  std::vector<double> r;
  for (int k = 0; k <= 100; ++k) r.push_back(k / 100.0);
  return r;
}

std::vector<NamedAreaRange> DefaultAreaRanges() {
  return {
      {"all", {0.0, kUnboundedArea}},
      {"small", {0.0, 32.0 * 32.0}},
      {"medium", {32.0 * 32.0, 96.0 * 96.0}},
      {"large", {96.0 * 96.0, kUnboundedArea}},
  };
}

std::vector<int> DefaultMaxDets() { return {1, 10, 100}; }

EvalConfig DefaultConfig(int num_classes) {
  EvalConfig config;
  config.iou_thresholds = DefaultIouThresholds();
  config.recall_thresholds = DefaultRecallThresholds();
  config.buckets = kDefaultBuckets;
  config.area_ranges = DefaultAreaRanges();
  config.max_dets_list = DefaultMaxDets();
  config.num_classes = num_classes;
  return config;
}

std::vector<double> ParseThresholdList(std::string_view text) {
  std::vector<double> values;
  for (std::string_view token : Split(text, ',')) {
    values.push_back(ParseDouble(token, "threshold"));
  }
  return values;
}

std::vector<NamedAreaRange> ParseAreaRanges(std::string_view text) {
  std::vector<NamedAreaRange> ranges;
  for (std::string_view item : Split(text, ',')) {
    const std::size_t eq = item.find('=');
    const std::size_t colon = item.find(':', eq == item.npos ? 0 : eq);
    if (eq == item.npos || colon == item.npos) {
      throw ConfigError("area range '" + std::string(item) +
                        "' is not of the form name=min:max");
    }
    NamedAreaRange r;
    r.name = std::string(Trim(item.substr(0, eq)));
    r.range.min_area =
        ParseDouble(Trim(item.substr(eq + 1, colon - eq - 1)), "area bound");
    r.range.max_area = ParseDouble(Trim(item.substr(colon + 1)), "area bound");
    ranges.push_back(std::move(r));
  }
  return ranges;
}

std::vector<int> ParseMaxDets(std::string_view text) {
  std::vector<int> values;
  for (std::string_view token : Split(text, ',')) {
    values.push_back(ParseInt(token, "max-detections value"));
  }
  return values;
}

}  // namespace streammap
