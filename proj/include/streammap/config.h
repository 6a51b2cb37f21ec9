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

#ifndef STREAMMAP_CONFIG_H_
#define STREAMMAP_CONFIG_H_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace streammap {

inline constexpr double kUnboundedArea = std::numeric_limits<double>::infinity();

// Half-open interval [min_area, max_area) of box areas in pixels^2.
struct AreaRange {
  double min_area = 0.0;
  double max_area = kUnboundedArea;

  bool Contains(double area) const {
    return area >= min_area && area < max_area;
  }

  friend bool operator==(const AreaRange&, const AreaRange&) = default;
};

struct NamedAreaRange {
  std::string name;
  AreaRange range;

  friend bool operator==(const NamedAreaRange&,
                         const NamedAreaRange&) = default;
};

inline constexpr int kDefaultBuckets = 10000;

// Parameter grid of an evaluation. Every field participates in state
// shape, so two states can only be merged when their configs are equal.
struct EvalConfig {
  std::vector<double> iou_thresholds;     // strictly increasing, in (0, 1]
  std::vector<double> recall_thresholds;  // strictly increasing, in [0, 1]
  int buckets = kDefaultBuckets;
  std::vector<NamedAreaRange> area_ranges;
  std::vector<int> max_dets_list;  // strictly increasing, positive
  int num_classes = 1;

  // Throws ConfigError describing the first violated invariant.
  void Validate() const;

  std::optional<std::size_t> FindIouThreshold(double theta) const;
  std::optional<std::size_t> FindAreaRange(std::string_view name) const;

  std::size_t max_dets_limit() const {
    return max_dets_list.empty() ? 0 : max_dets_list.back();
  }

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

// {0.50, 0.55, ..., 0.95}, each the nearest double to k / 100.
std::vector<double> DefaultIouThresholds();
// {0.00, 0.01, ..., 1.00}.
std::vector<double> DefaultRecallThresholds();
// all=[0, inf), small=[0, 32^2), medium=[32^2, 96^2), large=[96^2, inf).
std::vector<NamedAreaRange> DefaultAreaRanges();
std::vector<int> DefaultMaxDets();

EvalConfig DefaultConfig(int num_classes = 1);

// Parsers for the command-line override syntax.
//   "0.5,0.75"                      -> thresholds
//   "all=0:inf,small=0:1024"        -> area ranges
//   "1,10,100"                      -> max dets
// All throw ConfigError on malformed text.
std::vector<double> ParseThresholdList(std::string_view text);
std::vector<NamedAreaRange> ParseAreaRanges(std::string_view text);
std::vector<int> ParseMaxDets(std::string_view text);

}  // namespace streammap

#endif  // STREAMMAP_CONFIG_H_
