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

#ifndef STREAMMAP_REPORT_H_
#define STREAMMAP_REPORT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "streammap/config.h"

namespace streammap {

// Value reported for a metric with no ground truth to average over.
inline constexpr double kUndefinedMetric = -1.0;

enum class Metric : std::size_t {
  kMapStandard,
  kMap50,
  kMap75,
  kMapSmall,
  kMapMedium,
  kMapLarge,
  kRecallMaxDets1,
  kRecallMaxDets10,
  kRecallMaxDets100,
  kRecallSmall,
  kRecallMedium,
  kRecallLarge,
};

inline constexpr std::size_t kNumMetrics = 12;

struct MetricInfo {
  Metric metric;
  std::string_view key;    // machine name, used in JSON and CSV
  std::string_view label;  // human-readable row title
  bool is_map;
};

inline constexpr std::array<MetricInfo, kNumMetrics> kMetrics = {{
    {Metric::kMapStandard, "map_standard", "Standard MaP", true},
    {Metric::kMap50, "map_50", "MaP IoU=0.5", true},
    {Metric::kMap75, "map_75", "MaP IoU=0.75", true},
    {Metric::kMapSmall, "map_small", "MaP Small Objects", true},
    {Metric::kMapMedium, "map_medium", "MaP Medium Objects", true},
    {Metric::kMapLarge, "map_large", "MaP Large Objects", true},
    {Metric::kRecallMaxDets1, "recall_maxdets_1", "Recall 1 Detection", false},
    {Metric::kRecallMaxDets10, "recall_maxdets_10", "Recall 10 Detections",
     false},
    {Metric::kRecallMaxDets100, "recall_maxdets_100", "Standard Recall", false},
    {Metric::kRecallSmall, "recall_small", "Recall Small Objects", false},
    {Metric::kRecallMedium, "recall_medium", "Recall Medium Objects", false},
    {Metric::kRecallLarge, "recall_large", "Recall Large Objects", false},
}};

// The twelve standard scalar metrics. Each is in [0, 1] or
// kUndefinedMetric.
struct MetricReport {
  std::array<double, kNumMetrics> values;

  MetricReport() { values.fill(kUndefinedMetric); }

  double operator[](Metric m) const {
    return values[static_cast<std::size_t>(m)];
  }
  double& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }

  double map_standard() const { return (*this)[Metric::kMapStandard]; }
  double map_50() const { return (*this)[Metric::kMap50]; }
  double map_75() const { return (*this)[Metric::kMap75]; }
  double map_small() const { return (*this)[Metric::kMapSmall]; }
  double map_medium() const { return (*this)[Metric::kMapMedium]; }
  double map_large() const { return (*this)[Metric::kMapLarge]; }
  double recall_maxdets_1() const { return (*this)[Metric::kRecallMaxDets1]; }
  double recall_maxdets_10() const {
    return (*this)[Metric::kRecallMaxDets10];
  }
  double recall_maxdets_100() const {
    return (*this)[Metric::kRecallMaxDets100];
  }
  double recall_small() const { return (*this)[Metric::kRecallSmall]; }
  double recall_medium() const { return (*this)[Metric::kRecallMedium]; }
  double recall_large() const { return (*this)[Metric::kRecallLarge]; }

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Per-cell quantities an evaluator must provide so that the final
// averaging is shared between the streaming and the exact paths.
struct CellSource {
  // Ground truths of class `cls` inside area range `area`.
  std::function<std::uint64_t(std::size_t cls, std::size_t area)> gt_count;
  // Average precision of a cell; only queried when gt_count > 0.
  std::function<double(std::size_t iou, std::size_t cls, std::size_t area,
                       std::size_t max_dets)>
      average_precision;
  // True positives of a cell summed over the dataset.
  std::function<std::uint64_t(std::size_t iou, std::size_t cls,
                              std::size_t area, std::size_t max_dets)>
      tp_count;
};

// Averages cells into the twelve metrics. MaP rows use the largest
// max-dets entry; recall rows 1/10/100 use max_dets_list[0..2]. Area
// rows look up ranges named "all", "small", "medium" and "large"; IoU
// rows look up thresholds 0.5 and 0.75. A row whose cell is missing from
// the config, or that has no class with ground truth, is undefined.
MetricReport Summarize(const EvalConfig& config, const CellSource& source);

// Output formats shared by the CLI and the Python bindings.
std::string FormatReportTable(const MetricReport& report);
std::string FormatReportJson(const MetricReport& report);
std::string FormatReportCsv(const MetricReport& report);

}  // namespace streammap

#endif  // STREAMMAP_REPORT_H_
