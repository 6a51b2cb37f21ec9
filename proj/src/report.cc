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

#include "streammap/report.h"

#include <cstdio>
#include <optional>
#include <vector>

#include "json.hpp"

namespace streammap {

namespace {

using Indices = std::vector<std::size_t>;

double AverageMap(const EvalConfig& config, const CellSource& source,
                  const Indices& ious, std::optional<std::size_t> area,
                  std::optional<std::size_t> max_dets) {
  if (ious.empty() || !area || !max_dets) return kUndefinedMetric;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t cls = 0; cls < static_cast<std::size_t>(config.num_classes);
       ++cls) {
    if (source.gt_count(cls, *area) == 0) continue;
    for (std::size_t t : ious) {
      sum += source.average_precision(t, cls, *area, *max_dets);
      ++count;
    }
  }
  return count == 0 ? kUndefinedMetric : sum / static_cast<double>(count);
}

double AverageRecall(const EvalConfig& config, const CellSource& source,
                     const Indices& ious, std::optional<std::size_t> area,
                     std::optional<std::size_t> max_dets) {
  if (ious.empty() || !area || !max_dets) return kUndefinedMetric;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t cls = 0; cls < static_cast<std::size_t>(config.num_classes);
       ++cls) {
    const std::uint64_t gts = source.gt_count(cls, *area);
    if (gts == 0) continue;
    for (std::size_t t : ious) {
      sum += static_cast<double>(source.tp_count(t, cls, *area, *max_dets)) /
             static_cast<double>(gts);
      ++count;
    }
  }
  return count == 0 ? kUndefinedMetric : sum / static_cast<double>(count);
}

std::string FormatValue(double v, const char* format) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

MetricReport Summarize(const EvalConfig& config, const CellSource& source) {
  Indices all_ious(config.iou_thresholds.size());
  for (std::size_t i = 0; i < all_ious.size(); ++i) all_ious[i] = i;
  auto single_iou = [&](double theta) {
    const auto i = config.FindIouThreshold(theta);
    return i ? Indices{*i} : Indices{};
  };
  auto max_dets_at = [&](std::size_t position) -> std::optional<std::size_t> {
    if (position < config.max_dets_list.size()) return position;
    return std::nullopt;
  };
  const auto widest = max_dets_at(config.max_dets_list.size() - 1);
  const auto all = config.FindAreaRange("all");
  const auto small = config.FindAreaRange("small");
  const auto medium = config.FindAreaRange("medium");
  const auto large = config.FindAreaRange("large");

  MetricReport r;
  r[Metric::kMapStandard] = AverageMap(config, source, all_ious, all, widest);
  r[Metric::kMap50] = AverageMap(config, source, single_iou(0.5), all, widest);
  r[Metric::kMap75] =
      AverageMap(config, source, single_iou(0.75), all, widest);
  r[Metric::kMapSmall] = AverageMap(config, source, all_ious, small, widest);
  r[Metric::kMapMedium] = AverageMap(config, source, all_ious, medium, widest);
  r[Metric::kMapLarge] = AverageMap(config, source, all_ious, large, widest);
  r[Metric::kRecallMaxDets1] =
      AverageRecall(config, source, all_ious, all, max_dets_at(0));
  r[Metric::kRecallMaxDets10] =
      AverageRecall(config, source, all_ious, all, max_dets_at(1));
  r[Metric::kRecallMaxDets100] =
      AverageRecall(config, source, all_ious, all, max_dets_at(2));
  r[Metric::kRecallSmall] =
      AverageRecall(config, source, all_ious, small, widest);
  r[Metric::kRecallMedium] =
      AverageRecall(config, source, all_ious, medium, widest);
  r[Metric::kRecallLarge] =
      AverageRecall(config, source, all_ious, large, widest);
  return r;
}

std::string FormatReportTable(const MetricReport& report) {
  std::string out;
  char line[96];
  std::snprintf(line, sizeof(line), "%-24s %10s\n", "Metric", "Value");
  out += line;
  for (const MetricInfo& info : kMetrics) {
    std::snprintf(line, sizeof(line), "%-24.*s %10s\n",
                  static_cast<int>(info.label.size()), info.label.data(),
                  FormatValue(report[info.metric], "%.6f").c_str());
    out += line;
  }
  return out;
}

std::string FormatReportJson(const MetricReport& report) {
  nlohmann::ordered_json doc;
  for (const MetricInfo& info : kMetrics) {
    doc[std::string(info.key)] = report[info.metric];
  }
  return doc.dump(2) + "\n";
}

std::string FormatReportCsv(const MetricReport& report) {
  std::string out = "metric,label,value\n";
  for (const MetricInfo& info : kMetrics) {
    out += std::string(info.key) + "," + std::string(info.label) + "," +
           FormatValue(report[info.metric], "%.17g") + "\n";
  }
  return out;
}

}  // namespace streammap
