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

#include "streammap/oracle.h"

#include <algorithm>

#include "streammap/matching.h"
#include "streammap/streaming.h"

namespace streammap {

double ExactAveragePrecision(std::span<const ScoredVerdict> sorted_verdicts,
                             std::size_t gt_count,
                             std::span<const double> recall_thresholds) {
  std::vector<double> recalls;
  std::vector<double> precisions;
  recalls.reserve(sorted_verdicts.size());
  precisions.reserve(sorted_verdicts.size());
  std::uint64_t tp = 0;
  std::uint64_t seen = 0;
  for (const ScoredVerdict& v : sorted_verdicts) {
    ++seen;
    if (v.is_tp) ++tp;
    recalls.push_back(static_cast<double>(tp) / static_cast<double>(gt_count));
    precisions.push_back(static_cast<double>(tp) / static_cast<double>(seen));
  }
  return InterpolateAp(recalls, precisions, recall_thresholds);
}

MetricReport EvaluateExact(std::span<const ImageRecord> dataset,
                           const EvalConfig& config) {
  config.Validate();
  const std::size_t num_ious = config.iou_thresholds.size();
  const std::size_t num_classes = config.num_classes;
  const std::size_t num_areas = config.area_ranges.size();
  const std::size_t num_max_dets = config.max_dets_list.size();
  auto offset = [&](std::size_t t, std::size_t k, std::size_t a,
                    std::size_t m) {
    return ((t * num_classes + k) * num_areas + a) * num_max_dets + m;
  };

  std::vector<std::vector<ScoredVerdict>> verdicts(num_ious * num_classes *
                                                   num_areas * num_max_dets);
  std::vector<std::uint64_t> gt_counts(num_classes * num_areas, 0);
  for (const ImageRecord& image : dataset) {
    const MatchGrid grid =
        MatchImage(image.detections, image.ground_truths, config);
    for (std::size_t t = 0; t < num_ious; ++t) {
      for (std::size_t k = 0; k < num_classes; ++k) {
        for (std::size_t a = 0; a < num_areas; ++a) {
          for (std::size_t m = 0; m < num_max_dets; ++m) {
            auto& list = verdicts[offset(t, k, a, m)];
            for (const Verdict& v : grid.at(t, k, a, m).verdicts) {
              list.push_back({v.confidence, v.is_tp});
            }
          }
        }
      }
    }
    for (std::size_t k = 0; k < num_classes; ++k) {
      for (std::size_t a = 0; a < num_areas; ++a) {
        gt_counts[k * num_areas + a] += grid.at(0, k, a, 0).gt_count;
      }
    }
  }
  for (auto& list : verdicts) {
    std::stable_sort(list.begin(), list.end(),
                     [](const ScoredVerdict& x, const ScoredVerdict& y) {
                       return x.confidence > y.confidence;
                     });
  }

  CellSource source;
  source.gt_count = [&](std::size_t k, std::size_t a) {
    return gt_counts[k * num_areas + a];
  };
  source.tp_count = [&](std::size_t t, std::size_t k, std::size_t a,
                        std::size_t m) {
    const auto& list = verdicts[offset(t, k, a, m)];
    return static_cast<std::uint64_t>(
        std::count_if(list.begin(), list.end(),
                      [](const ScoredVerdict& v) { return v.is_tp; }));
  };
  source.average_precision = [&](std::size_t t, std::size_t k, std::size_t a,
                                 std::size_t m) {
    return ExactAveragePrecision(verdicts[offset(t, k, a, m)],
                                 gt_counts[k * num_areas + a],
                                 config.recall_thresholds);
  };
  return Summarize(config, source);
}

}  // namespace streammap
