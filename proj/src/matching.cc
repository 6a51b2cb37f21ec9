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

#include "streammap/matching.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "streammap/errors.h"

namespace streammap {

namespace {

void CheckTheta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw ConfigError("IoU threshold " + std::to_string(theta) +
                      " outside (0, 1]");
  }
}

// Indices of the detections inside `area`, stably sorted by descending
// confidence and cut to `limit`.
std::vector<std::size_t> RankDetections(std::span<const Detection> dets,
                                        std::span<const std::size_t> subset,
                                        const AreaRange& area,
                                        std::size_t limit) {
  std::vector<std::size_t> ranked;
  ranked.reserve(subset.size());
  for (std::size_t i : subset) {
    if (area.Contains(BoxArea(dets[i].box))) ranked.push_back(i);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].confidence > dets[b].confidence;
                   });
  if (ranked.size() > limit) ranked.resize(limit);
  return ranked;
}

std::vector<std::size_t> FilterGroundTruths(std::span<const GroundTruth> gts,
                                            std::span<const std::size_t> subset,
                                            const AreaRange& area) {
  std::vector<std::size_t> kept;
  kept.reserve(subset.size());
  for (std::size_t i : subset) {
    if (area.Contains(BoxArea(gts[i].box))) kept.push_back(i);
  }
  return kept;
}

// Row-major IoU matrix between ranked detections and kept ground truths.
std::vector<double> IouMatrix(std::span<const Detection> dets,
                              std::span<const std::size_t> ranked,
                              std::span<const GroundTruth> gts,
                              std::span<const std::size_t> kept) {
  std::vector<double> ious(ranked.size() * kept.size());
  for (std::size_t d = 0; d < ranked.size(); ++d) {
    for (std::size_t g = 0; g < kept.size(); ++g) {
      ious[d * kept.size() + g] = Iou(dets[ranked[d]].box, gts[kept[g]].box);
    }
  }
  return ious;
}

// Greedy pass over ranked detections. Ground truths are visited in input
// order, so the strict '>' keeps the lowest index on IoU ties.
std::vector<Verdict> GreedyMatch(std::span<const Detection> dets,
                                 std::span<const std::size_t> ranked,
                                 std::size_t num_gts,
                                 std::span<const double> ious, double theta) {
  std::vector<Verdict> verdicts;
  verdicts.reserve(ranked.size());
  std::vector<bool> taken(num_gts, false);
  for (std::size_t d = 0; d < ranked.size(); ++d) {
    std::size_t best = num_gts;
    double best_iou = -1.0;
    for (std::size_t g = 0; g < num_gts; ++g) {
      if (taken[g]) continue;
      const double iou = ious[d * num_gts + g];
      if (iou >= theta && iou > best_iou) {
        best = g;
        best_iou = iou;
      }
    }
    const bool is_tp = best != num_gts;
    if (is_tp) taken[best] = true;
    verdicts.push_back({dets[ranked[d]].confidence, is_tp});
  }
  return verdicts;
}

}  // namespace

std::size_t MatchResult::tp_count() const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(),
                    [](const Verdict& v) { return v.is_tp; }));
}

MatchResult MatchImageClass(std::span<const Detection> detections,
                            std::span<const GroundTruth> ground_truths,
                            double theta, int max_dets,
                            const AreaRange& area) {
  CheckTheta(theta);
  if (max_dets < 1) {
    throw ConfigError("max_dets must be positive, got " +
                      std::to_string(max_dets));
  }
  int class_id = kPaddingClass;
  auto check_class = [&class_id](int c) {
    if (c == kPaddingClass) {
      throw ContractError("padding entry passed to MatchImageClass");
    }
    if (class_id == kPaddingClass) {
      class_id = c;
    } else if (c != class_id) {
      throw ContractError("MatchImageClass needs a single class, got " +
                          std::to_string(class_id) + " and " +
                          std::to_string(c));
    }
  };
  for (const Detection& d : detections) check_class(d.class_id);
  for (const GroundTruth& g : ground_truths) check_class(g.class_id);

  std::vector<std::size_t> all_dets(detections.size());
  std::iota(all_dets.begin(), all_dets.end(), 0);
  std::vector<std::size_t> all_gts(ground_truths.size());
  std::iota(all_gts.begin(), all_gts.end(), 0);

  const auto ranked = RankDetections(detections, all_dets, area,
                                     static_cast<std::size_t>(max_dets));
  const auto kept = FilterGroundTruths(ground_truths, all_gts, area);
  const auto ious = IouMatrix(detections, ranked, ground_truths, kept);

  MatchResult result;
  result.verdicts =
      GreedyMatch(detections, ranked, kept.size(), ious, theta);
  result.gt_count = kept.size();
  return result;
}

MatchGrid::MatchGrid(std::size_t num_ious, std::size_t num_classes,
                     std::size_t num_areas, std::size_t num_max_dets)
    : num_ious_(num_ious),
      num_classes_(num_classes),
      num_areas_(num_areas),
      num_max_dets_(num_max_dets),
      cells_(num_ious * num_classes * num_areas * num_max_dets) {}

MatchGrid MatchImage(std::span<const Detection> detections,
                     std::span<const GroundTruth> ground_truths,
                     const EvalConfig& config) {
  config.Validate();
  const std::size_t num_classes = config.num_classes;
  std::vector<std::vector<std::size_t>> dets_by_class(num_classes);
  std::vector<std::vector<std::size_t>> gts_by_class(num_classes);
  for (std::size_t i = 0; i < detections.size(); ++i) {
    ValidateDetection(detections[i], config.num_classes);
    if (detections[i].class_id == kPaddingClass) continue;
    dets_by_class[detections[i].class_id].push_back(i);
  }
  for (std::size_t i = 0; i < ground_truths.size(); ++i) {
    ValidateGroundTruth(ground_truths[i], config.num_classes);
    if (ground_truths[i].class_id == kPaddingClass) continue;
    gts_by_class[ground_truths[i].class_id].push_back(i);
  }

  MatchGrid grid(config.iou_thresholds.size(), num_classes,
                 config.area_ranges.size(), config.max_dets_list.size());
  const std::size_t limit = config.max_dets_limit();
  for (std::size_t cls = 0; cls < num_classes; ++cls) {
    if (dets_by_class[cls].empty() && gts_by_class[cls].empty()) continue;
    for (std::size_t a = 0; a < config.area_ranges.size(); ++a) {
      const AreaRange& area = config.area_ranges[a].range;
      const auto ranked =
          RankDetections(detections, dets_by_class[cls], area, limit);
      const auto kept = FilterGroundTruths(ground_truths, gts_by_class[cls],
                                           area);
      const auto ious = IouMatrix(detections, ranked, ground_truths, kept);
      for (std::size_t t = 0; t < config.iou_thresholds.size(); ++t) {
        // Greedy decisions for the first k detections never depend on the
        // later ones, so every max-dets cell is a prefix of the widest.
        const auto verdicts = GreedyMatch(detections, ranked, kept.size(),
                                          ious, config.iou_thresholds[t]);
        for (std::size_t m = 0; m < config.max_dets_list.size(); ++m) {
          MatchResult& cell = grid.at(t, cls, a, m);
          const std::size_t n = std::min<std::size_t>(
              verdicts.size(), config.max_dets_list[m]);
          cell.verdicts.assign(verdicts.begin(), verdicts.begin() + n);
          cell.gt_count = kept.size();
        }
      }
    }
  }
  return grid;
}

}  // namespace streammap
