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

#ifndef STREAMMAP_MATCHING_H_
#define STREAMMAP_MATCHING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "streammap/config.h"
#include "streammap/geometry.h"

namespace streammap {

struct Verdict {
  double confidence = 0.0;
  bool is_tp = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Outcome of matching one (image, class, IoU threshold, area, max-dets)
// cell. Verdicts are in descending confidence, ties in input order.
struct MatchResult {
  std::vector<Verdict> verdicts;
  std::size_t gt_count = 0;

  std::size_t tp_count() const;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

// Greedy assignment of detections to ground truths for a single class.
//
// Detections and ground truths whose box area lies outside `area` are
// dropped. Remaining detections are stably sorted by descending
// confidence and truncated to `max_dets`. Each detection in turn takes
// the unmatched ground truth with the highest IoU >= theta (lowest input
// index on ties) and is a true positive; otherwise it is a false
// positive.
//
// Throws ContractError when the inputs carry more than one class id or
// padding entries, ConfigError when theta is outside (0, 1] or max_dets
// is not positive.
MatchResult MatchImageClass(std::span<const Detection> detections,
                            std::span<const GroundTruth> ground_truths,
                            double theta, int max_dets,
                            const AreaRange& area);

// Match results for every cell of a config's parameter grid, for one
// image. Cells are laid out [iou][class][area][max_dets].
class MatchGrid {
 public:
  MatchGrid(std::size_t num_ious, std::size_t num_classes,
            std::size_t num_areas, std::size_t num_max_dets);

  const MatchResult& at(std::size_t iou, std::size_t cls, std::size_t area,
                        std::size_t max_dets) const {
    return cells_[Offset(iou, cls, area, max_dets)];
  }
  MatchResult& at(std::size_t iou, std::size_t cls, std::size_t area,
                  std::size_t max_dets) {
    return cells_[Offset(iou, cls, area, max_dets)];
  }

  std::size_t num_ious() const { return num_ious_; }
  std::size_t num_classes() const { return num_classes_; }
  std::size_t num_areas() const { return num_areas_; }
  std::size_t num_max_dets() const { return num_max_dets_; }
  std::size_t size() const { return cells_.size(); }

 private:
  std::size_t Offset(std::size_t iou, std::size_t cls, std::size_t area,
                     std::size_t max_dets) const {
    return ((iou * num_classes_ + cls) * num_areas_ + area) * num_max_dets_ +
           max_dets;
  }

  std::size_t num_ious_;
  std::size_t num_classes_;
  std::size_t num_areas_;
  std::size_t num_max_dets_;
  std::vector<MatchResult> cells_;
};

// Runs MatchImageClass over every (class, theta, area, max_dets) cell of
// `config`. Padding is stripped first. Boxes must have class ids below
// config.num_classes and detections confidences in [0, 1]; violations
// throw ValidationError.
MatchGrid MatchImage(std::span<const Detection> detections,
                     std::span<const GroundTruth> ground_truths,
                     const EvalConfig& config);

}  // namespace streammap

#endif  // STREAMMAP_MATCHING_H_
