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

#ifndef STREAMMAP_ORACLE_H_
#define STREAMMAP_ORACLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "streammap/config.h"
#include "streammap/dataset.h"
#include "streammap/report.h"

namespace streammap {

// One detection's outcome, kept in full by the exact evaluator.
struct ScoredVerdict {
  double confidence = 0.0;
  bool is_tp = false;
};

// Exact reference evaluation. For every (iou, class, area, max_dets)
// cell, all verdicts of the dataset are sorted by descending confidence
// (stable in image order, then detection order), every prefix yields a
// (recall, precision) point, and the PR curve is interpolated with
// InterpolateAp. Averaging matches Finalize. `config.buckets` is unused.
MetricReport EvaluateExact(std::span<const ImageRecord> dataset,
                           const EvalConfig& config);

// Exact average precision of a globally sorted verdict list.
double ExactAveragePrecision(std::span<const ScoredVerdict> sorted_verdicts,
                             std::size_t gt_count,
                             std::span<const double> recall_thresholds);

}  // namespace streammap

#endif  // STREAMMAP_ORACLE_H_
