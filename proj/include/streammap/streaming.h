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

#ifndef STREAMMAP_STREAMING_H_
#define STREAMMAP_STREAMING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streammap/config.h"
#include "streammap/dataset.h"
#include "streammap/report.h"

namespace streammap {

// Maps a confidence in [0, 1] to floor(c * (buckets - delta)) for an
// infinitesimal delta > 0, i.e. ceil(c * buckets) - 1 for c > 0 and 0 for
// c == 0. Bucket j therefore holds confidences in (j / buckets,
// (j + 1) / buckets], and 1.0 lands in the last bucket. Throws
// DomainError for confidences outside [0, 1] (NaN included) and
// ConfigError for buckets < 1.
int BucketIndex(double confidence, int buckets);

// Interpolated average precision over a recall-ordered PR sequence.
//
// Precisions are first replaced by their right-to-left running maximum.
// For each recall threshold r, the interpolated precision is the
// envelope value at the first index whose recall is >= r, or 0 if
// recall never reaches r. Returns the mean over `recall_thresholds`.
//
// Throws ContractError on a length mismatch, decreasing recalls or an
// empty threshold list.
double InterpolateAp(std::span<const double> recalls,
                     std::span<const double> precisions,
                     std::span<const double> recall_thresholds);

// Fixed-size streaming state: per-bucket true/false positive counts for
// every (iou, class, area, max_dets) cell, plus ground-truth counts per
// (class, area). Shape depends only on the config.
//
// Per-cell bucket arrays are allocated on first write; an unallocated
// cell reads as all zeros. Equality and serialization are defined on the
// logical counters, so allocation state is never observable.
//
// Single writer: concurrent Update calls on one state must be serialized
// by the caller. Independent states may be filled in parallel and
// combined with Merge.
class BucketedState {
 public:
  // Throws ConfigError if `config` is invalid.
  explicit BucketedState(EvalConfig config);

  const EvalConfig& config() const { return config_; }

  // Matches every image against the config grid and adds each verdict to
  // its confidence bucket. All images are validated and matched before
  // any counter changes, so a throwing call leaves the state untouched.
  void Update(std::span<const ImageRecord> batch);

  std::uint64_t tp(std::size_t iou, std::size_t cls, std::size_t area,
                   std::size_t max_dets, std::size_t bucket) const;
  std::uint64_t fp(std::size_t iou, std::size_t cls, std::size_t area,
                   std::size_t max_dets, std::size_t bucket) const;
  std::uint64_t gt_count(std::size_t cls, std::size_t area) const {
    return gt_counts_[cls * num_areas() + area];
  }

  // Sum of tp / fp over all buckets of a cell.
  std::uint64_t total_tp(std::size_t iou, std::size_t cls, std::size_t area,
                         std::size_t max_dets) const;
  std::uint64_t total_fp(std::size_t iou, std::size_t cls, std::size_t area,
                         std::size_t max_dets) const;

  // Adds raw counts to one bucket. Used by deserialization and tests.
  void AddCounts(std::size_t iou, std::size_t cls, std::size_t area,
                 std::size_t max_dets, std::size_t bucket, std::uint64_t tp,
                 std::uint64_t fp);
  void AddGroundTruth(std::size_t cls, std::size_t area, std::uint64_t count);

  // Elementwise addition. Throws MergeError unless configs are equal.
  void MergeFrom(const BucketedState& other);

  std::size_t num_ious() const { return config_.iou_thresholds.size(); }
  std::size_t num_classes() const { return config_.num_classes; }
  std::size_t num_areas() const { return config_.area_ranges.size(); }
  std::size_t num_max_dets() const { return config_.max_dets_list.size(); }
  std::size_t num_buckets() const { return config_.buckets; }
  std::size_t num_cells() const { return cells_.size(); }

  // Interleaved (tp, fp) pairs of a cell, or empty when never written.
  std::span<const std::uint64_t> cell_counts(std::size_t iou, std::size_t cls,
                                             std::size_t area,
                                             std::size_t max_dets) const {
    return cells_[CellOffset(iou, cls, area, max_dets)];
  }

  friend bool operator==(const BucketedState& a, const BucketedState& b);

 private:
  std::size_t CellOffset(std::size_t iou, std::size_t cls, std::size_t area,
                         std::size_t max_dets) const {
    return ((iou * num_classes() + cls) * num_areas() + area) *
               num_max_dets() +
           max_dets;
  }
  std::vector<std::uint64_t>& MutableCell(std::size_t offset);

  EvalConfig config_;
  std::vector<std::vector<std::uint64_t>> cells_;
  std::vector<std::uint64_t> gt_counts_;
};

// An all-zero state. Throws ConfigError on an invalid config.
BucketedState NewState(const EvalConfig& config);

// Returns a + b. Throws MergeError when configs differ.
BucketedState Merge(const BucketedState& a, const BucketedState& b);

// Turns the counters into the twelve metrics. Buckets are accumulated
// from the highest confidence downward, so the PR point at bucket i
// covers every detection with bucket index >= i. Recall rows use exact
// totals and need no bucketing.
MetricReport Finalize(const BucketedState& state);

}  // namespace streammap

#endif  // STREAMMAP_STREAMING_H_
