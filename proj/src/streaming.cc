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

#include "streammap/streaming.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "streammap/errors.h"
#include "streammap/matching.h"

namespace streammap {

int BucketIndex(double confidence, int buckets) {
  if (buckets < 1) {
    throw ConfigError("bucket count must be >= 1, got " +
                      std::to_string(buckets));
  }
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw DomainError("confidence " + std::to_string(confidence) +
                      " outside [0, 1]");
  }
  if (confidence == 0.0) return 0;
  const double scaled = std::ceil(confidence * static_cast<double>(buckets));
  return std::clamp(static_cast<int>(scaled) - 1, 0, buckets - 1);
}

double InterpolateAp(std::span<const double> recalls,
                     std::span<const double> precisions,
                     std::span<const double> recall_thresholds) {
  if (recalls.size() != precisions.size()) {
    throw ContractError("recall and precision sequences differ in length (" +
                        std::to_string(recalls.size()) + " vs " +
                        std::to_string(precisions.size()) + ")");
  }
  if (recall_thresholds.empty()) {
    throw ContractError("no recall thresholds");
  }
  if (!std::is_sorted(recalls.begin(), recalls.end())) {
    throw ContractError("recalls must be non-decreasing");
  }
  std::vector<double> envelope(precisions.begin(), precisions.end());
  for (std::size_t i = envelope.size(); i-- > 1;) {
    envelope[i - 1] = std::max(envelope[i - 1], envelope[i]);
  }
  double sum = 0.0;
  for (double r : recall_thresholds) {
    const auto it = std::lower_bound(recalls.begin(), recalls.end(), r);
    if (it != recalls.end()) sum += envelope[it - recalls.begin()];
  }
  return sum / static_cast<double>(recall_thresholds.size());
}

BucketedState::BucketedState(EvalConfig config) : config_(std::move(config)) {
  config_.Validate();
  cells_.resize(num_ious() * num_classes() * num_areas() * num_max_dets());
  gt_counts_.assign(num_classes() * num_areas(), 0);
}

std::vector<std::uint64_t>& BucketedState::MutableCell(std::size_t offset) {
  auto& cell = cells_[offset];
  if (cell.empty()) cell.assign(2 * num_buckets(), 0);
  return cell;
}

std::uint64_t BucketedState::tp(std::size_t iou, std::size_t cls,
                                std::size_t area, std::size_t max_dets,
                                std::size_t bucket) const {
  const auto cell = cell_counts(iou, cls, area, max_dets);
  return cell.empty() ? 0 : cell[2 * bucket];
}

std::uint64_t BucketedState::fp(std::size_t iou, std::size_t cls,
                                std::size_t area, std::size_t max_dets,
                                std::size_t bucket) const {
  const auto cell = cell_counts(iou, cls, area, max_dets);
  return cell.empty() ? 0 : cell[2 * bucket + 1];
}

std::uint64_t BucketedState::total_tp(std::size_t iou, std::size_t cls,
                                      std::size_t area,
                                      std::size_t max_dets) const {
  const auto cell = cell_counts(iou, cls, area, max_dets);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < cell.size(); i += 2) total += cell[i];
  return total;
}

std::uint64_t BucketedState::total_fp(std::size_t iou, std::size_t cls,
                                      std::size_t area,
                                      std::size_t max_dets) const {
  const auto cell = cell_counts(iou, cls, area, max_dets);
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < cell.size(); i += 2) total += cell[i];
  return total;
}

void BucketedState::AddCounts(std::size_t iou, std::size_t cls,
                              std::size_t area, std::size_t max_dets,
                              std::size_t bucket, std::uint64_t tp,
                              std::uint64_t fp) {
  if (iou >= num_ious() || cls >= num_classes() || area >= num_areas() ||
      max_dets >= num_max_dets() || bucket >= num_buckets()) {
    throw ContractError("counter index out of range");
  }
  if (tp == 0 && fp == 0) return;
  auto& cell = MutableCell(CellOffset(iou, cls, area, max_dets));
  cell[2 * bucket] += tp;
  cell[2 * bucket + 1] += fp;
}

void BucketedState::AddGroundTruth(std::size_t cls, std::size_t area,
                                   std::uint64_t count) {
  if (cls >= num_classes() || area >= num_areas()) {
    throw ContractError("ground-truth counter index out of range");
  }
  gt_counts_[cls * num_areas() + area] += count;
}

void BucketedState::Update(std::span<const ImageRecord> batch) {
  std::vector<MatchGrid> grids;
  grids.reserve(batch.size());
  for (const ImageRecord& image : batch) {
    grids.push_back(
        MatchImage(image.detections, image.ground_truths, config_));
  }
  const int buckets = config_.buckets;
  for (const MatchGrid& grid : grids) {
    for (std::size_t t = 0; t < num_ious(); ++t) {
      for (std::size_t k = 0; k < num_classes(); ++k) {
        for (std::size_t a = 0; a < num_areas(); ++a) {
          for (std::size_t m = 0; m < num_max_dets(); ++m) {
            const MatchResult& result = grid.at(t, k, a, m);
            if (result.verdicts.empty()) continue;
            auto& cell = MutableCell(CellOffset(t, k, a, m));
            for (const Verdict& v : result.verdicts) {
              const auto b =
                  static_cast<std::size_t>(BucketIndex(v.confidence, buckets));
              ++cell[2 * b + (v.is_tp ? 0 : 1)];
            }
          }
        }
      }
    }
    // Ground-truth counts do not depend on the IoU threshold or max-dets.
    for (std::size_t k = 0; k < num_classes(); ++k) {
      for (std::size_t a = 0; a < num_areas(); ++a) {
        gt_counts_[k * num_areas() + a] += grid.at(0, k, a, 0).gt_count;
      }
    }
  }
}

void BucketedState::MergeFrom(const BucketedState& other) {
  if (!(config_ == other.config_)) {
    throw MergeError("cannot merge states with different configurations");
  }
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& src = other.cells_[c];
    if (src.empty()) continue;
    auto& dst = MutableCell(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
  }
  for (std::size_t i = 0; i < gt_counts_.size(); ++i) {
    gt_counts_[i] += other.gt_counts_[i];
  }
}

bool operator==(const BucketedState& a, const BucketedState& b) {
  if (!(a.config_ == b.config_) || a.gt_counts_ != b.gt_counts_) return false;
  auto is_zero = [](const std::vector<std::uint64_t>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](std::uint64_t x) { return x == 0; });
  };
  for (std::size_t c = 0; c < a.cells_.size(); ++c) {
    const auto& x = a.cells_[c];
    const auto& y = b.cells_[c];
    if (x.empty() || y.empty()) {
      if (!is_zero(x) || !is_zero(y)) return false;
    } else if (x != y) {
      return false;
    }
  }
  return true;
}

BucketedState NewState(const EvalConfig& config) {
  return BucketedState(config);
}

BucketedState Merge(const BucketedState& a, const BucketedState& b) {
  BucketedState merged = a;
  merged.MergeFrom(b);
  return merged;
}

MetricReport Finalize(const BucketedState& state) {
  const EvalConfig& config = state.config();
  std::vector<double> recalls;
  std::vector<double> precisions;
  CellSource source;
  source.gt_count = [&](std::size_t cls, std::size_t area) {
    return state.gt_count(cls, area);
  };
  source.tp_count = [&](std::size_t t, std::size_t cls, std::size_t area,
                        std::size_t m) {
    return state.total_tp(t, cls, area, m);
  };
  source.average_precision = [&](std::size_t t, std::size_t cls,
                                 std::size_t area, std::size_t m) {
    const auto cell = state.cell_counts(t, cls, area, m);
    const double gts = static_cast<double>(state.gt_count(cls, area));
    recalls.clear();
    precisions.clear();
    std::uint64_t tp_sum = 0;
    std::uint64_t fp_sum = 0;
    // Suffix sums from the highest-confidence bucket down. Empty buckets
    // would only repeat the previous PR point, so they are skipped.
    for (std::size_t b = cell.size() / 2; b-- > 0;) {
      const std::uint64_t tp = cell[2 * b];
      const std::uint64_t fp = cell[2 * b + 1];
      if (tp == 0 && fp == 0) continue;
      tp_sum += tp;
      fp_sum += fp;
      recalls.push_back(static_cast<double>(tp_sum) / gts);
      precisions.push_back(static_cast<double>(tp_sum) /
                           static_cast<double>(tp_sum + fp_sum));
    }
    return InterpolateAp(recalls, precisions, config.recall_thresholds);
  };
  return Summarize(config, source);
}

}  // namespace streammap
