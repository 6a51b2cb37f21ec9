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

#include "streammap/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "streammap/errors.h"

namespace streammap {

bool IsValidBox(const BoundingBox& box) {
  return std::isfinite(box.left) && std::isfinite(box.top) &&
         std::isfinite(box.right) && std::isfinite(box.bottom) &&
         box.right >= box.left && box.bottom >= box.top;
}

void ValidateBox(const BoundingBox& box) {
  if (!IsValidBox(box)) {
    throw ValidationError("invalid box (" + std::to_string(box.left) + ", " +
                          std::to_string(box.top) + ", " +
                          std::to_string(box.right) + ", " +
                          std::to_string(box.bottom) +
                          "): coordinates must be finite with right >= left "
                          "and bottom >= top");
  }
}

namespace {

void ValidateClass(int class_id, int num_classes) {
  if (class_id < kPaddingClass) {
    throw ValidationError("class id " + std::to_string(class_id) +
                          " is below -1");
  }
  if (num_classes > 0 && class_id >= num_classes) {
    throw ValidationError("class id " + std::to_string(class_id) +
                          " out of range for " + std::to_string(num_classes) +
                          " classes");
  }
}

}  // namespace

void ValidateGroundTruth(const GroundTruth& gt, int num_classes) {
  ValidateClass(gt.class_id, num_classes);
  if (gt.class_id == kPaddingClass) return;
  ValidateBox(gt.box);
}

void ValidateDetection(const Detection& det, int num_classes) {
  ValidateClass(det.class_id, num_classes);
  if (det.class_id == kPaddingClass) return;
  ValidateBox(det.box);
  if (!(det.confidence >= 0.0 && det.confidence <= 1.0)) {
    throw ValidationError("detection confidence " +
                          std::to_string(det.confidence) +
                          " outside [0, 1]");
  }
}

double BoxArea(const BoundingBox& box) { return box.width() * box.height(); }

double Iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw =
      std::max(0.0, std::min(a.right, b.right) - std::max(a.left, b.left));
  const double ih =
      std::max(0.0, std::min(a.bottom, b.bottom) - std::max(a.top, b.top));
  const double intersection = iw * ih;
  const double union_area = BoxArea(a) + BoxArea(b) - intersection;
  if (union_area <= 0.0) return 0.0;
  return std::clamp(intersection / union_area, 0.0, 1.0);
}

}  // namespace streammap
