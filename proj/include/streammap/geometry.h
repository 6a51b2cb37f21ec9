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

#ifndef STREAMMAP_GEOMETRY_H_
#define STREAMMAP_GEOMETRY_H_

#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

namespace streammap {

// Class id reserved for padding entries in dense batches.
inline constexpr int kPaddingClass = -1;

// Axis-aligned box in corner format, continuous pixel units.
struct BoundingBox {
  double left = 0.0;
  double top = 0.0;
  double right = 0.0;
  double bottom = 0.0;

  double width() const { return right - left; }
  double height() const { return bottom - top; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct GroundTruth {
  BoundingBox box;
  int class_id = 0;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct Detection {
  BoundingBox box;
  int class_id = 0;
  double confidence = 0.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

// True when all coordinates are finite, right >= left and bottom >= top.
bool IsValidBox(const BoundingBox& box);

// Throws ValidationError if `box` breaks the corner-format invariants.
void ValidateBox(const BoundingBox& box);

// Validates box, class id >= -1 and, for non-padding entries, that
// num_classes bounds the class id (when num_classes > 0).
void ValidateGroundTruth(const GroundTruth& gt, int num_classes = 0);
// As above, plus confidence in [0, 1] for non-padding detections.
void ValidateDetection(const Detection& det, int num_classes = 0);

// (right - left) * (bottom - top). No +1 pixel discretization.
double BoxArea(const BoundingBox& box);

// Intersection over union. Zero when the union has zero area, so a
// degenerate box has IoU 0 with everything, itself included.
double Iou(const BoundingBox& a, const BoundingBox& b);

template <typename T>
concept ClassLabeled = requires(const T& t) {
  { t.class_id } -> std::convertible_to<int>;
};

// Drops entries whose class id is the padding marker, keeping order.
template <ClassLabeled T>
std::vector<T> StripPadding(std::span<const T> boxes) {
  std::vector<T> kept;
  kept.reserve(boxes.size());
  for (const T& b : boxes) {
    if (b.class_id != kPaddingClass) kept.push_back(b);
  }
  return kept;
}

template <ClassLabeled T>
std::vector<T> StripPadding(const std::vector<T>& boxes) {
  return StripPadding(std::span<const T>(boxes));
}

}  // namespace streammap

#endif  // STREAMMAP_GEOMETRY_H_
