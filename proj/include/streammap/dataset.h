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

#ifndef STREAMMAP_DATASET_H_
#define STREAMMAP_DATASET_H_

#include <cstdint>
#include <vector>

#include "streammap/geometry.h"

namespace streammap {

// Detections and ground truths of one image. Either list may contain
// padding entries (class id -1); they are ignored by every evaluator.
struct ImageRecord {
  std::int64_t image_id = 0;
  std::vector<Detection> detections;
  std::vector<GroundTruth> ground_truths;

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

}  // namespace streammap

#endif  // STREAMMAP_DATASET_H_
