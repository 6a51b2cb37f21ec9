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

// Test-only helpers: random fixture generators and a brute-force matcher
// that shares no code with the library's matching path.

#ifndef STREAMMAP_TESTS_TEST_UTIL_H_
#define STREAMMAP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "streammap/config.h"
#include "streammap/dataset.h"
#include "streammap/geometry.h"

namespace streammap::testing {

class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int Int(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  bool Chance(double p) { return Uniform(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct RandomImageOptions {
  int num_classes = 3;
  int max_gts = 8;
  int max_dets = 10;
  double canvas = 300.0;
  double min_side = 4.0;
  double max_side = 150.0;
  double tie_probability = 0.2;  // confidence rounded to one decimal
  double padding_probability = 0.1;
};

inline BoundingBox RandomBox(TestRng& rng, const RandomImageOptions& o) {
  const double w = rng.Uniform(o.min_side, o.max_side);
  const double h = rng.Uniform(o.min_side, o.max_side);
  const double x = rng.Uniform(0.0, o.canvas - w);
  const double y = rng.Uniform(0.0, o.canvas - h);
  return {x, y, x + w, y + h};
}

// Detections are a mix of jittered copies of ground truths and
// free-floating boxes, so every IoU regime shows up.
inline ImageRecord RandomImage(TestRng& rng, const RandomImageOptions& o,
                               std::int64_t id = 0) {
  ImageRecord image;
  image.image_id = id;
  const int num_gts = rng.Int(0, o.max_gts);
  for (int i = 0; i < num_gts; ++i) {
    image.ground_truths.push_back({RandomBox(rng, o), rng.Int(0, o.num_classes - 1)});
  }
  const int num_dets = rng.Int(0, o.max_dets);
  for (int i = 0; i < num_dets; ++i) {
    Detection d;
    if (!image.ground_truths.empty() && rng.Chance(0.7)) {
      const auto& g = image.ground_truths[rng.Int(
          0, static_cast<int>(image.ground_truths.size()) - 1)];
      const double w = g.box.width();
      const double h = g.box.height();
      const double l = g.box.left + rng.Uniform(-0.25, 0.25) * w;
      const double t = g.box.top + rng.Uniform(-0.25, 0.25) * h;
      d.box = {l, t, l + w * rng.Uniform(0.75, 1.25),
               t + h * rng.Uniform(0.75, 1.25)};
      d.class_id = rng.Chance(0.85) ? g.class_id : rng.Int(0, o.num_classes - 1);
    } else {
      d.box = RandomBox(rng, o);
      d.class_id = rng.Int(0, o.num_classes - 1);
    }
    d.confidence = rng.Uniform(0.0, 1.0);
    if (rng.Chance(o.tie_probability)) {
      d.confidence = std::round(d.confidence * 10.0) / 10.0;
    }
    image.detections.push_back(d);
  }
  if (rng.Chance(o.padding_probability)) {
    image.detections.push_back({{0, 0, 0, 0}, kPaddingClass, 0.0});
    image.ground_truths.push_back({{0, 0, 0, 0}, kPaddingClass});
  }
  return image;
}

inline std::vector<ImageRecord> RandomDataset(TestRng& rng, int num_images,
                                              const RandomImageOptions& o) {
  std::vector<ImageRecord> images;
  for (int i = 0; i < num_images; ++i) images.push_back(RandomImage(rng, o, i));
  return images;
}

// IoU written independently of the library.
inline double ReferenceIou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::min(a.right, b.right) - std::max(a.left, b.left);
  const double iy = std::min(a.bottom, b.bottom) - std::max(a.top, b.top);
  const double inter = (ix > 0 && iy > 0) ? ix * iy : 0.0;
  const double area_a = (a.right - a.left) * (a.bottom - a.top);
  const double area_b = (b.right - b.left) * (b.bottom - b.top);
  const double uni = area_a + area_b - inter;
  return uni > 0 ? inter / uni : 0.0;
}

struct BruteForceResult {
  std::vector<bool> is_tp;  // in ranked detection order
  std::vector<double> confidences;
  std::size_t gt_count = 0;
  std::size_t tp_count() const {
    return static_cast<std::size_t>(std::count(is_tp.begin(), is_tp.end(), true));
  }
};

// Enumerates every injective partial assignment of ranked detections to
// ground truths with IoU >= theta and keeps the lexicographically best
// one in detection order, where each detection prefers being matched,
// then a higher IoU, then a lower ground-truth index. This is the greedy
// rule stated as an optimization over all assignments.
inline BruteForceResult BruteForceMatch(const std::vector<Detection>& dets,
                                        const std::vector<GroundTruth>& gts,
                                        double theta, int max_dets,
                                        const AreaRange& area) {
  auto area_of = [](const BoundingBox& b) {
    return (b.right - b.left) * (b.bottom - b.top);
  };
  std::vector<Detection> ranked;
  for (const auto& d : dets) {
    const double a = area_of(d.box);
    if (a >= area.min_area && a < area.max_area) ranked.push_back(d);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Detection& x, const Detection& y) {
                     return x.confidence > y.confidence;
                   });
  if (static_cast<int>(ranked.size()) > max_dets) ranked.resize(max_dets);
  std::vector<GroundTruth> kept;
  for (const auto& g : gts) {
    const double a = area_of(g.box);
    if (a >= area.min_area && a < area.max_area) kept.push_back(g);
  }

  // key per detection: (matched, iou, -gt index)
  using Key = std::tuple<int, double, int>;
  std::vector<Key> best_keys;
  std::vector<int> best_assign;
  bool have_best = false;
  std::vector<int> assign(ranked.size(), -1);
  std::vector<bool> used(kept.size(), false);
  std::function<void(std::size_t)> recurse = [&](std::size_t d) {
    if (d == ranked.size()) {
      std::vector<Key> keys;
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (assign[i] < 0) {
          keys.emplace_back(0, 0.0, 0);
        } else {
          keys.emplace_back(1, ReferenceIou(ranked[i].box, kept[assign[i]].box),
                            -assign[i]);
        }
      }
      if (!have_best || keys > best_keys) {
        have_best = true;
        best_keys = keys;
        best_assign = assign;
      }
      return;
    }
    assign[d] = -1;
    recurse(d + 1);
    for (std::size_t g = 0; g < kept.size(); ++g) {
      if (used[g] || ReferenceIou(ranked[d].box, kept[g].box) < theta) continue;
      used[g] = true;
      assign[d] = static_cast<int>(g);
      recurse(d + 1);
      used[g] = false;
      assign[d] = -1;
    }
  };
  recurse(0);

  BruteForceResult result;
  result.gt_count = kept.size();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    result.is_tp.push_back(best_assign[i] >= 0);
    result.confidences.push_back(ranked[i].confidence);
  }
  return result;
}

inline EvalConfig PropertyConfig(int num_classes, int buckets = kDefaultBuckets) {
  EvalConfig c = DefaultConfig(num_classes);
  c.buckets = buckets;
  return c;
}

}  // namespace streammap::testing

#endif  // STREAMMAP_TESTS_TEST_UTIL_H_
