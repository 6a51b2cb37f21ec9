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

#ifndef STREAMMAP_INGEST_H_
#define STREAMMAP_INGEST_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "streammap/dataset.h"

namespace streammap {

// Portable, seedable random source: 64-bit Mersenne Twister (mt19937_64,
// fully specified by the C++ standard) with distribution mappings
// implemented here rather than by std:: distributions, whose output is
// library-specific.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double UniformUnit();
  // Uniform in [low, high).
  double Uniform(double low, double high);
  // Uniform integer in [0, bound) by rejection sampling; bound > 0.
  std::uint64_t UniformInt(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; derives independent seeds for sub-runs.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

// Images plus the category table. Class index k corresponds to
// category_ids[k]; categories are ordered by ascending id.
struct Dataset {
  std::vector<ImageRecord> images;
  std::vector<std::int64_t> category_ids;
  std::vector<std::string> category_names;

  int num_classes() const { return static_cast<int>(category_ids.size()); }
  // Class index of a category id, or nullopt.
  std::optional<int> ClassIndex(std::int64_t category_id) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Challenge annotation format: {"images": [...], "annotations": [...],
// "categories": [...]} with bbox = [x, y, width, height]. The "area" and
// segmentation fields are ignored; areas always come from the box.
Dataset ParseGroundTruth(std::string_view json_text,
                         std::string_view source = "<memory>");
Dataset LoadGroundTruthFile(const std::filesystem::path& path);

// Challenge results format: a list of {image_id, category_id, bbox,
// score}. Returns a copy of `base` with the detections appended to their
// images.
Dataset ParseDetections(std::string_view json_text, const Dataset& base,
                        std::string_view source = "<memory>");
Dataset LoadDetectionsFile(const std::filesystem::path& path,
                           const Dataset& base);

// Writers for the same two formats, so generated data can be fed to
// other evaluation tools.
std::string ToChallengeGroundTruthJson(const Dataset& dataset);
std::string ToChallengeResultsJson(const Dataset& dataset);

// Lossless dataset snapshot (doubles printed round-trip exact).
std::string SerializeDataset(const Dataset& dataset);
Dataset DeserializeDataset(std::string_view text,
                           std::string_view source = "<memory>");

// Uniform sample of n images without replacement (partial Fisher-Yates
// driven by Rng). Throws ArgumentError when n exceeds the dataset size.
Dataset SampleImages(const Dataset& dataset, std::size_t n,
                     std::uint64_t seed);

struct PerturbationParams {
  double translate_fraction = 0.2;
  double scale_low = 0.8;
  double scale_high = 1.2;
  std::uint64_t seed = 0;

  // Throws ConfigError unless 0 <= translate_fraction < 1 and
  // 0 < scale_low <= scale_high.
  void Validate() const;
};

// Replaces each image's detections with one synthetic detection per
// (non-padding) ground truth:
//   left   += u1 * width,   u1 ~ U(-translate_fraction, translate_fraction)
//   top    += u2 * height,  u2 ~ U(-translate_fraction, translate_fraction)
//   width  *= u3,           u3 ~ U(scale_low, scale_high)
//   height *= u4,           u4 ~ U(scale_low, scale_high)
//   confidence = 1 - U[0, 1), i.e. uniform on (0, 1]
// Draws happen in that order, ground truth by ground truth.
Dataset Perturb(const Dataset& dataset, const PerturbationParams& params);

// Synthetic stand-in for a natural-image annotation file: images of
// image_width x image_height with a random number of boxes whose
// side lengths are log-uniform, so all three size ranges are populated.
struct SyntheticGroundTruthParams {
  int num_images = 500;
  int num_classes = 12;
  double mean_boxes_per_image = 7.0;
  int max_boxes_per_image = 30;
  double image_width = 640.0;
  double image_height = 480.0;
  double min_side = 6.0;
  double max_side = 300.0;
  std::uint64_t seed = 0;
};

Dataset GenerateGroundTruth(const SyntheticGroundTruthParams& params);

}  // namespace streammap

#endif  // STREAMMAP_INGEST_H_
