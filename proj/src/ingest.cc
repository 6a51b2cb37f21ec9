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

#include "streammap/ingest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "streammap/errors.h"

namespace streammap {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr std::string_view kDatasetFormat = "streammap-dataset";
constexpr int kDatasetVersion = 1;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json ParseJson(std::string_view text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::string Location(const std::string& where, std::string_view section,
                     std::size_t index) {
  return where + ": " + std::string(section) + "[" + std::to_string(index) +
         "]";
}

// [x, y, width, height] -> corner box. Rejects negative extents.
BoundingBox BoxFromXywh(const Json& bbox, const std::string& loc) {
  if (!bbox.is_array() || bbox.size() != 4) {
    throw ParseError(loc + ".bbox: expected an array of 4 numbers");
  }
  double v[4];
  for (int i = 0; i < 4; ++i) {
    if (!bbox[i].is_number()) {
      throw ParseError(loc + ".bbox: expected an array of 4 numbers");
    }
    v[i] = bbox[i].get<double>();
  }
  if (v[2] < 0.0 || v[3] < 0.0) {
    throw ValidationError(loc + ".bbox: negative width or height");
  }
  return {v[0], v[1], v[0] + v[2], v[1] + v[3]};
}

Json XywhFromBox(const BoundingBox& box) {
  return Json::array({box.left, box.top, box.width(), box.height()});
}

std::unordered_map<std::int64_t, std::size_t> ImageIndex(
    const Dataset& dataset) {
  std::unordered_map<std::int64_t, std::size_t> index;
  for (std::size_t i = 0; i < dataset.images.size(); ++i) {
    index.emplace(dataset.images[i].image_id, i);
  }
  return index;
}

const Json& Field(const Json& object, const char* key,
                  const std::string& loc) {
  if (!object.is_object()) throw ParseError(loc + ": expected an object");
  const auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(loc + ": missing field '" + key + "'");
  }
  return *it;
}

std::int64_t IntField(const Json& object, const char* key,
                      const std::string& loc) {
  const Json& v = Field(object, key, loc);
  if (!v.is_number_integer()) {
    throw ParseError(loc + "." + key + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

const Json& ArrayField(const Json& object, const char* key,
                       const std::string& where) {
  const Json& v = Field(object, key, where);
  if (!v.is_array()) {
    throw ParseError(where + ": '" + key + "' must be an array");
  }
  return v;
}

}  // namespace

double Rng::UniformUnit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Uniform(double low, double high) {
  return low + (high - low) * UniformUnit();
}

std::uint64_t Rng::UniformInt(std::uint64_t bound) {
  // Values below 2^64 mod bound would over-represent small results.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::optional<int> Dataset::ClassIndex(std::int64_t category_id) const {
  const auto it =
      std::lower_bound(category_ids.begin(), category_ids.end(), category_id);
  if (it == category_ids.end() || *it != category_id) return std::nullopt;
  return static_cast<int>(it - category_ids.begin());
}

Dataset ParseGroundTruth(std::string_view json_text, std::string_view source) {
  const std::string where(source);
  const Json doc = ParseJson(json_text, where);
  if (!doc.is_object()) {
    throw ParseError(where + ": top level must be an object");
  }
  const Json& images = ArrayField(doc, "images", where);
  const Json& annotations = ArrayField(doc, "annotations", where);
  const Json& categories = ArrayField(doc, "categories", where);

  Dataset dataset;
  std::vector<std::pair<std::int64_t, std::string>> cats;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const std::string loc = Location(where, "categories", i);
    const std::int64_t id = IntField(categories[i], "id", loc);
    std::string name;
    if (const auto it = categories[i].find("name");
        it != categories[i].end() && it->is_string()) {
      name = it->get<std::string>();
    }
    cats.emplace_back(id, std::move(name));
  }
  std::sort(cats.begin(), cats.end());
  for (std::size_t i = 0; i < cats.size(); ++i) {
    if (i > 0 && cats[i].first == cats[i - 1].first) {
      throw ValidationError(where + ": duplicate category id " +
                            std::to_string(cats[i].first));
    }
    dataset.category_ids.push_back(cats[i].first);
    dataset.category_names.push_back(cats[i].second);
  }

  std::unordered_map<std::int64_t, std::size_t> image_index;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string loc = Location(where, "images", i);
    ImageRecord record;
    record.image_id = IntField(images[i], "id", loc);
    if (!image_index.emplace(record.image_id, i).second) {
      throw ValidationError(loc + ": duplicate image id " +
                            std::to_string(record.image_id));
    }
    dataset.images.push_back(std::move(record));
  }

  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const std::string loc = Location(where, "annotations", i);
    const Json& ann = annotations[i];
    const std::int64_t image_id = IntField(ann, "image_id", loc);
    const std::int64_t category_id = IntField(ann, "category_id", loc);
    const auto img = image_index.find(image_id);
    if (img == image_index.end()) {
      throw ValidationError(loc + ": unknown image_id " +
                            std::to_string(image_id));
    }
    const auto cls = dataset.ClassIndex(category_id);
    if (!cls) {
      throw ValidationError(loc + ": unknown category_id " +
                            std::to_string(category_id));
    }
    GroundTruth gt{BoxFromXywh(Field(ann, "bbox", loc), loc), *cls};
    try {
      ValidateBox(gt.box);
    } catch (const ValidationError& e) {
      throw ValidationError(loc + ": " + e.what());
    }
    dataset.images[img->second].ground_truths.push_back(gt);
  }
  return dataset;
}

Dataset LoadGroundTruthFile(const std::filesystem::path& path) {
  return ParseGroundTruth(ReadFile(path), path.string());
}

Dataset ParseDetections(std::string_view json_text, const Dataset& base,
                        std::string_view source) {
  const std::string where(source);
  const Json doc = ParseJson(json_text, where);
  if (!doc.is_array()) {
    throw ParseError(where + ": results document must be an array");
  }
  Dataset dataset = base;
  const auto image_index = ImageIndex(dataset);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string loc = Location(where, "results", i);
    const Json& row = doc[i];
    const std::int64_t image_id = IntField(row, "image_id", loc);
    const std::int64_t category_id = IntField(row, "category_id", loc);
    const Json& score = Field(row, "score", loc);
    if (!score.is_number()) {
      throw ParseError(loc + ".score: expected a number");
    }
    const auto img = image_index.find(image_id);
    if (img == image_index.end()) {
      throw ValidationError(loc + ": unknown image_id " +
                            std::to_string(image_id));
    }
    const auto cls = dataset.ClassIndex(category_id);
    if (!cls) {
      throw ValidationError(loc + ": unknown category_id " +
                            std::to_string(category_id));
    }
    Detection det{BoxFromXywh(Field(row, "bbox", loc), loc), *cls,
                  score.get<double>()};
    try {
      ValidateDetection(det);
    } catch (const ValidationError& e) {
      throw ValidationError(loc + ": " + e.what());
    }
    dataset.images[img->second].detections.push_back(det);
  }
  return dataset;
}

Dataset LoadDetectionsFile(const std::filesystem::path& path,
                           const Dataset& base) {
  return ParseDetections(ReadFile(path), base, path.string());
}

std::string ToChallengeGroundTruthJson(const Dataset& dataset) {
  OrderedJson images = OrderedJson::array();
  OrderedJson annotations = OrderedJson::array();
  OrderedJson categories = OrderedJson::array();
  std::int64_t next_id = 1;
  for (const ImageRecord& image : dataset.images) {
    images.push_back({{"id", image.image_id}});
    for (const GroundTruth& gt : image.ground_truths) {
      if (gt.class_id == kPaddingClass) continue;
      annotations.push_back({{"id", next_id++},
                             {"image_id", image.image_id},
                             {"category_id", dataset.category_ids[gt.class_id]},
                             {"bbox", XywhFromBox(gt.box)},
                             {"area", BoxArea(gt.box)},
                             {"iscrowd", 0}});
    }
  }
  for (std::size_t k = 0; k < dataset.category_ids.size(); ++k) {
    const std::string name = k < dataset.category_names.size()
                                 ? dataset.category_names[k]
                                 : std::string();
    categories.push_back({{"id", dataset.category_ids[k]}, {"name", name}});
  }
  OrderedJson doc;
  doc["images"] = std::move(images);
  doc["annotations"] = std::move(annotations);
  doc["categories"] = std::move(categories);
  return doc.dump() + "\n";
}

std::string ToChallengeResultsJson(const Dataset& dataset) {
  OrderedJson rows = OrderedJson::array();
  for (const ImageRecord& image : dataset.images) {
    for (const Detection& det : image.detections) {
      if (det.class_id == kPaddingClass) continue;
      rows.push_back({{"image_id", image.image_id},
                      {"category_id", dataset.category_ids[det.class_id]},
                      {"bbox", XywhFromBox(det.box)},
                      {"score", det.confidence}});
    }
  }
  return rows.dump() + "\n";
}

std::string SerializeDataset(const Dataset& dataset) {
  OrderedJson categories = OrderedJson::array();
  for (std::size_t k = 0; k < dataset.category_ids.size(); ++k) {
    categories.push_back(
        {{"id", dataset.category_ids[k]},
         {"name", k < dataset.category_names.size() ? dataset.category_names[k]
                                                    : std::string()}});
  }
  OrderedJson images = OrderedJson::array();
  for (const ImageRecord& image : dataset.images) {
    OrderedJson gts = OrderedJson::array();
    for (const GroundTruth& g : image.ground_truths) {
      gts.push_back(
          {g.box.left, g.box.top, g.box.right, g.box.bottom, g.class_id});
    }
    OrderedJson dets = OrderedJson::array();
    for (const Detection& d : image.detections) {
      dets.push_back({d.box.left, d.box.top, d.box.right, d.box.bottom,
                      d.class_id, d.confidence});
    }
    images.push_back({{"id", image.image_id},
                      {"ground_truths", std::move(gts)},
                      {"detections", std::move(dets)}});
  }
  OrderedJson doc;
  doc["format"] = kDatasetFormat;
  doc["version"] = kDatasetVersion;
  doc["categories"] = std::move(categories);
  doc["images"] = std::move(images);
  return doc.dump() + "\n";
}

Dataset DeserializeDataset(std::string_view text, std::string_view source) {
  const std::string where(source);
  const Json doc = ParseJson(text, where);
  try {
    if (doc.at("format").get<std::string>() != kDatasetFormat ||
        doc.at("version").get<int>() != kDatasetVersion) {
      throw ParseError(where + ": not a streammap dataset (version " +
                       std::to_string(kDatasetVersion) + ")");
    }
    Dataset dataset;
    for (const Json& c : doc.at("categories")) {
      dataset.category_ids.push_back(c.at("id").get<std::int64_t>());
      dataset.category_names.push_back(c.at("name").get<std::string>());
    }
    if (!std::is_sorted(dataset.category_ids.begin(),
                        dataset.category_ids.end())) {
      throw ValidationError(where + ": categories must be sorted by id");
    }
    for (const Json& img : doc.at("images")) {
      ImageRecord record;
      record.image_id = img.at("id").get<std::int64_t>();
      for (const Json& g : img.at("ground_truths")) {
        GroundTruth gt{{g.at(0).get<double>(), g.at(1).get<double>(),
                        g.at(2).get<double>(), g.at(3).get<double>()},
                       g.at(4).get<int>()};
        ValidateGroundTruth(gt, dataset.num_classes());
        record.ground_truths.push_back(gt);
      }
      for (const Json& d : img.at("detections")) {
        Detection det{{d.at(0).get<double>(), d.at(1).get<double>(),
                       d.at(2).get<double>(), d.at(3).get<double>()},
                      d.at(4).get<int>(),
                      d.at(5).get<double>()};
        ValidateDetection(det, dataset.num_classes());
        record.detections.push_back(det);
      }
      dataset.images.push_back(std::move(record));
    }
    return dataset;
  } catch (const Json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Dataset SampleImages(const Dataset& dataset, std::size_t n,
                     std::uint64_t seed) {
  const std::size_t size = dataset.images.size();
  if (n > size) {
    throw ArgumentError("cannot sample " + std::to_string(n) +
                        " images from a dataset of " + std::to_string(size));
  }
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.UniformInt(size - i);
    std::swap(order[i], order[j]);
  }
  Dataset sample;
  sample.category_ids = dataset.category_ids;
  sample.category_names = dataset.category_names;
  sample.images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample.images.push_back(dataset.images[order[i]]);
  }
  return sample;
}

void PerturbationParams::Validate() const {
  if (!(translate_fraction >= 0.0 && translate_fraction < 1.0)) {
    throw ConfigError("translate fraction must lie in [0, 1)");
  }
  if (!(scale_low > 0.0 && scale_low <= scale_high) ||
      !std::isfinite(scale_high)) {
    throw ConfigError("scale range needs 0 < low <= high");
  }
}

Dataset Perturb(const Dataset& dataset, const PerturbationParams& params) {
  params.Validate();
  Rng rng(params.seed);
  const double f = params.translate_fraction;
  Dataset out = dataset;
  for (ImageRecord& image : out.images) {
    image.detections.clear();
    for (const GroundTruth& gt : image.ground_truths) {
      if (gt.class_id == kPaddingClass) continue;
      const double width = gt.box.width();
      const double height = gt.box.height();
      const double dx = rng.Uniform(-f, f) * width;
      const double dy = rng.Uniform(-f, f) * height;
      const double new_width = width * rng.Uniform(params.scale_low,
                                                   params.scale_high);
      const double new_height = height * rng.Uniform(params.scale_low,
                                                      params.scale_high);
      const double confidence = 1.0 - rng.UniformUnit();
      Detection det;
      det.box.left = gt.box.left + dx;
      det.box.top = gt.box.top + dy;
      det.box.right = det.box.left + new_width;
      det.box.bottom = det.box.top + new_height;
      det.class_id = gt.class_id;
      det.confidence = confidence;
      image.detections.push_back(det);
    }
  }
  return out;
}

Dataset GenerateGroundTruth(const SyntheticGroundTruthParams& params) {
  if (params.num_images < 0 || params.num_classes < 1 ||
      params.max_boxes_per_image < 1 || !(params.min_side > 0.0) ||
      !(params.max_side >= params.min_side) ||
      !(params.mean_boxes_per_image >= 1.0)) {
    throw ConfigError("invalid synthetic ground-truth parameters");
  }
  Rng rng(params.seed);
  Dataset dataset;
  for (int k = 0; k < params.num_classes; ++k) {
    // Gapped ids, like real category tables.
    dataset.category_ids.push_back(1 + k + k / 5);
    dataset.category_names.push_back("class_" + std::to_string(k));
  }
  auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };
  const double log_min = std::log(params.min_side);
  const double log_max = std::log(params.max_side);
  const double log_aspect = std::log(2.0);
  for (int i = 0; i < params.num_images; ++i) {
    ImageRecord record;
    record.image_id = i + 1;
    const double extra = -std::log(1.0 - rng.UniformUnit()) *
                         (params.mean_boxes_per_image - 1.0);
    const int count = std::min(params.max_boxes_per_image,
                               1 + static_cast<int>(extra));
    for (int b = 0; b < count; ++b) {
      const double side = std::exp(rng.Uniform(log_min, log_max));
      const double aspect = std::exp(rng.Uniform(-log_aspect, log_aspect));
      const double w =
          round2(std::min(side * std::sqrt(aspect), params.image_width));
      const double h =
          round2(std::min(side / std::sqrt(aspect), params.image_height));
      const double x = round2(rng.Uniform(0.0, params.image_width - w));
      const double y = round2(rng.Uniform(0.0, params.image_height - h));
      const int cls = static_cast<int>(rng.UniformInt(params.num_classes));
      record.ground_truths.push_back({{x, y, x + w, y + h}, cls});
    }
    dataset.images.push_back(std::move(record));
  }
  return dataset;
}

}  // namespace streammap
