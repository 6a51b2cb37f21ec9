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

#include <set>
#include <string>

#include "gtest/gtest.h"
#include "streammap/errors.h"
#include "streammap/oracle.h"

namespace streammap {
namespace {

constexpr char kGt[] = R"({
  "images": [{"id": 7}, {"id": 3}, {"id": 9}],
  "annotations": [
    {"id": 1, "image_id": 7, "category_id": 18, "bbox": [10, 20, 30, 40]},
    {"id": 2, "image_id": 3, "category_id": 1, "bbox": [0, 0, 5, 5], "area": 1}
  ],
  "categories": [{"id": 18, "name": "dog"}, {"id": 1, "name": "person"}]
})";

TEST(LoadGroundTruthTest, ConvertsBoxesAndCategories) {
  const Dataset d = ParseGroundTruth(kGt);
  EXPECT_EQ(d.category_ids, (std::vector<std::int64_t>{1, 18}));
  EXPECT_EQ(d.category_names, (std::vector<std::string>{"person", "dog"}));
  ASSERT_EQ(d.images.size(), 3u);
  EXPECT_EQ(d.images[0].image_id, 7);
  ASSERT_EQ(d.images[0].ground_truths.size(), 1u);
  EXPECT_EQ(d.images[0].ground_truths[0].box, (BoundingBox{10, 20, 40, 60}));
  EXPECT_EQ(d.images[0].ground_truths[0].class_id, 1);
  EXPECT_EQ(d.images[1].ground_truths[0].class_id, 0);
  EXPECT_TRUE(d.images[2].ground_truths.empty());
}

TEST(LoadGroundTruthTest, NoAnnotations) {
  const Dataset d = ParseGroundTruth(
      R"({"images": [{"id": 1}, {"id": 2}], "annotations": [],
          "categories": [{"id": 1}]})");
  ASSERT_EQ(d.images.size(), 2u);
  for (const auto& img : d.images) {
    EXPECT_TRUE(img.ground_truths.empty());
    EXPECT_TRUE(img.detections.empty());
  }
}

TEST(LoadGroundTruthTest, Errors) {
  EXPECT_THROW(ParseGroundTruth(R"({"images": [{"id": 1}], "annotations": [
      {"image_id": 1, "category_id": 5, "bbox": [0, 0, 1, 1]}],
      "categories": [{"id": 1}]})"),
               ValidationError);
  EXPECT_THROW(ParseGroundTruth(R"({"images": [{"id": 1}], "annotations": [
      {"image_id": 1, "category_id": 1, "bbox": [0, 0, -1, 1]}],
      "categories": [{"id": 1}]})"),
               ValidationError);
  EXPECT_THROW(ParseGroundTruth(R"({"images": [{"id": 1}], "annotations": [
      {"image_id": 2, "category_id": 1, "bbox": [0, 0, 1, 1]}],
      "categories": [{"id": 1}]})"),
               ValidationError);
  EXPECT_THROW(ParseGroundTruth(R"({"images": [{"id": 1}, {"id": 1}],
      "annotations": [], "categories": []})"),
               ValidationError);
  EXPECT_THROW(ParseGroundTruth(R"({"images": []})"), ParseError);
  EXPECT_THROW(ParseGroundTruth(R"({"images": [{"id": 1}], "annotations": [
      {"image_id": 1, "category_id": 1, "bbox": [0, 0, 1]}],
      "categories": [{"id": 1}]})"),
               ParseError);
}

TEST(LoadGroundTruthTest, ParseErrorNamesSourceAndLocation) {
  try {
    ParseGroundTruth("{\n  \"images\": [,]\n}", "gt.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("gt.json"), std::string::npos) << what;
    EXPECT_NE(what.find("line 2"), std::string::npos) << what;
  }
  try {
    ParseGroundTruth(R"({"images": [{"id": 1}], "annotations": [
      {"image_id": 1, "category_id": 1, "bbox": "x"}],
      "categories": [{"id": 1}]})",
                     "gt.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("gt.json: annotations[0].bbox"),
              std::string::npos)
        << e.what();
  }
}

TEST(LoadDetectionsTest, AttachesRows) {
  const Dataset base = ParseGroundTruth(kGt);
  EXPECT_EQ(ParseDetections("[]", base), base);
  const Dataset d = ParseDetections(
      R"([{"image_id": 9, "category_id": 18, "bbox": [0, 0, 10, 10],
           "score": 0.7}])",
      base);
  ASSERT_EQ(d.images[2].detections.size(), 1u);
  EXPECT_EQ(d.images[2].detections[0],
            (Detection{{0, 0, 10, 10}, 1, 0.7}));
}

TEST(LoadDetectionsTest, Errors) {
  const Dataset base = ParseGroundTruth(kGt);
  EXPECT_THROW(ParseDetections(R"([{"image_id": 9, "category_id": 18,
      "bbox": [0, 0, 10, 10], "score": 1.5}])",
                               base),
               ValidationError);
  EXPECT_THROW(ParseDetections(R"([{"image_id": 4, "category_id": 18,
      "bbox": [0, 0, 10, 10], "score": 0.5}])",
                               base),
               ValidationError);
  EXPECT_THROW(ParseDetections(R"({"image_id": 4})", base), ParseError);
}

TEST(DatasetSerializationTest, RoundTripsExactly) {
  Dataset d = ParseDetections(
      R"([{"image_id": 7, "category_id": 1, "bbox": [0.1, 0.2, 10.3, 1e-3],
           "score": 0.123456789012345}])",
      ParseGroundTruth(kGt));
  d.images[1].detections.push_back({{0, 0, 0, 0}, kPaddingClass, 0.0});
  EXPECT_EQ(DeserializeDataset(SerializeDataset(d)), d);
}

TEST(ChallengeWriterTest, ReparsesToSameDataset) {
  const Dataset d = ParseDetections(
      R"([{"image_id": 7, "category_id": 1, "bbox": [1, 2, 3, 4],
           "score": 0.5}])",
      ParseGroundTruth(kGt));
  const Dataset gt = ParseGroundTruth(ToChallengeGroundTruthJson(d));
  const Dataset back = ParseDetections(ToChallengeResultsJson(d), gt);
  EXPECT_EQ(back, d);
}

TEST(RngTest, EngineIsStandardMersenneTwister) {
  // The standard pins the 10000th output of mt19937_64 seeded with 5489.
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.NextU64();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(RngTest, DistributionRanges) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.UniformUnit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(rng.UniformInt(7), 7u);
  }
}

Dataset BigDataset(int n) {
  Dataset d;
  d.category_ids = {1};
  for (int i = 0; i < n; ++i) d.images.push_back({i, {}, {}});
  return d;
}

TEST(SampleImagesTest, FullSampleIsPermutation) {
  const Dataset d = BigDataset(50);
  const Dataset s = SampleImages(d, 50, 3);
  std::set<std::int64_t> ids;
  for (const auto& img : s.images) ids.insert(img.image_id);
  EXPECT_EQ(ids.size(), 50u);
  EXPECT_NE(s, d);
}

TEST(SampleImagesTest, DeterministicAndDistinct) {
  const Dataset d = BigDataset(5000);
  const Dataset a = SampleImages(d, 10, 42);
  EXPECT_EQ(a, SampleImages(d, 10, 42));
  EXPECT_NE(a, SampleImages(d, 10, 43));
  std::set<std::int64_t> ids;
  for (const auto& img : a.images) ids.insert(img.image_id);
  EXPECT_EQ(ids.size(), 10u);
  EXPECT_THROW(SampleImages(d, 5001, 1), ArgumentError);
}

Dataset Annotated() {
  Dataset d;
  d.category_ids = {1, 2};
  d.images.push_back({1, {}, {{{0, 0, 10, 10}, 0}, {{20, 20, 60, 40}, 1}}});
  d.images.push_back({2, {}, {{{5, 5, 105, 205}, 1}, {{0, 0, 0, 0}, -1}}});
  return d;
}

TEST(PerturbTest, IdentityParameters) {
  const Dataset d = Perturb(Annotated(), {0.0, 1.0, 1.0, 5});
  for (const auto& img : d.images) {
    std::vector<GroundTruth> real;
    for (const auto& g : img.ground_truths)
      if (g.class_id != kPaddingClass) real.push_back(g);
    ASSERT_EQ(img.detections.size(), real.size());
    for (std::size_t i = 0; i < real.size(); ++i) {
      EXPECT_EQ(img.detections[i].box, real[i].box);
      EXPECT_EQ(img.detections[i].class_id, real[i].class_id);
      EXPECT_GT(img.detections[i].confidence, 0.0);
      EXPECT_LE(img.detections[i].confidence, 1.0);
    }
  }
}

TEST(PerturbTest, MaximumScale) {
  const Dataset d = Perturb(Annotated(), {0.0, 1.2, 1.2, 5});
  EXPECT_NEAR(d.images[0].detections[0].box.width(), 12.0, 1e-12);
  EXPECT_NEAR(d.images[0].detections[0].box.height(), 12.0, 1e-12);
}

TEST(PerturbTest, DeterministicAndBounded) {
  const PerturbationParams p{0.2, 0.8, 1.2, 77};
  const Dataset a = Perturb(Annotated(), p);
  EXPECT_EQ(SerializeDataset(a), SerializeDataset(Perturb(Annotated(), p)));
  const GroundTruth g = Annotated().images[1].ground_truths[0];
  const Detection& det = a.images[1].detections[0];
  EXPECT_LE(std::abs(det.box.left - g.box.left), 0.2 * g.box.width());
  EXPECT_LE(std::abs(det.box.top - g.box.top), 0.2 * g.box.height());
  EXPECT_GE(det.box.width(), 0.8 * g.box.width() - 1e-9);
  EXPECT_LE(det.box.width(), 1.2 * g.box.width() + 1e-9);
  EXPECT_EQ(det.class_id, 1);
}

TEST(PerturbTest, InvalidParams) {
  EXPECT_THROW(Perturb(Annotated(), {1.0, 0.8, 1.2, 0}), ConfigError);
  EXPECT_THROW(Perturb(Annotated(), {0.1, 0.0, 1.2, 0}), ConfigError);
  EXPECT_THROW(Perturb(Annotated(), {0.1, 1.3, 1.2, 0}), ConfigError);
}

TEST(PerturbTest, IdentityPerturbationRecallsEverything) {
  SyntheticGroundTruthParams gp;
  gp.num_images = 40;
  gp.num_classes = 4;
  gp.seed = 2;
  const Dataset d = Perturb(GenerateGroundTruth(gp), {0.0, 1.0, 1.0, 8});
  const MetricReport r = EvaluateExact(d.images, DefaultConfig(4));
  EXPECT_DOUBLE_EQ(r.recall_maxdets_100(), 1.0);
  EXPECT_DOUBLE_EQ(r.map_standard(), 1.0);
}

TEST(GenerateGroundTruthTest, PopulatesEverySizeRange) {
  SyntheticGroundTruthParams gp;
  gp.num_images = 200;
  const Dataset a = GenerateGroundTruth(gp);
  EXPECT_EQ(a, GenerateGroundTruth(gp));
  EXPECT_EQ(a.num_classes(), 12);
  int small = 0, medium = 0, large = 0;
  std::size_t boxes = 0;
  for (const auto& img : a.images) {
    for (const auto& g : img.ground_truths) {
      ASSERT_TRUE(IsValidBox(g.box));
      const double area = BoxArea(g.box);
      (area < 1024 ? small : area < 9216 ? medium : large)++;
      ++boxes;
    }
  }
  EXPECT_GT(small, 100);
  EXPECT_GT(medium, 100);
  EXPECT_GT(large, 100);
  EXPECT_GT(boxes, 200u * 4);
}

}  // namespace
}  // namespace streammap
