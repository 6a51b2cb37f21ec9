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

#include "streammap/config.h"

#include <cmath>

#include "gtest/gtest.h"
#include "streammap/errors.h"

namespace streammap {
namespace {

TEST(ConfigTest, Defaults) {
  const EvalConfig c = DefaultConfig(80);
  ASSERT_EQ(c.iou_thresholds.size(), 10u);
  EXPECT_EQ(c.iou_thresholds.front(), 0.5);
  EXPECT_EQ(c.iou_thresholds[5], 0.75);
  EXPECT_EQ(c.iou_thresholds.back(), 0.95);
  ASSERT_EQ(c.recall_thresholds.size(), 101u);
  EXPECT_EQ(c.recall_thresholds.front(), 0.0);
  EXPECT_EQ(c.recall_thresholds[50], 0.5);
  EXPECT_EQ(c.recall_thresholds.back(), 1.0);
  EXPECT_EQ(c.buckets, 10000);
  EXPECT_EQ(c.max_dets_list, (std::vector<int>{1, 10, 100}));
  ASSERT_EQ(c.area_ranges.size(), 4u);
  EXPECT_EQ(c.area_ranges[2].name, "medium");
  EXPECT_EQ(c.area_ranges[2].range.min_area, 1024.0);
  EXPECT_EQ(c.area_ranges[2].range.max_area, 9216.0);
  EXPECT_TRUE(std::isinf(c.area_ranges[3].range.max_area));
  EXPECT_EQ(c.num_classes, 80);
  EXPECT_NO_THROW(c.Validate());
}

TEST(ConfigTest, AreaRangeIsHalfOpen) {
  const AreaRange small{0, 1024};
  EXPECT_TRUE(small.Contains(0));
  EXPECT_TRUE(small.Contains(1023.999));
  EXPECT_FALSE(small.Contains(1024));
}

TEST(ConfigTest, ValidationFailures) {
  auto expect_bad = [](auto mutate) {
    EvalConfig c = DefaultConfig();
    mutate(c);
    EXPECT_THROW(c.Validate(), ConfigError);
  };
  expect_bad([](EvalConfig& c) { c.iou_thresholds.clear(); });
  expect_bad([](EvalConfig& c) { c.iou_thresholds = {0.0, 0.5}; });
  expect_bad([](EvalConfig& c) { c.iou_thresholds = {0.5, 1.01}; });
  expect_bad([](EvalConfig& c) { c.iou_thresholds = {0.7, 0.5}; });
  expect_bad([](EvalConfig& c) { c.recall_thresholds = {0.0, 0.0}; });
  expect_bad([](EvalConfig& c) { c.recall_thresholds = {-0.1}; });
  expect_bad([](EvalConfig& c) { c.buckets = 0; });
  expect_bad([](EvalConfig& c) { c.num_classes = 0; });
  expect_bad([](EvalConfig& c) { c.max_dets_list = {}; });
  expect_bad([](EvalConfig& c) { c.max_dets_list = {10, 1}; });
  expect_bad([](EvalConfig& c) { c.max_dets_list = {0}; });
  expect_bad([](EvalConfig& c) { c.area_ranges = {{"a", {5, 5}}}; });
  expect_bad([](EvalConfig& c) {
    c.area_ranges = {{"a", {0, 5}}, {"a", {5, 9}}};
  });
}

TEST(ConfigTest, LookupHelpers) {
  const EvalConfig c = DefaultConfig();
  EXPECT_EQ(c.FindIouThreshold(0.75), 5u);
  EXPECT_FALSE(c.FindIouThreshold(0.77).has_value());
  EXPECT_EQ(c.FindAreaRange("large"), 3u);
  EXPECT_FALSE(c.FindAreaRange("huge").has_value());
  EXPECT_EQ(c.max_dets_limit(), 100u);
}

TEST(ConfigTest, OverrideParsers) {
  EXPECT_EQ(ParseThresholdList("0.5, 0.75"), (std::vector<double>{0.5, 0.75}));
  EXPECT_EQ(ParseMaxDets("1,10,100"), (std::vector<int>{1, 10, 100}));
  const auto ranges = ParseAreaRanges("all=0:inf,small=0:1024");
  ASSERT_EQ(ranges.size(), 2u);
  EXPECT_EQ(ranges[0].name, "all");
  EXPECT_TRUE(std::isinf(ranges[0].range.max_area));
  EXPECT_EQ(ranges[1].range.max_area, 1024.0);
  EXPECT_THROW(ParseThresholdList("0.5,abc"), ConfigError);
  EXPECT_THROW(ParseMaxDets("1,,3"), ConfigError);
  EXPECT_THROW(ParseAreaRanges("small:0:1024"), ConfigError);
}

}  // namespace
}  // namespace streammap
