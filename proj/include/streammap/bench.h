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

#ifndef STREAMMAP_BENCH_H_
#define STREAMMAP_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "streammap/config.h"
#include "streammap/ingest.h"
#include "streammap/report.h"

namespace streammap {

// One metric of one benchmark run: streaming vs exact.
struct ErrorMarginRow {
  std::string metric;  // MetricInfo::key
  std::size_t n_images = 0;
  int run_index = 0;
  double streaming_value = kUndefinedMetric;
  double exact_value = kUndefinedMetric;
  // |streaming - exact|, or kUndefinedMetric when either side is.
  double abs_error = kUndefinedMetric;
};

// Error statistics for one metric over a group of runs. `n_images` is 0
// for the group spanning every image count.
struct ErrorSummaryRow {
  std::string metric;
  std::size_t n_images = 0;
  std::size_t count = 0;  // defined runs only
  double min_error = 0.0;
  double max_error = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;  // sample standard deviation
};

inline const std::vector<std::size_t> kDefaultImageCounts = {10, 50, 100,
                                                             500};

struct BenchOptions {
  std::vector<std::size_t> image_counts = kDefaultImageCounts;
  int repeats = 10;
  std::uint64_t seed = 0;
  double translate_fraction = 0.2;
  double scale_low = 0.8;
  double scale_high = 1.2;
  // Evaluation grid; num_classes is overwritten from the dataset.
  EvalConfig config = DefaultConfig();
  int jobs = 1;
};

struct BenchRun {
  std::size_t n_images = 0;
  int run_index = 0;
  Dataset dataset;  // sampled and perturbed
  MetricReport streaming;
  MetricReport exact;
};

struct BenchResult {
  std::vector<ErrorMarginRow> rows;  // ordered by (n_images, run, metric)
  std::vector<ErrorSummaryRow> summary;
};

// Seed of run (n_images, run_index) under a base seed. Sampling and
// perturbation draw from different streams of it.
std::uint64_t RunSeed(std::uint64_t base_seed, std::size_t n_images,
                      int run_index);

// Builds the dataset of a single run: sample n images, then perturb.
Dataset MakeRunDataset(const Dataset& ground_truth, std::size_t n_images,
                       int run_index, const BenchOptions& options);

// For each image count and repeat: sample, perturb, evaluate with both
// the streaming state and the exact evaluator. Throws ArgumentError
// before any run if an image count exceeds the dataset. Runs may execute
// on `options.jobs` threads; output order does not depend on it.
// `on_run`, when set, sees every run in output order.
BenchResult RunSynthBench(const Dataset& ground_truth,
                          const BenchOptions& options,
                          const std::function<void(const BenchRun&)>& on_run =
                              nullptr);

std::vector<ErrorSummaryRow> SummarizeErrors(
    const std::vector<ErrorMarginRow>& rows);

// CSV with header
//   metric,n_images,run_index,streaming_value,exact_value,abs_error
std::string FormatRowsCsv(const std::vector<ErrorMarginRow>& rows);
// CSV with header
//   metric,n_images,count,min_error,max_error,mean_error,std_error
// where n_images "all" marks the group over every image count.
std::string FormatSummaryCsv(const std::vector<ErrorSummaryRow>& summary);
// Table of the "all" group in the Min/Max/Mean layout.
std::string FormatSummaryTable(const std::vector<ErrorSummaryRow>& summary);

}  // namespace streammap

#endif  // STREAMMAP_BENCH_H_
