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

#include "streammap/bench.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "streammap/errors.h"
#include "streammap/oracle.h"
#include "streammap/streaming.h"

namespace streammap {

namespace {

// Images per streaming update call.
constexpr std::size_t kMiniBatch = 32;

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void EvaluateRun(BenchRun& run, const Dataset& ground_truth,
                 const BenchOptions& options) {
  run.dataset =
      MakeRunDataset(ground_truth, run.n_images, run.run_index, options);
  const auto& images = run.dataset.images;
  BucketedState state(options.config);
  for (std::size_t begin = 0; begin < images.size(); begin += kMiniBatch) {
    const std::size_t end = std::min(images.size(), begin + kMiniBatch);
    state.Update(std::span<const ImageRecord>(images).subspan(begin,
                                                              end - begin));
  }
  run.streaming = Finalize(state);
  run.exact = EvaluateExact(images, options.config);
}

}  // namespace

std::uint64_t RunSeed(std::uint64_t base_seed, std::size_t n_images,
                      int run_index) {
  return MixSeed(MixSeed(base_seed, n_images),
                 static_cast<std::uint64_t>(run_index));
}

Dataset MakeRunDataset(const Dataset& ground_truth, std::size_t n_images,
                       int run_index, const BenchOptions& options) {
  const std::uint64_t seed = RunSeed(options.seed, n_images, run_index);
  PerturbationParams params;
  params.translate_fraction = options.translate_fraction;
  params.scale_low = options.scale_low;
  params.scale_high = options.scale_high;
  params.seed = MixSeed(seed, 1);
  return Perturb(SampleImages(ground_truth, n_images, MixSeed(seed, 0)),
                 params);
}

BenchResult RunSynthBench(const Dataset& ground_truth,
                          const BenchOptions& options_in,
                          const std::function<void(const BenchRun&)>& on_run) {
  BenchOptions options = options_in;
  options.config.num_classes = std::max(1, ground_truth.num_classes());
  options.config.Validate();
  PerturbationParams{options.translate_fraction, options.scale_low,
                     options.scale_high, 0}
      .Validate();
  if (options.repeats < 1) throw ArgumentError("repeats must be positive");
  for (std::size_t n : options.image_counts) {
    if (n == 0 || n > ground_truth.images.size()) {
      throw ArgumentError("image count " + std::to_string(n) +
                          " is outside [1, " +
                          std::to_string(ground_truth.images.size()) + "]");
    }
  }

  std::vector<BenchRun> runs;
  for (std::size_t n : options.image_counts) {
    for (int r = 0; r < options.repeats; ++r) {
      BenchRun run;
      run.n_images = n;
      run.run_index = r;
      runs.push_back(std::move(run));
    }
  }

  const int jobs = std::clamp<int>(options.jobs, 1,
                                   static_cast<int>(runs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        EvaluateRun(runs[i], ground_truth, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  BenchResult result;
  for (const BenchRun& run : runs) {
    if (on_run) on_run(run);
    for (const MetricInfo& info : kMetrics) {
      ErrorMarginRow row;
      row.metric = std::string(info.key);
      row.n_images = run.n_images;
      row.run_index = run.run_index;
      row.streaming_value = run.streaming[info.metric];
      row.exact_value = run.exact[info.metric];
      if (row.streaming_value != kUndefinedMetric &&
          row.exact_value != kUndefinedMetric) {
        row.abs_error = std::abs(row.streaming_value - row.exact_value);
      }
      result.rows.push_back(std::move(row));
    }
  }
  result.summary = SummarizeErrors(result.rows);
  return result;
}

std::vector<ErrorSummaryRow> SummarizeErrors(
    const std::vector<ErrorMarginRow>& rows) {
  std::vector<std::size_t> counts;
  for (const auto& row : rows) {
    if (std::find(counts.begin(), counts.end(), row.n_images) == counts.end()) {
      counts.push_back(row.n_images);
    }
  }
  std::sort(counts.begin(), counts.end());
  counts.push_back(0);  // every image count

  std::vector<ErrorSummaryRow> summary;
  for (const MetricInfo& info : kMetrics) {
    for (std::size_t n : counts) {
      std::vector<double> errors;
      for (const auto& row : rows) {
        if (row.metric != info.key || (n != 0 && row.n_images != n)) continue;
        if (row.abs_error == kUndefinedMetric) continue;
        errors.push_back(row.abs_error);
      }
      ErrorSummaryRow s;
      s.metric = std::string(info.key);
      s.n_images = n;
      s.count = errors.size();
      if (!errors.empty()) {
        s.min_error = *std::min_element(errors.begin(), errors.end());
        s.max_error = *std::max_element(errors.begin(), errors.end());
        double sum = 0.0;
        for (double e : errors) sum += e;
        s.mean_error = sum / static_cast<double>(errors.size());
        if (errors.size() > 1) {
          double ss = 0.0;
          for (double e : errors) ss += (e - s.mean_error) * (e - s.mean_error);
          s.std_error = std::sqrt(ss / static_cast<double>(errors.size() - 1));
        }
      }
      summary.push_back(std::move(s));
    }
  }
  return summary;
}

std::string FormatRowsCsv(const std::vector<ErrorMarginRow>& rows) {
  std::string out =
      "metric,n_images,run_index,streaming_value,exact_value,abs_error\n";
  for (const auto& row : rows) {
    out += row.metric + "," + std::to_string(row.n_images) + "," +
           std::to_string(row.run_index) + "," +
           FormatDouble(row.streaming_value) + "," +
           FormatDouble(row.exact_value) + "," + FormatDouble(row.abs_error) +
           "\n";
  }
  return out;
}

std::string FormatSummaryCsv(const std::vector<ErrorSummaryRow>& summary) {
  std::string out =
      "metric,n_images,count,min_error,max_error,mean_error,std_error\n";
  for (const auto& s : summary) {
    out += s.metric + "," +
           (s.n_images == 0 ? std::string("all") : std::to_string(s.n_images)) +
           "," + std::to_string(s.count) + "," + FormatDouble(s.min_error) +
           "," + FormatDouble(s.max_error) + "," + FormatDouble(s.mean_error) +
           "," + FormatDouble(s.std_error) + "\n";
  }
  return out;
}

std::string FormatSummaryTable(const std::vector<ErrorSummaryRow>& summary) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-24s %10s %10s %20s\n", "Metric",
                "Min Error", "Max Error", "Mean Error");
  out += line;
  for (const MetricInfo& info : kMetrics) {
    for (const auto& s : summary) {
      if (s.metric != info.key || s.n_images != 0) continue;
      char mean[48];
      std::snprintf(mean, sizeof(mean), "%.3f+-%.3f", s.mean_error,
                    s.std_error);
      std::snprintf(line, sizeof(line), "%-24.*s %10.3f %10.3f %20s\n",
                    static_cast<int>(info.label.size()), info.label.data(),
                    s.min_error, s.max_error, mean);
      out += line;
    }
  }
  return out;
}

}  // namespace streammap
