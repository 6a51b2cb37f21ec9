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

#include "streammap/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "streammap/bench.h"
#include "streammap/errors.h"
#include "streammap/ingest.h"
#include "streammap/oracle.h"
#include "streammap/state_io.h"
#include "streammap/streaming.h"

namespace streammap {

namespace {

constexpr char kRowsColumns[] =
    "metric,n_images,run_index,streaming_value,exact_value,abs_error";
constexpr char kSummaryColumns[] =
    "metric,n_images,count,min_error,max_error,mean_error,std_error";

// Evaluation-grid flags shared by every subcommand.
struct GridFlags {
  std::optional<int> buckets;
  std::string iou_thresholds;
  std::string recall_thresholds;
  std::string area_ranges;
  std::string max_dets;

  void Register(CLI::App* app) {
    app->add_option("--buckets", buckets,
                    "Confidence buckets of the streaming state (default 10000)");
    app->add_option("--iou-thresholds", iou_thresholds,
                    "Comma-separated IoU thresholds (default 0.50:0.05:0.95)");
    app->add_option("--recall-thresholds", recall_thresholds,
                    "Comma-separated recall thresholds (default 0:0.01:1)");
    app->add_option("--area-ranges", area_ranges,
                    "name=min:max list, e.g. all=0:inf,small=0:1024");
    app->add_option("--max-dets", max_dets,
                    "Comma-separated per-image detection limits (default "
                    "1,10,100)");
  }

  EvalConfig Build(int num_classes) const {
    EvalConfig config = DefaultConfig(std::max(1, num_classes));
    if (buckets) config.buckets = *buckets;
    if (!iou_thresholds.empty()) {
      config.iou_thresholds = ParseThresholdList(iou_thresholds);
    }
    if (!recall_thresholds.empty()) {
      config.recall_thresholds = ParseThresholdList(recall_thresholds);
    }
    if (!area_ranges.empty()) config.area_ranges = ParseAreaRanges(area_ranges);
    if (!max_dets.empty()) config.max_dets_list = ParseMaxDets(max_dets);
    config.Validate();
    return config;
  }
};

void WriteText(const std::string& path, const std::string& text,
               std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error("failed writing " + path);
}

std::string FormatReport(const MetricReport& report,
                         const std::string& format) {
  if (format == "json") return FormatReportJson(report);
  if (format == "csv") return FormatReportCsv(report);
  return FormatReportTable(report);
}

struct EvaluateCommand {
  std::string gt_path;
  std::string det_path;
  std::string mode = "streaming";
  std::string format = "table";
  std::string output;
  std::string save_state;
  GridFlags grid;

  void Register(CLI::App* app) {
    app->add_option("ground_truth", gt_path, "Annotation JSON")->required();
    app->add_option("detections", det_path, "Results JSON")->required();
    app->add_option("--mode", mode, "streaming (bucketed) or exact")
        ->check(CLI::IsMember({"streaming", "exact"}));
    app->add_option("--format", format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app->add_option("-o,--output", output, "Report path (default stdout)");
    app->add_option("--save-state", save_state,
                    "Write the streaming state snapshot here");
    grid.Register(app);
  }

  void Run(std::ostream& out) const {
    const Dataset gt = LoadGroundTruthFile(gt_path);
    const Dataset dataset = LoadDetectionsFile(det_path, gt);
    const EvalConfig config = grid.Build(dataset.num_classes());
    MetricReport report;
    if (mode == "exact") {
      if (!save_state.empty()) {
        throw Error("--save-state requires --mode streaming");
      }
      report = EvaluateExact(dataset.images, config);
    } else {
      BucketedState state(config);
      state.Update(dataset.images);
      report = Finalize(state);
      if (!save_state.empty()) SaveState(state, save_state);
    }
    WriteText(output, FormatReport(report, format), out);
  }
};

struct MergeCommand {
  std::vector<std::string> inputs;
  std::string output;
  bool report = false;
  std::string format = "table";

  void Register(CLI::App* app) {
    app->add_option("states", inputs, "State snapshots to merge")
        ->required();
    app->add_option("-o,--output", output, "Merged snapshot path")
        ->required();
    app->add_flag("--report", report, "Print the merged metrics");
    app->add_option("--format", format, "Report format: table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
  }

  void Run(std::ostream& out) const {
    std::optional<BucketedState> merged;
    for (const std::string& path : inputs) {
      BucketedState state = LoadState(path);
      if (!merged) {
        merged.emplace(std::move(state));
        continue;
      }
      if (!(merged->config() == state.config())) {
        throw MergeError("configuration of " + path + " differs from " +
                         inputs.front());
      }
      merged->MergeFrom(state);
    }
    SaveState(*merged, output);
    if (report) out << FormatReport(Finalize(*merged), format);
  }
};

struct SynthBenchCommand {
  std::string gt_path;
  std::vector<std::size_t> image_counts = kDefaultImageCounts;
  int repeats = 10;
  std::uint64_t seed = 0;
  double translate = 0.2;
  double scale_low = 0.8;
  double scale_high = 1.2;
  int jobs = 1;
  std::string output;
  std::string summary;
  std::string export_dir;
  GridFlags grid;

  void Register(CLI::App* app) {
    app->add_option("ground_truth", gt_path, "Annotation JSON")->required();
    app->add_option("--image-counts", image_counts,
                    "Images sampled per run (default 10,50,100,500)")
        ->delimiter(',');
    app->add_option("--repeats", repeats, "Runs per image count");
    app->add_option("--seed", seed, "Base random seed");
    app->add_option("--translate", translate,
                    "Max shift as a fraction of box width/height");
    app->add_option("--scale-low", scale_low, "Lower size scale factor");
    app->add_option("--scale-high", scale_high, "Upper size scale factor");
    app->add_option("--jobs", jobs, "Worker threads");
    app->add_option("-o,--output", output,
                    std::string("Per-run CSV (default stdout). Columns: ") +
                        kRowsColumns);
    app->add_option("--summary", summary,
                    std::string("Summary CSV path. Columns: ") +
                        kSummaryColumns + " (n_images 'all' spans every run)");
    app->add_option("--export-dir", export_dir,
                    "Also write each run's annotations and results in the "
                    "challenge JSON formats to this directory");
    grid.Register(app);
  }

  void Run(std::ostream& out, std::ostream& err) const {
    const Dataset gt = LoadGroundTruthFile(gt_path);
    BenchOptions options;
    options.image_counts = image_counts;
    options.repeats = repeats;
    options.seed = seed;
    options.translate_fraction = translate;
    options.scale_low = scale_low;
    options.scale_high = scale_high;
    options.jobs = jobs;
    options.config = grid.Build(gt.num_classes());

    std::function<void(const BenchRun&)> exporter;
    if (!export_dir.empty()) {
      std::filesystem::create_directories(export_dir);
      exporter = [this](const BenchRun& run) {
        const std::string stem = "run_n" + std::to_string(run.n_images) +
                                 "_r" + std::to_string(run.run_index);
        const auto dir = std::filesystem::path(export_dir);
        std::ostringstream unused;
        WriteText((dir / (stem + "_gt.json")).string(),
                  ToChallengeGroundTruthJson(run.dataset), unused);
        WriteText((dir / (stem + "_dets.json")).string(),
                  ToChallengeResultsJson(run.dataset), unused);
      };
    }
    const BenchResult result = RunSynthBench(gt, options, exporter);
    WriteText(output, FormatRowsCsv(result.rows), out);
    if (!summary.empty()) {
      WriteText(summary, FormatSummaryCsv(result.summary), out);
    }
    err << FormatSummaryTable(result.summary);
  }
};

struct SynthGtCommand {
  SyntheticGroundTruthParams params;
  std::string output;

  void Register(CLI::App* app) {
    app->add_option("--images", params.num_images, "Number of images");
    app->add_option("--classes", params.num_classes, "Number of categories");
    app->add_option("--mean-boxes", params.mean_boxes_per_image,
                    "Mean boxes per image");
    app->add_option("--seed", params.seed, "Random seed");
    app->add_option("-o,--output", output, "Annotation JSON path")
        ->required();
  }

  void Run(std::ostream& out) const {
    WriteText(output, ToChallengeGroundTruthJson(GenerateGroundTruth(params)),
              out);
  }
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Streaming, mergeable COCO-style detection metrics"};
  app.name("streammap");
  app.require_subcommand(1);

  EvaluateCommand evaluate;
  evaluate.Register(app.add_subcommand(
      "evaluate", "Compute the 12 standard metrics for a results file"));
  MergeCommand merge;
  merge.Register(
      app.add_subcommand("merge", "Sum state snapshots from several shards"));
  SynthBenchCommand bench;
  bench.Register(app.add_subcommand(
      "synth-bench",
      "Streaming vs exact error study on perturbed ground truth"));
  SynthGtCommand synth_gt;
  synth_gt.Register(app.add_subcommand(
      "synth-gt", "Write a synthetic annotation file for benchmarking"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (app.got_subcommand("evaluate")) {
      evaluate.Run(out);
    } else if (app.got_subcommand("merge")) {
      merge.Run(out);
    } else if (app.got_subcommand("synth-bench")) {
      bench.Run(out, err);
    } else if (app.got_subcommand("synth-gt")) {
      synth_gt.Run(out);
    }
  } catch (const std::exception& e) {
    err << "streammap: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace streammap
