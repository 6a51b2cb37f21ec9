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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "streammap/errors.h"
#include "streammap/geometry.h"
#include "streammap/ingest.h"
#include "streammap/matching.h"
#include "streammap/oracle.h"
#include "streammap/report.h"
#include "streammap/state_io.h"
#include "streammap/streaming.h"

namespace py = pybind11;

namespace streammap {
namespace {

std::string BoxRepr(const BoundingBox& b) {
  return "BoundingBox(" + std::to_string(b.left) + ", " +
         std::to_string(b.top) + ", " + std::to_string(b.right) + ", " +
         std::to_string(b.bottom) + ")";
}

py::dict ReportToDict(const MetricReport& report) {
  py::dict d;
  for (const MetricInfo& info : kMetrics) {
    d[py::str(std::string(info.key))] = report[info.metric];
  }
  return d;
}

void BindErrors(py::module_& m) {
  static py::exception<Error> base(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<MergeError>(m, "MergeError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
}

void BindGeometry(py::module_& m) {
  py::class_<BoundingBox>(m, "BoundingBox")
      .def(py::init<>())
      .def(py::init([](double l, double t, double r, double b) {
             return BoundingBox{l, t, r, b};
           }),
           py::arg("left"), py::arg("top"), py::arg("right"),
           py::arg("bottom"))
      .def_readwrite("left", &BoundingBox::left)
      .def_readwrite("top", &BoundingBox::top)
      .def_readwrite("right", &BoundingBox::right)
      .def_readwrite("bottom", &BoundingBox::bottom)
      .def(py::self == py::self)
      .def("__repr__", &BoxRepr);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def(py::init([](const BoundingBox& box, int class_id) {
             return GroundTruth{box, class_id};
           }),
           py::arg("box"), py::arg("class_id"))
      .def_readwrite("box", &GroundTruth::box)
      .def_readwrite("class_id", &GroundTruth::class_id)
      .def(py::self == py::self);

  py::class_<Detection>(m, "Detection")
      .def(py::init([](const BoundingBox& box, int class_id,
                       double confidence) {
             return Detection{box, class_id, confidence};
           }),
           py::arg("box"), py::arg("class_id"), py::arg("confidence"))
      .def_readwrite("box", &Detection::box)
      .def_readwrite("class_id", &Detection::class_id)
      .def_readwrite("confidence", &Detection::confidence)
      .def(py::self == py::self);

  m.def("iou", &Iou, py::arg("a"), py::arg("b"),
        "Intersection over union of two corner-format boxes.");
  m.def("box_area", &BoxArea, py::arg("box"));
  m.def("strip_padding",
        py::overload_cast<const std::vector<GroundTruth>&>(
            &StripPadding<GroundTruth>),
        py::arg("boxes"));
  m.def("strip_padding",
        py::overload_cast<const std::vector<Detection>&>(
            &StripPadding<Detection>),
        py::arg("boxes"));
}

void BindConfig(py::module_& m) {
  py::class_<AreaRange>(m, "AreaRange")
      .def(py::init([](double lo, double hi) { return AreaRange{lo, hi}; }),
           py::arg("min_area") = 0.0, py::arg("max_area") = kUnboundedArea)
      .def_readwrite("min_area", &AreaRange::min_area)
      .def_readwrite("max_area", &AreaRange::max_area)
      .def("contains", &AreaRange::Contains);

  py::class_<NamedAreaRange>(m, "NamedAreaRange")
      .def(py::init([](std::string name, AreaRange range) {
             return NamedAreaRange{std::move(name), range};
           }),
           py::arg("name"), py::arg("range"))
      .def_readwrite("name", &NamedAreaRange::name)
      .def_readwrite("range", &NamedAreaRange::range);

  py::class_<EvalConfig>(m, "EvalConfig")
      .def(py::init<>())
      .def_readwrite("iou_thresholds", &EvalConfig::iou_thresholds)
      .def_readwrite("recall_thresholds", &EvalConfig::recall_thresholds)
      .def_readwrite("buckets", &EvalConfig::buckets)
      .def_readwrite("area_ranges", &EvalConfig::area_ranges)
      .def_readwrite("max_dets_list", &EvalConfig::max_dets_list)
      .def_readwrite("num_classes", &EvalConfig::num_classes)
      .def("validate", &EvalConfig::Validate)
      .def(py::self == py::self);

  m.def("default_config", &DefaultConfig, py::arg("num_classes") = 1);
}

void BindMatching(py::module_& m) {
  py::class_<Verdict>(m, "Verdict")
      .def_readonly("confidence", &Verdict::confidence)
      .def_readonly("is_tp", &Verdict::is_tp);
  py::class_<MatchResult>(m, "MatchResult")
      .def_readonly("verdicts", &MatchResult::verdicts)
      .def_readonly("gt_count", &MatchResult::gt_count)
      .def_property_readonly("tp_count", &MatchResult::tp_count);
  m.def(
      "match_image_class",
      [](const std::vector<Detection>& dets,
         const std::vector<GroundTruth>& gts, double theta, int max_dets,
         const AreaRange& area) {
        return MatchImageClass(dets, gts, theta, max_dets, area);
      },
      py::arg("detections"), py::arg("ground_truths"), py::arg("theta"),
      py::arg("max_dets") = 100, py::arg("area") = AreaRange{});
}

void BindStreaming(py::module_& m) {
  py::class_<ImageRecord>(m, "ImageRecord")
      .def(py::init([](std::int64_t id, std::vector<Detection> dets,
                       std::vector<GroundTruth> gts) {
             return ImageRecord{id, std::move(dets), std::move(gts)};
           }),
           py::arg("image_id") = 0,
           py::arg("detections") = std::vector<Detection>{},
           py::arg("ground_truths") = std::vector<GroundTruth>{})
      .def_readwrite("image_id", &ImageRecord::image_id)
      .def_readwrite("detections", &ImageRecord::detections)
      .def_readwrite("ground_truths", &ImageRecord::ground_truths);

  py::class_<MetricReport>(m, "MetricReport")
      .def("to_dict", &ReportToDict)
      .def("__getitem__",
           [](const MetricReport& r, const std::string& key) {
             for (const MetricInfo& info : kMetrics) {
               if (info.key == key) return r[info.metric];
             }
             throw py::key_error(key);
           })
      .def("__repr__", [](const MetricReport& r) {
        return FormatReportTable(r);
      });

  m.def("bucket_index", &BucketIndex, py::arg("confidence"),
        py::arg("buckets"));
  m.def(
      "interpolate_ap",
      [](const std::vector<double>& recalls,
         const std::vector<double>& precisions,
         const std::vector<double>& thresholds) {
        return InterpolateAp(recalls, precisions, thresholds);
      },
      py::arg("recalls"), py::arg("precisions"),
      py::arg("recall_thresholds") = DefaultRecallThresholds());

  py::class_<BucketedState>(m, "BucketedState")
      .def(py::init<EvalConfig>(), py::arg("config"))
      .def_property_readonly("config", &BucketedState::config)
      .def(
          "update",
          [](BucketedState& s, const std::vector<ImageRecord>& batch) {
            py::gil_scoped_release release;
            s.Update(batch);
          },
          py::arg("batch"))
      .def("merge_from", &BucketedState::MergeFrom, py::arg("other"))
      .def("tp", &BucketedState::tp)
      .def("fp", &BucketedState::fp)
      .def("gt_count", &BucketedState::gt_count)
      .def("total_tp", &BucketedState::total_tp)
      .def("serialize", &SerializeState)
      .def_static(
          "deserialize",
          [](const std::string& text) { return DeserializeState(text); })
      .def("save", [](const BucketedState& s,
                      const std::filesystem::path& p) { SaveState(s, p); })
      .def_static("load", &LoadState)
      .def(py::self == py::self);

  m.def("new_state", &NewState, py::arg("config"));
  m.def("merge", &Merge, py::arg("a"), py::arg("b"));
  m.def("finalize", &Finalize, py::arg("state"));
  m.def(
      "evaluate_exact",
      [](const std::vector<ImageRecord>& images, const EvalConfig& config) {
        py::gil_scoped_release release;
        return EvaluateExact(images, config);
      },
      py::arg("dataset"), py::arg("config"));
}

void BindIngest(py::module_& m) {
  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def_readwrite("images", &Dataset::images)
      .def_readwrite("category_ids", &Dataset::category_ids)
      .def_readwrite("category_names", &Dataset::category_names)
      .def_property_readonly("num_classes", &Dataset::num_classes)
      .def(py::self == py::self);

  py::class_<PerturbationParams>(m, "PerturbationParams")
      .def(py::init([](double t, double lo, double hi, std::uint64_t seed) {
             return PerturbationParams{t, lo, hi, seed};
           }),
           py::arg("translate_fraction") = 0.2, py::arg("scale_low") = 0.8,
           py::arg("scale_high") = 1.2, py::arg("seed") = 0)
      .def_readwrite("translate_fraction",
                     &PerturbationParams::translate_fraction)
      .def_readwrite("scale_low", &PerturbationParams::scale_low)
      .def_readwrite("scale_high", &PerturbationParams::scale_high)
      .def_readwrite("seed", &PerturbationParams::seed);

  m.def("load_ground_truth", &LoadGroundTruthFile, py::arg("path"));
  m.def("load_detections", &LoadDetectionsFile, py::arg("path"),
        py::arg("base"));
  m.def(
      "parse_ground_truth",
      [](const std::string& text) { return ParseGroundTruth(text); },
      py::arg("text"));
  m.def(
      "parse_detections",
      [](const std::string& text, const Dataset& base) {
        return ParseDetections(text, base);
      },
      py::arg("text"), py::arg("base"));
  m.def("sample_images", &SampleImages, py::arg("dataset"), py::arg("n"),
        py::arg("seed"));
  m.def("perturb", &Perturb, py::arg("dataset"), py::arg("params"));
}

}  // namespace
}  // namespace streammap

PYBIND11_MODULE(_streammap, m) {
  m.doc() = "Streaming, mergeable COCO-style detection metrics";
  streammap::BindErrors(m);
  streammap::BindGeometry(m);
  streammap::BindConfig(m);
  streammap::BindMatching(m);
  streammap::BindStreaming(m);
  streammap::BindIngest(m);
}
