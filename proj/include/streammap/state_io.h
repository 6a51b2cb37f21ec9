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

#ifndef STREAMMAP_STATE_IO_H_
#define STREAMMAP_STATE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "streammap/streaming.h"

namespace streammap {

// Snapshot format: a JSON document
//
//   {"format": "streammap-state", "version": 1,
//    "config": {...}, "gt_counts": [[class, area, count], ...],
//    "cells": [[iou, class, area, max_dets, bucket, tp, fp], ...]}
//
// listing only non-zero counters in ascending index order. The encoding
// is canonical: logically equal states serialize to identical bytes.
std::string SerializeState(const BucketedState& state);

// Throws ParseError on malformed text, ConfigError on a bad config and
// ValidationError on out-of-range indices.
BucketedState DeserializeState(std::string_view text,
                               std::string_view source = "<memory>");

void SaveState(const BucketedState& state, const std::filesystem::path& path);
BucketedState LoadState(const std::filesystem::path& path);

}  // namespace streammap

#endif  // STREAMMAP_STATE_IO_H_
