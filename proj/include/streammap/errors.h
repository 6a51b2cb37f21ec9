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

#ifndef STREAMMAP_ERRORS_H_
#define STREAMMAP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace streammap {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid EvalConfig, thresholds, or bucket counts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke a precondition (mixed classes, length mismatch, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// A value lies outside its mathematical domain, e.g. confidence > 1.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two states with different configurations cannot be merged.
class MergeError : public Error {
 public:
  using Error::Error;
};

// Malformed input document. The message names the source and location.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad argument to a dataset operation (e.g. sampling too many images).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace streammap

#endif  // STREAMMAP_ERRORS_H_
