// Copyright 2026 The arrowtime Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace arrowtime {

/// Bad shape, bad dimension, or a value that violates a documented invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver precondition does not hold (e.g. a rank-deficient state was given
/// to a full-rank solver). The message names the variant that does apply.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Operation is not defined for the given input class.
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Base for problems with externally supplied data (tables, files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A correlator table lacks an entry.
class MissingEntry : public DataError {
 public:
  MissingEntry(std::string a, std::string b)
      : DataError("missing correlator entry (" + a + ", " + b + ")"),
        first_(std::move(a)),
        second_(std::move(b)) {}

  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

/// A correlator value is out of range or otherwise malformed.
class InvalidData : public DataError {
 public:
  using DataError::DataError;
};

/// A PDM whose marginals are not valid density matrices.
class CorruptPdm : public DataError {
 public:
  using DataError::DataError;
};

/// Data that no state + linear map pair reproduces under either labeling.
class CorruptData : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace arrowtime
