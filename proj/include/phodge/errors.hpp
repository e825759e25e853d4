/* Copyright 2026 The phodge Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef PHODGE_ERRORS_HPP
#define PHODGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phodge {

/// Bad input: mismatched contexts, malformed data, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The answer cannot be decided at the working precision. Callers may retry
/// with a larger precision.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// A Newton-polygon coefficient needed for the hull is zero to precision.
class PrecisionInsufficient : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

/// Slope factors of a characteristic polynomial could not be separated.
class SlopeFactorizationFailed : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

/// A truncated series is too short to decide; needed_order says how long it
/// has to be.
class TruncationTooSmall : public PrecisionError {
 public:
  TruncationTooSmall(const std::string& what, long needed_order) : PrecisionError(what), needed_order_(needed_order) {}
  long needed_order() const { return needed_order_; }

 private:
  long needed_order_;
};

}  // namespace phodge

#endif  // PHODGE_ERRORS_HPP
