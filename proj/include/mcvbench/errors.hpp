// Copyright 2026 The mcvbench Authors. All Rights Reserved.
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

#ifndef MCVBENCH_ERRORS_HPP
#define MCVBENCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mcvbench {

/// A severity or argument outside its admissible range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Invalid grid or tool configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unreadable or malformed input data (images, CSV, JSON, labels).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure while writing outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Results that do not match the manifest they claim to describe.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A statistic that is undefined for the given input (empty, zero mean, constant).
class StatisticsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mcvbench

#endif  // MCVBENCH_ERRORS_HPP
