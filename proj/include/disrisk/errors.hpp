// Copyright 2026 The disrisk Authors
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

namespace disrisk {

/// Invalid parameter or argument outside the mathematical domain.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// Mismatched vector lengths.
class shape_error : public std::invalid_argument {
 public:
  explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A quantile design that cannot be realized at the given sample size
/// (rank collision, out-of-range rank).
class design_error : public std::invalid_argument {
 public:
  explicit design_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Enumeration size exceeds the configured budget.
class budget_error : public std::length_error {
 public:
  explicit budget_error(const std::string& what) : std::length_error(what) {}
};

}  // namespace disrisk
