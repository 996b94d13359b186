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

#include <limits>
#include <ostream>

namespace disrisk {

/// Extended real with a distinguished +infinity. Divergence results use this
/// instead of a floating infinity so that +inf never enters an accumulation.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static ExtReal inf() {
    ExtReal e;
    e.infinite_ = true;
    e.value_ = std::numeric_limits<double>::infinity();
    return e;
  }

  bool infinite() const { return infinite_; }

  /// Finite value; +inf as a plain double when infinite.
  double value() const { return value_; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtReal& e) {
    if (e.infinite_) return os << "inf";
    return os << e.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace disrisk
