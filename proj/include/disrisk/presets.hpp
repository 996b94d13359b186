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

#include <string>
#include <vector>

#include "disrisk/discretize.hpp"
#include "disrisk/distributions.hpp"
#include "disrisk/errors.hpp"

namespace disrisk {

/// A canonical benchmark configuration: a mother distribution, a fixed
/// partition with nine equi-spaced endpoints, the decile quantile design, and
/// a reference sample size for the fixed scheme.
struct ExperimentPreset {
  std::string name;
  std::string mother_id;
  std::vector<double> endpoints;
  std::vector<double> levels;
  double alpha = 1.0;
  long reference_n = 100;

  MotherDistribution mother() const { return make_distribution(mother_id); }
  FixedPartition partition() const { return FixedPartition(endpoints); }
  QuantileDesign design() const { return QuantileDesign(levels); }
};

inline std::vector<ExperimentPreset> preset_catalog() {
  auto grid = [](double lo, double step, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = lo + step * i;
    return g;
  };
  const std::vector<double> deciles = grid(0.1, 0.1, 9);
  std::vector<ExperimentPreset> cat;
  cat.push_back({"normal-paper", "normal(0,1)", grid(-2.0, 0.5, 9), deciles, 1.0, 100});
  cat.push_back({"skewt-paper", "skewt(0.8,inf)", grid(-2.0, 0.5, 9), deciles, 1.0, 100});
  cat.push_back({"beta-paper", "beta(2,5)", grid(0.1, 0.1, 9), deciles, 1.0, 100});
  return cat;
}

inline ExperimentPreset find_preset(const std::string& name) {
  for (const auto& p : preset_catalog())
    if (p.name == name) return p;
  throw domain_error("find_preset: unknown preset '" + name + "'");
}

}  // namespace disrisk
