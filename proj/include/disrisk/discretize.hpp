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

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "disrisk/distributions.hpp"
#include "disrisk/divergence.hpp"
#include "disrisk/errors.hpp"

namespace disrisk {

/// Finite endpoints a_1 < ... < a_p; a_0 = -inf and a_{p+1} = +inf are
/// implicit, so p endpoints induce p+1 cells.
class FixedPartition {
 public:
  explicit FixedPartition(std::vector<double> endpoints) : endpoints_(std::move(endpoints)) {
    if (endpoints_.empty()) throw domain_error("FixedPartition: need at least one endpoint");
    for (size_t i = 0; i + 1 < endpoints_.size(); ++i) {
      if (!(endpoints_[i] < endpoints_[i + 1]))
        throw domain_error("FixedPartition: endpoints must be strictly increasing");
    }
  }

  const std::vector<double>& endpoints() const { return endpoints_; }
  int p() const { return static_cast<int>(endpoints_.size()); }

 private:
  std::vector<double> endpoints_;
};

/// Percentile levels 0 < lambda_1 < ... < lambda_p < 1 (lambda_0 = 0 and
/// lambda_{p+1} = 1 implicit). Target cell probabilities are the level gaps.
class QuantileDesign {
 public:
  explicit QuantileDesign(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw domain_error("QuantileDesign: need at least one level");
    double prev = 0.0;
    for (double l : levels_) {
      if (!(l > prev && l < 1.0))
        throw domain_error("QuantileDesign: levels must be strictly increasing in (0,1)");
      prev = l;
    }
  }

  /// Equi-probable design lambda_i = i/k, i = 1..k-1.
  static QuantileDesign deciles(int k) {
    if (k < 2) throw domain_error("QuantileDesign::deciles: need k >= 2");
    std::vector<double> lv(k - 1);
    for (int i = 1; i < k; ++i) lv[i - 1] = static_cast<double>(i) / k;
    return QuantileDesign(std::move(lv));
  }

  const std::vector<double>& levels() const { return levels_; }
  int p() const { return static_cast<int>(levels_.size()); }

  ProbabilityVector target_cells() const {
    std::vector<double> m(levels_.size() + 1);
    double prev = 0.0;
    for (size_t i = 0; i < levels_.size(); ++i) {
      m[i] = levels_[i] - prev;
      prev = levels_[i];
    }
    m.back() = 1.0 - prev;
    return ProbabilityVector::model(std::move(m));
  }

  /// Fractional parts rbar_i = floor(n lambda_i) - n lambda_i, in [-1, 0].
  std::vector<double> rbar(long n) const {
    std::vector<double> rb(levels_.size());
    for (size_t i = 0; i < levels_.size(); ++i) {
      const double nl = static_cast<double>(n) * levels_[i];
      rb[i] = std::floor(nl) - nl;
    }
    return rb;
  }

  std::vector<long> floor_ranks(long n) const {
    std::vector<long> r(levels_.size());
    for (size_t i = 0; i < levels_.size(); ++i)
      r[i] = static_cast<long>(std::floor(static_cast<double>(n) * levels_[i]));
    return r;
  }

 private:
  std::vector<double> levels_;
};

/// m_i = P(a_i, a_{i+1}). Cells below the degenerate threshold are kept and
/// flagged through ProbabilityVector::degenerate(), not rejected: tiny cells
/// are exactly the regime where the fixed-interval risk blows up.
inline ProbabilityVector cell_probabilities(const MotherDistribution& d,
                                            const FixedPartition& part) {
  const auto& a = part.endpoints();
  std::vector<double> m(a.size() + 1);
  double prev = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double f = d.cdf(a[i]);
    m[i] = f - prev;
    prev = f;
  }
  m.back() = 1.0 - prev;
  for (double& c : m) c = std::max(c, 0.0);
  return ProbabilityVector::model_maybe_degenerate(std::move(m));
}

/// MLE cell frequencies: counts / n with half-open cells [a_i, a_{i+1}).
inline ProbabilityVector mle_from_sample(const FixedPartition& part,
                                         std::span<const double> sample) {
  if (sample.empty()) throw domain_error("mle_from_sample: empty sample");
  const auto& a = part.endpoints();
  std::vector<double> counts(a.size() + 1, 0.0);
  for (double x : sample) {
    const size_t cell = std::upper_bound(a.begin(), a.end(), x) - a.begin();
    counts[cell] += 1.0;
  }
  const double inv_n = 1.0 / static_cast<double>(sample.size());
  for (double& c : counts) c *= inv_n;
  return ProbabilityVector::empirical(std::move(counts));
}

/// M = sum 1/m_i; +inf when any cell is degenerate. Minimum (p+1)^2 at the
/// uniform vector.
inline double m_statistic(const ProbabilityVector& m) {
  double s = 0.0;
  for (double c : m.cells()) {
    if (c < kDegenerateCell) return std::numeric_limits<double>::infinity();
    s += 1.0 / c;
  }
  return s;
}

/// Randomized rank rule: n_i = floor(n lambda_i) with probability 1 + rbar_i,
/// floor(n lambda_i) + 1 with probability -rbar_i. Ranks that collide mean
/// the design is infeasible at this n.
inline std::vector<long> ranks_for(const QuantileDesign& design, long n, std::mt19937_64& rng) {
  const auto fl = design.floor_ranks(n);
  const auto rb = design.rbar(n);
  if (fl.front() < 1 || fl.back() + 1 > n)
    throw design_error("ranks_for: n too small for the design");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<long> ranks(fl.size());
  for (size_t i = 0; i < fl.size(); ++i) {
    const double p_floor = 1.0 + rb[i];
    ranks[i] = (rb[i] == 0.0 || unif(rng) < p_floor) ? fl[i] : fl[i] + 1;
  }
  for (size_t i = 0; i + 1 < ranks.size(); ++i) {
    if (ranks[i] >= ranks[i + 1]) throw design_error("ranks_for: rank collision, n too small");
  }
  return ranks;
}

struct MovingEstimate {
  ProbabilityVector target;    // level gaps m
  ProbabilityVector realized;  // mhat_i = F(X_(n_{i+1})) - F(X_(n_i))
};

/// Moving-interval estimate from a sorted sample. The realized vector is the
/// vector of uniform order-statistic spacings F(X_(n_{i+1})) - F(X_(n_i)),
/// whose law does not depend on the mother distribution.
inline MovingEstimate moving_estimate(const QuantileDesign& design, std::span<const long> ranks,
                                      std::span<const double> sorted_sample,
                                      const MotherDistribution& mother) {
  if (ranks.size() != design.levels().size())
    throw shape_error("moving_estimate: rank count does not match design");
  const long n = static_cast<long>(sorted_sample.size());
  std::vector<double> mhat(ranks.size() + 1);
  double prev = 0.0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 1 || ranks[i] > n) throw design_error("moving_estimate: rank out of range");
    const double u = mother.cdf(sorted_sample[ranks[i] - 1]);
    mhat[i] = u - prev;
    prev = u;
  }
  mhat.back() = 1.0 - prev;
  for (double& c : mhat) c = std::max(c, 0.0);
  return {design.target_cells(), ProbabilityVector::empirical(std::move(mhat))};
}

/// Convenience overload: draws ranks, sorts a copy of the sample.
inline MovingEstimate moving_estimate(const QuantileDesign& design,
                                      std::span<const double> sample,
                                      const MotherDistribution& mother, std::mt19937_64& rng) {
  const auto ranks = ranks_for(design, static_cast<long>(sample.size()), rng);
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  return moving_estimate(design, ranks, sorted, mother);
}

}  // namespace disrisk
