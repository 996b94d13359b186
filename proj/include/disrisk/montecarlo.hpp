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
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "disrisk/asymptotic.hpp"
#include "disrisk/discretize.hpp"
#include "disrisk/distributions.hpp"
#include "disrisk/divergence.hpp"
#include "disrisk/errors.hpp"

namespace disrisk {

namespace detail {

/// splitmix64 finalizer; decorrelates per-replication substreams so a run is
/// reproducible for a given (seed, rep) regardless of replication order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t rep) {
  std::uint64_t z = seed + (rep + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Which divergence the risk is taken under.
struct KernelSpec {
  double alpha = 1.0;
  bool symmetrized = false;
};

struct MCConfig {
  long n = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

/// Sample statistics of the per-replication divergences. Infinite
/// replications are counted but excluded from the mean and its standard
/// error (they carry no usable magnitude).
struct RiskEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t reps = 0;
  double infinite_fraction = 0.0;
  double zero_cell_fraction = 0.0;
};

namespace detail {

class RiskAccumulator {
 public:
  void add(const ExtReal& d, bool zero_cell) {
    ++total_;
    if (zero_cell) ++zero_cells_;
    if (d.infinite()) {
      ++infinite_;
      return;
    }
    sum_ += d.value();
    sumsq_ += d.value() * d.value();
    ++finite_;
  }

  RiskEstimate finish() const {
    if (total_ == 0) throw domain_error("monte carlo: zero replications");
    RiskEstimate out;
    out.reps = total_;
    out.infinite_fraction = static_cast<double>(infinite_) / total_;
    out.zero_cell_fraction = static_cast<double>(zero_cells_) / total_;
    if (finite_ == 0) return out;
    const double k = static_cast<double>(finite_);
    out.mean = static_cast<double>(sum_ / k);
    if (finite_ > 1) {
      const double var = static_cast<double>((sumsq_ - sum_ * sum_ / k) / (k - 1));
      out.std_error = std::sqrt(std::max(var, 0.0) / k);
    }
    return out;
  }

 private:
  long double sum_ = 0.0L, sumsq_ = 0.0L;
  std::uint64_t total_ = 0, finite_ = 0, infinite_ = 0, zero_cells_ = 0;
};

inline ExtReal spec_divergence(const KernelSpec& spec, const DivergenceKernel& k_pos,
                               const DivergenceKernel& k_neg, const ProbabilityVector& m,
                               const ProbabilityVector& mhat) {
  const ExtReal d1 = f_divergence(k_pos, m, mhat);
  if (!spec.symmetrized) return d1;
  if (d1.infinite()) return ExtReal::inf();
  const ExtReal d2 = f_divergence(k_neg, m, mhat);
  if (d2.infinite()) return ExtReal::inf();
  return 0.5 * (d1.value() + d2.value());
}

inline bool has_zero_cell(const ProbabilityVector& v) {
  for (double c : v.cells())
    if (c == 0.0) return true;
  return false;
}

}  // namespace detail

/// Monte Carlo estimate of the fixed-interval risk E D[m : mhat] where mhat
/// is the MLE cell-frequency vector of an i.i.d. sample of size n.
inline RiskEstimate estimate_fixed_risk(const MotherDistribution& mother,
                                        const FixedPartition& part, const KernelSpec& spec,
                                        const MCConfig& cfg) {
  if (cfg.n < 1) throw domain_error("estimate_fixed_risk: n must be >= 1");
  if (cfg.reps < 1) throw domain_error("estimate_fixed_risk: reps must be >= 1");
  const ProbabilityVector m = cell_probabilities(mother, part);
  if (m.degenerate())
    throw domain_error("estimate_fixed_risk: partition has a degenerate cell under this mother");
  const DivergenceKernel k_pos = alpha_kernel(spec.alpha);
  const DivergenceKernel k_neg = alpha_kernel(-spec.alpha);
  const auto& a = part.endpoints();
  const double inv_n = 1.0 / static_cast<double>(cfg.n);

  detail::RiskAccumulator acc;
  std::vector<double> mhat_cells(a.size() + 1);
  for (std::uint64_t rep = 0; rep < cfg.reps; ++rep) {
    std::mt19937_64 rng(detail::substream_seed(cfg.seed, rep));
    std::fill(mhat_cells.begin(), mhat_cells.end(), 0.0);
    for (long j = 0; j < cfg.n; ++j) {
      const double x = mother.sampler(rng);
      const size_t cell = std::upper_bound(a.begin(), a.end(), x) - a.begin();
      mhat_cells[cell] += 1.0;
    }
    for (double& c : mhat_cells) c *= inv_n;
    const ProbabilityVector mhat = ProbabilityVector::empirical(mhat_cells);
    acc.add(detail::spec_divergence(spec, k_pos, k_neg, m, mhat), detail::has_zero_cell(mhat));
  }
  return acc.finish();
}

/// Monte Carlo estimate of the moving-interval risk E D[m : mhat] under the
/// randomized rank rule. The spacing law is mother-free, but the estimate is
/// still computed through the mother's cdf so invariance is checkable.
inline RiskEstimate estimate_moving_risk(const MotherDistribution& mother,
                                         const QuantileDesign& design, const KernelSpec& spec,
                                         const MCConfig& cfg) {
  if (cfg.n < 1) throw domain_error("estimate_moving_risk: n must be >= 1");
  if (cfg.reps < 1) throw domain_error("estimate_moving_risk: reps must be >= 1");
  const ProbabilityVector m = design.target_cells();
  const DivergenceKernel k_pos = alpha_kernel(spec.alpha);
  const DivergenceKernel k_neg = alpha_kernel(-spec.alpha);

  detail::RiskAccumulator acc;
  std::vector<double> sample(cfg.n);
  for (std::uint64_t rep = 0; rep < cfg.reps; ++rep) {
    std::mt19937_64 rng(detail::substream_seed(cfg.seed, rep));
    const auto ranks = ranks_for(design, cfg.n, rng);
    for (double& x : sample) x = mother.sampler(rng);
    std::sort(sample.begin(), sample.end());
    const MovingEstimate est = moving_estimate(design, ranks, sample, mother);
    acc.add(detail::spec_divergence(spec, k_pos, k_neg, m, est.realized),
            detail::has_zero_cell(est.realized));
  }
  return acc.finish();
}

struct CurvePoint {
  long n = 0;
  RiskEstimate mc;
  double expansion = 0.0;
};

/// Runs an estimator across sample sizes and pairs each point with the
/// two-term expansion value.
inline std::vector<CurvePoint> risk_curve(const std::vector<long>& ns,
                                          const std::function<RiskEstimate(long)>& estimator,
                                          const std::function<double(long)>& expansion_at) {
  std::vector<CurvePoint> out;
  out.reserve(ns.size());
  for (long n : ns) out.push_back({n, estimator(n), expansion_at(n)});
  return out;
}

}  // namespace disrisk
