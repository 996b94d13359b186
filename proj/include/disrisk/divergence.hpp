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

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "disrisk/errors.hpp"
#include "disrisk/extreal.hpp"

namespace disrisk {

/// Cells below this threshold are treated as degenerate (effectively zero).
inline constexpr double kDegenerateCell = 1e-300;

/// Finite probability vector (m_0, ..., m_p). Model vectors are strictly
/// positive and sum to one; empirical vectors (estimator output) may contain
/// zeros and carry a flag saying so.
class ProbabilityVector {
 public:
  static ProbabilityVector model(std::vector<double> cells) {
    if (cells.size() < 2) throw shape_error("ProbabilityVector: need at least two cells");
    double sum = 0.0;
    for (double c : cells) {
      if (!(c > 0.0)) throw domain_error("ProbabilityVector::model: cells must be positive");
      sum += c;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw domain_error("ProbabilityVector::model: cells must sum to 1");
    return ProbabilityVector(std::move(cells), /*empirical=*/false);
  }

  /// Model vector that may contain degenerate (effectively zero) cells, e.g.
  /// cell probabilities of a partition reaching outside the support.
  static ProbabilityVector model_maybe_degenerate(std::vector<double> cells) {
    if (cells.size() < 2) throw shape_error("ProbabilityVector: need at least two cells");
    double sum = 0.0;
    for (double c : cells) {
      if (c < 0.0) throw domain_error("ProbabilityVector: cells must be nonnegative");
      sum += c;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw domain_error("ProbabilityVector: cells must sum to 1");
    return ProbabilityVector(std::move(cells), /*empirical=*/false);
  }

  static ProbabilityVector empirical(std::vector<double> cells) {
    if (cells.size() < 2) throw shape_error("ProbabilityVector: need at least two cells");
    for (double c : cells) {
      if (c < 0.0) throw domain_error("ProbabilityVector::empirical: cells must be nonnegative");
    }
    return ProbabilityVector(std::move(cells), /*empirical=*/true);
  }

  const std::vector<double>& cells() const { return cells_; }
  double operator[](size_t i) const { return cells_[i]; }
  /// Dimension p: number of cells minus one.
  int p() const { return static_cast<int>(cells_.size()) - 1; }
  bool empirical() const { return empirical_; }
  bool degenerate() const {
    for (double c : cells_)
      if (c < kDegenerateCell) return true;
    return false;
  }

 private:
  ProbabilityVector(std::vector<double> cells, bool empirical)
      : cells_(std::move(cells)), empirical_(empirical) {}

  std::vector<double> cells_;
  bool empirical_;
};

/// Convex generator f with f(1)=0, f'(1)=0, f''(1)=1, together with its
/// declared behavior at 0 and the derivatives at 1 used by the expansions.
struct DivergenceKernel {
  std::function<double(double)> value;  // on (0, inf)
  ExtReal limit_at_zero;                // declared, never computed from value(0)
  double d3_at_1 = 0.0;                 // f'''(1)
  double d4_at_1 = 0.0;                 // f''''(1)
  std::optional<double> alpha;          // set when this is f_alpha
};

/// The alpha family generator f_alpha evaluated at x >= 0. The alpha = +-1
/// branches are selected by exact comparison only.
inline double f_alpha_value(double alpha, double x) {
  if (x < 0.0) throw domain_error("f_alpha_value: x must be nonnegative");
  if (x == 0.0) {
    // declared limits: finite 2/(1+alpha) for alpha > -1, +inf otherwise
    if (alpha > -1.0) return 2.0 / (1.0 + alpha);
    return std::numeric_limits<double>::infinity();
  }
  if (alpha == 1.0) return x * std::log(x) + 1.0 - x;
  if (alpha == -1.0) return -std::log(x) + x - 1.0;
  return 4.0 / (1.0 - alpha * alpha) * (1.0 - std::pow(x, (1.0 + alpha) / 2.0)) +
         2.0 / (1.0 - alpha) * (x - 1.0);
}

/// (f'''_alpha(1), f''''_alpha(1)) = ((alpha-3)/2, (alpha-3)(alpha-5)/4).
inline std::pair<double, double> f_alpha_derivatives(double alpha) {
  return {(alpha - 3.0) / 2.0, (alpha - 3.0) * (alpha - 5.0) / 4.0};
}

inline DivergenceKernel alpha_kernel(double alpha) {
  DivergenceKernel k;
  k.value = [alpha](double x) { return f_alpha_value(alpha, x); };
  k.limit_at_zero = (alpha > -1.0) ? ExtReal(2.0 / (1.0 + alpha)) : ExtReal::inf();
  const auto [d3, d4] = f_alpha_derivatives(alpha);
  k.d3_at_1 = d3;
  k.d4_at_1 = d4;
  k.alpha = alpha;
  return k;
}

/// The dual kernel f*(x) = x f(1/x), satisfying D_{f*}[M1:M2] = D_f[M2:M1].
inline DivergenceKernel dual_kernel(const DivergenceKernel& k) {
  DivergenceKernel d;
  auto f = k.value;
  d.value = [f](double x) { return x * f(1.0 / x); };
  // x f(1/x) -> x * f(inf); finite only if f grows sublinearly. For the alpha
  // family the dual is f_{-alpha}, so take its known limit when tagged.
  if (k.alpha) {
    d = alpha_kernel(-*k.alpha);
    return d;
  }
  d.limit_at_zero = ExtReal(0.0);  // caller beware for exotic kernels
  d.d3_at_1 = -3.0 - k.d3_at_1;
  d.d4_at_1 = 12.0 + 8.0 * k.d3_at_1 + k.d4_at_1;
  return d;
}

/// D_f[m1 : m2] = sum_i m1_i f(m2_i / m1_i). Requires m1 strictly positive;
/// a zero cell in m2 contributes m1_i * (declared limit at 0).
inline ExtReal f_divergence(const DivergenceKernel& k, const ProbabilityVector& m1,
                            const ProbabilityVector& m2) {
  if (m1.p() != m2.p()) throw shape_error("f_divergence: cell counts differ");
  double acc = 0.0;
  for (size_t i = 0; i < m1.cells().size(); ++i) {
    const double a = m1[i], b = m2[i];
    if (!(a > 0.0)) throw domain_error("f_divergence: zero cell in first argument");
    if (b == 0.0) {
      if (k.limit_at_zero.infinite()) return ExtReal::inf();
      acc += a * k.limit_at_zero.value();
    } else {
      acc += a * k.value(b / a);
    }
  }
  return acc;
}

inline ExtReal alpha_divergence(double alpha, const ProbabilityVector& m1,
                                const ProbabilityVector& m2) {
  return f_divergence(alpha_kernel(alpha), m1, m2);
}

/// Symmetrized |alpha|-divergence: (D_alpha + D_{-alpha}) / 2.
inline ExtReal sym_alpha_divergence(double alpha, const ProbabilityVector& m1,
                                    const ProbabilityVector& m2) {
  const ExtReal d1 = alpha_divergence(alpha, m1, m2);
  const ExtReal d2 = alpha_divergence(-alpha, m1, m2);
  if (d1.infinite() || d2.infinite()) return ExtReal::inf();
  return 0.5 * (d1.value() + d2.value());
}

}  // namespace disrisk
