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
#include <string>
#include <vector>

#include "disrisk/divergence.hpp"
#include "disrisk/errors.hpp"

namespace disrisk {

/// Two-term risk expansion c1/n + c2/n^2 with c1 = p/2 always. Stored as
/// coefficients (not a closure) so algebraic identities are testable
/// coefficient-wise. T is double or Rational.
template <typename T>
struct RiskExpansion {
  int p = 0;
  T c2{};
  std::string provenance;

  T c1() const { return T(p) / 2; }

  T value_at(long n) const {
    const T tn(n);
    return T(p) / (2 * tn) + c2 / (tn * tn);
  }
};

namespace detail {

template <typename T>
void require_m_valid(const std::vector<T>& m) {
  if (m.size() < 2) throw shape_error("expansion: need at least two cells");
  for (const T& c : m)
    if (!(c > 0)) throw domain_error("expansion: cells must be strictly positive");
}

template <typename T>
T inverse_cell_sum(const std::vector<T>& m) {
  T s{};
  for (const T& c : m) s += 1 / c;
  return s;
}

}  // namespace detail

/// Fixed-interval (MLE) risk expansion for a general kernel.
template <typename T>
RiskExpansion<T> ed_i(const T& f3, const T& f4, int p, const T& M) {
  if (p < 1) throw domain_error("ed_i: p must be >= 1");
  if (M < T((p + 1)) * (p + 1)) throw domain_error("ed_i: M below its minimum (p+1)^2");
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (4 * f3 * (-3 * p - 1 + M) + 3 * f4 * (-2 * p - 1 + M)) / 24;
  e.provenance = "ed_i";
  return e;
}

/// Fixed-interval risk under the alpha-divergence.
template <typename T>
RiskExpansion<T> ed_i_alpha(const T& alpha, int p, const T& M) {
  if (p < 1) throw domain_error("ed_i_alpha: p must be >= 1");
  if (M < T((p + 1)) * (p + 1)) throw domain_error("ed_i_alpha: M below its minimum (p+1)^2");
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = ((alpha - 3) * (3 * alpha - 7) * (M - 1) - 6 * (alpha - 3) * (alpha - 1) * p) / 96;
  e.provenance = "ed_i_alpha";
  return e;
}

/// Fixed-interval risk under the symmetrized |alpha|-divergence.
template <typename T>
RiskExpansion<T> ed_i_alpha_sym(const T& alpha, int p, const T& M) {
  if (p < 1) throw domain_error("ed_i_alpha_sym: p must be >= 1");
  if (M < T((p + 1)) * (p + 1))
    throw domain_error("ed_i_alpha_sym: M below its minimum (p+1)^2");
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = ((alpha * alpha + 7) * (M - 1) - 2 * (alpha * alpha + 3) * p) / 32;
  e.provenance = "ed_i_alpha_sym";
  return e;
}

namespace detail {

template <typename T>
void require_gaps_valid(const std::vector<T>& m, const std::vector<T>& r) {
  if (r.size() != m.size() + 1)
    throw shape_error("expansion: gap list must have p+2 entries r_0..r_{p+1}");
  if (!(r.front() == T(0)) || !(r.back() == T(1)))
    throw domain_error("expansion: gap conventions r_0 = 0, r_{p+1} = 1 violated");
}

template <typename T>
void require_rbar_valid(const std::vector<T>& m, const std::vector<T>& rbar) {
  if (rbar.size() + 1 != m.size())
    throw shape_error("expansion: fractional part list must have p entries rbar_1..rbar_p");
  for (const T& rb : rbar)
    if (rb < T(-1) || rb > T(0))
      throw domain_error("expansion: fractional parts must lie in [-1, 0]");
}

}  // namespace detail

/// Moving-interval risk with deterministic ranks (gaps r_i = n_i - n lambda_i).
template <typename T>
RiskExpansion<T> ed_p(const T& f3, const T& f4, const std::vector<T>& m,
                      const std::vector<T>& r) {
  detail::require_m_valid(m);
  detail::require_gaps_valid(m, r);
  const int p = static_cast<int>(m.size()) - 1;
  const T M = detail::inverse_cell_sum(m);
  T sum_quad{}, sum_lin{};
  for (size_t i = 0; i < m.size(); ++i) {
    const T dr = r[i + 1] - r[i];
    sum_quad += dr * (dr + 1) / m[i];
    sum_lin += (3 * dr + 2) / m[i];
  }
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-24 - 36 * p + 12 * sum_quad + 4 * f3 * (-5 - 9 * p + sum_lin) +
          f4 * (-3 - 6 * p + 3 * M)) /
         24;
  e.provenance = "ed_p";
  return e;
}

template <typename T>
RiskExpansion<T> ed_p_alpha(const T& alpha, const std::vector<T>& m, const std::vector<T>& r) {
  detail::require_m_valid(m);
  detail::require_gaps_valid(m, r);
  const int p = static_cast<int>(m.size()) - 1;
  T sum{};
  for (size_t i = 0; i < m.size(); ++i) {
    const T dr = r[i + 1] - r[i];
    sum += (48 * dr * dr + 24 * (alpha - 1) * dr + 3 * alpha * alpha - 8 * alpha - 3) / m[i];
  }
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-alpha * alpha * (3 + 6 * p) - alpha * (16 + 24 * p) - 18 * p - 21 + sum) / 96;
  e.provenance = "ed_p_alpha";
  return e;
}

template <typename T>
RiskExpansion<T> ed_p_alpha_sym(const T& alpha, const std::vector<T>& m,
                                const std::vector<T>& r) {
  detail::require_m_valid(m);
  detail::require_gaps_valid(m, r);
  const int p = static_cast<int>(m.size()) - 1;
  T sum{};
  for (size_t i = 0; i < m.size(); ++i) {
    const T dr = r[i + 1] - r[i];
    sum += (48 * dr * dr - 24 * dr + 3 * alpha * alpha - 3) / m[i];
  }
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-alpha * alpha * (3 + 6 * p) - 18 * p - 21 + sum) / 96;
  e.provenance = "ed_p_alpha_sym";
  return e;
}

/// Expected moving-interval risk under the randomized rank rule; rbar holds
/// the fractional parts rbar_1..rbar_p in [-1, 0].
template <typename T>
RiskExpansion<T> ed_p_star(const T& f3, const T& f4, const std::vector<T>& m,
                           const std::vector<T>& rbar) {
  detail::require_m_valid(m);
  detail::require_rbar_valid(m, rbar);
  const int p = static_cast<int>(m.size()) - 1;
  const T M = detail::inverse_cell_sum(m);
  auto q = [&rbar](int i) { return rbar[i - 1] * (1 + rbar[i - 1]); };  // i in 1..p
  T rand_block = -q(1) / m.front() + (2 - q(p)) / m.back();
  for (int i = 1; i <= p - 1; ++i) rand_block -= (q(i) + q(i + 1)) / m[i];
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-48 - 72 * p + 24 * rand_block +
          8 * f3 * (-5 - 9 * p + 2 * M + 3 / m.back()) + 2 * f4 * (-3 - 6 * p + 3 * M)) /
         48;
  e.provenance = "ed_p_star";
  return e;
}

template <typename T>
RiskExpansion<T> ed_p_star_alpha(const T& alpha, const std::vector<T>& m,
                                 const std::vector<T>& rbar) {
  detail::require_m_valid(m);
  detail::require_rbar_valid(m, rbar);
  const int p = static_cast<int>(m.size()) - 1;
  const T M = detail::inverse_cell_sum(m);
  auto q = [&rbar](int i) { return rbar[i - 1] * (1 + rbar[i - 1]); };
  T sum = -48 * q(1) / m.front() + (-48 * q(p) + 24 * (alpha + 1)) / m.back();
  for (int i = 1; i <= p - 1; ++i) sum -= 48 * (q(i) + q(i + 1)) / m[i];
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-alpha * alpha * (3 + 6 * p) - alpha * (16 + 24 * p) - 18 * p - 21 + sum +
          (3 * alpha * alpha - 8 * alpha - 3) * M) /
         96;
  e.provenance = "ed_p_star_alpha";
  return e;
}

template <typename T>
RiskExpansion<T> ed_p_star_alpha_sym(const T& alpha, const std::vector<T>& m,
                                     const std::vector<T>& rbar) {
  detail::require_m_valid(m);
  detail::require_rbar_valid(m, rbar);
  const int p = static_cast<int>(m.size()) - 1;
  const T M = detail::inverse_cell_sum(m);
  auto q = [&rbar](int i) { return rbar[i - 1] * (1 + rbar[i - 1]); };
  T sum = -48 * q(1) / m.front() + (24 - 48 * q(p)) / m.back();
  for (int i = 1; i <= p - 1; ++i) sum -= 48 * (q(i) + q(i + 1)) / m[i];
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-alpha * alpha * (3 + 6 * p) - 18 * p - 21 + sum + (3 * alpha * alpha - 3) * M) / 96;
  e.provenance = "ed_p_star_alpha_sym";
  return e;
}

/// rbar-free upper bound of ed_p_star, obtained from 0 <= -rbar(1+rbar) <= 1/4.
template <typename T>
RiskExpansion<T> ed_p_star_upper(const T& f3, const T& f4, const std::vector<T>& m) {
  detail::require_m_valid(m);
  const int p = static_cast<int>(m.size()) - 1;
  const T M = detail::inverse_cell_sum(m);
  T interior{};
  for (int i = 1; i <= p - 1; ++i) interior += 1 / m[i];
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-48 - 72 * p + 6 * (1 / m.front() + 9 / m.back() + 2 * interior) +
          8 * f3 * (-5 - 9 * p + 2 * M + 3 / m.back()) + 2 * f4 * (-3 - 6 * p + 3 * M)) /
         48;
  e.provenance = "ed_p_star_upper";
  return e;
}

template <typename T>
RiskExpansion<T> ed_p_star_upper_alpha(const T& alpha, const std::vector<T>& m) {
  detail::require_m_valid(m);
  const int p = static_cast<int>(m.size()) - 1;
  T interior{};
  for (int i = 1; i <= p - 1; ++i) interior += 1 / m[i];
  const T a2 = alpha * alpha;
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-a2 * (3 + 6 * p) - alpha * (16 + 24 * p) - 18 * p - 21 +
          (3 * a2 - 8 * alpha + 9) / m.front() + (3 * a2 + 16 * alpha + 33) / m.back() +
          (3 * a2 - 8 * alpha + 21) * interior) /
         96;
  e.provenance = "ed_p_star_upper_alpha";
  return e;
}

template <typename T>
RiskExpansion<T> ed_p_star_upper_alpha_sym(const T& alpha, const std::vector<T>& m) {
  detail::require_m_valid(m);
  const int p = static_cast<int>(m.size()) - 1;
  T interior{};
  for (int i = 1; i <= p - 1; ++i) interior += 1 / m[i];
  const T a2 = alpha * alpha;
  RiskExpansion<T> e;
  e.p = p;
  e.c2 = (-a2 * (1 + 2 * p) - 6 * p - 7 + (a2 + 3) / m.front() + (a2 + 11) / m.back() +
          (a2 + 7) * interior) /
         32;
  e.provenance = "ed_p_star_upper_alpha_sym";
  return e;
}

/// c2 gap between the fixed-interval |alpha| risk at a given M and the
/// moving-interval upper bound at the equi-probable design. Nonnegative, and
/// zero exactly when M attains its minimum (p+1)^2.
template <typename T>
T dominance_gap(const T& alpha, int p, const T& M_fixed) {
  std::vector<T> uniform(p + 1, T(1) / (p + 1));
  return ed_i_alpha_sym(alpha, p, M_fixed).c2 - ed_p_star_upper_alpha_sym(alpha, uniform).c2;
}

/// Solves c2 x^2 + (p/2) x = target for x = 1/n and returns n. Throws when no
/// positive root exists (infeasible target).
inline double equivalent_sample_size(const RiskExpansion<double>& exp_i, double target_risk) {
  if (!(target_risk > 0.0)) throw domain_error("equivalent_sample_size: target must be positive");
  if (!std::isfinite(exp_i.c2))
    throw domain_error("equivalent_sample_size: infeasible (infinite c2)");
  const double half_p = exp_i.p / 2.0;
  const double c2 = exp_i.c2;
  if (c2 == 0.0) return half_p / target_risk;
  const double disc = half_p * half_p + 4.0 * c2 * target_risk;
  if (disc < 0.0) throw domain_error("equivalent_sample_size: infeasible (no real root)");
  // The root on the branch where the risk decreases in n.
  const double x = (-half_p + std::sqrt(disc)) / (2.0 * c2);
  if (!(x > 0.0)) throw domain_error("equivalent_sample_size: infeasible (no positive root)");
  return 1.0 / x;
}

}  // namespace disrisk
