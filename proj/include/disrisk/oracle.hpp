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
//
// Exact combinatorial referees for the asymptotic expansions: closed-form
// uniform order-statistic joint moments, exhaustive multinomial enumeration,
// and randomized-rank moment enumeration. Everything here is big-integer /
// rational; floating conversion happens only at the comparison boundary.

#pragma once

#include <cstdint>
#include <vector>

#include "disrisk/divergence.hpp"
#include "disrisk/errors.hpp"
#include "disrisk/rational.hpp"

namespace disrisk {

struct MomentSpec {
  long n = 0;
  std::vector<long> ranks;  // nondecreasing, within 1..n
  std::vector<int> powers;  // positive
};

/// E[prod_i U_(n_i)^{a_i}] for uniform order statistics, as an exact rational:
/// n!/(n+sum a)! * prod (n_i-1+cumsum_i a)! / (n_i-1+cumsum_{i-1} a)!.
inline Rational uniform_orderstat_moment(const MomentSpec& spec) {
  const long n = spec.n;
  if (n < 1) throw domain_error("uniform_orderstat_moment: n must be >= 1");
  if (spec.ranks.empty() || spec.ranks.size() != spec.powers.size())
    throw shape_error("uniform_orderstat_moment: ranks/powers mismatch");
  long prev = 0;
  long total_power = 0;
  for (size_t i = 0; i < spec.ranks.size(); ++i) {
    if (spec.ranks[i] < prev) throw domain_error("uniform_orderstat_moment: decreasing ranks");
    if (spec.ranks[i] < 1 || spec.ranks[i] > n)
      throw domain_error("uniform_orderstat_moment: rank out of 1..n");
    if (spec.powers[i] < 1) throw domain_error("uniform_orderstat_moment: powers must be >= 1");
    prev = spec.ranks[i];
    total_power += spec.powers[i];
  }
  // denominator (n+1)(n+2)...(n+sum a)
  BigInt den = 1;
  for (long j = n + 1; j <= n + total_power; ++j) den *= j;
  BigInt num = 1;
  long cum = 0;
  for (size_t i = 0; i < spec.ranks.size(); ++i) {
    // (n_i-1+cum+a_i)! / (n_i-1+cum)!
    for (long j = spec.ranks[i] + cum; j <= spec.ranks[i] - 1 + cum + spec.powers[i]; ++j)
      num *= j;
    cum += spec.powers[i];
  }
  return Rational(num, den);
}

namespace detail {

/// E[U_lo^a U_hi^b] where rank 0 means the constant 0 and rank n+1 the
/// constant 1 (the implicit boundary "order statistics").
inline Rational boundary_joint_moment(long n, long lo, long hi, int a, int b) {
  if (a == 0 && b == 0) return 1;
  if (a > 0 && lo == 0) return 0;  // U_(0) = 0
  if (hi == n + 1 || b == 0) {
    if (a == 0) return 1;  // only the constant-1 factor remains
    return uniform_orderstat_moment({n, {lo}, {a}});
  }
  if (a == 0) return uniform_orderstat_moment({n, {hi}, {b}});
  return uniform_orderstat_moment({n, {lo, hi}, {a, b}});
}

/// E[(U_hi - U_lo)^k] by binomial expansion.
inline Rational spacing_moment(long n, long lo, long hi, int k) {
  Rational acc = 0;
  for (int j = 0; j <= k; ++j) {
    Rational term = Rational(binomial(k, j)) * boundary_joint_moment(n, lo, hi, j, k - j);
    if (j % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

inline Rational rational_pow(Rational base, long e) {
  Rational acc = 1;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace detail

struct DeltaMomentSums {
  Rational s2, s3, s4;  // sum_i m_i E[R_i^k], k = 2, 3, 4
};

/// Exact sum_i m_i E[R_i^k] for the moving-interval relative errors
/// R_i = (spacing_i - m_i)/m_i, built from the closed-form order-statistic
/// moments. Ranks are deterministic integers n_1 < ... < n_p.
inline DeltaMomentSums delta_moment_sums(long n, const std::vector<Rational>& levels,
                                         const std::vector<long>& ranks) {
  if (levels.empty() || levels.size() != ranks.size())
    throw shape_error("delta_moment_sums: levels/ranks mismatch");
  const size_t p = levels.size();
  std::vector<Rational> m(p + 1);
  {
    Rational prev = 0;
    for (size_t i = 0; i < p; ++i) {
      if (!(levels[i] > prev && levels[i] < 1))
        throw domain_error("delta_moment_sums: levels must be strictly increasing in (0,1)");
      m[i] = levels[i] - prev;
      prev = levels[i];
    }
    m[p] = 1 - prev;
  }
  std::vector<long> bound(p + 2);
  bound[0] = 0;
  for (size_t i = 0; i < p; ++i) {
    if (ranks[i] < 1 || ranks[i] > n) throw domain_error("delta_moment_sums: rank out of 1..n");
    if (i > 0 && ranks[i] <= ranks[i - 1])
      throw domain_error("delta_moment_sums: ranks must be strictly increasing");
    bound[i + 1] = ranks[i];
  }
  bound[p + 1] = n + 1;

  DeltaMomentSums out;
  for (size_t i = 0; i <= p; ++i) {
    const long lo = bound[i], hi = bound[i + 1];
    // E[(D - m)^k] via binomial expansion in the spacing moments
    std::vector<Rational> d(5);
    for (int k = 0; k <= 4; ++k) d[k] = detail::spacing_moment(n, lo, hi, k);
    auto central = [&](int k) {
      Rational acc = 0;
      for (int j = 0; j <= k; ++j) {
        Rational term = Rational(binomial(k, j)) * d[j] * detail::rational_pow(m[i], k - j);
        if ((k - j) % 2 == 1) term = -term;
        acc += term;
      }
      return acc;
    };
    out.s2 += central(2) / m[i];
    out.s3 += central(3) / (m[i] * m[i]);
    out.s4 += central(4) / (m[i] * m[i] * m[i]);
  }
  return out;
}

/// Visits every composition (k_0,...,k_parts-1) of n in lexicographic order.
template <typename Fn>
void for_each_composition(long n, int parts, Fn&& fn) {
  std::vector<long> k(parts, 0);
  k[0] = n;
  for (;;) {
    fn(const_cast<const std::vector<long>&>(k));
    // next composition: move one unit from the rightmost nonzero among the
    // first parts-1 entries
    int i = parts - 2;
    while (i >= 0 && k[i] == 0) --i;
    if (i < 0) return;
    --k[i];
    const long rest = 1 + k[parts - 1];
    for (int j = parts - 1; j > i + 1; --j) k[j] = 0;
    k[i + 1] = rest;
  }
}

/// Exact finite-n fixed-interval risk by exhaustive multinomial enumeration.
/// Probabilities are exact rationals, maintained incrementally across
/// compositions; the kernel is evaluated in floating point at the comparison
/// boundary. +inf when the kernel diverges at zero (every zero-count outcome
/// has positive probability). The budget bounds outcomes * n, the rational
/// work, not just the outcome count.
inline ExtReal exact_fixed_risk(const DivergenceKernel& kernel, const std::vector<Rational>& m,
                                long n, std::uint64_t budget = 10'000'000) {
  if (m.size() < 2) throw shape_error("exact_fixed_risk: need at least two cells");
  if (n < 1) throw domain_error("exact_fixed_risk: n must be >= 1");
  for (const Rational& c : m)
    if (!(c > 0)) throw domain_error("exact_fixed_risk: cells must be positive");
  const int parts = static_cast<int>(m.size());
  const BigInt outcomes = binomial(n + parts - 1, parts - 1);
  if (outcomes > BigInt(budget) || outcomes * n > BigInt(budget))
    throw budget_error("exact_fixed_risk: enumeration budget exceeded");
  if (kernel.limit_at_zero.infinite()) return ExtReal::inf();

  std::vector<double> md(m.size());
  for (size_t i = 0; i < m.size(); ++i) md[i] = to_double(m[i]);
  // probability of the first composition (n, 0, ..., 0) is m_0^n; updates
  // follow the per-cell count changes, so cost is amortized O(1) per outcome
  std::vector<long> cur(parts, 0);
  cur[0] = n;
  // prob = n!/prod k! * prod m^k, which is m_0^n at the start
  Rational prob = detail::rational_pow(m[0], n);
  auto move_count = [&](int j, long to) {
    long from = cur[j];
    while (from < to) {
      ++from;
      prob *= m[j];
      prob /= from;
    }
    while (from > to) {
      prob *= from;
      prob /= m[j];
      --from;
    }
    cur[j] = to;
  };
  double risk = 0.0;
  for_each_composition(n, parts, [&](const std::vector<long>& k) {
    for (int i = 0; i < parts; ++i) {
      if (k[i] != cur[i]) move_count(i, k[i]);
    }
    double d = 0.0;
    for (int i = 0; i < parts; ++i) {
      if (k[i] == 0) {
        d += md[i] * kernel.limit_at_zero.value();
      } else {
        d += md[i] * kernel.value(to_double(Rational(k[i], n) / m[i]));
      }
    }
    risk += to_double(prob) * d;
  });
  return risk;
}

struct CentralMoments {
  Rational m1, m2, m3, m4_exact, m4_truncated;
};

/// Exact central moments of a single MLE cell frequency mhat_i = K/n with
/// K ~ Binomial(n, m_i). The fourth moment is exact, with the o(n^-2)
/// truncation also exposed so its error can be quantified.
inline CentralMoments multinomial_central_moments(const Rational& mi, long n) {
  if (n < 1) throw domain_error("multinomial_central_moments: n must be >= 1");
  const Rational q = 1 - mi;
  CentralMoments cm;
  cm.m1 = 0;
  cm.m2 = mi * q / n;
  cm.m3 = mi * q * (1 - 2 * mi) / (Rational(n) * n);
  cm.m4_exact = mi * q * (1 + 3 * (n - 2) * mi * q) / (Rational(n) * n * n);
  cm.m4_truncated = 3 * mi * mi * q * q / (Rational(n) * n);
  return cm;
}

struct RankMoments {
  std::vector<Rational> mean;    // E[r_i], i = 0..p+1
  std::vector<Rational> second;  // E[r_i^2], i = 0..p+1
  std::vector<Rational> cross;   // E[r_i r_{i+1}], i = 0..p
};

/// Moments of the randomized gaps r_i by exhaustive enumeration of each
/// two-point distribution; boundary conventions r_0 = 0, r_{p+1} = 1.
inline RankMoments randomized_rank_moments(const std::vector<Rational>& rbar) {
  const size_t p = rbar.size();
  for (const Rational& rb : rbar)
    if (rb < -1 || rb > 0)
      throw domain_error("randomized_rank_moments: fractional parts must lie in [-1, 0]");
  // support of r_i: {rbar_i with prob 1+rbar_i, 1+rbar_i with prob -rbar_i}
  auto values = [&](size_t i) { return std::pair<Rational, Rational>{rbar[i - 1], 1 + rbar[i - 1]}; };
  auto probs = [&](size_t i) {
    return std::pair<Rational, Rational>{1 + rbar[i - 1], -rbar[i - 1]};
  };
  RankMoments rm;
  rm.mean.assign(p + 2, 0);
  rm.second.assign(p + 2, 0);
  rm.cross.assign(p + 1, 0);
  rm.mean[p + 1] = 1;
  rm.second[p + 1] = 1;
  for (size_t i = 1; i <= p; ++i) {
    const auto [v0, v1] = values(i);
    const auto [p0, p1] = probs(i);
    rm.mean[i] = v0 * p0 + v1 * p1;
    rm.second[i] = v0 * v0 * p0 + v1 * v1 * p1;
  }
  for (size_t i = 0; i <= p; ++i) {
    if (i == 0) {
      rm.cross[i] = 0;  // r_0 = 0
    } else if (i == p) {
      rm.cross[i] = rm.mean[p];  // r_{p+1} = 1
    } else {
      // independent two-point variables: enumerate the four outcomes
      const auto [a0, a1] = values(i);
      const auto [pa0, pa1] = probs(i);
      const auto [b0, b1] = values(i + 1);
      const auto [pb0, pb1] = probs(i + 1);
      rm.cross[i] =
          a0 * b0 * pa0 * pb0 + a0 * b1 * pa0 * pb1 + a1 * b0 * pa1 * pb0 + a1 * b1 * pa1 * pb1;
    }
  }
  return rm;
}

}  // namespace disrisk
