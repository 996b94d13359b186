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

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "disrisk/errors.hpp"

namespace disrisk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A continuous distribution on the real line, known through its CDF,
/// quantile function and sampler. Immutable after construction; samplers
/// take a caller-owned RNG, so values are safe to share across threads.
struct MotherDistribution {
  std::function<double(double)> cdf;       // defined on [-inf, +inf]
  std::function<double(double)> pdf;       // density on the support interior
  std::function<double(double)> quantile;  // defined on (0, 1)
  std::function<double(std::mt19937_64&)> sampler;
  double support_lo = -kInf;
  double support_hi = kInf;
  std::string name;
};

/// P(a,b) = F(b) - F(a). Endpoints may be -inf / +inf.
inline double interval_probability(const MotherDistribution& d, double a, double b) {
  if (!(a < b)) throw domain_error("interval_probability: requires a < b");
  const double fa = (a == -kInf) ? 0.0 : d.cdf(a);
  const double fb = (b == kInf) ? 1.0 : d.cdf(b);
  double p = fb - fa;
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

namespace detail {

/// Quantile by bisection on the cdf with Newton polishing when a density is
/// available. One code path for every distribution.
inline double quantile_by_inversion(const std::function<double(double)>& cdf,
                                    const std::function<double(double)>& pdf, double u,
                                    double support_lo, double support_hi) {
  if (!(u > 0.0 && u < 1.0)) throw domain_error("quantile: u must lie in (0,1)");
  double lo = support_lo, hi = support_hi;
  // Expand a finite bracket over an unbounded support.
  if (lo == -kInf) {
    lo = -1.0;
    while (cdf(lo) > u) lo *= 2.0;
  }
  if (hi == kInf) {
    hi = 1.0;
    while (cdf(hi) < u) hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  if (pdf) {
    for (int it = 0; it < 4; ++it) {
      const double fx = pdf(x);
      if (!(fx > 0.0)) break;
      const double step = (cdf(x) - u) / fx;
      const double xn = x - step;
      if (xn <= lo || xn >= hi) break;
      x = xn;
    }
  }
  return x;
}

}  // namespace detail

inline MotherDistribution make_uniform() {
  MotherDistribution d;
  d.name = "uniform";
  d.support_lo = 0.0;
  d.support_hi = 1.0;
  d.cdf = [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); };
  d.pdf = [](double x) { return (x > 0.0 && x < 1.0) ? 1.0 : 0.0; };
  d.quantile = [](double u) {
    if (!(u > 0.0 && u < 1.0)) throw domain_error("quantile: u must lie in (0,1)");
    return u;
  };
  d.sampler = [](std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  };
  return d;
}

inline MotherDistribution make_normal(double mean, double sd) {
  if (!(sd > 0.0)) throw domain_error("make_normal: sd must be positive");
  MotherDistribution d;
  {
    std::ostringstream os;
    os << "normal(" << mean << "," << sd << ")";
    d.name = os.str();
  }
  const double inv_sd = 1.0 / sd;
  d.cdf = [mean, inv_sd](double x) {
    if (x == kInf) return 1.0;
    if (x == -kInf) return 0.0;
    return 0.5 * std::erfc(-(x - mean) * inv_sd / std::sqrt(2.0));
  };
  d.pdf = [mean, inv_sd](double x) {
    const double z = (x - mean) * inv_sd;
    return inv_sd * std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  };
  auto cdf = d.cdf;
  auto pdf = d.pdf;
  d.quantile = [cdf, pdf](double u) {
    return detail::quantile_by_inversion(cdf, pdf, u, -kInf, kInf);
  };
  d.sampler = [mean, sd](std::mt19937_64& rng) {
    return std::normal_distribution<double>(mean, sd)(rng);
  };
  return d;
}

inline MotherDistribution make_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw domain_error("make_beta: shapes must be positive");
  MotherDistribution d;
  {
    std::ostringstream os;
    os << "beta(" << a << "," << b << ")";
    d.name = os.str();
  }
  d.support_lo = 0.0;
  d.support_hi = 1.0;
  boost::math::beta_distribution<double> dist(a, b);
  d.cdf = [dist](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::cdf(dist, x);
  };
  d.pdf = [dist](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return boost::math::pdf(dist, x);
  };
  auto cdf = d.cdf;
  auto pdf = d.pdf;
  d.quantile = [cdf, pdf](double u) { return detail::quantile_by_inversion(cdf, pdf, u, 0.0, 1.0); };
  d.sampler = [a, b](std::mt19937_64& rng) {
    // Beta(a,b) = Ga / (Ga + Gb)
    std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
    const double x = ga(rng), y = gb(rng);
    return x / (x + y);
  };
  return d;
}

/// Standardized skew-t (zero mean, unit variance by construction) with
/// skewness parameter lam in (-1,1) and df > 2; df = inf gives the two-piece
/// normal limit. The two pieces are scaled Student-t halves glued at the mode.
inline MotherDistribution make_skew_t(double lam, double df) {
  if (!(lam > -1.0 && lam < 1.0)) throw domain_error("make_skew_t: skewness must lie in (-1,1)");
  if (!(df > 2.0)) throw domain_error("make_skew_t: df must exceed 2");
  const bool normal_limit = (df == kInf);
  // c = Gamma((df+1)/2) / (sqrt(pi (df-2)) Gamma(df/2)); a, b locate the
  // zero-mean unit-variance standardization.
  double c;
  if (normal_limit) {
    c = 1.0 / std::sqrt(2.0 * M_PI);
  } else {
    c = std::exp(std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0)) /
        std::sqrt(M_PI * (df - 2.0));
  }
  const double a = normal_limit ? 4.0 * lam * c : 4.0 * lam * c * (df - 2.0) / (df - 1.0);
  const double b = std::sqrt(1.0 + 3.0 * lam * lam - a * a);
  const double tail_scale = normal_limit ? 1.0 : std::sqrt(df / (df - 2.0));

  MotherDistribution d;
  {
    std::ostringstream os;
    os << "skewt(" << lam << "," << df << ")";
    d.name = os.str();
  }
  auto base_cdf = [normal_limit, df](double y) {
    if (normal_limit) return 0.5 * std::erfc(-y / std::sqrt(2.0));
    return boost::math::cdf(boost::math::students_t_distribution<double>(df), y);
  };
  auto base_pdf = [normal_limit, df](double y) {
    if (normal_limit) return std::exp(-0.5 * y * y) / std::sqrt(2.0 * M_PI);
    return boost::math::pdf(boost::math::students_t_distribution<double>(df), y);
  };
  d.cdf = [=](double x) {
    if (x == kInf) return 1.0;
    if (x == -kInf) return 0.0;
    const double y = b * x + a;
    if (x < -a / b) return (1.0 - lam) * base_cdf(y * tail_scale / (1.0 - lam));
    return 0.5 * (1.0 - lam) + (1.0 + lam) * (base_cdf(y * tail_scale / (1.0 + lam)) - 0.5);
  };
  d.pdf = [=](double x) {
    const double y = b * x + a;
    const double s = (x < -a / b) ? (1.0 - lam) : (1.0 + lam);
    return b * tail_scale * base_pdf(y * tail_scale / s);
  };
  auto cdf = d.cdf;
  auto pdf = d.pdf;
  d.quantile = [cdf, pdf](double u) {
    return detail::quantile_by_inversion(cdf, pdf, u, -kInf, kInf);
  };
  d.sampler = [=](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double w;  // half-(t or normal) variate
    if (normal_limit) {
      w = std::abs(std::normal_distribution<double>(0.0, 1.0)(rng));
    } else {
      w = std::abs(std::student_t_distribution<double>(df)(rng));
    }
    const bool left = unif(rng) < 0.5 * (1.0 - lam);
    const double y = left ? -w * (1.0 - lam) : w * (1.0 + lam);
    return (y / tail_scale - a) / b;
  };
  return d;
}

/// Parses a distribution preset id: "uniform", "normal(mu,sd)", "beta(a,b)",
/// "skewt(skew,df)" (df may be "inf").
inline MotherDistribution make_distribution(const std::string& id) {
  auto parse_args = [](const std::string& s, size_t open) {
    std::vector<double> args;
    if (s.back() != ')') throw domain_error("make_distribution: malformed id '" + s + "'");
    std::string body = s.substr(open + 1, s.size() - open - 2);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok == "inf") {
        args.push_back(kInf);
      } else {
        args.push_back(std::stod(tok));
      }
    }
    return args;
  };
  if (id == "uniform") return make_uniform();
  const size_t open = id.find('(');
  if (open == std::string::npos)
    throw domain_error("make_distribution: unknown distribution id '" + id + "'");
  const std::string head = id.substr(0, open);
  const auto args = parse_args(id, open);
  if (head == "normal" && args.size() == 2) return make_normal(args[0], args[1]);
  if (head == "beta" && args.size() == 2) return make_beta(args[0], args[1]);
  if (head == "skewt" && args.size() == 2) return make_skew_t(args[0], args[1]);
  throw domain_error("make_distribution: unknown distribution id '" + id + "'");
}

}  // namespace disrisk
