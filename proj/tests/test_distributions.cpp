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

#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <random>
#include <vector>

#include "disrisk/distributions.hpp"

using namespace disrisk;

namespace {

// One-sample Kolmogorov statistic of the sampler against the cdf.
double ks_statistic(const MotherDistribution& d, long n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = d.sampler(rng);
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  for (long i = 0; i < n; ++i) {
    const double u = d.cdf(x[i]);
    ks = std::max(ks, std::abs(u - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(u - static_cast<double>(i + 1) / n));
  }
  return ks;
}

// mean and variance by trapezoid integration of x, x^2 against the density
std::pair<double, double> moments_by_quadrature(const MotherDistribution& d, double lo, double hi,
                                                int steps) {
  const double h = (hi - lo) / steps;
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double x = lo + h * i;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    const double f = d.pdf(x);
    m1 += w * x * f * h;
    m2 += w * x * x * f * h;
  }
  return {m1, m2 - m1 * m1};
}

}  // namespace

TEST_CASE("uniform mother") {
  const auto d = make_uniform();
  CHECK(d.cdf(0.25) == doctest::Approx(0.25));
  CHECK(d.quantile(0.25) == doctest::Approx(0.25));
  CHECK(interval_probability(d, 0.2, 0.7) == doctest::Approx(0.5));
  CHECK(interval_probability(d, -kInf, 0.3) == doctest::Approx(0.3));
  CHECK_THROWS_AS(interval_probability(d, 0.7, 0.2), domain_error);
}

TEST_CASE("normal cdf and quantile round trip") {
  const auto d = make_normal(1.0, 2.0);
  CHECK(d.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.cdf(1.0 + 2.0 * 1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
  for (double u : {0.001, 0.1, 0.5, 0.9, 0.999}) {
    CHECK(d.cdf(d.quantile(u)) == doctest::Approx(u).epsilon(1e-10));
  }
  CHECK_THROWS_AS(d.quantile(0.0), domain_error);
  CHECK_THROWS_AS(make_normal(0.0, -1.0), domain_error);
}

TEST_CASE("beta cdf and quantile round trip") {
  const auto d = make_beta(2.0, 5.0);
  // I_x(2,5) = 1 - (1-x)^5 (1+5x)
  auto exact = [](double x) { return 1.0 - std::pow(1.0 - x, 5) * (1.0 + 5.0 * x); };
  for (double x : {0.1, 0.3, 0.5, 0.9}) {
    CHECK(d.cdf(x) == doctest::Approx(exact(x)).epsilon(1e-12));
  }
  for (double u : {0.05, 0.5, 0.95}) {
    CHECK(d.cdf(d.quantile(u)) == doctest::Approx(u).epsilon(1e-10));
  }
}

TEST_CASE("skew-t normal limit is standardized") {
  const auto d = make_skew_t(0.8, kInf);
  CHECK(d.cdf(-kInf) == doctest::Approx(0.0));
  CHECK(d.cdf(kInf) == doctest::Approx(1.0));
  // monotone cdf and quantile round trip
  double prev = -1.0;
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    const double u = d.cdf(x);
    CHECK(u >= prev);
    prev = u;
  }
  for (double u : {0.01, 0.2, 0.5, 0.8, 0.99}) {
    CHECK(d.cdf(d.quantile(u)) == doctest::Approx(u).epsilon(1e-9));
  }
  const auto [mean, var] = moments_by_quadrature(d, -12.0, 12.0, 200000);
  CHECK(mean == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(std::abs(mean) < 1e-6);
  CHECK(var == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("skew-t finite df is standardized") {
  const auto d = make_skew_t(-0.3, 8.0);
  const auto [mean, var] = moments_by_quadrature(d, -40.0, 40.0, 400000);
  CHECK(std::abs(mean) < 1e-4);
  CHECK(var == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(make_skew_t(1.5, 8.0), domain_error);
  CHECK_THROWS_AS(make_skew_t(0.3, 1.5), domain_error);
}

TEST_CASE("samplers agree with the cdf") {
  const long n = 20000;
  // KS 99.9% critical value ~ 1.95/sqrt(n)
  const double crit = 1.95 / std::sqrt(static_cast<double>(n));
  CHECK(ks_statistic(make_uniform(), n, 1) < crit);
  CHECK(ks_statistic(make_normal(0.0, 1.0), n, 2) < crit);
  CHECK(ks_statistic(make_beta(2.0, 5.0), n, 3) < crit);
  CHECK(ks_statistic(make_skew_t(0.8, kInf), n, 4) < crit);
  CHECK(ks_statistic(make_skew_t(0.5, 6.0), n, 5) < crit);
}

TEST_CASE("distribution id parsing") {
  CHECK(make_distribution("uniform").name == "uniform");
  CHECK(make_distribution("normal(0,1)").name == "normal(0,1)");
  CHECK(make_distribution("beta(2,5)").name == "beta(2,5)");
  CHECK(make_distribution("skewt(0.8,inf)").name == "skewt(0.8,inf)");
  CHECK(make_distribution("skewt(0.8,5)").name == "skewt(0.8,5)");
  CHECK_THROWS_AS(make_distribution("cauchy(0,1)"), domain_error);
  CHECK_THROWS_AS(make_distribution("normal(0,1"), domain_error);
}
