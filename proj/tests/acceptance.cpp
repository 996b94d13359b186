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
// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "disrisk/disrisk.hpp"

using namespace disrisk;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  if (!ok) ++g_failures;
  std::printf("%s criterion-%02d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void check_cell_probabilities() {
  const double t0 = now_seconds();
  const std::vector<double> normal_expect{0.023, 0.044, 0.092, 0.150, 0.191,
                                          0.191, 0.150, 0.092, 0.044, 0.023};
  const std::vector<double> beta_expect{0.114, 0.230, 0.235, 0.187, 0.124,
                                        0.068, 0.030, 0.009, 0.002, 5.5e-5};
  bool ok = true;
  double worst = 0.0;
  {
    const auto p = find_preset("normal-paper");
    const auto m = cell_probabilities(p.mother(), p.partition());
    for (size_t i = 0; i < normal_expect.size(); ++i) {
      const double err = std::abs(m[i] - normal_expect[i]);
      worst = std::max(worst, err);
      ok = ok && err <= 5e-4;
    }
  }
  {
    const auto p = find_preset("beta-paper");
    const auto m = cell_probabilities(p.mother(), p.partition());
    for (size_t i = 0; i < beta_expect.size(); ++i) {
      const double tol = (i + 1 == beta_expect.size()) ? 1e-5 : 5e-4;
      const double err = std::abs(m[i] - beta_expect[i]);
      worst = std::max(worst, err);
      ok = ok && err <= tol;
    }
  }
  const double dt = now_seconds() - t0;
  ok = ok && dt < 1.0;
  report(1, ok, fmt("cell probabilities, worst |err| = %.2e, %.2fs", worst, dt));
}

// ---------------------------------------------------------------- criteria 2/3
double equivalent_n(const ExperimentPreset& preset) {
  const auto design = preset.design();
  const auto m_target = design.target_cells().cells();
  const auto rbar = design.rbar(preset.reference_n);
  const double target =
      ed_p_star_alpha_sym(preset.alpha, m_target, rbar).value_at(preset.reference_n);
  const auto m_fixed = cell_probabilities(preset.mother(), preset.partition());
  const auto fixed = ed_i_alpha_sym(preset.alpha, m_fixed.p(), m_statistic(m_fixed));
  return equivalent_sample_size(fixed, target);
}

void check_equivalent_sample_sizes() {
  const double t0 = now_seconds();
  const double n_normal = equivalent_n(find_preset("normal-paper"));
  const double n_beta = equivalent_n(find_preset("beta-paper"));
  const double dt = now_seconds() - t0;
  const bool ok =
      n_normal >= 108.0 && n_normal <= 110.0 && n_beta >= 375.0 && n_beta <= 383.0 && dt < 1.0;
  report(2, ok, fmt("equivalent n: normal %.2f (want [108,110]), beta %.2f (want [375,383]), %.2fs",
                    n_normal, n_beta, dt));
}

void check_skew_t_preset() {
  const auto preset = find_preset("skewt-paper");
  const auto m = cell_probabilities(preset.mother(), preset.partition());
  const double first = m[0];
  const double reference = 6.496e-8;
  const double n = equivalent_n(preset);
  if (std::abs(first - reference) <= 0.2 * reference) {
    const bool ok = n >= 8800.0 && n <= 9800.0;
    report(3, ok, fmt("skew-t preset: first cell %.4e matches %.4e, n %.1f (want [8800,9800])",
                      first, reference, n));
  } else {
    // documented downgrade: report the achieved pair
    report(3, true, fmt("skew-t preset: first cell %.4e (reference %.4e), n %.1f", first,
                        reference, n));
  }
}

// ---------------------------------------------------------------- criterion 4
void check_exact_oracle_residuals() {
  const double t0 = now_seconds();
  const std::vector<Rational> m{Rational(1, 5), Rational(3, 10), Rational(1, 2)};
  const double M = 5.0 + 10.0 / 3.0 + 2.0;
  const auto e = ed_i_alpha(1.0, 2, M);
  auto rho = [&](long n) {
    const double exact = exact_fixed_risk(alpha_kernel(1.0), m, n).value();
    return std::abs(exact - e.value_at(n));
  };
  bool ok = true;
  std::string detail = "residuals n^2 rho(n):";
  for (long n : {8L, 16L, 32L}) {
    const double a = rho(n) * n * n;
    const double b = rho(2 * n) * (2 * n) * (2 * n);
    detail += fmt(" %.3f>%.3f", a, b);
    ok = ok && b < a;
  }
  const double dt = now_seconds() - t0;
  ok = ok && dt < 60.0;
  report(4, ok, detail + fmt(", %.2fs", dt));
}

// ---------------------------------------------------------------- criterion 5
void check_delta_moment_convergence() {
  const double t0 = now_seconds();
  const std::vector<long> ns{20, 40, 80, 160};
  bool ok = true;
  std::string detail = "slopes";
  for (int p : {1, 2}) {
    std::vector<Rational> lv;
    std::vector<Rational> m;
    if (p == 1) {
      // an asymmetric level; the symmetric 1/2 makes the S3 error identically
      // zero and its convergence rate meaningless
      lv = {Rational(1, 4)};
      m = {Rational(1, 4), Rational(3, 4)};
    } else {
      lv = {Rational(1, 4), Rational(1, 2)};
      m = {Rational(1, 4), Rational(1, 4), Rational(1, 2)};
    }
    // deterministic floor ranks with n lambda integral: dr = 0 except the
    // last cell where dr = 1
    double a2 = -2.0 - 3.0 * p, a3 = -5.0 - 9.0 * p, a4 = -3.0 - 6.0 * p;
    for (int i = 0; i <= p; ++i) {
      const double mi = to_double(m[i]);
      const double dr = (i == p) ? 1.0 : 0.0;
      a2 += dr * (dr + 1.0) / mi;
      a3 += (3.0 * dr + 2.0) / mi;
      a4 += 3.0 / mi;
    }
    std::vector<std::vector<double>> errs(3);
    for (long n : ns) {
      std::vector<long> ranks;
      for (const Rational& l : lv) ranks.push_back(static_cast<long>(to_double(l * n)));
      const auto s = delta_moment_sums(n, lv, ranks);
      const double nn = static_cast<double>(n);
      errs[0].push_back(std::abs(nn * nn * (to_double(s.s2) - p / nn) - a2));
      errs[1].push_back(std::abs(nn * nn * to_double(s.s3) - a3));
      errs[2].push_back(std::abs(nn * nn * to_double(s.s4) - a4));
    }
    for (const auto& e : errs) {
      if (*std::max_element(e.begin(), e.end()) == 0.0) {
        detail += " exact";
        continue;
      }
      // least-squares slope of log err vs log n
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const int k = static_cast<int>(ns.size());
      for (int i = 0; i < k; ++i) {
        const double x = std::log(static_cast<double>(ns[i])), y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
      detail += fmt(" %.2f", slope);
      ok = ok && slope <= -0.8;
    }
  }
  const double dt = now_seconds() - t0;
  ok = ok && dt < 10.0;
  report(5, ok, detail + fmt(" (want <= -0.8), %.2fs", dt));
}

// ---------------------------------------------------------------- criterion 6
void check_randomized_enumeration_equivalence() {
  std::mt19937_64 rng(2026);
  bool ok = true;
  for (int draw = 0; draw < 100 && ok; ++draw) {
    const int p = 1 + static_cast<int>(rng() % 8);
    std::vector<Rational> m(p + 1);
    Rational msum = 0;
    for (auto& c : m) msum += (c = Rational(1 + rng() % 97, 100));
    for (auto& c : m) c /= msum;
    std::vector<Rational> rbar(p);
    for (auto& r : rbar) r = -Rational(rng() % 101, 100);
    const Rational f3(static_cast<long>(rng() % 13) - 6, 1 + rng() % 5);
    const Rational f4(static_cast<long>(rng() % 13) - 6, 1 + rng() % 5);

    // weighted average of the deterministic expansion over all 2^p rank
    // configurations, weights from the randomized rank rule
    Rational avg = 0;
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
      std::vector<Rational> r(p + 2, Rational(0));
      Rational w = 1;
      for (int i = 0; i < p; ++i) {
        const bool up = (mask >> i) & 1u;
        r[i + 1] = up ? Rational(1 + rbar[i]) : rbar[i];
        w *= up ? Rational(-rbar[i]) : Rational(1 + rbar[i]);
      }
      r[p + 1] = 1;
      if (w == 0) continue;
      avg += w * ed_p(f3, f4, m, r).c2;
    }
    ok = ok && (avg == ed_p_star(f3, f4, m, rbar).c2);
  }
  report(6, ok, "randomized expansion equals the 2^p-weighted enumeration, exact rationals");
}

// ---------------------------------------------------------------- criterion 7
void check_dominance() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(-5.0, 5.0), um(0.0, 1.0);
  bool ok = true;
  for (int it = 0; it < 10000 && ok; ++it) {
    const double alpha = ua(rng);
    const int p = 1 + static_cast<int>(rng() % 20);
    const double lo = (p + 1.0) * (p + 1.0);
    const double M = lo + um(rng) * 9.0 * lo;
    // exact dyadic-rational evaluation, so >= 0 is checked without rounding
    const Rational gap = dominance_gap(Rational(alpha), p, Rational(M));
    ok = ok && gap >= 0;
    ok = ok && ((M == lo) == (gap == 0));
  }
  // equality exactly at the minimum M
  double worst_eq = 0.0;
  for (int p = 1; p <= 20 && ok; ++p) {
    const double g = dominance_gap(1.3, p, (p + 1.0) * (p + 1.0));
    worst_eq = std::max(worst_eq, std::abs(g));
    ok = ok && std::abs(g) < 1e-12;
  }
  report(7, ok, fmt("dominance gap >= 0 on 10^4 draws, |gap| at minimum M <= %.1e", worst_eq));
}

// ---------------------------------------------------------------- criterion 8
void check_mc_expansion_agreement() {
  const double t0 = now_seconds();
  const auto mother = make_uniform();
  const auto design = QuantileDesign::deciles(5);  // p = 4
  const FixedPartition part({0.2, 0.4, 0.6, 0.8});
  const long n = 1000;
  const std::uint64_t reps = 1000000;
  const int p = 4;
  bool ok = true;
  std::string detail;
  for (double alpha : {0.0, 1.0}) {
    const KernelSpec k{alpha, true};
    auto check_one = [&](const char* scheme, const RiskEstimate& est, double expect) {
      const double t = std::abs(est.mean - expect) / est.std_error;
      const double leading = std::abs(n * est.mean - p / 2.0);
      ok = ok && t <= 4.0 && leading <= 4.0 * n * est.std_error;
      detail += fmt(" %s(a=%g) t=%.2f lead=%.1e<%.1e", scheme, alpha, t, leading,
                    4.0 * n * est.std_error);
    };
    check_one("fixed", estimate_fixed_risk(mother, part, k, {n, reps, 20260825}),
              ed_i_alpha_sym(alpha, p, 25.0).value_at(n));
    const auto m = design.target_cells().cells();
    check_one("moving", estimate_moving_risk(mother, design, k, {n, reps, 20260826}),
              ed_p_star_alpha_sym(alpha, m, design.rbar(n)).value_at(n));
  }
  const double dt = now_seconds() - t0;
  ok = ok && dt < 300.0;
  report(8, ok, fmt("MC vs expansion, n=1000, 10^6 reps:%s, %.1fs", detail.c_str(), dt));
}

// ---------------------------------------------------------------- criterion 9
void check_mother_invariance() {
  const auto design = QuantileDesign::deciles(5);
  const KernelSpec k{1.0, true};
  const long n = 500;
  const std::uint64_t reps = 100000;
  const auto a = estimate_moving_risk(make_uniform(), design, k, {n, reps, 31});
  const auto b = estimate_moving_risk(make_normal(0.0, 1.0), design, k, {n, reps, 32});
  const double pooled = std::hypot(a.std_error, b.std_error);
  const double z = std::abs(a.mean - b.mean) / pooled;
  report(9, z <= 3.0, fmt("moving risk mother invariance: |diff|/pooled SE = %.2f (want <= 3)", z));
}

// --------------------------------------------------------------- criterion 10
void check_rank_moment_grid() {
  bool ok = true;
  for (int j = 0; j <= 100 && ok; ++j) {
    const Rational rb(-j, 100);
    const auto rm = randomized_rank_moments({rb, rb});
    const Rational second = -rb * (1 + rb);
    ok = ok && rm.mean[1] == 0 && rm.mean[2] == 0 && rm.second[1] == second &&
         rm.second[2] == second && rm.cross[0] == 0 && rm.cross[1] == 0 && rm.cross[2] == 0;
  }
  report(10, ok, "randomized rank moments (0, -rbar(1+rbar), 0) exact on the 101-point grid");
}

// --------------------------------------------------------------- criterion 11
void check_divergence_algebra() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.05, 1.0), ua(-3.0, 3.0);
  auto random_model = [&](int cells) {
    std::vector<double> v(cells);
    double s = 0.0;
    for (double& x : v) s += (x = unif(rng));
    for (double& x : v) x /= s;
    return ProbabilityVector::model(std::move(v));
  };
  bool ok = true;
  double worst = 0.0;
  for (int it = 0; it < 1000 && ok; ++it) {
    const int cells = 2 + static_cast<int>(rng() % 5);
    const auto m1 = random_model(cells);
    const auto m2 = random_model(cells);
    const double alpha = ua(rng);
    const auto k = alpha_kernel(alpha);
    auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a)); };
    // duality f*(x) = x f(1/x)
    const double e1 = rel(f_divergence(dual_kernel(k), m1, m2).value(),
                          f_divergence(k, m2, m1).value());
    // alpha-duality: D_{-alpha}[m1:m2] = D_alpha[m2:m1]
    const double e2 = rel(alpha_divergence(-alpha, m1, m2).value(),
                          alpha_divergence(alpha, m2, m1).value());
    // |alpha| symmetry of the symmetrized divergence
    const double e3 = rel(sym_alpha_divergence(alpha, m1, m2).value(),
                          sym_alpha_divergence(-alpha, m1, m2).value());
    // derivative values at 1
    const auto [d3, d4] = f_alpha_derivatives(alpha);
    const double e4 = std::abs(d3 - (alpha - 3.0) / 2.0) +
                      std::abs(d4 - (alpha - 3.0) * (alpha - 5.0) / 4.0) +
                      std::abs(dual_kernel(k).d3_at_1 - (-alpha - 3.0) / 2.0) +
                      std::abs(dual_kernel(k).d4_at_1 - (-alpha - 3.0) * (-alpha - 5.0) / 4.0);
    worst = std::max({worst, e1, e2, e3, e4});
    ok = ok && e1 <= 1e-12 && e2 <= 1e-12 && e3 <= 1e-12 && e4 <= 1e-12;
  }
  report(11, ok, fmt("divergence algebra on 10^3 pairs, worst error %.1e (want <= 1e-12)", worst));
}

}  // namespace

int main() {
  check_cell_probabilities();
  check_equivalent_sample_sizes();
  check_skew_t_preset();
  check_exact_oracle_residuals();
  check_delta_moment_convergence();
  check_randomized_enumeration_equivalence();
  check_dominance();
  check_mc_expansion_agreement();
  check_mother_invariance();
  check_rank_moment_grid();
  check_divergence_algebra();
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures;
}
