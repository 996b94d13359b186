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

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "disrisk/disrisk.hpp"

namespace {

using json = nlohmann::json;
using namespace disrisk;

// exit codes: 0 ok, 1 usage, 2 domain/config, 3 budget
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;

KernelSpec parse_kernel(const std::string& s) {
  const std::string sym_prefix = "sym-alpha:";
  const std::string plain_prefix = "alpha:";
  KernelSpec k;
  if (s.rfind(sym_prefix, 0) == 0) {
    k.symmetrized = true;
    k.alpha = std::stod(s.substr(sym_prefix.size()));
  } else if (s.rfind(plain_prefix, 0) == 0) {
    k.symmetrized = false;
    k.alpha = std::stod(s.substr(plain_prefix.size()));
  } else {
    throw domain_error("unknown kernel '" + s + "' (want alpha:<v> or sym-alpha:<v>)");
  }
  return k;
}

// "3/4" or "0.75" -> exact rational (decimals over a power of ten)
Rational parse_rational(const std::string& s) {
  const size_t slash = s.find('/');
  if (slash != std::string::npos) {
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }
  const size_t dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  BigInt den = 1;
  for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rational(BigInt(digits), den);
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r) << "/" << denominator(r);
  return os.str();
}

json expansion_json(const RiskExpansion<double>& e, long n) {
  json out;
  out["c1"] = e.c1();
  out["c2"] = e.c2;
  out["n"] = n;
  if (n > 0) out["value"] = e.value_at(n);
  return out;
}

json estimate_json(const RiskEstimate& r) {
  return json{{"mean", r.mean},
              {"std_error", r.std_error},
              {"reps", r.reps},
              {"infinite_fraction", r.infinite_fraction},
              {"zero_cell_fraction", r.zero_cell_fraction}};
}

RiskExpansion<double> fixed_expansion(const KernelSpec& k, int p, double M) {
  return k.symmetrized ? ed_i_alpha_sym(k.alpha, p, M) : ed_i_alpha(k.alpha, p, M);
}

RiskExpansion<double> moving_star_expansion(const KernelSpec& k, const std::vector<double>& m,
                                            const std::vector<double>& rbar) {
  return k.symmetrized ? ed_p_star_alpha_sym(k.alpha, m, rbar)
                       : ed_p_star_alpha(k.alpha, m, rbar);
}

/// Matches the benchmark procedure: take the moving-star risk at the
/// reference n as target, solve the fixed-interval expansion for n.
json equiv_n_result(const ExperimentPreset& preset, const KernelSpec& kernel) {
  const auto mother = preset.mother();
  const auto design = preset.design();
  const auto m_target = design.target_cells().cells();
  const auto rbar = design.rbar(preset.reference_n);
  const double target =
      moving_star_expansion(kernel, m_target, rbar).value_at(preset.reference_n);

  const auto m_fixed = cell_probabilities(mother, preset.partition());
  const double M = m_statistic(m_fixed);
  const auto fixed = fixed_expansion(kernel, m_fixed.p(), M);
  const double n = equivalent_sample_size(fixed, target);
  return json{{"preset", preset.name},
              {"reference_n", preset.reference_n},
              {"target_risk", target},
              {"M", M},
              {"c2_fixed", fixed.c2},
              {"n", n}};
}

int run(int argc, char** argv) {
  CLI::App app{"divergence risks of fixed-interval and moving-interval discretization"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  // ---- presets ----
  auto* presets = app.add_subcommand("presets", "preset catalog");
  auto* presets_list = presets->add_subcommand("list", "list presets");
  presets->require_subcommand(1);

  // ---- risk ----
  auto* risk = app.add_subcommand("risk", "two-term risk expansions");
  risk->require_subcommand(1);
  double alpha = 1.0;
  bool sym = false;
  int opt_p = 0;
  double opt_M = 0.0;
  long opt_n = 0;
  std::vector<double> m_vector, levels;

  auto* risk_fixed = risk->add_subcommand("fixed", "fixed-interval expansion");
  risk_fixed->add_option("--alpha", alpha);
  risk_fixed->add_flag("--sym", sym);
  risk_fixed->add_option("--p", opt_p);
  risk_fixed->add_option("--M", opt_M);
  risk_fixed->add_option("--m-vector", m_vector)->delimiter(',');
  risk_fixed->add_option("--n", opt_n);

  auto* risk_moving = risk->add_subcommand("moving", "moving-interval expansion, floor ranks");
  risk_moving->add_option("--alpha", alpha);
  risk_moving->add_flag("--sym", sym);
  risk_moving->add_option("--levels", levels)->delimiter(',')->required();
  risk_moving->add_option("--n", opt_n)->required();

  auto* risk_star = risk->add_subcommand("moving-star", "moving-interval expansion, randomized ranks");
  risk_star->add_option("--alpha", alpha);
  risk_star->add_flag("--sym", sym);
  risk_star->add_option("--levels", levels)->delimiter(',')->required();
  risk_star->add_option("--n", opt_n)->required();

  // ---- equiv-n ----
  auto* equiv = app.add_subcommand("equiv-n", "fixed-scheme n matching the moving-star risk");
  std::string preset_name;
  std::string kernel_str = "sym-alpha:1";
  equiv->add_option("--preset", preset_name)->required();
  equiv->add_option("--kernel", kernel_str);

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "exact rational oracles");
  oracle->require_subcommand(1);
  long oracle_n = 0;
  std::vector<long> oracle_ranks;
  std::vector<int> oracle_powers;
  std::vector<std::string> oracle_m;
  double oracle_alpha = 1.0;
  std::uint64_t oracle_budget = 10'000'000;

  auto* oracle_moments = oracle->add_subcommand("moments", "uniform order-statistic joint moment");
  oracle_moments->add_option("--n", oracle_n)->required();
  oracle_moments->add_option("--ranks", oracle_ranks)->delimiter(',')->required();
  oracle_moments->add_option("--powers", oracle_powers)->delimiter(',')->required();

  auto* oracle_exact = oracle->add_subcommand("exact-risk", "exhaustive fixed-interval risk");
  oracle_exact->add_option("--alpha", oracle_alpha);
  oracle_exact->add_option("--m", oracle_m)->delimiter(',')->required();
  oracle_exact->add_option("--n", oracle_n)->required();
  oracle_exact->add_option("--budget", oracle_budget);

  // ---- mc ----
  auto* mc = app.add_subcommand("mc", "Monte Carlo risk estimates");
  mc->require_subcommand(1);
  std::string mother_id = "uniform";
  std::vector<double> partition;
  MCConfig mc_cfg;
  mc_cfg.reps = 10000;

  auto* mc_fixed = mc->add_subcommand("fixed", "fixed-interval scheme");
  mc_fixed->add_option("--mother", mother_id);
  mc_fixed->add_option("--partition", partition)->delimiter(',')->required();
  mc_fixed->add_option("--n", mc_cfg.n)->required();
  mc_fixed->add_option("--reps", mc_cfg.reps);
  mc_fixed->add_option("--seed", mc_cfg.seed);
  mc_fixed->add_option("--kernel", kernel_str);

  auto* mc_moving = mc->add_subcommand("moving", "moving-interval scheme");
  mc_moving->add_option("--mother", mother_id);
  mc_moving->add_option("--levels", levels)->delimiter(',')->required();
  mc_moving->add_option("--n", mc_cfg.n)->required();
  mc_moving->add_option("--reps", mc_cfg.reps);
  mc_moving->add_option("--seed", mc_cfg.seed);
  mc_moving->add_option("--kernel", kernel_str);

  // ---- curve ----
  auto* curve = app.add_subcommand("curve", "risk vs n, MC paired with the expansion");
  curve->require_subcommand(1);
  std::vector<long> curve_ns;

  auto* curve_fixed = curve->add_subcommand("fixed", "fixed-interval scheme");
  curve_fixed->add_option("--mother", mother_id);
  curve_fixed->add_option("--partition", partition)->delimiter(',')->required();
  curve_fixed->add_option("--ns", curve_ns)->delimiter(',')->required();
  curve_fixed->add_option("--reps", mc_cfg.reps);
  curve_fixed->add_option("--seed", mc_cfg.seed);
  curve_fixed->add_option("--kernel", kernel_str);

  auto* curve_moving = curve->add_subcommand("moving", "moving-interval scheme");
  curve_moving->add_option("--mother", mother_id);
  curve_moving->add_option("--levels", levels)->delimiter(',')->required();
  curve_moving->add_option("--ns", curve_ns)->delimiter(',')->required();
  curve_moving->add_option("--reps", mc_cfg.reps);
  curve_moving->add_option("--seed", mc_cfg.seed);
  curve_moving->add_option("--kernel", kernel_str);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto emit = [&](const json& j) { std::cout << j.dump() << "\n"; };

  if (presets_list->parsed()) {
    json out = json::array();
    for (const auto& p : preset_catalog()) {
      out.push_back({{"name", p.name},
                     {"mother", p.mother_id},
                     {"endpoints", p.endpoints},
                     {"levels", p.levels},
                     {"alpha", p.alpha},
                     {"reference_n", p.reference_n}});
    }
    emit(out);
    return kExitOk;
  }

  if (risk_fixed->parsed()) {
    KernelSpec k{alpha, sym};
    int p = opt_p;
    double M = opt_M;
    if (!m_vector.empty()) {
      const auto pv = ProbabilityVector::model(m_vector);
      p = pv.p();
      M = m_statistic(pv);
    }
    if (p < 1) throw domain_error("risk fixed: need --p with --M, or --m-vector");
    emit(expansion_json(fixed_expansion(k, p, M), opt_n));
    return kExitOk;
  }

  if (risk_moving->parsed() || risk_star->parsed()) {
    KernelSpec k{alpha, sym};
    QuantileDesign design(levels);
    const auto m = design.target_cells().cells();
    RiskExpansion<double> e;
    if (risk_star->parsed()) {
      e = moving_star_expansion(k, m, design.rbar(opt_n));
    } else {
      // deterministic floor ranks: gaps r_i equal the fractional parts
      std::vector<double> r(m.size() + 1, 0.0);
      const auto rb = design.rbar(opt_n);
      for (size_t i = 0; i < rb.size(); ++i) r[i + 1] = rb[i];
      r.back() = 1.0;
      e = k.symmetrized ? ed_p_alpha_sym(k.alpha, m, r) : ed_p_alpha(k.alpha, m, r);
    }
    emit(expansion_json(e, opt_n));
    return kExitOk;
  }

  if (equiv->parsed()) {
    emit(equiv_n_result(find_preset(preset_name), parse_kernel(kernel_str)));
    return kExitOk;
  }

  if (oracle_moments->parsed()) {
    const Rational v = uniform_orderstat_moment({oracle_n, oracle_ranks, oracle_powers});
    emit(json{{"value", rational_string(v)}});
    return kExitOk;
  }

  if (oracle_exact->parsed()) {
    std::vector<Rational> m;
    for (const auto& s : oracle_m) m.push_back(parse_rational(s));
    const ExtReal v = exact_fixed_risk(alpha_kernel(oracle_alpha), m, oracle_n, oracle_budget);
    json out;
    if (v.infinite()) {
      out["value"] = "inf";
    } else {
      out["value"] = v.value();
    }
    emit(out);
    return kExitOk;
  }

  if (mc_fixed->parsed() || mc_moving->parsed()) {
    const KernelSpec k = parse_kernel(kernel_str);
    const auto mother = make_distribution(mother_id);
    RiskEstimate est;
    if (mc_fixed->parsed()) {
      est = estimate_fixed_risk(mother, FixedPartition(partition), k, mc_cfg);
    } else {
      est = estimate_moving_risk(mother, QuantileDesign(levels), k, mc_cfg);
    }
    emit(estimate_json(est));
    return kExitOk;
  }

  if (curve_fixed->parsed() || curve_moving->parsed()) {
    const KernelSpec k = parse_kernel(kernel_str);
    const auto mother = make_distribution(mother_id);
    std::function<RiskEstimate(long)> estimator;
    std::function<double(long)> expansion_at;
    if (curve_fixed->parsed()) {
      FixedPartition part(partition);
      const auto pv = cell_probabilities(mother, part);
      const auto e = fixed_expansion(k, pv.p(), m_statistic(pv));
      estimator = [&, part](long n) {
        MCConfig c = mc_cfg;
        c.n = n;
        return estimate_fixed_risk(mother, part, k, c);
      };
      expansion_at = [e](long n) { return e.value_at(n); };
    } else {
      QuantileDesign design(levels);
      const auto m = design.target_cells().cells();
      estimator = [&, design](long n) {
        MCConfig c = mc_cfg;
        c.n = n;
        return estimate_moving_risk(mother, design, k, c);
      };
      expansion_at = [&, design, m](long n) {
        return moving_star_expansion(k, m, design.rbar(n)).value_at(n);
      };
    }
    const auto points = risk_curve(curve_ns, estimator, expansion_at);
    if (format == "json") {
      json out = json::array();
      for (const auto& pt : points)
        out.push_back({{"n", pt.n},
                       {"mc_mean", pt.mc.mean},
                       {"mc_se", pt.mc.std_error},
                       {"expansion", pt.expansion}});
      emit(out);
    } else {
      std::cout << "n,mc_mean,mc_se,expansion\n";
      for (const auto& pt : points)
        std::cout << pt.n << "," << pt.mc.mean << "," << pt.mc.std_error << ","
                  << pt.expansion << "\n";
    }
    return kExitOk;
  }

  std::cerr << R"({"error":"no subcommand"})" << "\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const disrisk::budget_error& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return kExitDomain;
  }
}
