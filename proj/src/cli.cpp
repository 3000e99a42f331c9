// Copyright 2026 The qrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrt/io.hpp"
#include "qrt/oracle.hpp"
#include "qrt/theorems.hpp"

namespace qrt::cli {

using nlohmann::json;

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

Grid Grid::parse(const std::string& text) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw ValidationError("grid must look like start:stop:step, got '" + text + "'");
  }
  if (!(g.step > 0.0) || g.stop < g.start) throw ValidationError("grid needs step > 0 and stop >= start");
  return g;
}

std::vector<double> Grid::values() const {
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
  for (long long k = 0; k <= n; ++k) out.push_back(std::round((start + k * step) * 1e12) / 1e12);
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) items.push_back(item);
  std::vector<double> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == "...") {
      if (out.size() < 2 || i + 1 != items.size() - 1) {
        throw ValidationError("'...' needs two values before it and exactly one after");
      }
      const double ratio = out[out.size() - 1] / out[out.size() - 2];
      const double last = std::stod(items[i + 1]);
      const double steps = std::log(last / out.back()) / std::log(ratio);
      if (!(ratio > 0.0) || ratio == 1.0 || !(steps >= 1.0 - 1e-9)) {
        throw ValidationError("'...' cannot extend the list geometrically to " + items[i + 1]);
      }
      const double base = out.back();
      for (long long k = 1; k < std::llround(steps); ++k) out.push_back(base * std::pow(ratio, k));
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(items[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != items[i].size() || items[i].empty()) {
      throw ValidationError("not a number: '" + items[i] + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

namespace {

json value_json(const MonotoneValue& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

json value_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ResourceTheory theory_for(const std::string& name, const std::string& dims, Eigen::Index state_dim) {
  const TheoryKind kind = parse_theory_kind(name);
  std::vector<Eigen::Index> d;
  if (dims.empty()) {
    d = default_dims(kind, state_dim);
  } else {
    for (double x : parse_real_list(dims)) d.push_back(static_cast<Eigen::Index>(x));
  }
  ResourceTheory t = make_theory(kind, d);
  if (t.dim() != state_dim) {
    throw ValidationError("state dimension " + std::to_string(state_dim) + " does not match theory " +
                          t.name() + " of dimension " + std::to_string(t.dim()));
  }
  return t;
}

DensityMatrix load_state(const std::string& path) { return to_density_matrix(read_state_file(path)); }

/// "label" or "label:m"; empty picks the theory's default family.
CanonicalState parse_target(const ResourceTheory& theory, const std::string& text) {
  std::string label = text;
  if (label.empty()) {
    switch (theory.kind()) {
      case TheoryKind::Coherence:
        label = "maximally_coherent";
        break;
      case TheoryKind::PptEntanglement:
        label = "maximally_entangled";
        break;
      case TheoryKind::MagicQubit:
        label = "t_state";
        break;
      case TheoryKind::Imaginarity:
        throw ValidationError("theory imaginarity ships no canonical target; pass --target");
    }
  }
  const auto colon = label.find(':');
  if (colon == std::string::npos) return theory.canonical_state(label);
  return theory.canonical_state(label.substr(0, colon), std::stoll(label.substr(colon + 1)));
}

std::string family_of(const CanonicalState& target) {
  return target.label.substr(0, target.label.find('('));
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

struct Options {
  std::string theory;
  std::string dims;
  std::string state;
  std::string from;
  std::string to;
  std::string measure = "omega";
  std::string target;
  std::string epsilon;
  std::string grid = "0:1:0.05";
  std::string out;
  std::string experiment;
  std::uint64_t seed = 42;
  long long resolution = 10000;
  int trials = 0;
};

int cmd_monotone(const Options& o, std::ostream& out) {
  const DensityMatrix rho = load_state(o.state);
  const ResourceTheory theory = theory_for(o.theory, o.dims, rho.dim());
  const Measure measure = parse_measure(o.measure);
  const NumericPolicy policy = NumericPolicy::from_environment();
  const MonotoneValue v = evaluate(measure, theory, rho, policy);
  json j = {{"theory", theory.name()}, {"measure", to_string(measure)}, {to_string(measure), value_json(v)}};
  if (v.is_infinite()) {
    j["status"] = "infinite";
    j["reason"] = v.reason();
  } else {
    j["status"] = "optimal";
    if (const auto& cert = v.certificate()) {
      j["gap"] = cert->duality_gap;
      j["iterations"] = cert->iterations;
      if (measure == Measure::Omega) {
        const MonotoneProgram mp = build_program(ProgramKind::Omega, theory, rho);
        if (const auto w = extract_omega_witness(*cert, mp, theory, rho)) {
          j["witness"] = {{"ratio", w->ratio}, {"violation", w->violation}};
        }
      }
    } else {
      j["gap"] = 0.0;
    }
  }
  print(out, j);
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const DensityMatrix a = load_state(o.from);
  const DensityMatrix b = load_state(o.to);
  if (a.dim() != b.dim()) throw ValidationError("--from and --to states have different dimensions");
  const ResourceTheory theory = theory_for(o.theory, o.dims, a.dim());
  const ConversionVerdict v = check_conversion(theory, a, b);
  json j = {{"verdict", to_string(v.verdict)},
            {"basis", v.basis},
            {"omega_from", value_json(v.omega_from)},
            {"omega_to", value_json(v.omega_to)},
            {"boundary", v.boundary},
            {"target_robustness_finite", v.target_robustness_finite}};
  if (v.omega_free_to) j["omega_free_to"] = value_json(*v.omega_free_to);
  if (!v.note.empty()) j["note"] = v.note;
  print(out, j);
  return kOk;
}

int cmd_distill(const Options& o, std::ostream& out) {
  const DensityMatrix rho = load_state(o.state);
  const ResourceTheory theory = theory_for(o.theory, o.dims, rho.dim());
  const CanonicalState target = parse_target(theory, o.target);
  const BoundReport r = achievable_fidelity(theory, rho, target);
  const Applicability& a = r.applicability;
  json j = {{"theory", theory.name()},
            {"target", target.label},
            {"omega", value_json(r.omega)},
            {"free_fidelity", r.free_fidelity},
            {"epsilon_threshold", r.epsilon_threshold},
            {"achievable_fidelity", r.achievable_fidelity ? json(*r.achievable_fidelity) : json(nullptr)},
            {"applicability",
             {{"affine", a.affine},
              {"robustness_equal", a.robustness_equal},
              {"target_robustness", value_json(a.target_robustness)},
              {"target_std_robustness", value_json(a.target_std_robustness)},
              {"max_robustness_target", a.max_robustness_target},
              {"tight", a.tight}}}};
  if (!r.note.empty()) j["note"] = r.note;
  if (!o.epsilon.empty()) {
    const std::string family = family_of(target);
    if (family != "maximally_coherent" && family != "maximally_entangled") {
      throw ValidationError("distillable index needs a maximally_coherent or maximally_entangled family");
    }
    json rows = json::array();
    for (double eps : parse_real_list(o.epsilon)) {
      rows.push_back({{"epsilon", eps}, {"m", distillable_index(r.omega, eps)}});
    }
    j["distillable"] = std::move(rows);
  }
  print(out, j);
  return kOk;
}

int cmd_overhead(const Options& o, std::ostream& out) {
  if (o.epsilon.empty()) throw ValidationError("overhead needs --epsilon");
  const DensityMatrix rho = load_state(o.state);
  const ResourceTheory theory = theory_for(o.theory, o.dims, rho.dim());
  const CanonicalState target = parse_target(theory, o.target);
  const MonotoneValue omega = projective_robustness(theory, rho);
  const double f = free_fidelity(theory, target.state);
  if (f >= 1.0 - 1e-9) throw ValidationError("target is free (F_F = 1)");
  json rows = json::array();
  for (double eps : parse_real_list(o.epsilon)) {
    const OverheadBound b = overhead_bound(omega, f, eps);
    json row = {{"epsilon", eps}, {"n_lower", value_json(b.copies_lower)}};
    row["copies"] = b.copies ? json(*b.copies) : json("inf");
    if (!b.note.empty()) row["note"] = b.note;
    rows.push_back(std::move(row));
  }
  print(out, {{"theory", theory.name()},
              {"target", target.label},
              {"omega", value_json(omega)},
              {"free_fidelity", f},
              {"rows", std::move(rows)}});
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ValidationError("sweep needs --out");
  std::string csv;
  std::size_t rows = 0;
  if (o.experiment == "coh_amplitude_damping") {
    const auto gammas = Grid::parse(o.grid).values();
    for (double g : gammas) {
      if (g < 0.0 || g > 1.0) throw ValidationError("gamma grid must lie in [0, 1]");
    }
    const auto eps = o.epsilon.empty() ? std::vector<double>{0.1} : parse_real_list(o.epsilon);
    if (eps.size() != 1) throw ValidationError("coh_amplitude_damping takes a single --epsilon for m_at_eps");
    csv = sweep_coherence_damping(gammas, eps.front());
    rows = gammas.size();
  } else if (o.experiment == "magic_T_overhead") {
    const auto eps = parse_real_list(o.epsilon.empty() ? "1e-2,1e-3,...,1e-12" : o.epsilon);
    const DensityMatrix rho = o.state.empty() ? states::noisy_t(0.25) : load_state(o.state);
    csv = sweep_magic_overhead(rho, eps);
    rows = eps.size();
  } else {
    throw ValidationError("unknown experiment '" + o.experiment + "'");
  }
  std::ofstream file(o.out);
  if (!file) throw ValidationError("cannot write '" + o.out + "'");
  file << csv;
  print(out, {{"experiment", o.experiment}, {"rows", rows}, {"out", o.out}});
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const DensityMatrix rho = load_state(o.state);
  const ResourceTheory theory = theory_for(o.theory, o.dims, rho.dim());
  const Measure measure = parse_measure(o.measure);
  OracleResult oracle;
  if (measure == Measure::Omega) {
    oracle = omega_grid(theory, rho, o.resolution);
  } else if (measure == Measure::OmegaFree) {
    oracle = definitional_omega_free(theory, rho, o.resolution);
  } else {
    throw ValidationError("verify supports --measure omega or omega_free");
  }
  const MonotoneValue conic = evaluate(measure, theory, rho);
  const bool consistent = (conic.is_infinite() && oracle.is_infinite()) ||
                          (conic.is_finite() && oracle.contains(conic.value(), 1e-6));
  json j = {{"theory", theory.name()},
            {"measure", to_string(measure)},
            {"oracle",
             {{"lower", value_json(oracle.lower)},
              {"upper", value_json(oracle.upper)},
              {"samples", oracle.samples},
              {"parametrization", oracle.parametrization}}},
            {"conic", value_json(conic)},
            {"consistent", consistent}};
  int violations = 0;
  if (o.trials > 0) {
    const MonotoneValue before = projective_robustness(theory, rho);
    double worst = -std::numeric_limits<double>::infinity();
    int branches = 0;
    for (int t = 0; t < o.trials; ++t) {
      for (const KrausChannel& k : random_free_instrument(theory, o.seed + static_cast<std::uint64_t>(t))) {
        const ChannelOutput c = apply_channel(k, rho);
        if (!c.normalized) continue;
        ++branches;
        const MonotoneValue after = projective_robustness(theory, *c.normalized);
        const double inc = after.is_infinite() ? (before.is_infinite() ? 0.0 : after.value())
                                               : after.value() - before.value();
        worst = std::max(worst, inc);
        if (inc > 1e-6) ++violations;
      }
    }
    j["monotonicity"] = {{"seed", o.seed},
                         {"trials", o.trials},
                         {"branches", branches},
                         {"max_increase", value_json(worst)},
                         {"violations", violations}};
  }
  print(out, j);
  return consistent && violations == 0 ? kOk : kNumerical;
}

}  // namespace

std::string sweep_coherence_damping(const std::vector<double>& gammas, double epsilon,
                                    const NumericPolicy& policy) {
  const ResourceTheory theory = make_theory(TheoryKind::Coherence, {2});
  const DensityMatrix plus = DensityMatrix::pure(states::maximally_coherent(2));
  const double f = free_fidelity(theory, plus, policy);
  struct Row {
    double gamma;
    std::string line;
  };
  std::vector<std::future<Row>> jobs;
  for (double g : gammas) {
    jobs.push_back(std::async(std::launch::async, [&, g] {
      const KrausChannel ad = standard_channel(StandardChannel::AmplitudeDamping, g);
      const DensityMatrix rho = *apply_channel(ad, plus).normalized;
      const MonotoneValue omega = projective_robustness(theory, rho, policy);
      const std::string m = omega.is_finite() ? std::to_string(distillable_index(omega, epsilon)) : "inf";
      return Row{g, format_real(g) + "," + format_real(omega.value()) + "," +
                        format_real(error_threshold(omega, f)) + "," + m};
    }));
  }
  std::vector<Row> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.gamma < b.gamma; });
  std::string csv = "gamma,omega,eps_threshold,m_at_eps\n";
  for (const Row& r : rows) csv += r.line + "\n";
  return csv;
}

std::string sweep_magic_overhead(const DensityMatrix& rho, const std::vector<double>& epsilons,
                                 const NumericPolicy& policy) {
  const ResourceTheory theory = make_theory(TheoryKind::MagicQubit, {rho.dim()});
  const CanonicalState t = theory.canonical_state("t_state");
  const MonotoneValue omega = projective_robustness(theory, rho, policy);
  const double f = free_fidelity(theory, t.state, policy);
  std::vector<double> eps = epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  std::string csv = "epsilon,omega,n_lower\n";
  for (double e : eps) {
    csv += format_real(e) + "," + format_real(omega.value()) + "," +
           format_real(overhead_bound(omega, f, e).copies_lower) + "\n";
  }
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"projective robustness and probabilistic conversion bounds", "qrt"};
  app.require_subcommand(1);
  Options o;

  auto add_theory = [&](CLI::App* s) {
    s->add_option("--theory", o.theory, "coherence, imaginarity, magic_qubit or ppt_entanglement")->required();
    s->add_option("--dims", o.dims, "subsystem dims, e.g. 2,2 (default: inferred from the state)");
  };
  auto* monotone = app.add_subcommand("monotone", "evaluate one measure on a state");
  add_theory(monotone);
  monotone->add_option("--state", o.state, "state file")->required();
  monotone->add_option("--measure", o.measure, "omega, omega_free, robustness, std_robustness, weight");

  auto* check = app.add_subcommand("check", "decide whether one state converts to another");
  add_theory(check);
  check->add_option("--from", o.from, "input state file")->required();
  check->add_option("--to", o.to, "target state file")->required();

  auto* distill = app.add_subcommand("distill", "error threshold, achievable fidelity, distillable index");
  add_theory(distill);
  distill->add_option("--state", o.state, "state file")->required();
  distill->add_option("--target", o.target, "canonical target label[:m]");
  distill->add_option("--epsilon", o.epsilon, "comma list of errors for the distillable index");

  auto* overhead = app.add_subcommand("overhead", "lower bound on the number of copies");
  add_theory(overhead);
  overhead->add_option("--state", o.state, "state file")->required();
  overhead->add_option("--target", o.target, "canonical target label[:m]");
  overhead->add_option("--epsilon", o.epsilon, "comma list of target errors")->required();

  auto* sweep = app.add_subcommand("sweep", "write parameter sweeps as CSV");
  sweep->add_option("--experiment", o.experiment, "coh_amplitude_damping or magic_T_overhead")->required();
  sweep->add_option("--grid", o.grid, "gamma grid start:stop:step")->capture_default_str();
  sweep->add_option("--epsilon", o.epsilon, "epsilon list (overhead) or single epsilon (m_at_eps)");
  sweep->add_option("--state", o.state, "input state for magic_T_overhead (default 3/4 |T><T| + 1/8)");
  sweep->add_option("--out", o.out, "CSV path")->required();

  auto* verify = app.add_subcommand("verify", "compare the conic value with the brute-force oracle");
  add_theory(verify);
  verify->add_option("--state", o.state, "state file")->required();
  verify->add_option("--measure", o.measure, "omega or omega_free");
  verify->add_option("--resolution", o.resolution, "oracle grid points");
  verify->add_option("--trials", o.trials, "random free instruments to test monotonicity on");
  verify->add_option("--seed", o.seed, "seed for random instruments (default 42)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*monotone) return cmd_monotone(o, out);
    if (*check) return cmd_check(o, out);
    if (*distill) return cmd_distill(o, out);
    if (*overhead) return cmd_overhead(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const InfiniteResult& e) {
    err << "error: " << e.what() << '\n';
    return kInfinite;
  } catch (const SolverFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qrt::cli
