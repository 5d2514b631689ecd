// Copyright 2026 The cpdyn authors
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

#include "cpdyn/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "cpdyn/version.hpp"

namespace cpdyn {

namespace {

std::string iso8601_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_path(const std::string& base, const std::string& path) {
  if (base.empty() || (!path.empty() && path.front() == '/')) return path;
  return base + "/" + path;
}

struct Params {
  double tol = 1e-9;
  int max_iter = 10000;
  int period_max = 64;
  int samples = 50;
  int steps = 100;
  std::uint64_t seed = 0;
};

Params parse_params(const Json& scenario, const std::string& kind) {
  Params p;
  if (kind == "universal") p.samples = kDefaultFunctionSamples;
  if (!scenario.contains("params")) return p;
  const Json& j = scenario.at("params");
  if (!j.is_object()) {
    fail(ErrorCode::kValidationError, "params: expected an object");
  }
  auto number = [&](const char* key, double fallback, bool positive) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
      fail(ErrorCode::kValidationError,
           std::string("params.") + key + ": expected a number");
    }
    const double v = j.at(key).get<double>();
    if (positive && !(v > 0.0)) {
      fail(ErrorCode::kValidationError,
           std::string("params.") + key + ": must be positive");
    }
    return v;
  };
  p.tol = number("tol", p.tol, true);
  p.max_iter = static_cast<int>(number("max_iter", p.max_iter, true));
  p.period_max = static_cast<int>(number("period_max", p.period_max, true));
  p.samples = static_cast<int>(number("samples", p.samples, true));
  p.steps = static_cast<int>(number("steps", p.steps, true));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) {
      fail(ErrorCode::kValidationError, "params.seed: expected an integer");
    }
    p.seed = j.at("seed").get<std::uint64_t>();
  }
  return p;
}

Json params_to_json(const Params& p, const std::string& kind) {
  Json out{{"tol", p.tol},       {"max_iter", p.max_iter},
           {"period_max", p.period_max}, {"samples", p.samples},
           {"seed", p.seed}};
  if (kind == "evolve") out["steps"] = p.steps;
  return out;
}

struct ResolvedInput {
  Json doc;
  std::string digest;
  std::string source;
};

ResolvedInput resolve_document(const Json& value, const std::string& name,
                               const std::string& base_dir) {
  ResolvedInput out;
  if (value.is_string()) {
    const std::string path = join_path(base_dir, value.get<std::string>());
    out.doc = parse_json_text(read_text_file(path), "inputs." + name);
    out.source = "file";
  } else {
    out.doc = value;
    out.source = "inline";
  }
  out.digest = digest_hex(out.doc.dump());
  return out;
}

class ScenarioContext {
 public:
  ScenarioContext(const Json& scenario, std::string base_dir)
      : base_dir_(std::move(base_dir)) {
    if (!scenario.is_object()) {
      fail(ErrorCode::kParseError, "scenario: expected a JSON object");
    }
    if (scenario.contains("inputs")) {
      if (!scenario.at("inputs").is_object()) {
        fail(ErrorCode::kValidationError, "inputs: expected an object");
      }
      inputs_ = scenario.at("inputs");
    } else {
      inputs_ = Json::object();
    }
  }

  bool has(const std::string& name) const { return inputs_.contains(name); }

  const Json& raw(const std::string& name) const { return inputs_.at(name); }

  ResolvedInput require(const std::string& name) {
    if (!inputs_.contains(name)) {
      fail(ErrorCode::kValidationError,
           "inputs." + name + ": required by this scenario kind");
    }
    ResolvedInput r = resolve_document(inputs_.at(name), name, base_dir_);
    digests_[name] = Json{{"digest", r.digest}, {"source", r.source}};
    return r;
  }

  // State inputs accept the literal "random" for a seeded random density.
  DensityMatrix state(const std::string& name, int dim, Rng& rng) {
    if (!inputs_.contains(name)) {
      fail(ErrorCode::kValidationError,
           "inputs." + name + ": required by this scenario kind");
    }
    const Json& value = inputs_.at(name);
    if (value.is_string() && value.get<std::string>() == "random") {
      DensityMatrix d = random_density(rng, dim);
      digests_[name] =
          Json{{"digest", digest_hex(density_to_json(d).dump())},
               {"source", "random"}};
      return d;
    }
    ResolvedInput r = resolve_document(value, name, base_dir_);
    digests_[name] = Json{{"digest", r.digest}, {"source", r.source}};
    return density_from_json(r.doc, "inputs." + name);
  }

  Json digests() const { return digests_; }

 private:
  std::string base_dir_;
  Json inputs_;
  Json digests_ = Json::object();
};

std::vector<DensityMatrix> cycle_states(const OmegaLimitSet& limit) {
  return limit.cycle;
}

Json consistency_to_json(const ConsistencyReport& r) {
  Json constraints = Json::array();
  for (const PhaseConstraint& c : r.constraints) {
    constraints.push_back(Json{{"branch", c.branch},
                               {"row", c.row},
                               {"col", c.col},
                               {"vacuous", c.vacuous},
                               {"residual", c.residual}});
  }
  return Json{{"consistent", r.consistent},
              {"max_relative_residual", r.max_relative_residual},
              {"free_phase_count", r.free_phase_count},
              {"phases", r.phases},
              {"constraints", std::move(constraints)}};
}

}  // namespace

std::string emit_trace(const DensityMatrix& initial,
                       const std::vector<DensityMatrix>& orbit_states,
                       const std::vector<DensityMatrix>& cycle) {
  std::ostringstream out;
  out << "step,trace_distance_to_previous,trace_distance_to_cycle\n";
  const DensityMatrix* prev = &initial;
  char line[96];
  for (std::size_t k = 0; k < orbit_states.size(); ++k) {
    const DensityMatrix& x = orbit_states[k];
    const double dtp = trace_distance(x, *prev);
    double dtc;
    if (cycle.empty()) {
      dtc = trace_distance(x, orbit_states.back());
    } else {
      dtc = trace_distance(x, cycle.front());
      for (std::size_t j = 1; j < cycle.size(); ++j) {
        dtc = std::min(dtc, trace_distance(x, cycle[j]));
      }
    }
    std::snprintf(line, sizeof line, "%zu,%.12g,%.12g\n", k + 1, dtp, dtc);
    out << line;
    prev = &x;
  }
  return out.str();
}

Json error_to_json(const Error& e) {
  return Json{{"error",
               Json{{"code", e.code_name()},
                    {"class", static_cast<int>(e.cls())},
                    {"message", e.what()}}}};
}

ScenarioResult run_scenario(const Json& scenario, const std::string& base_dir) {
  if (!scenario.is_object() || !scenario.contains("kind") ||
      !scenario.at("kind").is_string()) {
    fail(ErrorCode::kValidationError, "scenario.kind: required string field");
  }
  const std::string kind = scenario.at("kind").get<std::string>();
  const Params params = parse_params(scenario, kind);
  ScenarioContext ctx(scenario, base_dir);
  Rng rng(params.seed);

  Json results;
  std::optional<std::string> csv;
  try {
    if (kind == "evolve") {
      const QuantumChannel channel =
          channel_from_json(ctx.require("channel").doc, "inputs.channel");
      const DensityMatrix rho0 = ctx.state("state", channel.dim(), rng);
      const std::vector<DensityMatrix> trail = orbit(channel, rho0, params.steps);
      std::vector<DensityMatrix> cycle;
      try {
        cycle = cycle_states(detect_limit_cycle(
            channel, rho0, params.tol, params.max_iter, params.period_max));
      } catch (const Error&) {
        // no detectable cycle: the trace falls back to the final state
      }
      csv = emit_trace(rho0, trail, cycle);
      const DensityMatrix& prev =
          trail.size() > 1 ? trail[trail.size() - 2] : rho0;
      results = Json{{"steps", params.steps},
                     {"final_state", density_to_json(trail.back())},
                     {"final_distance_to_previous",
                      trace_distance(trail.back(), prev)}};
    } else if (kind == "limit") {
      const QuantumChannel channel =
          channel_from_json(ctx.require("channel").doc, "inputs.channel");
      const DensityMatrix rho0 = ctx.state("state", channel.dim(), rng);
      const OmegaLimitSet limit = detect_limit_cycle(
          channel, rho0, params.tol, params.max_iter, params.period_max);
      const double hull_comm =
          verify_commuting_hull(limit.cycle, params.samples, rng.next_u64());
      const IsometryReport iso = verify_isometry(
          channel, limit.cycle, params.samples, params.tol, rng.next_u64());
      results = omega_limit_to_json(limit);
      results["commuting_hull_max"] = hull_comm;
      results["max_distortion"] = iso.max_distortion;
      results["isometry"] = Json{{"max_distortion", iso.max_distortion},
                                 {"sample_count", iso.sample_count},
                                 {"pairs_checked", iso.pairs_checked}};
    } else if (kind == "fixpoint") {
      const QuantumChannel channel =
          channel_from_json(ctx.require("channel").doc, "inputs.channel");
      const DensityMatrix eta = ctx.state("state", channel.dim(), rng);
      const DensityMatrix fixed =
          cesaro_fixed_point(channel, eta, params.tol, params.max_iter);
      results = Json{{"fixed_point", density_to_json(fixed)},
                     {"residual", trace_distance(channel.apply(fixed), fixed)}};
    } else if (kind == "quantize") {
      const TransferSpec transfer =
          transfer_from_json(ctx.require("transfer").doc, "inputs.transfer");
      const StateFunction f =
          StateFunction::from_json(ctx.require("function").doc);
      const DiscreteMeasure mu =
          measure_from_json(ctx.require("measure").doc, "inputs.measure");
      std::vector<std::vector<double>> phases;
      if (ctx.has("phases")) {
        const Json& pj = ctx.require("phases").doc;
        if (!pj.is_array()) {
          fail(ErrorCode::kValidationError,
               "inputs.phases: expected an array of per-branch phase rows");
        }
        phases = pj.get<std::vector<std::vector<double>>>();
      }
      const DiagonalSolution sol = solve_diagonal_kraus(transfer, f, mu, phases);
      results = Json{{"moduli", sol.moduli},
                     {"kraus", kraus_list_to_json(sol.kraus)},
                     {"residual", sol.residual}};
    } else if (kind == "verify") {
      const TransferSpec transfer =
          transfer_from_json(ctx.require("transfer").doc, "inputs.transfer");
      const StateFunction f =
          StateFunction::from_json(ctx.require("function").doc);
      const DiscreteMeasure mu =
          measure_from_json(ctx.require("measure").doc, "inputs.measure");

      std::vector<CMat> kraus;
      std::vector<std::vector<double>> moduli;
      bool solved = false;
      if (ctx.has("kraus")) {
        kraus = kraus_list_from_json(ctx.require("kraus").doc, "inputs.kraus");
        bool diagonal = true;
        for (const CMat& v : kraus) {
          for (Eigen::Index r = 0; r < v.rows(); ++r) {
            for (Eigen::Index c = 0; c < v.cols(); ++c) {
              if (r != c && std::abs(v(r, c)) > kDiagonalSupportTol) {
                diagonal = false;
              }
            }
          }
        }
        if (diagonal && static_cast<int>(kraus.size()) == transfer.size()) {
          moduli.resize(kraus.size());
          for (std::size_t i = 0; i < kraus.size(); ++i) {
            for (Eigen::Index j = 0; j < kraus[i].rows(); ++j) {
              moduli[i].push_back(std::abs(kraus[i](j, j)));
            }
          }
        }
      } else {
        const DiagonalSolution sol = solve_diagonal_kraus(transfer, f, mu);
        kraus = sol.kraus;
        moduli = sol.moduli;
        solved = true;
      }
      results = Json{{"residual", verify_diagram(transfer, f, mu, kraus)},
                     {"solved", solved}};
      if (!moduli.empty()) {
        results["offdiagonal"] =
            consistency_to_json(offdiagonal_consistency(transfer, f, mu, moduli));
      } else {
        results["offdiagonal"] = nullptr;
      }
    } else if (kind == "universal") {
      const TransferSpec transfer =
          transfer_from_json(ctx.require("transfer").doc, "inputs.transfer");
      const DiscreteMeasure mu =
          measure_from_json(ctx.require("measure").doc, "inputs.measure");
      const UniversalVerdict verdict = check_universal_quantization(
          transfer, mu, params.samples, params.tol, params.seed);
      results = Json{{"pass", verdict.universal_pass},
                     {"atoms_all_fixed", verdict.atoms_all_fixed},
                     {"verdicts_agree", verdict.verdicts_agree},
                     {"max_residual", verdict.max_residual},
                     {"max_atom_movement", verdict.max_atom_movement},
                     {"samples", verdict.samples}};
      if (verdict.witness) {
        results["witness"] = verdict.witness->to_json();
        results["witness_residual"] = verdict.witness_residual;
      } else {
        results["witness"] = nullptr;
      }
    } else if (kind == "markov") {
      const TransferSpec transfer =
          transfer_from_json(ctx.require("transfer").doc, "inputs.transfer");
      const DiscreteMeasure mu =
          measure_from_json(ctx.require("measure").doc, "inputs.measure");
      const DiscreteMeasure pushed = markov_pushforward(transfer, mu);
      const DensityMatrix before = barycenter(mu);
      const DensityMatrix after = barycenter(pushed);
      const QuantumChannel phi = transfer.induced_channel();
      results = Json{
          {"pushforward", measure_to_json(pushed)},
          {"barycenter", density_to_json(before)},
          {"pushforward_barycenter", density_to_json(after)},
          {"intertwining_residual", trace_distance(after, phi.apply(before))}};
    } else {
      fail(ErrorCode::kValidationError,
           "scenario.kind: unknown kind '" + kind + "'");
    }
  } catch (const Error& e) {
    throw Error(e.code(), "scenario '" + kind + "': " + e.what());
  }

  ScenarioResult out;
  out.report = Json{{"kind", kind},
                    {"version", version()},
                    {"seed", params.seed},
                    {"params", params_to_json(params, kind)},
                    {"inputs", ctx.digests()},
                    {"results", std::move(results)},
                    {"timestamp", iso8601_utc_now()}};
  out.csv = std::move(csv);
  return out;
}

ScenarioResult run_scenario_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const Json scenario = parse_json_text(text, "scenario file '" + path + "'");
  const std::size_t slash = path.find_last_of('/');
  const std::string base_dir =
      slash == std::string::npos ? std::string() : path.substr(0, slash);
  return run_scenario(scenario, base_dir);
}

}  // namespace cpdyn
