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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line; the
// process exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

#include "cpdyn/scenario.hpp"

using namespace cpdyn;
using namespace testsup;

namespace {

struct CheckFailure {
  std::string message;
};

void ensure(bool condition, const std::string& message) {
  if (!condition) throw CheckFailure{message};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// ---- shared CNOT fixture (criteria 1-3) ------------------------------------

struct CnotRuns {
  QuantumChannel channel = cnot_channel();
  std::vector<OmegaLimitSet> limits;
  double detect_seconds = 0.0;
};

const CnotRuns& cnot_runs() {
  static const CnotRuns runs = [] {
    CnotRuns r;
    Rng rng(1234);
    const auto start = std::chrono::steady_clock::now();
    for (int seed = 0; seed < 20; ++seed) {
      const DensityMatrix rho0 = random_density(rng, 4);
      r.limits.push_back(
          detect_limit_cycle(r.channel, rho0, 1e-9, 2000, 8));
    }
    r.detect_seconds = seconds_since(start);
    return r;
  }();
  return runs;
}

// Deviation from the limit-pair entry pattern: constant first row, constant
// trailing diagonal, and the two three-cycles of off-diagonal entries each
// constant and conjugate to one another.
double cnot_pattern_deviation(const CMat& s) {
  double dev = 0.0;
  auto up = [&](double x) { dev = std::max(dev, x); };
  up(std::abs(s(0, 1) - s(0, 2)));
  up(std::abs(s(0, 1) - s(0, 3)));
  up(std::abs(s(1, 1) - s(2, 2)));
  up(std::abs(s(1, 1) - s(3, 3)));
  up(std::abs(s(1, 2) - s(2, 3)));
  up(std::abs(s(1, 2) - s(3, 1)));
  up(std::abs(s(1, 3) - s(2, 1)));
  up(std::abs(s(1, 3) - s(3, 2)));
  up(std::abs(s(1, 3) - std::conj(s(1, 2))));
  return dev;
}

double cnot_pair_deviation(const CMat& a, const CMat& b) {
  double dev = 0.0;
  auto up = [&](double x) { dev = std::max(dev, x); };
  up(std::abs(a(0, 0) - b(0, 0)));
  up(std::abs(a(0, 1) - b(0, 1)));
  up(std::abs(a(1, 1) - b(1, 1)));
  up(std::abs(b(1, 2) - std::conj(a(1, 2))));  // d swaps with its conjugate
  return dev;
}

// ---- shared quantization instances (criteria 6 and 9) ----------------------

struct TheoremInstance {
  TransferSpec transfer;
  DiscreteMeasure measure;
  StateFunction observable;
};

TheoremInstance make_theorem_instance(Rng& rng, int index) {
  const int n = (index % 2 == 0) ? 2 : 3;
  const int k = 1 + rng.uniform_int(n * n);
  std::vector<QuantumChannel> branches;
  for (int i = 0; i < k; ++i) {
    if (rng.uniform() < 0.75) {
      branches.push_back(unitary_channel(random_unitary(rng, n)));
    } else {
      branches.push_back(random_tp_channel(rng, n, 2));
    }
  }
  std::vector<double> weights = rng.dirichlet(k);
  if (index % 4 == 3) {
    const double scale = rng.uniform(0.6, 1.4);
    for (double& w : weights) w *= scale;
  }
  TransferSpec transfer(std::move(weights), std::move(branches));
  DiscreteMeasure mu = random_diagonal_measure(rng, n, 1 + rng.uniform_int(4));
  // positivity must hold wherever the solver evaluates f: the atoms and
  // their branch images
  std::vector<DensityMatrix> states;
  for (const Atom& a : mu.atoms()) {
    states.push_back(a.state);
    for (int i = 0; i < transfer.size(); ++i) {
      states.push_back(transfer.branch(i).apply(a.state));
    }
  }
  StateFunction f = offset_positive(random_state_function(rng, n), states);
  return TheoremInstance{std::move(transfer), std::move(mu), std::move(f)};
}

Json strip_timestamp(Json report) {
  report.erase("timestamp");
  return report;
}

// ---- criteria ---------------------------------------------------------------

void criterion_cnot_limit() {
  const CnotRuns& runs = cnot_runs();
  for (const OmegaLimitSet& limit : runs.limits) {
    ensure(limit.period == 2,
           "expected period 2, got " + std::to_string(limit.period));
    ensure(limit.burn_in + limit.period <= 2000, "detection exceeded the cap");
    for (const DensityMatrix& sigma : limit.cycle) {
      const double dev = cnot_pattern_deviation(sigma.matrix());
      ensure(dev <= 1e-7, "entry pattern deviation " + fmt(dev));
    }
    const double pair_dev =
        cnot_pair_deviation(limit.cycle[0].matrix(), limit.cycle[1].matrix());
    ensure(pair_dev <= 1e-7, "pair pattern deviation " + fmt(pair_dev));
    const double comm =
        commutator_frobenius(limit.cycle[0].matrix(), limit.cycle[1].matrix());
    ensure(comm <= 1e-8, "commutator " + fmt(comm));
  }
  ensure(runs.detect_seconds < 2.0,
         "detection took " + fmt(runs.detect_seconds) + " s");
}

void criterion_isometry_on_hulls() {
  const CnotRuns& runs = cnot_runs();
  std::uint64_t seed = 0;
  for (const OmegaLimitSet& limit : runs.limits) {
    const IsometryReport report =
        verify_isometry(runs.channel, limit.cycle, 50, 1e-8, seed++);
    ensure(report.max_distortion <= 1e-8,
           "distortion " + fmt(report.max_distortion));
  }
}

void criterion_cesaro_fixed_point() {
  const CnotRuns& runs = cnot_runs();
  for (const OmegaLimitSet& limit : runs.limits) {
    const CMat mean = 0.5 * (limit.cycle[0].matrix() + limit.cycle[1].matrix());
    const DensityMatrix expected(mean);

    const DensityMatrix from_cycle =
        cesaro_fixed_point(runs.channel, limit.cycle[0], 1e-9, 10000);
    ensure(trace_distance(from_cycle, expected) <= 1e-7,
           "average misses the cycle midpoint");
    ensure(trace_distance(runs.channel.apply(from_cycle), from_cycle) <= 1e-8,
           "average is not fixed");

    const DensityMatrix eta1(0.3 * limit.cycle[0].matrix() +
                             0.7 * limit.cycle[1].matrix());
    const DensityMatrix eta2(0.85 * limit.cycle[0].matrix() +
                             0.15 * limit.cycle[1].matrix());
    const double spread =
        trace_distance(cesaro_fixed_point(runs.channel, eta1, 1e-9, 10000),
                       cesaro_fixed_point(runs.channel, eta2, 1e-9, 10000));
    ensure(spread <= 1e-7, "hull starting points disagree by " + fmt(spread));
  }
}

void criterion_attractor_projection() {
  Rng rng(77);
  struct Case {
    QuantumChannel channel;
    int settle_steps;
  };
  const std::vector<Case> cases{{identity_channel(2), 4},
                                {damping_channel(0.5), 400},
                                {cnot_channel(), 400}};
  for (const Case& c : cases) {
    const Superoperator tau = attractor_projection(c.channel, 1e-9);
    const double idem = (tau.matrix * tau.matrix - tau.matrix).norm();
    ensure(idem <= 1e-8, "projection not idempotent: " + fmt(idem));
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = random_density(rng, c.channel.dim());
      CMat iterated = rho.matrix();
      for (int k = 0; k < c.settle_steps; ++k) {
        iterated = c.channel.apply_raw(iterated);
      }
      const double gap = trace_distance(tau.apply_raw(rho.matrix()), iterated);
      ensure(gap <= 1e-6, "projection vs iteration gap " + fmt(gap));
    }
  }
}

void criterion_non_expansiveness() {
  Rng rng(99);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + rep % 3;
    const QuantumChannel channel =
        (rep % 2 == 0) ? random_tp_channel(rng, n, 1 + rng.uniform_int(3))
                       : random_mixed_unitary(rng, n, 1 + rng.uniform_int(3));
    const DensityMatrix rho = random_density(rng, n);
    const DensityMatrix sigma = random_density(rng, n);
    const double before = trace_distance(rho, sigma);
    const double after = trace_distance(channel.apply(rho), channel.apply(sigma));
    ensure(after <= before + 1e-10,
           "expansion by " + fmt(after - before) + " at repetition " +
               std::to_string(rep));
  }
}

void criterion_theorem_roundtrip() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(2024);
  for (int index = 0; index < 100; ++index) {
    const TheoremInstance inst = make_theorem_instance(rng, index);
    const DiagonalSolution sol =
        solve_diagonal_kraus(inst.transfer, inst.observable, inst.measure);
    ensure(sol.residual <= 1e-10,
           "instance " + std::to_string(index) + " residual " +
               fmt(sol.residual));
  }
  const double elapsed = seconds_since(start);
  ensure(elapsed < 5.0, "roundtrip took " + fmt(elapsed) + " s");
}

void criterion_worked_instance() {
  const TransferSpec transfer(
      {0.5, 0.5}, {identity_channel(2), unitary_channel(pauli_x())});
  const DiscreteMeasure mu({Atom{1.0, DensityMatrix(diag2(0.75, 0.25))}});
  const StateFunction f = StateFunction::sum(
      {StateFunction::constant(1.0), StateFunction::re_entry(1, 1)});

  const DiagonalSolution sol = solve_diagonal_kraus(transfer, f, mu);
  const double root_half = 0.707107;
  const double root_ratio = 0.597614;  // sqrt(5/14)
  for (int j = 0; j < 2; ++j) {
    ensure(std::abs(sol.moduli[0][static_cast<std::size_t>(j)] - root_half) <=
               1e-6,
           "first branch modulus");
    ensure(std::abs(sol.moduli[1][static_cast<std::size_t>(j)] - root_ratio) <=
               1e-6,
           "second branch modulus");
  }

  const CMat m_f = m_f_array(f, mu);
  const double lf = transfer_apply(transfer, f, mu.atoms()[0].state);
  const double lhs_1 = lf * 0.75;
  const double lhs_2 = lf * 0.25;
  double rhs_1 = 0.0, rhs_2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    rhs_1 += sol.moduli[static_cast<std::size_t>(i)][0] *
             sol.moduli[static_cast<std::size_t>(i)][0] * m_f(0, 0).real();
    rhs_2 += sol.moduli[static_cast<std::size_t>(i)][1] *
             sol.moduli[static_cast<std::size_t>(i)][1] * m_f(1, 1).real();
  }
  ensure(std::abs(lhs_1 - 1.125) <= 1e-12, "left diagonal entry 1");
  ensure(std::abs(rhs_1 - 1.125) <= 1e-12, "right diagonal entry 1");
  ensure(std::abs(lhs_2 - 0.375) <= 1e-12, "left diagonal entry 2");
  ensure(std::abs(rhs_2 - 0.375) <= 1e-12, "right diagonal entry 2");
  ensure(sol.residual <= 1e-12, "diagram residual " + fmt(sol.residual));
}

void criterion_universal_equivalence() {
  Rng rng(4096);
  for (int index = 0; index < 50; ++index) {
    const int n = 2 + index % 2;
    const bool want_fixed = index % 2 == 0;
    UniversalVerdict verdict;
    if (want_fixed) {
      const auto [transfer, mu] =
          fixed_atom_instance(rng, n, 2 + rng.uniform_int(2),
                              1 + rng.uniform_int(3));
      verdict = check_universal_quantization(transfer, mu, 64, 1e-8,
                                             static_cast<std::uint64_t>(index));
    } else {
      TransferSpec transfer = random_unitary_transfer(rng, n, 2);
      DiscreteMeasure mu = random_measure(rng, n, 1 + rng.uniform_int(3));
      verdict = check_universal_quantization(transfer, mu, 64, 1e-8,
                                             static_cast<std::uint64_t>(index));
      ensure(verdict.max_atom_movement > 1e-6,
             "generator produced an accidentally fixed instance");
    }
    ensure(verdict.verdicts_agree,
           "instance " + std::to_string(index) + ": verdicts disagree");
    ensure(verdict.universal_pass == want_fixed,
           "instance " + std::to_string(index) + ": unexpected verdict");
  }
}

void criterion_kappa_structure() {
  Rng rng(2024);  // replays the criterion-6 instances
  for (int index = 0; index < 100; ++index) {
    const TheoremInstance inst = make_theorem_instance(rng, index);
    const DensityMatrix rho = barycenter(inst.measure);
    const KappaArray arr = kappa_matrix(inst.observable, inst.measure, rho);

    const int n = arr.dim;
    CMat expected = CMat::Zero(n * n, n * n);
    for (int b = 0; b < n; ++b) {
      expected.block(b * n, b * n, n, n) = arr.block;
    }
    ensure((arr.full - expected).norm() == 0.0,
           "instance " + std::to_string(index) + ": block structure broken");

    const CMat unit_op = m_f_operator(StateFunction::constant(1.0),
                                      inst.measure, rho);
    ensure((unit_op - CMat::Identity(n, n)).norm() <= 1e-10,
           "instance " + std::to_string(index) + ": unit observable");
  }

  // multiplicativity on disjoint diagonal supports
  Rng trng(515);
  for (int n : {2, 3, 4}) {
    std::vector<Atom> atoms;
    const std::vector<double> w = trng.dirichlet(n);
    for (int m = 0; m < n; ++m) {
      CMat unit = CMat::Zero(n, n);
      unit(m, m) = 1.0;
      atoms.push_back(Atom{0.8 * w[static_cast<std::size_t>(m)] + 0.2 / n,
                           DensityMatrix(unit)});
    }
    const DiscreteMeasure mu(std::move(atoms));
    const DensityMatrix rho = barycenter(mu);
    for (int rep = 0; rep < 10; ++rep) {
      const StateFunction f = random_state_function(trng, n);
      const StateFunction g = random_state_function(trng, n);
      const CMat gap =
          m_f_operator(StateFunction::product({f, g}), mu, rho) -
          m_f_operator(f, mu, rho) * m_f_operator(g, mu, rho);
      ensure(gap.norm() <= 1e-10, "multiplicativity gap " + fmt(gap.norm()));
    }
  }
}

void criterion_markov_intertwining() {
  Rng rng(171);
  for (int index = 0; index < 100; ++index) {
    const int n = 2 + index % 3;
    const int k = 1 + rng.uniform_int(3);
    std::vector<QuantumChannel> branches;
    for (int i = 0; i < k; ++i) {
      if (rng.uniform() < 0.3) {
        branches.push_back(random_tp_channel(rng, n, 2));
      } else {
        branches.push_back(unitary_channel(random_unitary(rng, n)));
      }
    }
    const TransferSpec transfer(rng.dirichlet(k), std::move(branches));
    const DiscreteMeasure mu = random_measure(rng, n, 1 + rng.uniform_int(4));
    const double gap =
        trace_distance(barycenter(markov_pushforward(transfer, mu)),
                       transfer.induced_channel().apply(barycenter(mu)));
    ensure(gap <= 1e-10,
           "instance " + std::to_string(index) + ": intertwining gap " + fmt(gap));
  }

  // invariant measures from involution symmetries
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 2;
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.cgaussian();
    v.normalize();
    const CMat reflector = CMat::Identity(n, n) - 2.0 * (v * v.adjoint());
    const TransferSpec transfer(
        {0.5, 0.5}, {identity_channel(n), unitary_channel(reflector)});
    const DensityMatrix omega = random_density(rng, n);
    const DensityMatrix mirrored(reflector * omega.matrix() *
                                 reflector.adjoint());
    const DiscreteMeasure mu({Atom{0.5, omega}, Atom{0.5, mirrored}});

    const DiscreteMeasure pushed = markov_pushforward(transfer, mu);
    for (const Atom& a : mu.atoms()) {
      double back_weight = 0.0;
      for (const Atom& p : pushed.atoms()) {
        if (trace_distance(p.state, a.state) <= 1e-10) back_weight += p.weight;
      }
      ensure(std::abs(back_weight - a.weight) <= 1e-10,
             "pushforward does not preserve the invariant measure");
    }
    const DensityMatrix center = barycenter(mu);
    const double fixed_gap =
        trace_distance(transfer.induced_channel().apply(center), center);
    ensure(fixed_gap <= 1e-9, "barycenter not fixed: " + fmt(fixed_gap));
  }
}

void criterion_determinism() {
  const std::string dir = CPDYN_SCENARIO_DIR;
  for (const char* name :
       {"cnot-limit.json", "quantize-bitflip.json", "markov-pushforward.json",
        "damping-evolve.json"}) {
    const std::string path = dir + "/" + name;
    const ScenarioResult first = run_scenario_file(path);
    const ScenarioResult second = run_scenario_file(path);
    ensure(strip_timestamp(first.report).dump() ==
               strip_timestamp(second.report).dump(),
           std::string(name) + ": reports differ");
    ensure(first.csv == second.csv, std::string(name) + ": traces differ");
  }

  // remaining kinds, inline
  const Json bitflip{
      {"weights", {0.5, 0.5}},
      {"branches",
       Json::array(
           {Json{{"dim", 2},
                 {"kraus", Json::array({matrix_to_json(identity(2))})}},
            Json{{"dim", 2},
                 {"kraus", Json::array({matrix_to_json(pauli_x())})}}})}};
  const Json atom{{"atoms", Json::array({Json{
                              {"weight", 1.0},
                              {"state", matrix_to_json(diag2(0.75, 0.25))}}})}};
  const std::vector<Json> scenarios{
      Json{{"kind", "fixpoint"},
           {"inputs",
            {{"channel", channel_to_json(cnot_channel())}, {"state", "random"}}},
           {"params", {{"seed", 3}, {"max_iter", 2000}}}},
      Json{{"kind", "universal"},
           {"inputs", {{"transfer", bitflip}, {"measure", atom}}},
           {"params", {{"seed", 8}}}},
      Json{{"kind", "verify"},
           {"inputs",
            {{"transfer", bitflip},
             {"measure", atom},
             {"function", Json{{"sum", Json::array({Json{{"const", 1.0}},
                                                    Json{{"re", {1, 1}}}})}}}}}}};
  for (const Json& scenario : scenarios) {
    const ScenarioResult first = run_scenario(scenario);
    const ScenarioResult second = run_scenario(scenario);
    ensure(strip_timestamp(first.report).dump() ==
               strip_timestamp(second.report).dump(),
           scenario.at("kind").get<std::string>() + ": reports differ");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"1 CNOT omega-limit pairs", criterion_cnot_limit},
      {"2 isometry on cycles and hulls", criterion_isometry_on_hulls},
      {"3 Cesaro fixed point", criterion_cesaro_fixed_point},
      {"4 attractor projection", criterion_attractor_projection},
      {"5 non-expansiveness", criterion_non_expansiveness},
      {"6 diagonal solver round-trip", criterion_theorem_roundtrip},
      {"7 worked bit-flip instance", criterion_worked_instance},
      {"8 universal/fixed-point equivalence", criterion_universal_equivalence},
      {"9 embedding structure", criterion_kappa_structure},
      {"10 Markov intertwining", criterion_markov_intertwining},
      {"11 deterministic reports", criterion_determinism},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    try {
      run();
      std::printf("[PASS] criterion %s\n", name.c_str());
    } catch (const CheckFailure& failure) {
      std::printf("[FAIL] criterion %s: %s\n", name.c_str(),
                  failure.message.c_str());
      ++failed;
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion %s: unexpected error: %s\n", name.c_str(),
                  e.what());
      ++failed;
    }
  }
  if (failed == 0) {
    std::printf("all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("%d criteria failed\n", failed);
  }
  return failed == 0 ? 0 : 1;
}
