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

// Scenario workbench CLI. Subcommands assemble a scenario document and hand
// it to the shared library through the C API; `run` executes a declarative
// scenario file with flag overrides.
//
// Exit codes: 0 success, 1 validation, 2 numerical failure, 3 I/O.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpdyn.h"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 3;

void print_error_object(const std::string& code, int cls,
                        const std::string& message) {
  const json err{{"error", {{"code", code}, {"class", cls}, {"message", message}}}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
}

int print_library_error(cpdyn_status status) {
  const char* detail = cpdyn_last_error();
  std::fprintf(stderr, "%s\n", (detail != nullptr && detail[0] != '\0')
                                   ? detail
                                   : "{\"error\":{\"code\":\"Unknown\"}}");
  return static_cast<int>(status);
}

std::string dir_of(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

// Inputs referenced by relative path inside a scenario file resolve against
// the file's directory; the assembled document is executed from the CWD.
void anchor_input_paths(json& scenario, const std::string& base_dir) {
  if (base_dir.empty() || !scenario.contains("inputs")) return;
  for (auto& [key, value] : scenario.at("inputs").items()) {
    (void)key;
    if (value.is_string()) {
      const std::string s = value.get<std::string>();
      if (s != "random" && !s.empty() && s.front() != '/') {
        value = base_dir + "/" + s;
      }
    }
  }
}

struct Options {
  std::string channel, state = "random", measure, function, transfer, kraus,
              phases;
  std::string scenario_file;
  std::string out_path, csv_path;
  double tol = 1e-9;
  int max_iter = 10000;
  int period_max = 64;
  int samples = 50;
  int steps = 100;
  long long seed = 0;
};

json collect_params(const CLI::App* sub, const Options& opt) {
  json params = json::object();
  if (sub->count("--tol") > 0) params["tol"] = opt.tol;
  if (sub->count("--max-iter") > 0) params["max_iter"] = opt.max_iter;
  if (sub->count("--period-max") > 0) params["period_max"] = opt.period_max;
  if (sub->count("--samples") > 0) params["samples"] = opt.samples;
  if (sub->count("--steps") > 0) params["steps"] = opt.steps;
  if (sub->count("--seed") > 0) params["seed"] = opt.seed;
  return params;
}

int execute(const json& scenario, const Options& opt) {
  char* report = nullptr;
  char* csv = nullptr;
  const cpdyn_status status =
      cpdyn_run_scenario_json(scenario.dump().c_str(), &report, &csv);
  if (status != CPDYN_OK) return print_library_error(status);

  int exit_code = 0;
  if (!opt.csv_path.empty()) {
    if (csv == nullptr) {
      print_error_object("ValidationError", kExitValidation,
                         "this scenario kind emits no CSV trace");
      exit_code = kExitValidation;
    } else {
      std::ofstream out(opt.csv_path, std::ios::binary);
      out << csv;
      if (!out.good()) {
        print_error_object("IoError", kExitIo,
                           "cannot write CSV to '" + opt.csv_path + "'");
        exit_code = kExitIo;
      }
    }
  }
  if (exit_code == 0) {
    if (opt.out_path.empty()) {
      std::fputs(report, stdout);
    } else {
      std::ofstream out(opt.out_path, std::ios::binary);
      out << report;
      if (!out.good()) {
        print_error_object("IoError", kExitIo,
                           "cannot write report to '" + opt.out_path + "'");
        exit_code = kExitIo;
      }
    }
  }
  cpdyn_string_free(report);
  cpdyn_string_free(csv);
  return exit_code;
}

void add_common_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--tol", opt.tol, "numerical tolerance");
  sub->add_option("--max-iter", opt.max_iter, "iteration cap");
  sub->add_option("--period-max", opt.period_max, "largest period probed");
  sub->add_option("--samples", opt.samples, "hull / observable sample count");
  sub->add_option("--steps", opt.steps, "orbit length (evolve)");
  sub->add_option("--seed", opt.seed, "deterministic generator seed");
  sub->add_option("--out", opt.out_path, "write the JSON report here");
  sub->add_option("--csv", opt.csv_path, "write the CSV trace here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"completely positive channel dynamics and transfer-operator "
               "quantization workbench"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* evolve = app.add_subcommand("evolve", "iterate a channel and trace the orbit");
  evolve->add_option("--channel", opt.channel, "channel document")->required();
  evolve->add_option("--state", opt.state, "initial state document or 'random'");
  add_common_flags(evolve, opt);

  CLI::App* limit = app.add_subcommand("limit", "detect the omega-limit cycle");
  limit->add_option("--channel", opt.channel, "channel document")->required();
  limit->add_option("--state", opt.state, "initial state document or 'random'");
  add_common_flags(limit, opt);

  CLI::App* fixpoint = app.add_subcommand("fixpoint", "Cesaro fixed point of the orbit hull");
  fixpoint->add_option("--channel", opt.channel, "channel document")->required();
  fixpoint->add_option("--state", opt.state, "initial state document or 'random'");
  add_common_flags(fixpoint, opt);

  CLI::App* quantize = app.add_subcommand("quantize", "solve the diagonal Kraus quantization");
  quantize->add_option("--transfer", opt.transfer, "transfer document")->required();
  quantize->add_option("--function", opt.function, "observable document")->required();
  quantize->add_option("--measure", opt.measure, "measure document")->required();
  quantize->add_option("--phases", opt.phases, "optional phase table document");
  add_common_flags(quantize, opt);

  CLI::App* verify = app.add_subcommand("verify", "check the quantization diagram and coherences");
  verify->add_option("--transfer", opt.transfer, "transfer document")->required();
  verify->add_option("--function", opt.function, "observable document")->required();
  verify->add_option("--measure", opt.measure, "measure document")->required();
  verify->add_option("--kraus", opt.kraus, "optional Kraus list document");
  add_common_flags(verify, opt);

  CLI::App* universal = app.add_subcommand("universal", "sampled all-observable quantization test");
  universal->add_option("--transfer", opt.transfer, "transfer document")->required();
  universal->add_option("--measure", opt.measure, "measure document")->required();
  add_common_flags(universal, opt);

  CLI::App* markov = app.add_subcommand("markov", "push a measure through the Markov operator");
  markov->add_option("--transfer", opt.transfer, "transfer document")->required();
  markov->add_option("--measure", opt.measure, "measure document")->required();
  add_common_flags(markov, opt);

  CLI::App* run = app.add_subcommand("run", "execute a declarative scenario file");
  run->add_option("file", opt.scenario_file, "scenario document")->required();
  add_common_flags(run, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::ostringstream msg;
    msg << e.what();
    print_error_object("Usage", kExitValidation, msg.str());
    return kExitValidation;
  }

  json scenario;
  const CLI::App* active = nullptr;
  if (run->parsed()) {
    active = run;
    std::ifstream in(opt.scenario_file, std::ios::binary);
    if (!in) {
      print_error_object("IoError", kExitIo,
                         "cannot open '" + opt.scenario_file + "'");
      return kExitIo;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    scenario = json::parse(buffer.str(), nullptr, false);
    if (scenario.is_discarded()) {
      print_error_object("ParseError", kExitValidation,
                         "'" + opt.scenario_file + "' is not valid JSON");
      return kExitValidation;
    }
    anchor_input_paths(scenario, dir_of(opt.scenario_file));
  } else {
    json inputs = json::object();
    auto put = [&](const char* key, const std::string& value) {
      if (!value.empty()) inputs[key] = value;
    };
    if (evolve->parsed()) { active = evolve; scenario["kind"] = "evolve"; }
    if (limit->parsed()) { active = limit; scenario["kind"] = "limit"; }
    if (fixpoint->parsed()) { active = fixpoint; scenario["kind"] = "fixpoint"; }
    if (quantize->parsed()) { active = quantize; scenario["kind"] = "quantize"; }
    if (verify->parsed()) { active = verify; scenario["kind"] = "verify"; }
    if (universal->parsed()) { active = universal; scenario["kind"] = "universal"; }
    if (markov->parsed()) { active = markov; scenario["kind"] = "markov"; }

    const std::string kind = scenario["kind"].get<std::string>();
    if (kind == "evolve" || kind == "limit" || kind == "fixpoint") {
      put("channel", opt.channel);
      put("state", opt.state);
    } else {
      put("transfer", opt.transfer);
      put("measure", opt.measure);
      if (kind == "quantize" || kind == "verify") put("function", opt.function);
      if (kind == "quantize") put("phases", opt.phases);
      if (kind == "verify") put("kraus", opt.kraus);
    }
    scenario["inputs"] = std::move(inputs);
  }

  const json overrides = collect_params(active, opt);
  if (!overrides.empty()) {
    if (!scenario.contains("params")) scenario["params"] = json::object();
    for (const auto& [key, value] : overrides.items()) {
      scenario["params"][key] = value;
    }
  }
  return execute(scenario, opt);
}
