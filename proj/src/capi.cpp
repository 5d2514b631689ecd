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

#include "cpdyn.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cpdyn/scenario.hpp"
#include "cpdyn/version.hpp"

namespace {

thread_local std::string g_last_error;

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cpdyn_status record_error(const cpdyn::Error& e) {
  g_last_error = cpdyn::error_to_json(e).dump();
  return static_cast<cpdyn_status>(static_cast<int>(e.cls()));
}

cpdyn_status record_unexpected(const char* what) {
  g_last_error = cpdyn::Json{{"error",
                              cpdyn::Json{{"code", "Internal"},
                                          {"class", 2},
                                          {"message", what}}}}
                     .dump();
  return CPDYN_ERR_NUMERIC;
}

template <typename Fn>
cpdyn_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return CPDYN_OK;
  } catch (const cpdyn::Error& e) {
    return record_error(e);
  } catch (const std::exception& e) {
    return record_unexpected(e.what());
  } catch (...) {
    return record_unexpected("unknown failure");
  }
}

cpdyn_status run_and_emit(const cpdyn::ScenarioResult& result,
                          char** report_json, char** csv_text) {
  if (report_json != nullptr) {
    *report_json = duplicate(result.report.dump(2) + "\n");
  }
  if (csv_text != nullptr) {
    *csv_text = result.csv ? duplicate(*result.csv) : nullptr;
  }
  return CPDYN_OK;
}

}  // namespace

extern "C" {

struct cpdyn_channel {
  cpdyn::QuantumChannel value;
};

struct cpdyn_density {
  cpdyn::DensityMatrix value;
};

struct cpdyn_measure {
  cpdyn::DiscreteMeasure value;
};

const char* cpdyn_version(void) { return cpdyn::version(); }

const char* cpdyn_last_error(void) { return g_last_error.c_str(); }

void cpdyn_string_free(char* s) { std::free(s); }

cpdyn_status cpdyn_run_scenario_json(const char* scenario_json,
                                     char** report_json, char** csv_text) {
  return guarded([&] {
    const cpdyn::Json doc =
        cpdyn::parse_json_text(scenario_json != nullptr ? scenario_json : "",
                               "scenario");
    run_and_emit(cpdyn::run_scenario(doc), report_json, csv_text);
  });
}

cpdyn_status cpdyn_run_scenario_path(const char* path, char** report_json,
                                     char** csv_text) {
  return guarded([&] {
    run_and_emit(cpdyn::run_scenario_file(path != nullptr ? path : ""),
                 report_json, csv_text);
  });
}

cpdyn_status cpdyn_channel_parse(const char* json_text, cpdyn_channel** out) {
  return guarded([&] {
    const cpdyn::Json doc = cpdyn::parse_json_text(
        json_text != nullptr ? json_text : "", "channel");
    *out = new cpdyn_channel{cpdyn::channel_from_json(doc, "channel")};
  });
}

void cpdyn_channel_free(cpdyn_channel* c) { delete c; }

int cpdyn_channel_dim(const cpdyn_channel* c) { return c->value.dim(); }

int cpdyn_channel_is_trace_preserving(const cpdyn_channel* c) {
  return c->value.trace_preserving() ? 1 : 0;
}

int cpdyn_channel_is_unital(const cpdyn_channel* c) {
  return c->value.unital() ? 1 : 0;
}

cpdyn_status cpdyn_density_parse(const char* json_text, cpdyn_density** out) {
  return guarded([&] {
    const cpdyn::Json doc = cpdyn::parse_json_text(
        json_text != nullptr ? json_text : "", "density");
    *out = new cpdyn_density{cpdyn::density_from_json(doc, "density")};
  });
}

cpdyn_status cpdyn_density_format(const cpdyn_density* d, char** json_text) {
  return guarded([&] {
    *json_text = duplicate(cpdyn::density_to_json(d->value).dump());
  });
}

void cpdyn_density_free(cpdyn_density* d) { delete d; }

int cpdyn_density_dim(const cpdyn_density* d) { return d->value.dim(); }

cpdyn_status cpdyn_channel_apply(const cpdyn_channel* c, const cpdyn_density* in,
                                 cpdyn_density** out) {
  return guarded([&] {
    *out = new cpdyn_density{c->value.apply(in->value)};
  });
}

cpdyn_status cpdyn_trace_distance(const cpdyn_density* a, const cpdyn_density* b,
                                  double* out) {
  return guarded([&] { *out = cpdyn::trace_distance(a->value, b->value); });
}

cpdyn_status cpdyn_detect_limit_cycle(const cpdyn_channel* c,
                                      const cpdyn_density* rho0, double tol,
                                      int max_iterations, int max_period,
                                      char** report_json) {
  return guarded([&] {
    const cpdyn::OmegaLimitSet limit = cpdyn::detect_limit_cycle(
        c->value, rho0->value, tol, max_iterations, max_period);
    *report_json = duplicate(cpdyn::omega_limit_to_json(limit).dump());
  });
}

cpdyn_status cpdyn_measure_parse(const char* json_text, cpdyn_measure** out) {
  return guarded([&] {
    const cpdyn::Json doc = cpdyn::parse_json_text(
        json_text != nullptr ? json_text : "", "measure");
    *out = new cpdyn_measure{cpdyn::measure_from_json(doc, "measure")};
  });
}

void cpdyn_measure_free(cpdyn_measure* m) { delete m; }

cpdyn_status cpdyn_measure_barycenter(const cpdyn_measure* m,
                                      cpdyn_density** out) {
  return guarded([&] {
    *out = new cpdyn_density{cpdyn::barycenter(m->value)};
  });
}

}  // extern "C"
