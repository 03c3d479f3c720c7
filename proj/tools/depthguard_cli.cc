//
// Copyright 2026 The DepthGuard Authors
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
//

// depthguard command-line tool.
//
//   depthguard depth --kind halfspace --point 2 --data t.csv
//   depthguard private point --kind irw --point 0,0 --epsilon 1 --data t.csv
//   depthguard private median-exp --kind halfspace --grid-bounds -2:2
//       --grid-points 5 --epsilon 1 --data t.csv
//   depthguard experiment consistency --reps 10 > sweep.csv
//   depthguard audit --kind halfspace --point 9.5 --data t.csv --epsilon 1
//   depthguard budget
//
// Exit codes: 0 success (including a bottom release), 2 configuration error,
// 3 data error, 4 budget cap exceeded, 1 anything else.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "depthguard/depthguard.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitBudget = 4;

constexpr char kDefaultLedger[] = "depthguard-ledger.ndjson";

struct ConfigError {
  std::string message;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using DatasetPtr =
    std::unique_ptr<dg_dataset, Deleter<dg_dataset, dg_dataset_free>>;
using DirectionsPtr =
    std::unique_ptr<dg_directions, Deleter<dg_directions, dg_directions_free>>;
using GridPtr = std::unique_ptr<dg_grid, Deleter<dg_grid, dg_grid_free>>;
using PriorPtr = std::unique_ptr<dg_prior, Deleter<dg_prior, dg_prior_free>>;
using LedgerPtr =
    std::unique_ptr<dg_ledger, Deleter<dg_ledger, dg_ledger_free>>;
using ReportPtr =
    std::unique_ptr<dg_report, Deleter<dg_report, dg_report_free>>;

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double ParseNumber(const std::string& s, const std::string& what) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (...) {
    throw ConfigError{what + ": not a number: '" + s + "'"};
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw ConfigError{what + ": not a finite number: '" + s + "'"};
  }
  return v;
}

std::vector<double> ParseVector(const std::string& s, const std::string& what) {
  std::vector<double> v;
  for (const std::string& part : Split(s, ',')) {
    v.push_back(ParseNumber(part, what));
  }
  if (v.empty()) throw ConfigError{what + ": empty list"};
  return v;
}

int ExitForStatus(dg_status s, bool after_data) {
  switch (s) {
    case DG_OK:
      return kExitOk;
    case DG_BUDGET_EXCEEDED:
      return kExitBudget;
    case DG_DATA_ERROR:
    case DG_NOT_FOUND:
    case DG_IO_ERROR:
      return kExitData;
    case DG_INVALID_ARGUMENT:
    case DG_OUT_OF_RANGE:
    case DG_FAILED_PRECONDITION:
    case DG_RESOURCE_EXHAUSTED:
      return after_data ? kExitData : kExitConfig;
    default:
      return kExitFailure;
  }
}

int Report(dg_status s, bool after_data) {
  std::cerr << "depthguard: " << dg_last_error() << "\n";
  return ExitForStatus(s, after_data);
}

// Common flags. Everything here is validated before any data file is read.
struct Options {
  std::string kind = "halfspace";
  std::string variant;  // o1 | o2 for projection depth
  std::string data;
  std::string data_b;
  bool header = false;
  std::vector<std::string> points;
  bool vector = false;
  uint64_t seed = 0;
  size_t directions = 500;
  std::string output;
  size_t simplicial_mc = 0;

  double epsilon = std::nan("");
  double delta = 0.0;
  std::string noise = "laplace";
  double eta = 0.0;
  double radius = 0.0;
  std::string grid_bounds;
  std::string grid_points;
  std::string prior = "uniform";
  std::string budget_cap;
  std::string ledger;
  bool unsafe_audit = false;
  bool tie_robust = false;

  size_t samples = 0;
  double noise_factor = 1.0;

  std::string n_grid;
  size_t reps = 0;
};

struct Resolved {
  dg_kind kind = DG_HALFSPACE;
  dg_privacy privacy{1.0, 0.0, DG_LAPLACE};
  std::vector<std::vector<double>> points;
  GridPtr grid;
  PriorPtr prior;
  LedgerPtr ledger;
  double cap_epsilon = 0.0;
  double cap_delta = -1.0;
  dg_simplicial_options simplicial{0, 0, 0};
};

dg_kind ResolveKind(const Options& o) {
  if (o.kind == "halfspace") return DG_HALFSPACE;
  if (o.kind == "irw") return DG_IRW;
  if (o.kind == "simplicial") return DG_SIMPLICIAL;
  if (o.kind == "projection") {
    if (o.variant == "o1") return DG_PROJECTION_MAD;
    if (o.variant == "o2") return DG_PROJECTION_IQR;
    throw ConfigError{"--kind projection requires --variant o1|o2"};
  }
  throw ConfigError{"unknown --kind '" + o.kind +
                    "' (halfspace, irw, simplicial, projection)"};
}

bool IsProjection(dg_kind k) {
  return k == DG_PROJECTION_MAD || k == DG_PROJECTION_IQR;
}

std::vector<std::vector<double>> ResolvePoints(const Options& o) {
  std::vector<std::vector<double>> pts;
  for (const std::string& p : o.points) {
    pts.push_back(ParseVector(p, "--point"));
  }
  for (const auto& p : pts) {
    if (p.size() != pts[0].size()) {
      throw ConfigError{"--point values differ in dimension"};
    }
  }
  return pts;
}

dg_privacy ResolvePrivacy(const Options& o, bool needs_delta_for_ptr) {
  dg_privacy p;
  if (std::isnan(o.epsilon)) throw ConfigError{"--epsilon is required"};
  if (!(o.epsilon > 0.0) || !std::isfinite(o.epsilon)) {
    throw ConfigError{"--epsilon must be positive and finite"};
  }
  if (!(o.delta >= 0.0 && o.delta < 1.0)) {
    throw ConfigError{"--delta must lie in [0, 1)"};
  }
  p.epsilon = o.epsilon;
  p.delta = o.delta;
  if (o.noise == "laplace") {
    p.variant = DG_LAPLACE;
  } else if (o.noise == "gaussian") {
    p.variant = DG_GAUSSIAN;
    if (!(o.delta > 0.0)) {
      throw ConfigError{"--noise gaussian needs --delta > 0"};
    }
  } else {
    throw ConfigError{"--noise must be laplace or gaussian"};
  }
  if (needs_delta_for_ptr && !(o.delta > 0.0)) {
    throw ConfigError{"propose-test-release needs --delta > 0"};
  }
  return p;
}

GridPtr ResolveGrid(const Options& o) {
  if (o.grid_bounds.empty()) {
    throw ConfigError{
        "--grid-bounds is required (a data-independent support, e.g. "
        "-2:2,-2:2)"};
  }
  std::vector<double> lo, hi;
  for (const std::string& axis : Split(o.grid_bounds, ',')) {
    auto ends = Split(axis, ':');
    if (ends.size() != 2) {
      throw ConfigError{"--grid-bounds axes look like lo:hi"};
    }
    lo.push_back(ParseNumber(ends[0], "--grid-bounds"));
    hi.push_back(ParseNumber(ends[1], "--grid-bounds"));
  }
  std::vector<size_t> counts;
  if (o.grid_points.empty()) {
    counts.assign(lo.size(), 21);
  } else {
    for (double c : ParseVector(o.grid_points, "--grid-points")) {
      if (c < 1 || c != std::floor(c)) {
        throw ConfigError{"--grid-points must be positive integers"};
      }
      counts.push_back(static_cast<size_t>(c));
    }
    if (counts.size() == 1) counts.assign(lo.size(), counts[0]);
  }
  if (counts.size() != lo.size()) {
    throw ConfigError{"--grid-points must give one count or one per axis"};
  }
  dg_grid* g = nullptr;
  if (dg_grid_regular(lo.data(), hi.data(), counts.data(), lo.size(), &g) !=
      DG_OK) {
    throw ConfigError{std::string("grid: ") + dg_last_error()};
  }
  return GridPtr(g);
}

PriorPtr ResolvePrior(const Options& o, size_t d) {
  dg_prior* p = nullptr;
  dg_status s = DG_OK;
  if (o.prior == "uniform") {
    s = dg_prior_uniform(&p);
  } else if (o.prior.rfind("gaussian:", 0) == 0) {
    // gaussian:<c1,...,cd>:<scale>
    auto parts = Split(o.prior.substr(9), ':');
    if (parts.size() != 2) {
      throw ConfigError{"--prior gaussian:<center>:<scale>"};
    }
    std::vector<double> c = ParseVector(parts[0], "--prior center");
    if (c.size() != d) throw ConfigError{"--prior center dimension mismatch"};
    s = dg_prior_gaussian(c.data(), c.size(),
                          ParseNumber(parts[1], "--prior scale"), &p);
  } else {
    throw ConfigError{"--prior must be uniform or gaussian:<center>:<scale>"};
  }
  if (s != DG_OK) throw ConfigError{std::string("prior: ") + dg_last_error()};
  return PriorPtr(p);
}

// --ledger beats DEPTHGUARD_LEDGER, which beats the default file.
std::string LedgerPath(const Options& o) {
  if (!o.ledger.empty()) return o.ledger;
  if (const char* env = std::getenv("DEPTHGUARD_LEDGER"); env && *env) {
    return env;
  }
  return kDefaultLedger;
}

void ResolveBudget(const Options& o, Resolved& r) {
  if (o.budget_cap.empty()) return;
  auto v = ParseVector(o.budget_cap, "--budget-cap");
  if (v.size() > 2 || !(v[0] > 0.0) || (v.size() == 2 && v[1] < 0.0)) {
    throw ConfigError{"--budget-cap takes epsilon[,delta] with epsilon > 0"};
  }
  r.cap_epsilon = v[0];
  if (v.size() == 2) r.cap_delta = v[1];
}

int WriteOutput(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return kExitOk;
  }
  std::ofstream out(o.output);
  if (!out) {
    std::cerr << "depthguard: cannot write " << o.output << "\n";
    return kExitFailure;
  }
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
  return kExitOk;
}

std::optional<int> LoadData(const std::string& path, bool header,
                            DatasetPtr& out) {
  if (path.empty()) {
    std::cerr << "depthguard: --data is required\n";
    return kExitConfig;
  }
  dg_dataset* d = nullptr;
  if (dg_status s = dg_dataset_load_csv(path.c_str(), header, &d); s != DG_OK) {
    std::cerr << "depthguard: " << path << ": " << dg_last_error() << "\n";
    return kExitData;
  }
  out.reset(d);
  return std::nullopt;
}

std::optional<int> MakeDirections(const Options& o, size_t d,
                                  DirectionsPtr& out) {
  dg_directions* dirs = nullptr;
  // Directions get their own stream so changing other flags never moves
  // them.
  const uint64_t seed = o.seed ^ 0x9e3779b97f4a7c15ull;
  if (dg_status s = dg_directions_sample(o.directions, d, seed, &dirs);
      s != DG_OK) {
    return Report(s, true);
  }
  out.reset(dirs);
  return std::nullopt;
}

std::optional<int> CheckPointDims(const Resolved& r, size_t d) {
  for (const auto& p : r.points) {
    if (p.size() != d) {
      std::cerr << "depthguard: --point has dimension " << p.size()
                << ", data has " << d << "\n";
      return kExitData;
    }
  }
  return std::nullopt;
}

json Num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

int RunDepth(const Options& o) {
  Resolved r;
  r.kind = ResolveKind(o);
  r.points = ResolvePoints(o);
  if (r.points.empty() && !o.vector) {
    throw ConfigError{"depth needs --point or --vector"};
  }
  if (o.vector && IsProjection(r.kind)) {
    throw ConfigError{"--vector supports halfspace, irw and simplicial"};
  }
  if (o.directions == 0) throw ConfigError{"--directions must be >= 1"};
  if (o.simplicial_mc > 0) r.simplicial = {1, o.simplicial_mc, o.seed};

  DatasetPtr data;
  if (auto e = LoadData(o.data, o.header, data)) return *e;
  const size_t n = dg_dataset_n(data.get()), d = dg_dataset_d(data.get());
  if (auto e = CheckPointDims(r, d)) return *e;
  DirectionsPtr dirs;
  if (auto e = MakeDirections(o, d, dirs)) return *e;

  json out = {{"schema", 1}, {"kind", o.kind}};
  if (IsProjection(r.kind)) out["variant"] = o.variant;
  if (o.vector) {
    std::vector<double> v(n);
    if (dg_status s = dg_depth_vector(r.kind, data.get(), dirs.get(),
                                      &r.simplicial, v.data());
        s != DG_OK) {
      return Report(s, true);
    }
    json arr = json::array();
    for (double x : v) arr.push_back(Num(x));
    out["vector"] = arr;
  } else {
    json arr = json::array();
    for (const auto& p : r.points) {
      double value = 0.0;
      if (dg_status s = dg_depth(r.kind, p.data(), data.get(), dirs.get(),
                                 &r.simplicial, &value);
          s != DG_OK) {
        return Report(s, true);
      }
      json pt = json::array();
      for (double c : p) pt.push_back(c);
      arr.push_back({{"point", pt}, {"value", Num(value)}});
    }
    out["depths"] = arr;
  }
  return WriteOutput(o, out.dump(2));
}

int RunPrivate(const std::string& mode, const Options& o) {
  Resolved r;
  r.kind = ResolveKind(o);
  r.points = ResolvePoints(o);
  const bool ptr = mode == "ptr-depth" || mode == "median-ptr";
  if (mode == "median-exp") {
    if (std::isnan(o.epsilon)) throw ConfigError{"--epsilon is required"};
    if (!(o.epsilon > 0.0) || !std::isfinite(o.epsilon)) {
      throw ConfigError{"--epsilon must be positive and finite"};
    }
    r.privacy = {o.epsilon, 0.0, DG_LAPLACE};
  } else {
    r.privacy = ResolvePrivacy(o, ptr);
  }
  if (mode == "point" || mode == "ptr-depth") {
    if (r.points.size() != 1) throw ConfigError{mode + " needs one --point"};
  }
  if (mode == "point" && IsProjection(r.kind)) {
    throw ConfigError{
        "projection depth has global sensitivity 1; use `private ptr-depth`"};
  }
  if (ptr && !IsProjection(r.kind)) {
    throw ConfigError{mode + " needs --kind projection --variant o1|o2"};
  }
  if ((mode == "vector" || mode == "rank-test") && IsProjection(r.kind)) {
    throw ConfigError{mode + " supports halfspace, irw and simplicial"};
  }
  if (mode == "rank-test" && o.data_b.empty()) {
    throw ConfigError{"rank-test needs --data-b for the second group"};
  }
  if (o.eta < 0.0 || std::isnan(o.eta)) throw ConfigError{"--eta must be > 0"};
  if (o.directions == 0) throw ConfigError{"--directions must be >= 1"};
  if (mode == "median-exp" || mode == "median-ptr") {
    r.grid = ResolveGrid(o);
    r.prior = ResolvePrior(o, Split(o.grid_bounds, ',').size());
  }
  if (mode == "median-ptr") {
    if (!(o.radius > 0.0)) throw ConfigError{"median-ptr needs --radius > 0"};
    if (dg_grid_count_inside(r.grid.get(), o.radius) == 0) {
      throw ConfigError{"every grid point lies outside --radius"};
    }
  }
  if (o.simplicial_mc > 0) r.simplicial = {1, o.simplicial_mc, o.seed};
  ResolveBudget(o, r);

  const std::string ledger_path = LedgerPath(o);
  dg_ledger* l = nullptr;
  if (dg_status s = dg_ledger_open(ledger_path.c_str(), &l); s != DG_OK) {
    std::cerr << "depthguard: ledger " << ledger_path << ": " << dg_last_error()
              << "\n";
    return kExitData;
  }
  r.ledger.reset(l);

  dg_run_options run;
  run.seed = o.seed;
  run.ledger = r.ledger.get();
  run.budget_epsilon = r.cap_epsilon;
  run.budget_delta = r.cap_delta;
  run.tie_robust = o.tie_robust ? 1 : 0;
  run.simplicial = &r.simplicial;

  // The budget check runs before the data are touched.
  if (r.cap_epsilon > 0.0) {
    double spend_e = r.privacy.epsilon, spend_d = r.privacy.delta;
    if (mode == "median-exp") {
      spend_d = 0.0;
    } else if (ptr) {
      spend_e *= 2.0;
      if (r.privacy.variant == DG_GAUSSIAN) {
        spend_d = mode == "ptr-depth"
                      ? 2.0 * std::exp(r.privacy.epsilon) * r.privacy.delta +
                            r.privacy.delta * r.privacy.delta
                      : 2.0 * r.privacy.delta;
      }
    } else if (r.privacy.variant == DG_LAPLACE) {
      spend_d = 0.0;
    }
    double te = 0.0, td = 0.0;
    dg_ledger_total(r.ledger.get(), &te, &td);
    const double cap_d = r.cap_delta < 0.0 ? INFINITY : r.cap_delta;
    if (te + spend_e > r.cap_epsilon * (1 + 1e-12) ||
        td + spend_d > cap_d * (1 + 1e-12) + 1e-300) {
      std::cerr << "depthguard: spending (" << spend_e << ", " << spend_d
                << ") on top of (" << te << ", " << td
                << ") exceeds --budget-cap; nothing released\n";
      return kExitBudget;
    }
  }

  DatasetPtr data;
  if (auto e = LoadData(o.data, o.header, data)) return *e;
  const size_t d = dg_dataset_d(data.get());
  if (auto e = CheckPointDims(r, d)) return *e;
  DirectionsPtr dirs;
  if (auto e = MakeDirections(o, d, dirs)) return *e;

  dg_report* rep = nullptr;
  dg_status s = DG_OK;
  if (mode == "point") {
    s = dg_private_depth_point(r.kind, r.points[0].data(), data.get(),
                               dirs.get(), &r.privacy, &run, &rep);
  } else if (mode == "vector") {
    s = dg_private_depth_vector(r.kind, data.get(), dirs.get(), &r.privacy,
                                &run, &rep);
  } else if (mode == "ptr-depth") {
    s = dg_private_projection_depth(r.kind, r.points[0].data(), data.get(),
                                    dirs.get(), o.eta, &r.privacy, &run, &rep);
  } else if (mode == "median-exp") {
    s = dg_private_median_exp(r.kind, data.get(), r.grid.get(), r.prior.get(),
                              dirs.get(), r.privacy.epsilon, &run, &rep);
  } else if (mode == "median-ptr") {
    s = dg_private_projection_median(r.kind, data.get(), dirs.get(), o.radius,
                                     r.grid.get(), o.eta, &r.privacy, &run,
                                     &rep);
  } else {
    DatasetPtr data_b;
    if (auto e = LoadData(o.data_b, o.header, data_b)) return *e;
    s = dg_private_rank_test(r.kind, data.get(), data_b.get(), dirs.get(),
                             &r.privacy, &run, &rep);
  }
  if (s != DG_OK) return Report(s, true);
  ReportPtr report(rep);
  char* text = nullptr;
  if (dg_status js = dg_report_to_json(report.get(), o.unsafe_audit, &text);
      js != DG_OK) {
    return Report(js, true);
  }
  const std::string json_text(text);
  dg_string_free(text);
  return WriteOutput(o, json_text);
}

int RunExperiment(const std::string& name, const Options& o) {
  if (!dg_experiment_known(name.c_str())) {
    throw ConfigError{"unknown experiment '" + name +
                      "' (consistency, audit, power, ptr-depth, median-ptr)"};
  }
  std::vector<size_t> grid;
  if (!o.n_grid.empty()) {
    for (double v : ParseVector(o.n_grid, "--n-grid")) {
      if (v < 2 || v != std::floor(v)) {
        throw ConfigError{"--n-grid values must be integers >= 2"};
      }
      grid.push_back(static_cast<size_t>(v));
    }
  }
  dg_experiment_config c{};
  c.n_grid = grid.empty() ? nullptr : grid.data();
  c.n_grid_size = grid.size();
  c.epsilon = std::isnan(o.epsilon) ? 0.0 : o.epsilon;
  if (c.epsilon < 0.0) throw ConfigError{"--epsilon must be positive"};
  c.delta = o.delta;
  c.reps = o.reps;
  c.directions = o.directions == 500 ? 0 : o.directions;
  c.samples = o.samples;
  c.seed = o.seed;
  char* csv = nullptr;
  if (dg_status s = dg_experiment_run(name.c_str(), &c, &csv); s != DG_OK) {
    return Report(s, false);
  }
  const std::string text(csv);
  dg_string_free(csv);
  return WriteOutput(o, text);
}

int RunAudit(const Options& o) {
  Resolved r;
  r.kind = ResolveKind(o);
  r.points = ResolvePoints(o);
  if (r.points.size() != 1) throw ConfigError{"audit needs one --point"};
  if (IsProjection(r.kind)) {
    throw ConfigError{"audit supports halfspace, irw and simplicial"};
  }
  if (std::isnan(o.epsilon) || !(o.epsilon > 0.0)) {
    throw ConfigError{"--epsilon must be positive"};
  }
  if (!(o.noise_factor > 0.0)) throw ConfigError{"--noise-factor must be > 0"};
  const size_t samples = o.samples == 0 ? 100000 : o.samples;
  DatasetPtr data;
  if (auto e = LoadData(o.data, o.header, data)) return *e;
  const size_t d = dg_dataset_d(data.get());
  if (auto e = CheckPointDims(r, d)) return *e;
  DirectionsPtr dirs;
  if (auto e = MakeDirections(o, d, dirs)) return *e;
  double ratio = 0.0;
  if (dg_status s = dg_audit_depth_point(r.kind, r.points[0].data(),
                                         data.get(), dirs.get(), o.epsilon,
                                         samples, o.noise_factor, o.seed,
                                         &ratio);
      s != DG_OK) {
    return Report(s, true);
  }
  json out = {{"schema", 1},
              {"kind", o.kind},
              {"epsilon", o.epsilon},
              {"samples", samples},
              {"bins", 50},
              {"noise_factor", o.noise_factor},
              {"max_log_ratio", ratio},
              {"within_epsilon_plus_0.1", ratio <= o.epsilon + 0.1}};
  return WriteOutput(o, out.dump(2));
}

int RunBudget(const Options& o, const std::string& advanced) {
  json out = {{"schema", 1}};
  if (!advanced.empty()) {
    auto v = ParseVector(advanced, "--advanced");
    if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) {
      throw ConfigError{"--advanced takes epsilon,delta_prime,k"};
    }
    double per = 0.0;
    if (dg_advanced_composition(v[0], v[1], static_cast<size_t>(v[2]), &per) !=
        DG_OK) {
      throw ConfigError{dg_last_error()};
    }
    out["advanced"] = {{"epsilon", v[0]},
                       {"delta_prime", v[1]},
                       {"k", static_cast<size_t>(v[2])},
                       {"per_mechanism_epsilon", per}};
  }
  const std::string path = LedgerPath(o);
  dg_ledger* l = nullptr;
  if (dg_ledger_open(path.c_str(), &l) != DG_OK) {
    std::cerr << "depthguard: ledger " << path << ": " << dg_last_error()
              << "\n";
    return kExitData;
  }
  LedgerPtr ledger(l);
  double e = 0.0, d = 0.0;
  dg_ledger_total(ledger.get(), &e, &d);
  out["ledger"] = path;
  out["entries"] = dg_ledger_size(ledger.get());
  out["basic_total"] = {{"epsilon", e}, {"delta", d}};
  return WriteOutput(o, out.dump(2));
}

void AddDataFlags(CLI::App* app, Options& o) {
  app->add_option("--data", o.data, "CSV file, one row per individual");
  app->add_flag("--header", o.header, "skip the first CSV line");
  app->add_option("--seed", o.seed, "root seed for all randomness");
  app->add_option("--directions", o.directions,
                  "number of random directions (d >= 2)");
  app->add_option("--output", o.output, "write to a file instead of stdout");
}

void AddKindFlags(CLI::App* app, Options& o) {
  app->add_option("--kind", o.kind,
                  "halfspace, irw, simplicial or projection");
  app->add_option("--variant", o.variant, "o1 (MAD) or o2 (IQR)");
  app->add_option("--point", o.points, "evaluation point, comma separated");
  app->add_option("--simplicial-mc", o.simplicial_mc,
                  "Monte Carlo simplices instead of exact enumeration");
}

void AddPrivacyFlags(CLI::App* app, Options& o) {
  app->add_option("--epsilon", o.epsilon, "privacy parameter");
  app->add_option("--delta", o.delta, "privacy parameter");
  app->add_option("--noise", o.noise, "laplace or gaussian");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private data depth"};
  app.require_subcommand(1);
  Options o;
  std::string private_mode, experiment_name, advanced;

  CLI::App* depth = app.add_subcommand("depth", "non-private depth values");
  AddDataFlags(depth, o);
  AddKindFlags(depth, o);
  depth->add_flag("--vector", o.vector, "depth of every sample point");

  CLI::App* priv = app.add_subcommand("private", "private releases");
  priv->add_option("mode", private_mode,
                   "point, vector, ptr-depth, median-exp, median-ptr or "
                   "rank-test")
      ->required();
  AddDataFlags(priv, o);
  AddKindFlags(priv, o);
  AddPrivacyFlags(priv, o);
  priv->add_option("--data-b", o.data_b, "second group for rank-test");
  priv->add_option("--eta", o.eta, "PTR breakdown radius");
  priv->add_option("--radius", o.radius, "truncation radius M_n");
  priv->add_option("--grid-bounds", o.grid_bounds, "lo:hi per axis");
  priv->add_option("--grid-points", o.grid_points, "points per axis");
  priv->add_option("--prior", o.prior, "uniform or gaussian:<c>:<scale>");
  priv->add_option("--budget-cap", o.budget_cap, "epsilon[,delta] cap");
  priv->add_option("--ledger", o.ledger, "ledger file");
  priv->add_flag("--unsafe-audit", o.unsafe_audit,
                 "include audit fields that condition on the raw data");
  priv->add_flag("--tie-robust", o.tie_robust,
                 "vector sensitivity valid for data with ties");

  CLI::App* exp = app.add_subcommand("experiment", "plot-data sweeps");
  exp->add_option("name", experiment_name, "experiment name")->required();
  exp->add_option("--n-grid", o.n_grid, "comma separated sample sizes");
  exp->add_option("--reps", o.reps, "repetitions per n");
  exp->add_option("--epsilon", o.epsilon, "privacy parameter");
  exp->add_option("--delta", o.delta, "privacy parameter");
  exp->add_option("--samples", o.samples, "audit draws / reference size");
  exp->add_option("--seed", o.seed, "root seed");
  exp->add_option("--directions", o.directions, "random directions");
  exp->add_option("--output", o.output, "CSV output file");

  CLI::App* audit = app.add_subcommand("audit", "empirical privacy audit");
  AddDataFlags(audit, o);
  AddKindFlags(audit, o);
  audit->add_option("--epsilon", o.epsilon, "privacy parameter");
  audit->add_option("--samples", o.samples, "draws per side");
  audit->add_option("--noise-factor", o.noise_factor,
                    "scale the calibrated noise (negative control < 1)");

  CLI::App* budget = app.add_subcommand("budget", "ledger totals");
  budget->add_option("--ledger", o.ledger, "ledger file");
  budget->add_option("--advanced", advanced,
                     "epsilon,delta_prime,k for advanced composition");
  budget->add_option("--output", o.output, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*depth) return RunDepth(o);
    if (*priv) {
      for (const char* m : {"point", "vector", "ptr-depth", "median-exp",
                            "median-ptr", "rank-test"}) {
        if (private_mode == m) return RunPrivate(private_mode, o);
      }
      throw ConfigError{"unknown private mode '" + private_mode + "'"};
    }
    if (*exp) return RunExperiment(experiment_name, o);
    if (*audit) return RunAudit(o);
    if (*budget) return RunBudget(o, advanced);
  } catch (const ConfigError& e) {
    std::cerr << "depthguard: " << e.message << "\n";
    return kExitConfig;
  }
  return kExitFailure;
}
