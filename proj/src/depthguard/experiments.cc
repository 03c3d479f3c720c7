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

#include "depthguard/experiments.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "depthguard/depth.h"
#include "depthguard/estimators.h"
#include "depthguard/oracle.h"
#include "depthguard/random.h"
#include "depthguard/rank_test.h"
#include "depthguard/status_macros.h"

namespace depthguard {

namespace {

uint64_t RepSeed(const ExperimentConfig& c, size_t n, size_t rep) {
  return DeriveSeed(c.seed, absl::StrCat(c.name, "/n", n, "/rep", rep));
}

ExperimentRow Row(const ExperimentConfig& c, size_t n, uint64_t seed,
                  std::string metric, double value) {
  return ExperimentRow{c.name, n, c.epsilon, seed, std::move(metric), value};
}

absl::StatusOr<DirectionSet> Directions(const ExperimentConfig& c, size_t d) {
  return SampleDirections(c.directions, d,
                          DeriveSeed(c.seed, c.name + "/directions"));
}

absl::Status Consistency(const ExperimentConfig& c,
                         std::vector<ExperimentRow>& rows) {
  ASSIGN_OR_RETURN(DirectionSet dirs, Directions(c, 2));
  const std::vector<double> origin = {0.0, 0.0};
  PrivacyParams params{c.epsilon, 0.0, NoiseVariant::kLaplace};
  for (size_t n : c.n_grid) {
    for (size_t rep = 0; rep < c.reps; ++rep) {
      const uint64_t s = RepSeed(c, n, rep);
      Dataset data = GaussianSample(n, 2, DeriveSeed(s, "data"));
      SeededRandom rng(DeriveSeed(s, "noise"));
      ASSIGN_OR_RETURN(PrivateDepthReport r,
                       PrivateDepthPoint(origin, data, DepthKind::kHalfspace,
                                         dirs, params, rng));
      rows.push_back(Row(c, n, s, "abs_error", std::abs((*r.raw)[0] - 0.5)));
    }
  }
  return absl::OkStatus();
}

absl::Status Audit(const ExperimentConfig& c,
                   std::vector<ExperimentRow>& rows) {
  // Data 0, 1, ..., n-1 and x in the middle; moving one point below x far
  // to the right changes the halfspace depth by exactly 1/n.
  for (size_t n : c.n_grid) {
    if (n < 4) return absl::InvalidArgumentError("audit needs n >= 4");
    std::vector<double> base(n);
    for (size_t i = 0; i < n; ++i) base[i] = static_cast<double>(i);
    ASSIGN_OR_RETURN(Dataset data, Dataset::FromFlat(base, 1));
    ASSIGN_OR_RETURN(DirectionSet dirs, SampleDirections(2, 1, 0));
    const std::vector<double> x = {static_cast<double>(n) / 2.0 - 0.5};
    ASSIGN_OR_RETURN(double d0, HalfspaceDepth(x, data, dirs));
    const size_t pairs = std::min<size_t>(10, n / 2);
    std::vector<double> neighbor_depth(pairs);
    for (size_t p = 0; p < pairs; ++p) {
      const double far = static_cast<double>(5 * n);
      Dataset moved = data.WithRow(p, std::span<const double>(&far, 1));
      ASSIGN_OR_RETURN(neighbor_depth[p], HalfspaceDepth(x, moved, dirs));
    }
    const double scale = 1.0 / (static_cast<double>(n) * c.epsilon);
    for (const auto& [metric, factor] :
         {std::pair<const char*, double>{"max_log_ratio", 1.0},
          std::pair<const char*, double>{"negative_control_max_log_ratio",
                                         0.5}}) {
      std::vector<AuditPair> audit_pairs;
      for (size_t p = 0; p < pairs; ++p) {
        const double b = scale * factor;
        const double d1 = neighbor_depth[p];
        audit_pairs.push_back(
            {[=](NoiseSource& r) -> std::optional<double> {
               return d0 + b * r.Laplace();
             },
             [=](NoiseSource& r) -> std::optional<double> {
               return d1 + b * r.Laplace();
             }});
      }
      const uint64_t s = DeriveSeed(c.seed, absl::StrCat("audit/", metric));
      ASSIGN_OR_RETURN(AuditResult a,
                       DpRatioAudit(audit_pairs, c.samples, 50, s));
      rows.push_back(Row(c, n, s, metric, a.max_log_ratio));
    }
  }
  return absl::OkStatus();
}

absl::Status Power(const ExperimentConfig& c,
                   std::vector<ExperimentRow>& rows) {
  ASSIGN_OR_RETURN(DirectionSet dirs, Directions(c, 2));
  PrivacyParams params{c.epsilon, 0.0, NoiseVariant::kLaplace};
  for (size_t n : c.n_grid) {
    for (size_t rep = 0; rep < c.reps; ++rep) {
      const uint64_t s = RepSeed(c, n, rep);
      Dataset a = GaussianSample(n, 2, DeriveSeed(s, "group-a"));
      Dataset b = GaussianSample(n, 2, DeriveSeed(s, "group-b"), 3.0);
      SeededRandom rng(DeriveSeed(s, "noise"));
      ASSIGN_OR_RETURN(RankTestReport priv,
                       PrivateRankSumScaleTest(a, b, DepthKind::kHalfspace,
                                               dirs, params, rng));
      ASSIGN_OR_RETURN(Dataset pooled, a.Concat(b));
      ASSIGN_OR_RETURN(std::vector<double> depths,
                       DepthVector(pooled, dirs, DepthKind::kHalfspace));
      ASSIGN_OR_RETURN(RankSumResult classic,
                       RankSumTest(CountingRanks(depths), n));
      rows.push_back(Row(c, n, s, "p_private", priv.test.p_value));
      rows.push_back(
          Row(c, n, s, "reject_private", priv.test.p_value <= 0.05 ? 1 : 0));
      rows.push_back(Row(c, n, s, "p_nonprivate", classic.p_value));
      rows.push_back(
          Row(c, n, s, "reject_nonprivate", classic.p_value <= 0.05 ? 1 : 0));
    }
  }
  return absl::OkStatus();
}

absl::Status PtrDepth(const ExperimentConfig& c,
                      std::vector<ExperimentRow>& rows) {
  ASSIGN_OR_RETURN(DirectionSet dirs, Directions(c, 2));
  const std::vector<double> origin = {0.0, 0.0};
  Dataset reference = GaussianSample(
      c.samples, 2, DeriveSeed(c.seed, c.name + "/reference"));
  ASSIGN_OR_RETURN(double target, ProjectionDepth(origin, reference, dirs,
                                                  ScaleKind::kIqr));
  PrivacyParams params{c.epsilon, c.delta, NoiseVariant::kLaplace};
  for (size_t n : c.n_grid) {
    const double eta = DefaultEta(n);
    for (size_t rep = 0; rep < c.reps; ++rep) {
      const uint64_t s = RepSeed(c, n, rep);
      Dataset data = GaussianSample(n, 2, DeriveSeed(s, "data"));
      SeededRandom rng(DeriveSeed(s, "noise"));
      ASSIGN_OR_RETURN(PrivateDepthReport r,
                       PrivateProjectionDepth(origin, data, ScaleKind::kIqr,
                                              dirs, eta, params, rng));
      rows.push_back(Row(c, n, s, "bottom", r.bottom() ? 1 : 0));
      if (!r.bottom()) {
        const double released = (*r.post_processed)[0];
        rows.push_back(Row(c, n, s, "released_depth", released));
        rows.push_back(Row(c, n, s, "abs_error", std::abs(released - target)));
      }
    }
  }
  return absl::OkStatus();
}

absl::Status MedianPtr(const ExperimentConfig& c,
                       std::vector<ExperimentRow>& rows) {
  ASSIGN_OR_RETURN(DirectionSet dirs, Directions(c, 2));
  ASSIGN_OR_RETURN(TruncatedOutlyingnessSpec trunc,
                   TruncatedOutlyingnessSpec::Create(10.0, ScaleKind::kIqr,
                                                     dirs));
  ASSIGN_OR_RETURN(CandidateGrid grid,
                   CandidateGrid::Regular({-2, -2}, {2, 2}, {21, 21}));
  PrivacyParams params{c.epsilon, c.delta, NoiseVariant::kLaplace};
  for (size_t n : c.n_grid) {
    const double eta = DefaultEta(n);
    for (size_t rep = 0; rep < c.reps; ++rep) {
      const uint64_t s = RepSeed(c, n, rep);
      Dataset data = GaussianSample(n, 2, DeriveSeed(s, "data"));
      SeededRandom rng(DeriveSeed(s, "noise"));
      ASSIGN_OR_RETURN(PrivateDepthReport r,
                       PrivateProjectionMedianPtr(data, trunc, grid, eta,
                                                  params, rng));
      rows.push_back(Row(c, n, s, "bottom", r.bottom() ? 1 : 0));
      if (!r.bottom()) {
        const auto& v = *r.raw;
        rows.push_back(
            Row(c, n, s, "distance", std::sqrt(v[0] * v[0] + v[1] * v[1])));
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<std::string> ExperimentNames() {
  return {"consistency", "audit", "power", "ptr-depth", "median-ptr"};
}

absl::StatusOr<ExperimentConfig> DefaultExperiment(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.epsilon = 1.0;
  c.reps = 100;
  c.directions = 100;
  c.seed = 1;
  if (name == "consistency") {
    c.n_grid = {200, 1000, 5000};
  } else if (name == "audit") {
    c.n_grid = {20};
    c.reps = 1;
    c.samples = 1000000;
  } else if (name == "power") {
    c.n_grid = {50};
    c.epsilon = 2.0;
    c.reps = 200;
  } else if (name == "ptr-depth") {
    c.n_grid = {2000};
    c.delta = 1e-4;
    c.samples = 100000;
  } else if (name == "median-ptr") {
    c.n_grid = {2000};
    c.delta = 1e-4;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown experiment: ", name));
  }
  return c;
}

absl::StatusOr<ExperimentConfig> ResolveExperiment(ExperimentConfig config) {
  ASSIGN_OR_RETURN(ExperimentConfig d, DefaultExperiment(config.name));
  if (config.n_grid.empty()) config.n_grid = d.n_grid;
  if (config.epsilon == 0.0) config.epsilon = d.epsilon;
  if (config.delta == 0.0) config.delta = d.delta;
  if (config.reps == 0) config.reps = d.reps;
  if (config.directions == 0) config.directions = d.directions;
  if (config.samples == 0) config.samples = d.samples;
  if (!(config.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  return config;
}

absl::StatusOr<std::vector<ExperimentRow>> RunExperiment(
    const ExperimentConfig& config) {
  ASSIGN_OR_RETURN(ExperimentConfig c, ResolveExperiment(config));
  std::vector<ExperimentRow> rows;
  absl::Status s;
  if (c.name == "consistency") {
    s = Consistency(c, rows);
  } else if (c.name == "audit") {
    s = Audit(c, rows);
  } else if (c.name == "power") {
    s = Power(c, rows);
  } else if (c.name == "ptr-depth") {
    s = PtrDepth(c, rows);
  } else {
    s = MedianPtr(c, rows);
  }
  if (!s.ok()) return s;
  return rows;
}

std::string RowsToCsv(const std::vector<ExperimentRow>& rows) {
  std::string out = "experiment,n,epsilon,seed,metric,value\n";
  for (const ExperimentRow& r : rows) {
    absl::StrAppend(&out, r.experiment, ",", r.n, ",",
                    absl::StrFormat("%.17g", r.epsilon), ",", r.seed, ",",
                    r.metric, ",", absl::StrFormat("%.17g", r.value), "\n");
  }
  return out;
}

Dataset GaussianSample(size_t n, size_t d, uint64_t seed, double scale) {
  SeededRandom rng(seed);
  std::vector<double> v(n * d);
  for (double& x : v) x = scale * rng.Gaussian();
  return *Dataset::FromFlat(std::move(v), d);
}

}  // namespace depthguard
