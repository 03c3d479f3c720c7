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

#include "depthguard/estimators.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "depthguard/status_macros.h"

namespace depthguard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status CheckDimension(std::span<const double> x, const Dataset& data) {
  if (x.size() != data.d()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "point has dimension ", x.size(), ", data has ", data.d()));
  }
  return absl::OkStatus();
}

void Record(PrivateDepthReport& report, const PrivacySpend& spend,
            const EstimatorOptions& options) {
  report.spend = spend;
  report.ledger_entry.mechanism = report.estimator;
  report.ledger_entry.epsilon = spend.epsilon;
  report.ledger_entry.delta = spend.delta;
  if (report.ledger_entry.variant.empty()) {
    report.ledger_entry.variant = VariantName(report.params.variant);
  }
  report.ledger_entry.timestamp = UtcTimestamp();
  if (options.ledger != nullptr) options.ledger->Append(report.ledger_entry);
}

absl::StatusOr<MechanismOutcome> AddNoise(std::span<const double> values,
                                          double gs, Norm norm,
                                          const PrivacyParams& params,
                                          NoiseSource& rng) {
  SensitivityBound b;
  b.value = gs;
  b.norm = norm;
  if (params.variant == NoiseVariant::kLaplace) {
    return LaplaceMechanism(values, b, params.epsilon, rng);
  }
  return GaussianMechanism(values, b, params.epsilon, params.delta, rng);
}

PrivacySpend DirectSpend(const PrivacyParams& params) {
  return params.variant == NoiseVariant::kLaplace
             ? LaplaceSpend(params.epsilon)
             : GaussianSpend(params.epsilon, params.delta);
}

// Utility D(v; F_n) at every grid point.
absl::StatusOr<std::vector<double>> GridDepths(
    const Dataset& data, DepthKind kind, const CandidateGrid& grid,
    const DirectionSet& dirs, const SimplicialOptions& simplicial) {
  if (grid.d() != data.d()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "grid has dimension ", grid.d(), ", data has ", data.d()));
  }
  std::vector<double> u(grid.size());
  if (kind == DepthKind::kSimplicial) {
    for (size_t i = 0; i < grid.size(); ++i) {
      ASSIGN_OR_RETURN(u[i], SimplicialDepth(grid.point(i), data, simplicial));
    }
    return u;
  }
  ASSIGN_OR_RETURN(ProjectionTable table, ProjectionTable::Build(data, dirs));
  for (size_t i = 0; i < grid.size(); ++i) {
    auto v = grid.point(i);
    switch (kind) {
      case DepthKind::kHalfspace:
        u[i] = table.Halfspace(v);
        break;
      case DepthKind::kIrw:
        u[i] = table.Irw(v);
        break;
      default:
        u[i] = DepthFromOutlyingness(table.Outlyingness(v, ScaleOf(kind)));
        break;
    }
  }
  return u;
}

}  // namespace

absl::StatusOr<TruncatedOutlyingnessSpec> TruncatedOutlyingnessSpec::Create(
    double radius, ScaleKind base, DirectionSet dirs) {
  if (!(radius > 0.0) || std::isinf(radius)) {
    return absl::InvalidArgumentError(
        "truncation radius must be positive and finite");
  }
  return TruncatedOutlyingnessSpec(radius, base, std::move(dirs));
}

bool TruncatedOutlyingnessSpec::Inside(std::span<const double> v) const {
  double r2 = 0.0;
  for (double c : v) r2 += c * c;
  return std::sqrt(r2) <= radius_;
}

std::vector<double> ClampToUnit(std::span<const double> released) {
  std::vector<double> out(released.begin(), released.end());
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  return out;
}

std::vector<double> DepthFromReleasedOutlyingness(
    std::span<const double> released) {
  std::vector<double> out(released.size());
  for (size_t i = 0; i < released.size(); ++i) {
    out[i] = DepthFromOutlyingness(std::max(released[i], 0.0));
  }
  return out;
}

double DefaultEta(size_t n, double c, double r) {
  const double nn = static_cast<double>(n);
  return c * std::log(nn) / std::pow(nn, 0.75 - r);
}

absl::StatusOr<PrivateDepthReport> PrivateDepthPoint(
    std::span<const double> x, const Dataset& data, DepthKind kind,
    const DirectionSet& dirs, const PrivacyParams& params, NoiseSource& rng,
    const EstimatorOptions& options) {
  if (IsProjectionKind(kind)) {
    return absl::InvalidArgumentError(
        "projection depth has global sensitivity 1; use the PTR estimator "
        "(PrivateProjectionDepth) instead");
  }
  RETURN_IF_ERROR(params.Validate());
  RETURN_IF_ERROR(CheckDimension(x, data));
  ASSIGN_OR_RETURN(DepthValue depth,
                   Depth(kind, x, data, dirs, options.simplicial));
  ASSIGN_OR_RETURN(SensitivityBound gs,
                   GlobalSensitivity(kind, data.n(), data.d()));
  const double value = depth.value;
  ASSIGN_OR_RETURN(
      MechanismOutcome out,
      AddNoise(std::span<const double>(&value, 1), gs.value,
               params.variant == NoiseVariant::kLaplace ? Norm::kL1
                                                        : Norm::kL2,
               params, rng));
  PrivateDepthReport r;
  r.estimator = "depth-point";
  r.kind = kind;
  r.params = params;
  r.points.emplace_back(x.begin(), x.end());
  r.raw = out.payload;
  r.post_processed = ClampToUnit(*r.raw);
  r.post_processing = "clamp to [0,1]";
  r.audit = out.audit;
  Record(r, DirectSpend(params), options);
  return r;
}

absl::StatusOr<PrivateDepthReport> PrivateDepthVector(
    const Dataset& data, DepthKind kind, const DirectionSet& dirs,
    const PrivacyParams& params, NoiseSource& rng,
    const EstimatorOptions& options) {
  if (IsProjectionKind(kind)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "private depth vectors support halfspace, irw and simplicial depth, "
        "not ", KindName(kind)));
  }
  RETURN_IF_ERROR(params.Validate());
  const Norm norm =
      params.variant == NoiseVariant::kLaplace ? Norm::kL1 : Norm::kL2;
  ASSIGN_OR_RETURN(SensitivityBound gs,
                   VectorGlobalSensitivity(kind, data.n(), data.d(), norm,
                                           options.vector_bound));
  ASSIGN_OR_RETURN(std::vector<double> depths,
                   DepthVector(data, dirs, kind, options.simplicial));
  ASSIGN_OR_RETURN(MechanismOutcome out,
                   AddNoise(depths, gs.value, norm, params, rng));
  PrivateDepthReport r;
  r.estimator = "depth-vector";
  r.kind = kind;
  r.params = params;
  r.raw = out.payload;
  r.post_processed = ClampToUnit(*r.raw);
  r.post_processing = "clamp to [0,1]";
  r.audit = out.audit;
  r.notes.push_back(
      "noise is O(1) per coordinate, so the aggregate error grows like "
      "sqrt(n) and dominates the sampling error");
  if (options.vector_bound == VectorBound::kGeneralPosition) {
    r.notes.push_back(
        "sensitivity assumes no ties among projected points; use the "
        "tie-robust bound for data with repeated values");
  }
  Record(r, DirectSpend(params), options);
  return r;
}

double ProjectionBreakdownBound(const ProjectionTable& table,
                                std::span<const double> x, double eta,
                                double k_star, ScaleKind scale) {
  if (k_star < 1.0) return 1.0;
  if (2.0 * std::ceil(k_star) >= static_cast<double>(table.n())) return 1.0;
  auto c = BreakdownCertifier::Create(table, k_star, scale);
  if (!c.ok() || !c->Holds(x, eta)) return 1.0;
  return static_cast<double>(c->k()) + 1.0;
}

absl::StatusOr<PrivateDepthReport> PrivateProjectionDepth(
    std::span<const double> x, const Dataset& data, ScaleKind scale,
    const DirectionSet& dirs, double eta, const PrivacyParams& params,
    NoiseSource& rng, const EstimatorOptions& options) {
  RETURN_IF_ERROR(params.Validate());
  RETURN_IF_ERROR(CheckDimension(x, data));
  if (!(eta > 0.0)) return absl::InvalidArgumentError("eta must be positive");
  ASSIGN_OR_RETURN(ProjectionTable table, ProjectionTable::Build(data, dirs));
  const double statistic = table.Outlyingness(x, scale);
  BreakdownFn bound = [&](double k_star) {
    return ProjectionBreakdownBound(table, x, eta, k_star, scale);
  };
  ASSIGN_OR_RETURN(MechanismOutcome out,
                   Ptr(bound, statistic, eta, params, rng));
  PrivateDepthReport r;
  r.estimator = "projection-depth-ptr";
  r.kind = scale == ScaleKind::kMad ? DepthKind::kProjectionMad
                                    : DepthKind::kProjectionIqr;
  r.params = params;
  r.eta = eta;
  r.points.emplace_back(x.begin(), x.end());
  r.raw = out.payload;
  if (r.raw) r.post_processed = DepthFromReleasedOutlyingness(*r.raw);
  r.post_processing = "depth 1/(1+max(O,0)) from released outlyingness";
  r.audit = out.audit;
  Record(r, PtrSpend(params), options);
  return r;
}

absl::StatusOr<std::vector<double>> MedianExpProbabilities(
    const Dataset& data, DepthKind kind, const CandidateGrid& grid,
    const Prior& prior, const DirectionSet& dirs, double epsilon,
    const SimplicialOptions& simplicial) {
  ASSIGN_OR_RETURN(std::vector<double> u,
                   GridDepths(data, kind, grid, dirs, simplicial));
  ASSIGN_OR_RETURN(SensitivityBound gs,
                   GlobalSensitivity(kind, data.n(), data.d()));
  ASSIGN_OR_RETURN(std::vector<double> w, prior.Weights(grid));
  return ExponentialProbabilities(u, gs.value, epsilon, w);
}

absl::StatusOr<PrivateDepthReport> PrivateDepthMedianExp(
    const Dataset& data, DepthKind kind, const CandidateGrid& grid,
    const Prior& prior, const DirectionSet& dirs, double epsilon,
    NoiseSource& rng, const EstimatorOptions& options) {
  if (!grid.data_independent()) {
    return absl::InvalidArgumentError(
        "candidate grid must be data-independent");
  }
  ASSIGN_OR_RETURN(std::vector<double> u,
                   GridDepths(data, kind, grid, dirs, options.simplicial));
  ASSIGN_OR_RETURN(SensitivityBound gs,
                   GlobalSensitivity(kind, data.n(), data.d()));
  ASSIGN_OR_RETURN(MechanismOutcome out,
                   ExponentialMechanismDiscrete(grid, u, gs, epsilon, prior,
                                                /*normalizer_data_independent=*/
                                                false, rng));
  PrivateDepthReport r;
  r.estimator = "median-exp";
  r.kind = kind;
  r.params.epsilon = epsilon;
  r.params.delta = 0.0;
  r.params.variant = NoiseVariant::kLaplace;
  r.raw = out.payload;
  r.audit = out.audit;
  r.grid_spec = absl::StrCat(grid.spec(), "; prior ", prior.spec());
  r.ledger_entry.variant = "exponential";
  Record(r, LaplaceSpend(epsilon), options);
  return r;
}

absl::StatusOr<PrivateDepthReport> PrivateProjectionMedianPtr(
    const Dataset& data, const TruncatedOutlyingnessSpec& trunc,
    const CandidateGrid& grid, double eta, const PrivacyParams& params,
    NoiseSource& rng, const EstimatorOptions& options) {
  RETURN_IF_ERROR(params.Validate());
  if (!(eta > 0.0)) return absl::InvalidArgumentError("eta must be positive");
  if (!grid.data_independent()) {
    return absl::InvalidArgumentError(
        "candidate grid must be data-independent");
  }
  if (grid.d() != data.d()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "grid has dimension ", grid.d(), ", data has ", data.d()));
  }
  std::vector<size_t> inside;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (trunc.Inside(grid.point(i))) inside.push_back(i);
  }
  if (inside.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "every grid point lies outside the truncation radius ",
        trunc.radius(), "; the truncated outlyingness is +infinity on the "
        "whole grid"));
  }
  ASSIGN_OR_RETURN(ProjectionTable table,
                   ProjectionTable::Build(data, trunc.directions()));
  const ScaleKind scale = trunc.base();
  BreakdownFn bound = [&](double k_star) {
    if (k_star < 1.0) return 1.0;
    if (2.0 * std::ceil(k_star) >= static_cast<double>(table.n())) return 1.0;
    auto c = BreakdownCertifier::Create(table, k_star, scale);
    if (!c.ok()) return 1.0;
    // Outside the ball both cost functions are +infinity and never differ.
    for (size_t i : inside) {
      if (!c->Holds(grid.point(i), eta)) return 1.0;
    }
    return static_cast<double>(c->k()) + 1.0;
  };
  CostFn cost = [&](std::span<const double> v) {
    return trunc.Inside(v) ? table.Outlyingness(v, scale) : kInf;
  };
  ASSIGN_OR_RETURN(MechanismOutcome out,
                   PtrExponential(bound, cost, grid, eta, params, rng));
  PrivateDepthReport r;
  r.estimator = "projection-median-ptr";
  r.kind = scale == ScaleKind::kMad ? DepthKind::kProjectionMad
                                    : DepthKind::kProjectionIqr;
  r.params = params;
  r.eta = eta;
  r.radius = trunc.radius();
  r.raw = out.payload;
  r.audit = out.audit;
  r.grid_spec = absl::StrCat(grid.spec(), "; resolution ", grid.resolution(),
                             "; privacy certified on the grid only");
  Record(r, PtrExponentialSpend(params), options);
  return r;
}

}  // namespace depthguard
