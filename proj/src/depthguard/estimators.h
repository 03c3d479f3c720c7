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

#ifndef DEPTHGUARD_ESTIMATORS_H_
#define DEPTHGUARD_ESTIMATORS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "depthguard/dataset.h"
#include "depthguard/depth.h"
#include "depthguard/ledger.h"
#include "depthguard/mechanisms.h"
#include "depthguard/random.h"
#include "depthguard/sensitivity.h"

namespace depthguard {

// Truncation radius and base outlyingness for the private projection median.
// Built from configuration only.
class TruncatedOutlyingnessSpec {
 public:
  static absl::StatusOr<TruncatedOutlyingnessSpec> Create(
      double radius, ScaleKind base, DirectionSet dirs);

  double radius() const { return radius_; }
  ScaleKind base() const { return base_; }
  const DirectionSet& directions() const { return dirs_; }
  bool Inside(std::span<const double> v) const;

 private:
  TruncatedOutlyingnessSpec(double radius, ScaleKind base, DirectionSet dirs)
      : radius_(radius), base_(base), dirs_(std::move(dirs)) {}

  double radius_;
  ScaleKind base_;
  DirectionSet dirs_;
};

struct PrivateDepthReport {
  std::string estimator;
  DepthKind kind = DepthKind::kHalfspace;
  PrivacyParams params;
  double eta = 0.0;     // PTR estimators only
  double radius = 0.0;  // projection median only
  std::vector<std::vector<double>> points;
  // Released values exactly as produced by the mechanism; nullopt is bottom.
  std::optional<std::vector<double>> raw;
  // Computed from `raw` alone (see the post-processing helpers below).
  std::optional<std::vector<double>> post_processed;
  std::string post_processing;
  MechanismAudit audit;
  PrivacySpend spend;
  LedgerEntry ledger_entry;
  std::optional<std::string> grid_spec;
  std::vector<std::string> notes;

  bool bottom() const { return !raw.has_value(); }
};

// Post-processing. Neither helper sees the data.
std::vector<double> ClampToUnit(std::span<const double> released);
// 1 / (1 + max(O, 0)) per released outlyingness value.
std::vector<double> DepthFromReleasedOutlyingness(
    std::span<const double> released);

// Default PTR radius c * log(n) / n^(3/4 - r).
double DefaultEta(size_t n, double c = 1.0, double r = 0.1);

struct EstimatorOptions {
  SimplicialOptions simplicial;
  VectorBound vector_bound = VectorBound::kGeneralPosition;
  // When set, the spend of every outcome (bottom included) is appended.
  BudgetLedger* ledger = nullptr;
};

absl::StatusOr<PrivateDepthReport> PrivateDepthPoint(
    std::span<const double> x, const Dataset& data, DepthKind kind,
    const DirectionSet& dirs, const PrivacyParams& params, NoiseSource& rng,
    const EstimatorOptions& options = {});

absl::StatusOr<PrivateDepthReport> PrivateDepthVector(
    const Dataset& data, DepthKind kind, const DirectionSet& dirs,
    const PrivacyParams& params, NoiseSource& rng,
    const EstimatorOptions& options = {});

// Lower bound on A_eta(O(x)) for a realized k*: k + 1 when the interval
// certificate holds at k = ceil(k*) with 2k < n, else the trivial bound 1.
double ProjectionBreakdownBound(const ProjectionTable& table,
                                std::span<const double> x, double eta,
                                double k_star, ScaleKind scale);

absl::StatusOr<PrivateDepthReport> PrivateProjectionDepth(
    std::span<const double> x, const Dataset& data, ScaleKind scale,
    const DirectionSet& dirs, double eta, const PrivacyParams& params,
    NoiseSource& rng, const EstimatorOptions& options = {});

// Exact selection probabilities of the exponential-mechanism depth median.
absl::StatusOr<std::vector<double>> MedianExpProbabilities(
    const Dataset& data, DepthKind kind, const CandidateGrid& grid,
    const Prior& prior, const DirectionSet& dirs, double epsilon,
    const SimplicialOptions& simplicial = {});

absl::StatusOr<PrivateDepthReport> PrivateDepthMedianExp(
    const Dataset& data, DepthKind kind, const CandidateGrid& grid,
    const Prior& prior, const DirectionSet& dirs, double epsilon,
    NoiseSource& rng, const EstimatorOptions& options = {});

absl::StatusOr<PrivateDepthReport> PrivateProjectionMedianPtr(
    const Dataset& data, const TruncatedOutlyingnessSpec& trunc,
    const CandidateGrid& grid, double eta, const PrivacyParams& params,
    NoiseSource& rng, const EstimatorOptions& options = {});

}  // namespace depthguard

#endif  // DEPTHGUARD_ESTIMATORS_H_
