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

#ifndef DEPTHGUARD_ORACLE_H_
#define DEPTHGUARD_ORACLE_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "depthguard/dataset.h"
#include "depthguard/random.h"
#include "depthguard/sensitivity.h"

namespace depthguard {

// Finite stand-in for "any replacement row".
struct ReplacementPool {
  std::vector<std::vector<double>> points;

  // Copies of every distinct row, +-extreme along each axis and the corners
  // of the data's bounding box pushed out by one unit, plus `extra`.
  static ReplacementPool Standard(
      const Dataset& data, double extreme = 1e6,
      const std::vector<std::vector<double>>& extra = {});
};

using VectorStatistic = std::function<std::vector<double>(const Dataset&)>;
using ScalarStatistic = std::function<double(const Dataset&)>;

// |a - b| with +inf - +inf taken as 0 and a single infinity as +inf.
double StatisticDistance(double a, double b);

// max over rows i and pool points p of ||T(data) - T(data, row i <- p)||.
absl::StatusOr<double> BruteForceSensitivity(const VectorStatistic& stat,
                                             const Dataset& data,
                                             const ReplacementPool& pool,
                                             Norm norm = Norm::kL1,
                                             double max_evaluations = 1e6);

absl::StatusOr<double> BruteForceSensitivity(const ScalarStatistic& stat,
                                             const Dataset& data,
                                             const ReplacementPool& pool,
                                             double max_evaluations = 1e6);

// Smallest k <= k_max such that replacing some k rows by pool points moves
// the statistic by more than eta; std::nullopt means "> k_max".
absl::StatusOr<std::optional<int>> BruteForceAEta(
    const ScalarStatistic& stat, const Dataset& data, double eta,
    const ReplacementPool& pool, int k_max, double max_evaluations = 1e7);

// Exact halfspace depth in the plane by sweeping the critical directions.
absl::StatusOr<double> ExactHalfspace2d(std::span<const double> x,
                                        const Dataset& data);

// One draw of a mechanism with scalar output; nullopt is bottom.
using ScalarSampler = std::function<std::optional<double>(NoiseSource&)>;

struct AuditPair {
  ScalarSampler first;
  ScalarSampler second;
};

struct AuditResult {
  double max_log_ratio = 0.0;
  size_t worst_pair = 0;
  size_t worst_bin = 0;
};

// Draws `samples` outputs per side, bins them into `bins` equal-probability
// bins from the pooled sample (bottom gets its own bin) and reports the
// largest |log((c1 + 0.5) / (c2 + 0.5))|.
absl::StatusOr<AuditResult> DpRatioAudit(const std::vector<AuditPair>& pairs,
                                         size_t samples, size_t bins,
                                         uint64_t seed);

}  // namespace depthguard

#endif  // DEPTHGUARD_ORACLE_H_
