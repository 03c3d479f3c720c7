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

#ifndef DEPTHGUARD_SENSITIVITY_H_
#define DEPTHGUARD_SENSITIVITY_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "depthguard/dataset.h"
#include "depthguard/depth.h"

namespace depthguard {

enum class Norm { kL1, kL2, kSup };
enum class Scope { kPoint, kVector, kFunction };

std::string NormName(Norm norm);

struct SensitivityBound {
  double value = 0.0;
  Norm norm = Norm::kSup;
  Scope scope = Scope::kPoint;
};

// Pointwise global sensitivity of D(x; F_n) for fixed x. The same value
// holds in every norm since the statistic is scalar.
absl::StatusOr<SensitivityBound> GlobalSensitivity(DepthKind kind, size_t n,
                                                   size_t d,
                                                   Norm norm = Norm::kSup);

// kGeneralPosition assumes no ties among the projected sample points, which
// is the setting of the closed-form rank argument. kTieRobust holds for any
// data, at roughly twice the L1 value for halfspace and IRW.
enum class VectorBound { kGeneralPosition, kTieRobust };

// Sensitivity of the sample depth vector (D(X_1; F_n), ..., D(X_n; F_n)).
absl::StatusOr<SensitivityBound> VectorGlobalSensitivity(
    DepthKind kind, size_t n, size_t d, Norm norm,
    VectorBound bound = VectorBound::kGeneralPosition);

struct BreakdownQuery {
  double eta = 0.0;
  double k_star = 0.0;

  absl::Status Validate() const;
};

// Bounds on the directional outlyingness |x^T u - med| / scale over every
// dataset obtained by replacing k = ceil(k_star) rows. Components before
// division are kept for inspection.
struct OutlyingnessInterval {
  int k = 0;
  double projected = 0.0;    // x^T u
  double directional = 0.0;  // current O^u(x)
  // Range [env_lo, env_hi] that the median can reach.
  double env_lo = 0.0, env_hi = 0.0;
  double lo_med = 0.0, up_med = 0.0;
  // Medians after replacing the k smallest / largest projections by x^T u.
  double m1 = 0.0, m2 = 0.0;
  // Extremes of the scale candidates (min and max of the IQR set for O2).
  double scale_min = 0.0, scale_max = 0.0;
  double lo_scale = 0.0, up_scale = 0.0;
  double lo = 0.0, up = 0.0;
  // lo_scale == 0 with up_med > 0, so up is +infinity.
  bool degenerate = false;
};

// Requires 1 <= ceil(k_star) and 2 * ceil(k_star) < n.
absl::StatusOr<OutlyingnessInterval> OutlyingnessIntervalFor(
    std::span<const double> x, const Dataset& data, const Direction& u,
    double k_star, ScaleKind scale = ScaleKind::kIqr);

// Per-direction replacement bounds for a fixed k, reusable across query
// points. Only the median distance depends on x.
class BreakdownCertifier {
 public:
  static absl::StatusOr<BreakdownCertifier> Create(
      const ProjectionTable& table, double k_star, ScaleKind scale);

  int k() const { return k_; }
  OutlyingnessInterval Interval(std::span<const double> x, size_t j) const;
  // True iff every direction satisfies max(O^u - lo, up - O^u) < eta with a
  // finite current O^u. eta = +infinity is vacuously true.
  bool Holds(std::span<const double> x, double eta) const;
  // max over directions of max(O^u - lo, up - O^u); +infinity if unbounded.
  double Margin(std::span<const double> x) const;

 private:
  struct DirectionBounds {
    double env_lo, env_hi, scale_min, scale_max, lo_scale, up_scale;
  };

  const ProjectionTable* table_ = nullptr;
  int k_ = 0;
  ScaleKind scale_ = ScaleKind::kIqr;
  std::vector<DirectionBounds> bounds_;
};

absl::StatusOr<bool> BreakdownHolds(std::span<const double> x,
                                    const Dataset& data,
                                    const DirectionSet& dirs, double eta,
                                    double k_star,
                                    ScaleKind scale = ScaleKind::kIqr);

}  // namespace depthguard

#endif  // DEPTHGUARD_SENSITIVITY_H_
