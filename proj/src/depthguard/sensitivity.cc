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

#include "depthguard/sensitivity.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "depthguard/status_macros.h"
#include "depthguard/univariate.h"

namespace depthguard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-based order statistic, extended by `below` / `above` outside [1, n].
double Stat(std::span<const double> sorted, long j, double below,
            double above) {
  if (j < 1) return below;
  if (j > static_cast<long>(sorted.size())) return above;
  return sorted[j - 1];
}

// Sample median with both middle ranks moved by `shift`.
double ShiftedMedian(std::span<const double> sorted, long shift, double below,
                     double above) {
  const long n = static_cast<long>(sorted.size());
  if (n % 2 == 1) return Stat(sorted, (n + 1) / 2 + shift, below, above);
  const double a = Stat(sorted, n / 2 + shift, below, above);
  const double b = Stat(sorted, n / 2 + 1 + shift, below, above);
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) ? a : b;
  return 0.5 * (a + b);
}

// a / b with 0 / 0 = 0, positive / 0 = +inf and finite / inf = 0.
double SafeRatio(double a, double b) {
  if (b == 0.0) return a > 0.0 ? kInf : 0.0;
  if (std::isinf(b)) return std::isinf(a) ? kInf : 0.0;
  return a / b;
}

absl::StatusOr<int> CeilK(double k_star, size_t n) {
  if (!(k_star >= 0.0) || std::isinf(k_star)) {
    return absl::InvalidArgumentError("k* must be finite and nonnegative");
  }
  const double k = std::max(1.0, std::ceil(k_star));
  if (2.0 * k >= static_cast<double>(n)) {
    return absl::OutOfRangeError(absl::StrCat(
        "k* = ", k_star, " needs 2*ceil(k*) < n = ", n));
  }
  return static_cast<int>(k);
}

}  // namespace

std::string NormName(Norm norm) {
  switch (norm) {
    case Norm::kL1:
      return "l1";
    case Norm::kL2:
      return "l2";
    case Norm::kSup:
      return "sup";
  }
  return "unknown";
}

absl::StatusOr<SensitivityBound> GlobalSensitivity(DepthKind kind, size_t n,
                                                   size_t d, Norm norm) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  SensitivityBound b;
  b.norm = norm;
  b.scope = Scope::kPoint;
  const double nn = static_cast<double>(n);
  switch (kind) {
    case DepthKind::kHalfspace:
    case DepthKind::kIrw:
      b.value = 1.0 / nn;
      break;
    case DepthKind::kSimplicial:
      b.value = std::min(1.0, static_cast<double>(d + 1) / nn);
      break;
    case DepthKind::kProjectionMad:
    case DepthKind::kProjectionIqr:
      b.value = 1.0;
      break;
  }
  return b;
}

absl::StatusOr<SensitivityBound> VectorGlobalSensitivity(DepthKind kind,
                                                         size_t n, size_t d,
                                                         Norm norm,
                                                         VectorBound bound) {
  if (n < 2) return absl::InvalidArgumentError("n must be at least 2");
  if (norm == Norm::kSup) {
    return absl::InvalidArgumentError("vector sensitivity needs L1 or L2");
  }
  SensitivityBound b;
  b.norm = norm;
  b.scope = Scope::kVector;
  const double nn = static_cast<double>(n);
  const bool l1 = norm == Norm::kL1;
  const bool general = bound == VectorBound::kGeneralPosition;
  switch (kind) {
    case DepthKind::kHalfspace:
    case DepthKind::kIrw: {
      if (general) {
        const double k = std::floor((nn + 1.0) / 2.0) - 1.0;
        b.value = l1 ? 2.0 * k / nn : std::sqrt(k * k + k) / nn;
      } else {
        // The replaced point moves by at most 1 and each of the other n - 1
        // points by at most 1/n.
        b.value = l1 ? 2.0 * (nn - 1.0) / nn : std::sqrt((nn - 1.0) * nn) / nn;
      }
      return b;
    }
    case DepthKind::kSimplicial: {
      const double c = std::min(1.0, static_cast<double>(d + 1) / nn);
      const double self = 1.0 - c;
      if (l1) {
        b.value = general ? 1.0 : self + (nn - 1.0) * c;
      } else {
        const double others = general ? nn : nn - 1.0;
        b.value = std::sqrt(self * self + others * c * c);
      }
      return b;
    }
    case DepthKind::kProjectionMad:
    case DepthKind::kProjectionIqr:
      break;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "vector sensitivity is defined for halfspace, irw and simplicial depth, "
      "not ", KindName(kind)));
}

absl::Status BreakdownQuery::Validate() const {
  if (!(eta > 0.0)) return absl::InvalidArgumentError("eta must be positive");
  if (!(k_star >= 0.0)) {
    return absl::InvalidArgumentError("k* must be nonnegative");
  }
  return absl::OkStatus();
}

absl::StatusOr<BreakdownCertifier> BreakdownCertifier::Create(
    const ProjectionTable& table, double k_star, ScaleKind scale) {
  ASSIGN_OR_RETURN(int k, CeilK(k_star, table.n()));
  BreakdownCertifier c;
  c.table_ = &table;
  c.k_ = k;
  c.scale_ = scale;
  c.bounds_.resize(table.m());
  const size_t n = table.n();
  const long j1 = static_cast<long>(QuantileIndex(n, 0.25));
  const long j3 = static_cast<long>(QuantileIndex(n, 0.75));
  std::vector<double> near(n), far(n);
  for (size_t j = 0; j < table.m(); ++j) {
    auto s = table.sorted(j);
    DirectionBounds& b = c.bounds_[j];
    b.env_lo = ShiftedMedian(s, -k, -kInf, kInf);
    b.env_hi = ShiftedMedian(s, k, -kInf, kInf);
    if (scale == ScaleKind::kIqr) {
      b.scale_min = kInf;
      b.scale_max = -kInf;
      for (long k1 = -k; k1 <= k; ++k1) {
        const long rest = k - std::abs(k1);
        for (long k2 : {rest, -rest}) {
          const double v = Stat(s, j3 + k1, -kInf, kInf) -
                           Stat(s, j1 + k2, -kInf, kInf);
          if (std::isnan(v)) continue;
          b.scale_min = std::min(b.scale_min, v);
          b.scale_max = std::max(b.scale_max, v);
        }
      }
    } else {
      // Surviving rows have deviation from any reachable median within
      // [near_i, far_i]; the k replaced deviations are unconstrained.
      for (size_t i = 0; i < n; ++i) {
        const double v = s[i];
        near[i] = v < b.env_lo ? b.env_lo - v : (v > b.env_hi ? v - b.env_hi
                                                               : 0.0);
        far[i] = std::max(std::abs(v - b.env_lo), std::abs(v - b.env_hi));
      }
      std::sort(near.begin(), near.end());
      std::sort(far.begin(), far.end());
      b.scale_min = ShiftedMedian(near, -k, 0.0, kInf);
      b.scale_max = ShiftedMedian(far, k, 0.0, kInf);
    }
    b.lo_scale = std::max(b.scale_min, 0.0);
    b.up_scale = b.scale_max;
  }
  return c;
}

OutlyingnessInterval BreakdownCertifier::Interval(std::span<const double> x,
                                                  size_t j) const {
  const DirectionBounds& b = bounds_[j];
  OutlyingnessInterval r;
  r.k = k_;
  r.projected = table_->Project(x, j);
  r.directional = table_->DirectionalOutlyingness(x, j, scale_);
  r.env_lo = b.env_lo;
  r.env_hi = b.env_hi;
  const double t = r.projected;
  r.up_med = std::max(std::abs(t - b.env_lo), std::abs(t - b.env_hi));
  r.lo_med = t < b.env_lo ? b.env_lo - t : (t > b.env_hi ? t - b.env_hi : 0.0);
  auto s = table_->sorted(j);
  std::vector<double> y(s.begin(), s.end());
  std::fill(y.begin(), y.begin() + k_, t);
  std::sort(y.begin(), y.end());
  r.m1 = SortedMedian(y);
  y.assign(s.begin(), s.end());
  std::fill(y.end() - k_, y.end(), t);
  std::sort(y.begin(), y.end());
  r.m2 = SortedMedian(y);
  r.scale_min = b.scale_min;
  r.scale_max = b.scale_max;
  r.lo_scale = b.lo_scale;
  r.up_scale = b.up_scale;
  r.lo = SafeRatio(r.lo_med, r.up_scale);
  r.up = SafeRatio(r.up_med, r.lo_scale);
  r.degenerate = std::isinf(r.up);
  return r;
}

double BreakdownCertifier::Margin(std::span<const double> x) const {
  double worst = 0.0;
  for (size_t j = 0; j < bounds_.size(); ++j) {
    const DirectionBounds& b = bounds_[j];
    const double o = table_->DirectionalOutlyingness(x, j, scale_);
    if (std::isinf(o)) return kInf;
    const double t = table_->Project(x, j);
    const double up_med =
        std::max(std::abs(t - b.env_lo), std::abs(t - b.env_hi));
    const double lo_med =
        t < b.env_lo ? b.env_lo - t : (t > b.env_hi ? t - b.env_hi : 0.0);
    const double up = SafeRatio(up_med, b.lo_scale);
    if (std::isinf(up)) return kInf;
    const double lo = SafeRatio(lo_med, b.up_scale);
    worst = std::max({worst, o - lo, up - o});
  }
  return worst;
}

bool BreakdownCertifier::Holds(std::span<const double> x, double eta) const {
  if (std::isinf(eta) && eta > 0.0) return true;
  return Margin(x) < eta;
}

absl::StatusOr<OutlyingnessInterval> OutlyingnessIntervalFor(
    std::span<const double> x, const Dataset& data, const Direction& u,
    double k_star, ScaleKind scale) {
  if (x.size() != data.d() || u.d() != data.d()) {
    return absl::InvalidArgumentError("dimension mismatch");
  }
  ASSIGN_OR_RETURN(DirectionSet dirs, DirectionSet::FromDirections({u}));
  ASSIGN_OR_RETURN(ProjectionTable table, ProjectionTable::Build(data, dirs));
  ASSIGN_OR_RETURN(BreakdownCertifier c,
                   BreakdownCertifier::Create(table, k_star, scale));
  return c.Interval(x, 0);
}

absl::StatusOr<bool> BreakdownHolds(std::span<const double> x,
                                    const Dataset& data,
                                    const DirectionSet& dirs, double eta,
                                    double k_star, ScaleKind scale) {
  RETURN_IF_ERROR((BreakdownQuery{eta, k_star}.Validate()));
  if (x.size() != data.d()) {
    return absl::InvalidArgumentError("dimension mismatch");
  }
  ASSIGN_OR_RETURN(ProjectionTable table, ProjectionTable::Build(data, dirs));
  ASSIGN_OR_RETURN(BreakdownCertifier c,
                   BreakdownCertifier::Create(table, k_star, scale));
  return c.Holds(x, eta);
}

}  // namespace depthguard
