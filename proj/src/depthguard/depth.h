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

#ifndef DEPTHGUARD_DEPTH_H_
#define DEPTHGUARD_DEPTH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "depthguard/dataset.h"

namespace depthguard {

enum class DepthKind {
  kHalfspace,
  kIrw,
  kSimplicial,
  kProjectionMad,  // 1 / (1 + O1), scale = MAD
  kProjectionIqr,  // 1 / (1 + O2), scale = IQR
};

// Scale used by projection outlyingness.
enum class ScaleKind { kMad, kIqr };

std::string KindName(DepthKind kind);
absl::StatusOr<DepthKind> ParseKind(const std::string& name);
bool IsProjectionKind(DepthKind kind);
ScaleKind ScaleOf(DepthKind kind);

struct SimplicialOptions {
  enum class Mode { kExact, kMonteCarlo };
  Mode mode = Mode::kExact;
  // Monte Carlo: number of uniformly drawn (d+1)-subsets and their seed.
  uint64_t samples = 100000;
  uint64_t seed = 0;
  // Exact mode refuses to enumerate more than this many subsets.
  double exact_cap = 2e6;
};

struct DepthValue {
  double value = 0.0;
  DepthKind kind = DepthKind::kHalfspace;
  std::vector<double> point;
};

// Sorted projections of a dataset onto every direction of a set, with the
// per-direction median, MAD and IQR. Built once and shared by every point
// evaluation against the same (data, directions) pair.
class ProjectionTable {
 public:
  static absl::StatusOr<ProjectionTable> Build(const Dataset& data,
                                               const DirectionSet& dirs);

  size_t n() const { return n_; }
  size_t m() const { return m_; }
  size_t d() const { return d_; }

  std::span<const double> sorted(size_t j) const {
    return {sorted_.data() + j * n_, n_};
  }
  std::span<const double> direction(size_t j) const {
    return {dirs_.data() + j * d_, d_};
  }
  double median(size_t j) const { return median_[j]; }
  double mad(size_t j) const { return mad_[j]; }
  double iqr(size_t j) const { return iqr_[j]; }
  double scale(size_t j, ScaleKind kind) const {
    return kind == ScaleKind::kMad ? mad_[j] : iqr_[j];
  }

  double Project(std::span<const double> x, size_t j) const {
    return Dot(x, direction(j));
  }
  // #{i : X_i^T u_j <= t} and #{i : X_i^T u_j < t}.
  size_t CountAtMost(size_t j, double t) const;
  size_t CountBelow(size_t j, double t) const;

  double Halfspace(std::span<const double> x) const;
  double Irw(std::span<const double> x) const;
  // +infinity when some direction has zero scale and a nonzero numerator.
  double Outlyingness(std::span<const double> x, ScaleKind kind) const;
  // |x^T u_j - med_j| / scale_j with the same zero-scale conventions.
  double DirectionalOutlyingness(std::span<const double> x, size_t j,
                                 ScaleKind kind) const;

 private:
  size_t n_ = 0, m_ = 0, d_ = 0;
  std::vector<double> dirs_;
  std::vector<double> sorted_;
  std::vector<double> median_, mad_, iqr_;
};

// min over u of (1/n) #{X_i^T u <= x^T u}.
absl::StatusOr<double> HalfspaceDepth(std::span<const double> x,
                                      const Dataset& data,
                                      const DirectionSet& dirs);
// Average over u of min(F_u(x^T u), 1 - F_u(x^T u -)).
absl::StatusOr<double> IrwDepth(std::span<const double> x,
                                const Dataset& data,
                                const DirectionSet& dirs);
// Fraction of closed (d+1)-simplices with data vertices containing x.
absl::StatusOr<double> SimplicialDepth(std::span<const double> x,
                                       const Dataset& data,
                                       const SimplicialOptions& options = {});
absl::StatusOr<double> Outlyingness(std::span<const double> x,
                                    const Dataset& data,
                                    const DirectionSet& dirs, ScaleKind kind);
absl::StatusOr<double> ProjectionDepth(std::span<const double> x,
                                       const Dataset& data,
                                       const DirectionSet& dirs,
                                       ScaleKind kind);

// 1 / (1 + o), with +infinity mapped to 0.
double DepthFromOutlyingness(double outlyingness);

absl::StatusOr<DepthValue> Depth(DepthKind kind, std::span<const double> x,
                                 const Dataset& data, const DirectionSet& dirs,
                                 const SimplicialOptions& options = {});

// (D(X_1; F_n), ..., D(X_n; F_n)) for halfspace, IRW or simplicial depth.
absl::StatusOr<std::vector<double>> DepthVector(
    const Dataset& data, const DirectionSet& dirs, DepthKind kind,
    const SimplicialOptions& options = {});

// Closed convex hull membership of x for k <= d+1 vertices, tolerance `tol`
// on barycentric coordinates. Affinely dependent vertex sets are reduced.
bool InConvexHull(const std::vector<std::span<const double>>& vertices,
                  std::span<const double> x, double tol = 1e-9);

}  // namespace depthguard

#endif  // DEPTHGUARD_DEPTH_H_
