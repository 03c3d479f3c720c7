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

#include "depthguard/depth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "depthguard/random.h"
#include "depthguard/status_macros.h"
#include "depthguard/univariate.h"

namespace depthguard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status CheckPoint(std::span<const double> x, const Dataset& data) {
  if (x.size() != data.d()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "point has dimension ", x.size(), ", data has ", data.d()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("point has non-finite coordinates");
    }
  }
  return absl::OkStatus();
}

double Binomial(size_t n, size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

// Advances c (ascending indices in [0, n)) to the next k-combination.
bool NextCombination(std::vector<size_t>& c, size_t n) {
  const size_t k = c.size();
  for (size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double Cross(std::span<const double> o, std::span<const double> a,
             std::span<const double> b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Closed-simplex membership. d = 1 and d = 2 use direct comparisons and
// signed areas; other cases go through the barycentric solve.
bool InSimplex(const std::vector<std::span<const double>>& v,
               std::span<const double> x) {
  const size_t d = x.size();
  if (d == 1) {
    const double lo = std::min(v[0][0], v[1][0]);
    const double hi = std::max(v[0][0], v[1][0]);
    return lo <= x[0] && x[0] <= hi;
  }
  if (d == 2) {
    double scale = 1.0;
    for (const auto& p : v) {
      scale = std::max({scale, std::abs(p[0] - x[0]), std::abs(p[1] - x[1])});
    }
    const double tol = 1e-12 * scale * scale;
    const double area = Cross(v[0], v[1], v[2]);
    if (std::abs(area) > tol) {
      const double s1 = Cross(v[0], v[1], x);
      const double s2 = Cross(v[1], v[2], x);
      const double s3 = Cross(v[2], v[0], x);
      return (s1 >= -tol && s2 >= -tol && s3 >= -tol) ||
             (s1 <= tol && s2 <= tol && s3 <= tol);
    }
  }
  return InConvexHull(v, x);
}

}  // namespace

bool InConvexHull(const std::vector<std::span<const double>>& vertices,
                  std::span<const double> x, double tol) {
  const size_t k = vertices.size();
  const size_t d = x.size();
  if (k == 0) return false;
  double scale = 1.0;
  for (const auto& p : vertices) {
    for (size_t c = 0; c < d; ++c) scale = std::max(scale, std::abs(p[c]));
  }
  for (size_t c = 0; c < d; ++c) scale = std::max(scale, std::abs(x[c]));
  if (k == 1) {
    for (size_t c = 0; c < d; ++c) {
      if (std::abs(vertices[0][c] - x[c]) > tol * scale) return false;
    }
    return true;
  }
  Eigen::MatrixXd a(d + 1, k);
  Eigen::VectorXd b(d + 1);
  for (size_t j = 0; j < k; ++j) {
    for (size_t c = 0; c < d; ++c) a(c, j) = vertices[j][c] / scale;
    a(d, j) = 1.0;
  }
  for (size_t c = 0; c < d; ++c) b(c) = x[c] / scale;
  b(d) = 1.0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-12);
  if (static_cast<size_t>(qr.rank()) == k) {
    Eigen::VectorXd lambda = qr.solve(b);
    if ((a * lambda - b).norm() > tol) return false;
    return lambda.minCoeff() >= -tol;
  }
  // Affinely dependent vertices: the hull is the union of the hulls of the
  // subsets missing one vertex.
  for (size_t drop = 0; drop < k; ++drop) {
    std::vector<std::span<const double>> sub;
    sub.reserve(k - 1);
    for (size_t j = 0; j < k; ++j) {
      if (j != drop) sub.push_back(vertices[j]);
    }
    if (InConvexHull(sub, x, tol)) return true;
  }
  return false;
}

std::string KindName(DepthKind kind) {
  switch (kind) {
    case DepthKind::kHalfspace:
      return "halfspace";
    case DepthKind::kIrw:
      return "irw";
    case DepthKind::kSimplicial:
      return "simplicial";
    case DepthKind::kProjectionMad:
      return "projection-o1";
    case DepthKind::kProjectionIqr:
      return "projection-o2";
  }
  return "unknown";
}

absl::StatusOr<DepthKind> ParseKind(const std::string& name) {
  for (DepthKind k : {DepthKind::kHalfspace, DepthKind::kIrw,
                      DepthKind::kSimplicial, DepthKind::kProjectionMad,
                      DepthKind::kProjectionIqr}) {
    if (KindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown depth kind: ", name));
}

bool IsProjectionKind(DepthKind kind) {
  return kind == DepthKind::kProjectionMad ||
         kind == DepthKind::kProjectionIqr;
}

ScaleKind ScaleOf(DepthKind kind) {
  return kind == DepthKind::kProjectionMad ? ScaleKind::kMad : ScaleKind::kIqr;
}

absl::StatusOr<ProjectionTable> ProjectionTable::Build(
    const Dataset& data, const DirectionSet& dirs) {
  if (dirs.m() == 0) return absl::InvalidArgumentError("no directions");
  if (dirs.d() != data.d()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "directions have dimension ", dirs.d(), ", data has ", data.d()));
  }
  ProjectionTable t;
  t.n_ = data.n();
  t.m_ = dirs.m();
  t.d_ = data.d();
  t.dirs_.reserve(t.m_ * t.d_);
  for (const Direction& u : dirs.directions()) {
    t.dirs_.insert(t.dirs_.end(), u.u().begin(), u.u().end());
  }
  t.sorted_.resize(t.m_ * t.n_);
  t.median_.resize(t.m_);
  t.mad_.resize(t.m_);
  t.iqr_.resize(t.m_);
  for (size_t j = 0; j < t.m_; ++j) {
    double* col = t.sorted_.data() + j * t.n_;
    for (size_t i = 0; i < t.n_; ++i) col[i] = Dot(data.row(i), t.direction(j));
    std::sort(col, col + t.n_);
    std::span<const double> s(col, t.n_);
    t.median_[j] = SortedMedian(s);
    t.mad_[j] = SortedMad(s, t.median_[j]);
    t.iqr_[j] = SortedIqr(s);
  }
  return t;
}

size_t ProjectionTable::CountAtMost(size_t j, double t) const {
  auto s = sorted(j);
  return std::upper_bound(s.begin(), s.end(), t) - s.begin();
}

size_t ProjectionTable::CountBelow(size_t j, double t) const {
  auto s = sorted(j);
  return std::lower_bound(s.begin(), s.end(), t) - s.begin();
}

double ProjectionTable::Halfspace(std::span<const double> x) const {
  size_t best = n_;
  for (size_t j = 0; j < m_; ++j) {
    best = std::min(best, CountAtMost(j, Project(x, j)));
  }
  return static_cast<double>(best) / static_cast<double>(n_);
}

double ProjectionTable::Irw(std::span<const double> x) const {
  const double n = static_cast<double>(n_);
  double sum = 0.0;
  for (size_t j = 0; j < m_; ++j) {
    const double t = Project(x, j);
    const double below_or_at = static_cast<double>(CountAtMost(j, t)) / n;
    const double above_or_at = 1.0 - static_cast<double>(CountBelow(j, t)) / n;
    sum += std::min(below_or_at, above_or_at);
  }
  return sum / static_cast<double>(m_);
}

double ProjectionTable::DirectionalOutlyingness(std::span<const double> x,
                                                size_t j,
                                                ScaleKind kind) const {
  const double num = std::abs(Project(x, j) - median_[j]);
  const double s = scale(j, kind);
  if (s == 0.0) return num > 0.0 ? kInf : 0.0;
  return num / s;
}

double ProjectionTable::Outlyingness(std::span<const double> x,
                                     ScaleKind kind) const {
  double best = 0.0;
  for (size_t j = 0; j < m_; ++j) {
    best = std::max(best, DirectionalOutlyingness(x, j, kind));
    if (best == kInf) break;
  }
  return best;
}

double DepthFromOutlyingness(double outlyingness) {
  if (outlyingness == kInf) return 0.0;
  return 1.0 / (1.0 + outlyingness);
}

absl::StatusOr<double> HalfspaceDepth(std::span<const double> x,
                                      const Dataset& data,
                                      const DirectionSet& dirs) {
  RETURN_IF_ERROR(CheckPoint(x, data));
  ASSIGN_OR_RETURN(ProjectionTable t, ProjectionTable::Build(data, dirs));
  return t.Halfspace(x);
}

absl::StatusOr<double> IrwDepth(std::span<const double> x,
                                const Dataset& data,
                                const DirectionSet& dirs) {
  RETURN_IF_ERROR(CheckPoint(x, data));
  ASSIGN_OR_RETURN(ProjectionTable t, ProjectionTable::Build(data, dirs));
  return t.Irw(x);
}

absl::StatusOr<double> Outlyingness(std::span<const double> x,
                                    const Dataset& data,
                                    const DirectionSet& dirs, ScaleKind kind) {
  RETURN_IF_ERROR(CheckPoint(x, data));
  ASSIGN_OR_RETURN(ProjectionTable t, ProjectionTable::Build(data, dirs));
  return t.Outlyingness(x, kind);
}

absl::StatusOr<double> ProjectionDepth(std::span<const double> x,
                                       const Dataset& data,
                                       const DirectionSet& dirs,
                                       ScaleKind kind) {
  ASSIGN_OR_RETURN(double o, Outlyingness(x, data, dirs, kind));
  return DepthFromOutlyingness(o);
}

namespace {

absl::Status CheckSimplicial(const Dataset& data,
                             const SimplicialOptions& options) {
  const size_t k = data.d() + 1;
  if (data.n() < k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "simplicial depth needs n >= d+1 = ", k, " rows, got ", data.n()));
  }
  if (options.mode == SimplicialOptions::Mode::kExact &&
      Binomial(data.n(), k) > options.exact_cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exact simplicial depth would enumerate C(", data.n(), ",", k,
        ") subsets, above the cap of ", options.exact_cap,
        "; use Monte Carlo mode"));
  }
  if (options.mode == SimplicialOptions::Mode::kMonteCarlo &&
      options.samples == 0) {
    return absl::InvalidArgumentError("Monte Carlo mode needs samples >= 1");
  }
  return absl::OkStatus();
}

// Draws k distinct indices from [0, n) (Floyd's algorithm).
void DrawSubset(size_t n, size_t k, NoiseSource& rng,
                std::vector<size_t>& out) {
  out.clear();
  for (size_t j = n - k; j < n; ++j) {
    size_t t = static_cast<size_t>(rng.Uniform() * static_cast<double>(j + 1));
    if (t > j) t = j;
    if (std::find(out.begin(), out.end(), t) != out.end()) t = j;
    out.push_back(t);
  }
}

// Calls visit(vertices) for every subset the options select.
template <typename Visit>
void ForEachSimplex(const Dataset& data, const SimplicialOptions& options,
                    Visit visit) {
  const size_t k = data.d() + 1;
  std::vector<std::span<const double>> verts(k);
  std::vector<size_t> idx(k);
  if (options.mode == SimplicialOptions::Mode::kExact) {
    std::iota(idx.begin(), idx.end(), size_t{0});
    do {
      for (size_t a = 0; a < k; ++a) verts[a] = data.row(idx[a]);
      visit(verts);
    } while (NextCombination(idx, data.n()));
    return;
  }
  SeededRandom rng(options.seed);
  for (uint64_t s = 0; s < options.samples; ++s) {
    DrawSubset(data.n(), k, rng, idx);
    for (size_t a = 0; a < k; ++a) verts[a] = data.row(idx[a]);
    visit(verts);
  }
}

}  // namespace

absl::StatusOr<double> SimplicialDepth(std::span<const double> x,
                                       const Dataset& data,
                                       const SimplicialOptions& options) {
  RETURN_IF_ERROR(CheckPoint(x, data));
  RETURN_IF_ERROR(CheckSimplicial(data, options));
  uint64_t hits = 0, total = 0;
  ForEachSimplex(data, options,
                 [&](const std::vector<std::span<const double>>& v) {
                   ++total;
                   if (InSimplex(v, x)) ++hits;
                 });
  return static_cast<double>(hits) / static_cast<double>(total);
}

absl::StatusOr<DepthValue> Depth(DepthKind kind, std::span<const double> x,
                                 const Dataset& data, const DirectionSet& dirs,
                                 const SimplicialOptions& options) {
  DepthValue out;
  out.kind = kind;
  out.point.assign(x.begin(), x.end());
  switch (kind) {
    case DepthKind::kHalfspace: {
      ASSIGN_OR_RETURN(out.value, HalfspaceDepth(x, data, dirs));
      break;
    }
    case DepthKind::kIrw: {
      ASSIGN_OR_RETURN(out.value, IrwDepth(x, data, dirs));
      break;
    }
    case DepthKind::kSimplicial: {
      ASSIGN_OR_RETURN(out.value, SimplicialDepth(x, data, options));
      break;
    }
    case DepthKind::kProjectionMad:
    case DepthKind::kProjectionIqr: {
      ASSIGN_OR_RETURN(out.value,
                       ProjectionDepth(x, data, dirs, ScaleOf(kind)));
      break;
    }
  }
  return out;
}

absl::StatusOr<std::vector<double>> DepthVector(
    const Dataset& data, const DirectionSet& dirs, DepthKind kind,
    const SimplicialOptions& options) {
  const size_t n = data.n();
  std::vector<double> out(n);
  switch (kind) {
    case DepthKind::kHalfspace:
    case DepthKind::kIrw: {
      ASSIGN_OR_RETURN(ProjectionTable t, ProjectionTable::Build(data, dirs));
      for (size_t i = 0; i < n; ++i) {
        out[i] = kind == DepthKind::kHalfspace ? t.Halfspace(data.row(i))
                                               : t.Irw(data.row(i));
      }
      return out;
    }
    case DepthKind::kSimplicial: {
      RETURN_IF_ERROR(CheckSimplicial(data, options));
      std::vector<uint64_t> hits(n, 0);
      uint64_t total = 0;
      ForEachSimplex(data, options,
                     [&](const std::vector<std::span<const double>>& v) {
                       ++total;
                       for (size_t i = 0; i < n; ++i) {
                         if (InSimplex(v, data.row(i))) ++hits[i];
                       }
                     });
      for (size_t i = 0; i < n; ++i) {
        out[i] = static_cast<double>(hits[i]) / static_cast<double>(total);
      }
      return out;
    }
    case DepthKind::kProjectionMad:
    case DepthKind::kProjectionIqr:
      break;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "depth vectors are defined for halfspace, irw and simplicial depth, "
      "not ", KindName(kind)));
}

}  // namespace depthguard
