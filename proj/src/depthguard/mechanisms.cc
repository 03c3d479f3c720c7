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

#include "depthguard/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "depthguard/status_macros.h"

namespace depthguard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || std::isinf(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  return absl::OkStatus();
}

absl::Status CheckSensitivity(const SensitivityBound& gs) {
  if (!std::isfinite(gs.value) || gs.value < 0.0) {
    return absl::InvalidArgumentError(
        "global sensitivity must be finite and nonnegative");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<MechanismOutcome> LaplaceMechanism(
    std::span<const double> values, const SensitivityBound& gs1,
    double epsilon, NoiseSource& rng) {
  RETURN_IF_ERROR(CheckEpsilon(epsilon));
  RETURN_IF_ERROR(CheckSensitivity(gs1));
  MechanismOutcome out;
  out.audit.mechanism = "laplace";
  out.audit.variant = NoiseVariant::kLaplace;
  out.audit.noise_scale = gs1.value / epsilon;
  std::vector<double> released(values.begin(), values.end());
  for (double& v : released) v += out.audit.noise_scale * rng.Laplace();
  out.payload = std::move(released);
  return out;
}

double GaussianNoiseScale(double gs2, double epsilon, double delta) {
  return std::sqrt(2.0 * std::log(1.25 / delta)) * gs2 / epsilon;
}

absl::StatusOr<MechanismOutcome> GaussianMechanism(
    std::span<const double> values, const SensitivityBound& gs2,
    double epsilon, double delta, NoiseSource& rng) {
  RETURN_IF_ERROR(CheckEpsilon(epsilon));
  RETURN_IF_ERROR(CheckSensitivity(gs2));
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        "the Gaussian mechanism needs 0 < delta < 1");
  }
  MechanismOutcome out;
  out.audit.mechanism = "gaussian";
  out.audit.variant = NoiseVariant::kGaussian;
  out.audit.noise_scale = GaussianNoiseScale(gs2.value, epsilon, delta);
  std::vector<double> released(values.begin(), values.end());
  for (double& v : released) v += out.audit.noise_scale * rng.Gaussian();
  out.payload = std::move(released);
  return out;
}

absl::StatusOr<CandidateGrid> CandidateGrid::Regular(
    std::vector<double> lo, std::vector<double> hi,
    std::vector<size_t> counts) {
  const size_t d = lo.size();
  if (d == 0 || hi.size() != d || counts.size() != d) {
    return absl::InvalidArgumentError(
        "grid bounds and counts must have the same nonzero dimension");
  }
  double total = 1.0;
  for (size_t c = 0; c < d; ++c) {
    if (!std::isfinite(lo[c]) || !std::isfinite(hi[c]) || lo[c] > hi[c]) {
      return absl::InvalidArgumentError(
          absl::StrCat("grid axis ", c, " needs finite bounds lo <= hi"));
    }
    if (counts[c] == 0) {
      return absl::InvalidArgumentError("grid counts must be positive");
    }
    if (counts[c] == 1 && lo[c] != hi[c]) {
      return absl::InvalidArgumentError(
          "a grid axis with one value needs lo == hi");
    }
    total *= static_cast<double>(counts[c]);
  }
  if (total > 1e7) {
    return absl::ResourceExhaustedError("grid has more than 1e7 points");
  }
  CandidateGrid g;
  g.d_ = d;
  g.n_ = static_cast<size_t>(total);
  g.points_.resize(g.n_ * d);
  std::vector<std::string> axes, sizes;
  for (size_t c = 0; c < d; ++c) {
    const double step =
        counts[c] > 1 ? (hi[c] - lo[c]) / static_cast<double>(counts[c] - 1)
                      : 0.0;
    g.resolution_ = std::max(g.resolution_, step);
    axes.push_back(absl::StrCat("[", lo[c], ",", hi[c], "]"));
    sizes.push_back(absl::StrCat(counts[c]));
  }
  // Last axis varies fastest.
  for (size_t i = 0; i < g.n_; ++i) {
    size_t rem = i;
    for (size_t c = d; c-- > 0;) {
      const size_t idx = rem % counts[c];
      rem /= counts[c];
      double v = lo[c];
      if (counts[c] > 1) {
        // The upper half counts down from hi so that a symmetric interval
        // gives an exactly mirrored grid.
        const size_t last = counts[c] - 1;
        const double span = hi[c] - lo[c];
        v = 2 * idx <= last
                ? lo[c] + span * static_cast<double>(idx) /
                              static_cast<double>(last)
                : hi[c] - span * static_cast<double>(last - idx) /
                              static_cast<double>(last);
      }
      g.points_[i * d + c] = v;
    }
  }
  g.spec_ = absl::StrCat("regular ", absl::StrJoin(axes, "x"), " ",
                         absl::StrJoin(sizes, "x"));
  return g;
}

absl::StatusOr<CandidateGrid> CandidateGrid::FromPoints(
    const std::vector<std::vector<double>>& points) {
  if (points.empty()) return absl::InvalidArgumentError("empty grid");
  CandidateGrid g;
  g.d_ = points[0].size();
  if (g.d_ == 0) return absl::InvalidArgumentError("zero-dimensional grid");
  g.n_ = points.size();
  for (const auto& p : points) {
    if (p.size() != g.d_) {
      return absl::InvalidArgumentError("grid points differ in dimension");
    }
    for (double v : p) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError("grid points must be finite");
      }
    }
    g.points_.insert(g.points_.end(), p.begin(), p.end());
  }
  g.spec_ = absl::StrCat("explicit ", g.n_, " points");
  return g;
}

Prior Prior::Uniform() { return Prior(); }

absl::StatusOr<Prior> Prior::Gaussian(std::vector<double> center,
                                      double scale) {
  if (!(scale > 0.0) || std::isinf(scale)) {
    return absl::InvalidArgumentError("prior scale must be positive");
  }
  Prior p;
  p.kind_ = Kind::kGaussian;
  p.center_ = std::move(center);
  p.scale_ = scale;
  return p;
}

absl::StatusOr<Prior> Prior::Table(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || std::isinf(w)) {
      return absl::InvalidArgumentError(
          "prior weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    return absl::InvalidArgumentError("prior weights must have positive sum");
  }
  Prior p;
  p.kind_ = Kind::kTable;
  p.table_ = std::move(weights);
  return p;
}

absl::StatusOr<std::vector<double>> Prior::Weights(
    const CandidateGrid& grid) const {
  std::vector<double> w(grid.size(), 1.0);
  switch (kind_) {
    case Kind::kUniform:
      break;
    case Kind::kGaussian: {
      if (center_.size() != grid.d()) {
        return absl::InvalidArgumentError(
            "prior center dimension does not match the grid");
      }
      for (size_t i = 0; i < grid.size(); ++i) {
        double r2 = 0.0;
        auto v = grid.point(i);
        for (size_t c = 0; c < grid.d(); ++c) {
          const double z = (v[c] - center_[c]) / scale_;
          r2 += z * z;
        }
        w[i] = std::exp(-0.5 * r2);
      }
      break;
    }
    case Kind::kTable:
      if (table_.size() != grid.size()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "prior table has ", table_.size(), " weights for a grid of ",
            grid.size(), " points"));
      }
      w = table_;
      break;
  }
  double sum = 0.0;
  for (double x : w) sum += x;
  if (!(sum > 0.0)) {
    return absl::InvalidArgumentError("prior puts no mass on the grid");
  }
  return w;
}

std::string Prior::spec() const {
  switch (kind_) {
    case Kind::kUniform:
      return "uniform";
    case Kind::kGaussian:
      return absl::StrCat("gaussian center=(", absl::StrJoin(center_, ","),
                          ") scale=", scale_);
    case Kind::kTable:
      return absl::StrCat("table ", table_.size(), " weights");
  }
  return "unknown";
}

absl::StatusOr<std::vector<double>> ExponentialProbabilities(
    std::span<const double> utilities, double gs, double epsilon,
    std::span<const double> prior_weights, bool normalizer_data_independent) {
  RETURN_IF_ERROR(CheckEpsilon(epsilon));
  if (!(gs > 0.0) || std::isinf(gs)) {
    return absl::InvalidArgumentError(
        "utility sensitivity must be positive and finite");
  }
  if (utilities.empty() || utilities.size() != prior_weights.size()) {
    return absl::InvalidArgumentError(
        "utilities and prior weights must be nonempty and aligned");
  }
  const double divisor = normalizer_data_independent ? 1.0 : 2.0;
  const double scale = epsilon / (divisor * gs);
  double top = -kInf;
  for (size_t i = 0; i < utilities.size(); ++i) {
    if (std::isnan(utilities[i]) || utilities[i] == kInf) {
      return absl::InvalidArgumentError("utilities must be < +infinity");
    }
    if (prior_weights[i] > 0.0) top = std::max(top, utilities[i]);
  }
  if (top == -kInf) {
    return absl::FailedPreconditionError(
        "all exponential-mechanism weights are zero");
  }
  std::vector<double> p(utilities.size(), 0.0);
  double sum = 0.0;
  for (size_t i = 0; i < utilities.size(); ++i) {
    if (prior_weights[i] > 0.0 && utilities[i] > -kInf) {
      p[i] = prior_weights[i] * std::exp(scale * (utilities[i] - top));
    }
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

size_t SampleCategorical(std::span<const double> probabilities,
                         NoiseSource& rng) {
  const double u = rng.Uniform();
  double acc = 0.0;
  size_t last = 0;
  for (size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    acc += probabilities[i];
    last = i;
    if (u < acc) return i;
  }
  // Rounding left acc slightly below 1.
  return last;
}

absl::StatusOr<MechanismOutcome> ExponentialMechanismDiscrete(
    const CandidateGrid& grid, std::span<const double> utilities,
    const SensitivityBound& gs_u, double epsilon, const Prior& prior,
    bool normalizer_data_independent, NoiseSource& rng) {
  if (grid.size() == 0) return absl::InvalidArgumentError("empty grid");
  if (utilities.size() != grid.size()) {
    return absl::InvalidArgumentError("utilities are not aligned with grid");
  }
  ASSIGN_OR_RETURN(std::vector<double> w, prior.Weights(grid));
  ASSIGN_OR_RETURN(std::vector<double> p,
                   ExponentialProbabilities(utilities, gs_u.value, epsilon, w,
                                            normalizer_data_independent));
  MechanismOutcome out;
  out.audit.mechanism = "exponential";
  out.audit.noise_scale =
      (normalizer_data_independent ? 1.0 : 2.0) * gs_u.value / epsilon;
  out.audit.grid_size = grid.size();
  out.audit.selected_index = SampleCategorical(p, rng);
  auto v = grid.point(out.audit.selected_index);
  out.payload = std::vector<double>(v.begin(), v.end());
  return out;
}

absl::StatusOr<PtrConstants> PtrConstantsFor(NoiseVariant variant,
                                             double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("PTR needs 0 < delta < 1");
  }
  if (variant == NoiseVariant::kLaplace) {
    return PtrConstants{1.0, std::log(2.0 / delta)};
  }
  const double l = std::log(1.25 / delta);
  return PtrConstants{std::sqrt(2.0 * l), 2.0 * l};
}

namespace {

struct PtrTest {
  PtrConstants c;
  MechanismAudit audit;
};

absl::StatusOr<PtrTest> RunPtrTest(const BreakdownFn& breakdown, double eta,
                                   const PrivacyParams& params,
                                   NoiseSource& rng) {
  RETURN_IF_ERROR(params.Validate());
  if (!(eta > 0.0)) return absl::InvalidArgumentError("eta must be positive");
  PtrTest t;
  ASSIGN_OR_RETURN(t.c, PtrConstantsFor(params.variant, params.delta));
  const double eps = params.epsilon;
  const double v1 = params.variant == NoiseVariant::kLaplace ? rng.Laplace()
                                                             : rng.Gaussian();
  MechanismAudit& a = t.audit;
  a.variant = params.variant;
  a.releasable = false;
  a.threshold = 1.0 + t.c.b / eps;
  a.test_noise = t.c.a * v1 / eps;
  a.k_star = 1.0 + (t.c.b - t.c.a * v1) / eps;
  a.breakdown_bound = breakdown(a.k_star);
  a.test_passed = a.breakdown_bound + a.test_noise > a.threshold;
  return t;
}

}  // namespace

absl::StatusOr<MechanismOutcome> Ptr(const BreakdownFn& breakdown,
                                     double statistic, double eta,
                                     const PrivacyParams& params,
                                     NoiseSource& rng) {
  ASSIGN_OR_RETURN(PtrTest t, RunPtrTest(breakdown, eta, params, rng));
  MechanismOutcome out;
  out.audit = t.audit;
  out.audit.mechanism = "ptr";
  out.audit.noise_scale = eta * t.c.a / params.epsilon;
  if (!out.audit.test_passed) return out;
  const double v2 = params.variant == NoiseVariant::kLaplace ? rng.Laplace()
                                                             : rng.Gaussian();
  out.payload = std::vector<double>{statistic + out.audit.noise_scale * v2};
  return out;
}

absl::StatusOr<MechanismOutcome> PtrExponential(const BreakdownFn& breakdown,
                                                const CostFn& cost,
                                                const CandidateGrid& grid,
                                                double eta,
                                                const PrivacyParams& params,
                                                NoiseSource& rng) {
  if (grid.size() == 0) return absl::InvalidArgumentError("empty grid");
  ASSIGN_OR_RETURN(PtrTest t, RunPtrTest(breakdown, eta, params, rng));
  MechanismOutcome out;
  out.audit = t.audit;
  out.audit.mechanism = "ptr-exponential";
  out.audit.noise_scale = 2.0 * eta / params.epsilon;
  out.audit.grid_size = grid.size();
  if (!out.audit.test_passed) return out;
  std::vector<double> c(grid.size());
  double best = kInf;
  for (size_t i = 0; i < grid.size(); ++i) {
    c[i] = cost(grid.point(i));
    if (std::isnan(c[i])) return absl::InternalError("cost returned NaN");
    best = std::min(best, c[i]);
  }
  if (best == kInf) {
    return absl::FailedPreconditionError(
        "cost is +infinity on every grid point; no candidate can be drawn");
  }
  const double scale = params.epsilon / (2.0 * eta);
  std::vector<double> p(grid.size());
  double sum = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    p[i] = c[i] == kInf ? 0.0 : std::exp(-scale * (c[i] - best));
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  out.audit.selected_index = SampleCategorical(p, rng);
  auto v = grid.point(out.audit.selected_index);
  out.payload = std::vector<double>(v.begin(), v.end());
  return out;
}

PrivacySpend LaplaceSpend(double epsilon) { return {epsilon, 0.0}; }

PrivacySpend GaussianSpend(double epsilon, double delta) {
  return {epsilon, delta};
}

PrivacySpend PtrSpend(const PrivacyParams& params) {
  const double e = params.epsilon, d = params.delta;
  if (params.variant == NoiseVariant::kLaplace) return {2.0 * e, d};
  return {2.0 * e, 2.0 * std::exp(e) * d + d * d};
}

PrivacySpend PtrExponentialSpend(const PrivacyParams& params) {
  const double e = params.epsilon, d = params.delta;
  if (params.variant == NoiseVariant::kLaplace) return {2.0 * e, d};
  return {2.0 * e, 2.0 * d};
}

}  // namespace depthguard
