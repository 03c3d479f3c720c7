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

#ifndef DEPTHGUARD_MECHANISMS_H_
#define DEPTHGUARD_MECHANISMS_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "depthguard/dataset.h"
#include "depthguard/random.h"
#include "depthguard/sensitivity.h"

namespace depthguard {

// Metadata describing how an outcome was produced. PTR fields condition on
// the raw data and are marked non-releasable.
struct MechanismAudit {
  std::string mechanism;
  NoiseVariant variant = NoiseVariant::kLaplace;
  double noise_scale = 0.0;
  bool releasable = true;

  // PTR only.
  double threshold = 0.0;       // 1 + b / epsilon
  double test_noise = 0.0;      // a * V1 / epsilon
  double k_star = 0.0;          // 1 + (b - a * V1) / epsilon
  double breakdown_bound = 0.0; // lower bound on A_eta used in the test
  bool test_passed = false;

  // Exponential mechanisms only.
  size_t grid_size = 0;
  size_t selected_index = 0;
};

struct MechanismOutcome {
  // std::nullopt encodes the bottom symbol.
  std::optional<std::vector<double>> payload;
  MechanismAudit audit;

  bool bottom() const { return !payload.has_value(); }
};

struct PrivacySpend {
  double epsilon = 0.0;
  double delta = 0.0;
};

absl::StatusOr<MechanismOutcome> LaplaceMechanism(
    std::span<const double> values, const SensitivityBound& gs1,
    double epsilon, NoiseSource& rng);

// sqrt(2 log(1.25 / delta)) * gs2 / epsilon.
double GaussianNoiseScale(double gs2, double epsilon, double delta);

absl::StatusOr<MechanismOutcome> GaussianMechanism(
    std::span<const double> values, const SensitivityBound& gs2,
    double epsilon, double delta, NoiseSource& rng);

// Finite support for the exponential mechanisms. Every factory takes only
// configuration, so a grid never depends on a Dataset.
class CandidateGrid {
 public:
  // Product grid with counts[c] equally spaced values on [lo[c], hi[c]].
  static absl::StatusOr<CandidateGrid> Regular(std::vector<double> lo,
                                               std::vector<double> hi,
                                               std::vector<size_t> counts);
  static absl::StatusOr<CandidateGrid> FromPoints(
      const std::vector<std::vector<double>>& points);

  size_t size() const { return n_; }
  size_t d() const { return d_; }
  std::span<const double> point(size_t i) const {
    return {points_.data() + i * d_, d_};
  }
  bool data_independent() const { return data_independent_; }
  // Human-readable construction record, e.g. "regular [-2,2]x[-2,2] 21x21".
  const std::string& spec() const { return spec_; }
  // Largest spacing between adjacent values along any axis; 0 for explicit
  // point lists.
  double resolution() const { return resolution_; }

 private:
  std::vector<double> points_;
  size_t n_ = 0, d_ = 0;
  bool data_independent_ = true;
  std::string spec_;
  double resolution_ = 0.0;
};

class Prior {
 public:
  static Prior Uniform();
  // Isotropic Gaussian density (unnormalized) around `center`.
  static absl::StatusOr<Prior> Gaussian(std::vector<double> center,
                                        double scale);
  static absl::StatusOr<Prior> Table(std::vector<double> weights);

  // Weights aligned with the grid; all >= 0 with a positive sum.
  absl::StatusOr<std::vector<double>> Weights(const CandidateGrid& grid) const;
  std::string spec() const;

 private:
  enum class Kind { kUniform, kGaussian, kTable };
  Kind kind_ = Kind::kUniform;
  std::vector<double> center_;
  double scale_ = 1.0;
  std::vector<double> table_;
};

// Selection probabilities proportional to
// prior_i * exp(epsilon * u_i / (divisor * gs)), divisor = 2 unless the
// normalizer is asserted data-independent. Utilities of -infinity get zero
// weight.
absl::StatusOr<std::vector<double>> ExponentialProbabilities(
    std::span<const double> utilities, double gs, double epsilon,
    std::span<const double> prior_weights,
    bool normalizer_data_independent = false);

// Inverse-CDF categorical draw using one uniform.
size_t SampleCategorical(std::span<const double> probabilities,
                         NoiseSource& rng);

absl::StatusOr<MechanismOutcome> ExponentialMechanismDiscrete(
    const CandidateGrid& grid, std::span<const double> utilities,
    const SensitivityBound& gs_u, double epsilon, const Prior& prior,
    bool normalizer_data_independent, NoiseSource& rng);

struct PtrConstants {
  double a = 1.0;
  double b = 0.0;
};

// Laplace: a = 1, b = log(2 / delta).
// Gaussian: a = sqrt(2 log(1.25 / delta)), b = 2 log(1.25 / delta).
absl::StatusOr<PtrConstants> PtrConstantsFor(NoiseVariant variant,
                                             double delta);

// Returns a lower bound on the truncated breakdown point A_eta, given the
// realized k* of the test. Returning anything > k* passes the test.
using BreakdownFn = std::function<double(double k_star)>;

absl::StatusOr<MechanismOutcome> Ptr(const BreakdownFn& breakdown,
                                     double statistic, double eta,
                                     const PrivacyParams& params,
                                     NoiseSource& rng);

using CostFn = std::function<double(std::span<const double> v)>;

// Runs the PTR test on the cost function's breakdown point; on a pass,
// samples a grid point with probability proportional to
// exp(-cost * epsilon / (2 eta)).
absl::StatusOr<MechanismOutcome> PtrExponential(const BreakdownFn& breakdown,
                                                const CostFn& cost,
                                                const CandidateGrid& grid,
                                                double eta,
                                                const PrivacyParams& params,
                                                NoiseSource& rng);

PrivacySpend LaplaceSpend(double epsilon);
PrivacySpend GaussianSpend(double epsilon, double delta);
// (2e, d) for Laplace, (2e, 2 exp(e) d + d^2) for Gaussian.
PrivacySpend PtrSpend(const PrivacyParams& params);
// (2e, d) for Laplace, (2e, 2d) for Gaussian.
PrivacySpend PtrExponentialSpend(const PrivacyParams& params);

}  // namespace depthguard

#endif  // DEPTHGUARD_MECHANISMS_H_
