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

#ifndef DEPTHGUARD_DATASET_H_
#define DEPTHGUARD_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace depthguard {

// An n x d sample. Each row is one individual, which is the unit of privacy.
// Immutable after construction.
class Dataset {
 public:
  // Requires n >= 1, d >= 1 and all values finite.
  static absl::StatusOr<Dataset> FromRows(
      const std::vector<std::vector<double>>& rows);
  // Row-major values; values.size() must be a positive multiple of d.
  static absl::StatusOr<Dataset> FromFlat(std::vector<double> values,
                                          size_t d);

  size_t n() const { return n_; }
  size_t d() const { return d_; }
  std::span<const double> row(size_t i) const {
    return {values_.data() + i * d_, d_};
  }
  std::span<const double> values() const { return values_; }

  // Copy with row i replaced by `point` (adjacent dataset).
  Dataset WithRow(size_t i, std::span<const double> point) const;

  // Row-wise union, this dataset's rows first. Dimensions must agree.
  absl::StatusOr<Dataset> Concat(const Dataset& other) const;

 private:
  Dataset(std::vector<double> values, size_t n, size_t d)
      : values_(std::move(values)), n_(n), d_(d) {}

  std::vector<double> values_;
  size_t n_;
  size_t d_;
};

struct CsvOptions {
  bool skip_header = false;
};

// Reads a comma separated numeric file with '.' decimal points. Empty lines
// are ignored. Malformed content is reported as kDataLoss naming the row.
absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                CsvOptions options = {});
absl::StatusOr<Dataset> ParseCsv(const std::string& text,
                                 CsvOptions options = {});

// A unit vector in R^d.
class Direction {
 public:
  // Normalizes `u`; fails on the zero vector or non-finite input.
  static absl::StatusOr<Direction> Normalized(std::vector<double> u);

  std::span<const double> u() const { return u_; }
  size_t d() const { return u_.size(); }

 private:
  explicit Direction(std::vector<double> u) : u_(std::move(u)) {}
  std::vector<double> u_;
};

// m data-independent unit vectors. Construction never reads a Dataset.
class DirectionSet {
 public:
  const std::vector<Direction>& directions() const { return directions_; }
  size_t m() const { return directions_.size(); }
  size_t d() const { return d_; }
  uint64_t seed() const { return seed_; }
  const Direction& operator[](size_t j) const { return directions_[j]; }

  static absl::StatusOr<DirectionSet> FromDirections(
      std::vector<Direction> directions, uint64_t seed = 0);

 private:
  friend absl::StatusOr<DirectionSet> SampleDirections(size_t, size_t,
                                                       uint64_t);
  DirectionSet(std::vector<Direction> directions, size_t d, uint64_t seed)
      : directions_(std::move(directions)), d_(d), seed_(seed) {}

  std::vector<Direction> directions_;
  size_t d_;
  uint64_t seed_;
};

// m i.i.d. uniform directions on the unit sphere (normalized Gaussian
// vectors). For d = 1 the sphere is {+1, -1} and exactly those two are
// returned regardless of m.
absl::StatusOr<DirectionSet> SampleDirections(size_t m, size_t d,
                                              uint64_t seed);

// The univariate sample X^T u.
struct ProjectedSample {
  std::vector<double> values;
  std::vector<double> direction;
};

absl::StatusOr<ProjectedSample> Project(const Dataset& data,
                                        const Direction& u);

// Dot product with a fixed summation order, shared by every projection so
// that a query point equal to a data row projects identically.
inline double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

enum class NoiseVariant { kLaplace, kGaussian };

std::string VariantName(NoiseVariant variant);

// (epsilon, delta) budget of a single release.
struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 0.0;
  NoiseVariant variant = NoiseVariant::kLaplace;

  // epsilon > 0, delta >= 0, and delta > 0 for the Gaussian variant.
  absl::Status Validate() const;
};

}  // namespace depthguard

#endif  // DEPTHGUARD_DATASET_H_
