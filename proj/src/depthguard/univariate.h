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

#ifndef DEPTHGUARD_UNIVARIATE_H_
#define DEPTHGUARD_UNIVARIATE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "depthguard/dataset.h"

namespace depthguard {

// Univariate summaries on ProjectedSample values. All F_n^{-1} uses follow
// the left-continuous (type-1) inverse; the median is the usual averaged
// sample median.

// 1-based order-statistic index of the type-1 quantile: ceil(n p), clamped
// to [1, n]. Tolerates representation error in n p.
size_t QuantileIndex(size_t n, double p);

// Smallest sorted value v with F_n(v) >= p. Requires 0 < p <= 1.
absl::StatusOr<double> EmpiricalQuantile(std::span<const double> values,
                                         double p);
absl::StatusOr<double> SampleMedian(std::span<const double> values);
absl::StatusOr<double> SampleMad(std::span<const double> values);
absl::StatusOr<double> SampleIqr(std::span<const double> values);

inline absl::StatusOr<double> EmpiricalQuantile(const ProjectedSample& s,
                                                double p) {
  return EmpiricalQuantile(s.values, p);
}
inline absl::StatusOr<double> SampleMedian(const ProjectedSample& s) {
  return SampleMedian(s.values);
}
inline absl::StatusOr<double> SampleMad(const ProjectedSample& s) {
  return SampleMad(s.values);
}
inline absl::StatusOr<double> SampleIqr(const ProjectedSample& s) {
  return SampleIqr(s.values);
}

// Unchecked helpers on ascending, non-empty input.
double SortedQuantile(std::span<const double> sorted, double p);
double SortedMedian(std::span<const double> sorted);
double SortedMad(std::span<const double> sorted, double median);
double SortedIqr(std::span<const double> sorted);

std::vector<double> SortedCopy(std::span<const double> values);

}  // namespace depthguard

#endif  // DEPTHGUARD_UNIVARIATE_H_
