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

#include "depthguard/univariate.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"

namespace depthguard {

size_t QuantileIndex(size_t n, double p) {
  const double np = static_cast<double>(n) * p;
  double j = std::ceil(np - 1e-9 * std::max(1.0, np));
  if (j < 1.0) j = 1.0;
  if (j > static_cast<double>(n)) j = static_cast<double>(n);
  return static_cast<size_t>(j);
}

std::vector<double> SortedCopy(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::stable_sort(v.begin(), v.end());
  return v;
}

double SortedQuantile(std::span<const double> sorted, double p) {
  return sorted[QuantileIndex(sorted.size(), p) - 1];
}

double SortedMedian(std::span<const double> sorted) {
  const size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double SortedMad(std::span<const double> sorted, double median) {
  std::vector<double> dev(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) {
    dev[i] = std::abs(sorted[i] - median);
  }
  std::sort(dev.begin(), dev.end());
  return SortedMedian(dev);
}

double SortedIqr(std::span<const double> sorted) {
  return SortedQuantile(sorted, 0.75) - SortedQuantile(sorted, 0.25);
}

absl::StatusOr<double> EmpiricalQuantile(std::span<const double> values,
                                         double p) {
  if (values.empty()) return absl::InvalidArgumentError("empty sample");
  if (!(p > 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError("quantile level must lie in (0, 1]");
  }
  return SortedQuantile(SortedCopy(values), p);
}

absl::StatusOr<double> SampleMedian(std::span<const double> values) {
  if (values.empty()) return absl::InvalidArgumentError("empty sample");
  return SortedMedian(SortedCopy(values));
}

absl::StatusOr<double> SampleMad(std::span<const double> values) {
  if (values.empty()) return absl::InvalidArgumentError("empty sample");
  std::vector<double> s = SortedCopy(values);
  return SortedMad(s, SortedMedian(s));
}

absl::StatusOr<double> SampleIqr(std::span<const double> values) {
  if (values.empty()) return absl::InvalidArgumentError("empty sample");
  return SortedIqr(SortedCopy(values));
}

}  // namespace depthguard
