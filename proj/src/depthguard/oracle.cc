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

#include "depthguard/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "depthguard/status_macros.h"

namespace depthguard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Combinations(size_t n, size_t k) {
  double r = 1.0;
  for (size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

double Distance(const std::vector<double>& a, const std::vector<double>& b,
                Norm norm) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double t = StatisticDistance(a[i], b[i]);
    switch (norm) {
      case Norm::kL1:
        acc += t;
        break;
      case Norm::kL2:
        acc += t * t;
        break;
      case Norm::kSup:
        acc = std::max(acc, t);
        break;
    }
  }
  return norm == Norm::kL2 ? std::sqrt(acc) : acc;
}

}  // namespace

ReplacementPool ReplacementPool::Standard(
    const Dataset& data, double extreme,
    const std::vector<std::vector<double>>& extra) {
  const size_t d = data.d();
  std::set<std::vector<double>> seen;
  ReplacementPool pool;
  auto add = [&](std::vector<double> p) {
    if (seen.insert(p).second) pool.points.push_back(std::move(p));
  };
  std::vector<double> lo(d, kInf), hi(d, -kInf);
  for (size_t i = 0; i < data.n(); ++i) {
    auto r = data.row(i);
    for (size_t c = 0; c < d; ++c) {
      lo[c] = std::min(lo[c], r[c]);
      hi[c] = std::max(hi[c], r[c]);
    }
    add(std::vector<double>(r.begin(), r.end()));
  }
  for (size_t c = 0; c < d; ++c) {
    for (double s : {-extreme, extreme}) {
      std::vector<double> p(d, 0.0);
      p[c] = s;
      add(std::move(p));
    }
  }
  for (size_t mask = 0; mask < (size_t{1} << d); ++mask) {
    std::vector<double> p(d);
    for (size_t c = 0; c < d; ++c) {
      p[c] = (mask >> c) & 1 ? hi[c] + 1.0 : lo[c] - 1.0;
    }
    add(std::move(p));
  }
  for (const auto& p : extra) add(p);
  return pool;
}

double StatisticDistance(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b);
}

absl::StatusOr<double> BruteForceSensitivity(const VectorStatistic& stat,
                                             const Dataset& data,
                                             const ReplacementPool& pool,
                                             Norm norm,
                                             double max_evaluations) {
  const double evaluations =
      static_cast<double>(data.n()) * static_cast<double>(pool.points.size());
  if (evaluations > max_evaluations) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "brute-force sensitivity needs ", evaluations,
        " evaluations, above the guard of ", max_evaluations));
  }
  const std::vector<double> base = stat(data);
  double worst = 0.0;
  for (size_t i = 0; i < data.n(); ++i) {
    for (const auto& p : pool.points) {
      if (p.size() != data.d()) {
        return absl::InvalidArgumentError("pool point dimension mismatch");
      }
      const std::vector<double> moved = stat(data.WithRow(i, p));
      if (moved.size() != base.size()) {
        return absl::InternalError("statistic changed output length");
      }
      worst = std::max(worst, Distance(base, moved, norm));
    }
  }
  return worst;
}

absl::StatusOr<double> BruteForceSensitivity(const ScalarStatistic& stat,
                                             const Dataset& data,
                                             const ReplacementPool& pool,
                                             double max_evaluations) {
  VectorStatistic wrapped = [&](const Dataset& ds) {
    return std::vector<double>{stat(ds)};
  };
  return BruteForceSensitivity(wrapped, data, pool, Norm::kL1,
                               max_evaluations);
}

absl::StatusOr<std::optional<int>> BruteForceAEta(
    const ScalarStatistic& stat, const Dataset& data, double eta,
    const ReplacementPool& pool, int k_max, double max_evaluations) {
  if (!(eta > 0.0)) return absl::InvalidArgumentError("eta must be positive");
  if (k_max < 1) return absl::InvalidArgumentError("k_max must be >= 1");
  const size_t n = data.n();
  const size_t q = pool.points.size();
  double evaluations = 0.0;
  for (int k = 1; k <= k_max && static_cast<size_t>(k) <= n; ++k) {
    evaluations += Combinations(n, k) * std::pow(static_cast<double>(q), k);
  }
  if (evaluations > max_evaluations) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "brute-force A_eta needs ", evaluations,
        " evaluations, above the guard of ", max_evaluations));
  }
  if (q == 0) return std::optional<int>();
  const double base = stat(data);
  const size_t d = data.d();
  for (int k = 1; k <= k_max && static_cast<size_t>(k) <= n; ++k) {
    std::vector<size_t> rows(k);
    for (int a = 0; a < k; ++a) rows[a] = a;
    while (true) {
      std::vector<size_t> choice(k, 0);
      while (true) {
        std::vector<double> values(data.values().begin(),
                                   data.values().end());
        for (int a = 0; a < k; ++a) {
          const auto& p = pool.points[choice[a]];
          std::copy(p.begin(), p.end(), values.begin() + rows[a] * d);
        }
        auto moved = Dataset::FromFlat(std::move(values), d);
        if (!moved.ok()) return moved.status();
        if (StatisticDistance(base, stat(*moved)) > eta) {
          return std::optional<int>(k);
        }
        int a = k - 1;
        while (a >= 0 && ++choice[a] == q) choice[a--] = 0;
        if (a < 0) break;
      }
      // Next row subset.
      int a = k - 1;
      while (a >= 0 && rows[a] == n - k + a) --a;
      if (a < 0) break;
      ++rows[a];
      for (int b = a + 1; b < k; ++b) rows[b] = rows[b - 1] + 1;
    }
  }
  return std::optional<int>();
}

absl::StatusOr<double> ExactHalfspace2d(std::span<const double> x,
                                        const Dataset& data) {
  if (data.d() != 2 || x.size() != 2) {
    return absl::InvalidArgumentError("exact halfspace depth needs d = 2");
  }
  const size_t n = data.n();
  size_t at_x = 0;
  std::vector<double> angle;
  std::vector<std::pair<double, double>> offsets;
  for (size_t i = 0; i < n; ++i) {
    const double dx = data.row(i)[0] - x[0];
    const double dy = data.row(i)[1] - x[1];
    if (dx == 0.0 && dy == 0.0) {
      ++at_x;
      continue;
    }
    offsets.emplace_back(dx, dy);
    // The count of {(X_i - x)^T u <= 0} changes where u is orthogonal to
    // X_i - x.
    const double t = std::atan2(dy, dx);
    for (double c : {t + std::numbers::pi / 2, t - std::numbers::pi / 2}) {
      double a = std::fmod(c, 2 * std::numbers::pi);
      if (a < 0) a += 2 * std::numbers::pi;
      angle.push_back(a);
    }
  }
  if (offsets.empty()) return 1.0;
  std::sort(angle.begin(), angle.end());
  size_t best = n;
  for (size_t j = 0; j < angle.size(); ++j) {
    const double next =
        j + 1 < angle.size() ? angle[j + 1] : angle[0] + 2 * std::numbers::pi;
    if (next - angle[j] <= 0.0) continue;
    const double mid = 0.5 * (angle[j] + next);
    const double ux = std::cos(mid), uy = std::sin(mid);
    size_t count = at_x;
    for (const auto& [dx, dy] : offsets) {
      if (dx * ux + dy * uy <= 0.0) ++count;
    }
    best = std::min(best, count);
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

absl::StatusOr<AuditResult> DpRatioAudit(const std::vector<AuditPair>& pairs,
                                         size_t samples, size_t bins,
                                         uint64_t seed) {
  if (samples == 0) return absl::InvalidArgumentError("zero samples");
  if (bins < 2) return absl::InvalidArgumentError("need at least 2 bins");
  if (pairs.empty()) return absl::InvalidArgumentError("no adjacent pairs");
  AuditResult result;
  for (size_t p = 0; p < pairs.size(); ++p) {
    std::vector<double> draws[2];
    size_t bottoms[2] = {0, 0};
    for (int side = 0; side < 2; ++side) {
      SeededRandom rng(
          DeriveSeed(seed, absl::StrCat("audit/pair", p, "/side", side)));
      const ScalarSampler& f = side == 0 ? pairs[p].first : pairs[p].second;
      draws[side].reserve(samples);
      for (size_t s = 0; s < samples; ++s) {
        std::optional<double> v = f(rng);
        if (v.has_value()) {
          draws[side].push_back(*v);
        } else {
          ++bottoms[side];
        }
      }
    }
    std::vector<double> pooled(draws[0]);
    pooled.insert(pooled.end(), draws[1].begin(), draws[1].end());
    std::sort(pooled.begin(), pooled.end());
    std::vector<double> edges;
    for (size_t b = 1; b < bins && !pooled.empty(); ++b) {
      edges.push_back(pooled[b * pooled.size() / bins]);
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    const size_t nbins = edges.size() + 1;
    std::vector<double> counts[2];
    for (int side = 0; side < 2; ++side) {
      counts[side].assign(nbins + 1, 0.0);
      for (double v : draws[side]) {
        const size_t b =
            std::upper_bound(edges.begin(), edges.end(), v) - edges.begin();
        counts[side][b] += 1.0;
      }
      counts[side][nbins] = static_cast<double>(bottoms[side]);
    }
    for (size_t b = 0; b <= nbins; ++b) {
      const double r =
          std::abs(std::log((counts[0][b] + 0.5) / (counts[1][b] + 0.5)));
      if (r > result.max_log_ratio) {
        result.max_log_ratio = r;
        result.worst_pair = p;
        result.worst_bin = b;
      }
    }
  }
  return result;
}

}  // namespace depthguard
