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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Criteria that are known to be out of
// reach at the stated scale are still evaluated as written.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "depthguard/dataset.h"
#include "depthguard/depth.h"
#include "depthguard/estimators.h"
#include "depthguard/experiments.h"
#include "depthguard/ledger.h"
#include "depthguard/mechanisms.h"
#include "depthguard/oracle.h"
#include "depthguard/random.h"
#include "depthguard/rank_test.h"
#include "depthguard/sensitivity.h"
#include "depthguard/univariate.h"

namespace depthguard {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct AdvancedCase {
  double epsilon;
  double delta_prime;
  size_t k;
  double per_mechanism_epsilon;
};

constexpr AdvancedCase kAdvancedCases[] = {
#include "oracles/advanced_composition_cases.inc"
};

// Every multiset of size n drawn from `pool`, as datasets.
std::vector<Dataset> Multisets(const std::vector<std::vector<double>>& pool,
                               size_t n) {
  std::vector<Dataset> out;
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<std::vector<double>> rows;
    for (size_t i : idx) rows.push_back(pool[i]);
    out.push_back(*Dataset::FromRows(rows));
    int a = static_cast<int>(n) - 1;
    while (a >= 0 && idx[a] == pool.size() - 1) --a;
    if (a < 0) break;
    ++idx[a];
    for (size_t b = a + 1; b < n; ++b) idx[b] = idx[a];
  }
  return out;
}

const std::vector<std::vector<double>> kPool1 = {{0}, {1}, {2}, {3}, {4}};
const std::vector<std::vector<double>> kPool2 = {
    {0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 3}};

// Largest single-row change of `stat` over replacements from `pool`.
double MaxChange(const std::function<double(const Dataset&)>& stat,
                 const Dataset& data,
                 const std::vector<std::vector<double>>& pool) {
  return *BruteForceSensitivity(ScalarStatistic(stat), data,
                                ReplacementPool{pool});
}

Outcome SensitivityExactness() {
  const auto dirs2 = *SampleDirections(200, 2, 7);
  const auto dirs1 = *SampleDirections(2, 1, 0);
  double worst_ratio[3] = {0, 0, 0};  // max change * n / C(kind)
  bool equal_hd = false, equal_irw = false;
  size_t instances = 0;
  for (size_t d : {1, 2}) {
    const auto& pool = d == 1 ? kPool1 : kPool2;
    const auto& dirs = d == 1 ? dirs1 : dirs2;
    const std::vector<std::vector<double>> xs =
        d == 1 ? std::vector<std::vector<double>>{{2}, {1.5}, {0}, {5}}
               : std::vector<std::vector<double>>{
                     {0.5, 0.5}, {0, 0}, {1, 0.3}, {3, 3}};
    for (size_t n = 2; n <= 7; ++n) {
      for (const Dataset& data : Multisets(pool, n)) {
        for (const auto& x : xs) {
          ++instances;
          const double hd = MaxChange(
              [&](const Dataset& z) {
                return d == 2 ? *ExactHalfspace2d(x, z)
                              : *HalfspaceDepth(x, z, dirs);
              },
              data, pool);
          const double irw = MaxChange(
              [&](const Dataset& z) { return *IrwDepth(x, z, dirs); }, data,
              pool);
          // Simplicial depth needs at least d + 1 rows.
          const double smd =
              n > d ? MaxChange(
                          [&](const Dataset& z) {
                            return *SimplicialDepth(x, z);
                          },
                          data, pool)
                    : 0.0;
          const double dn = static_cast<double>(n);
          worst_ratio[0] = std::max(worst_ratio[0], hd * dn);
          worst_ratio[1] = std::max(worst_ratio[1], irw * dn);
          worst_ratio[2] =
              std::max(worst_ratio[2], smd * dn / static_cast<double>(d + 1));
          equal_hd |= std::abs(hd * dn - 1.0) < 1e-12;
          equal_irw |= std::abs(irw * dn - 1.0) < 1e-12;
        }
      }
    }
  }
  const double tol = 1e-12;
  const bool pass = worst_ratio[0] <= 1 + tol && worst_ratio[1] <= 1 + tol &&
                    worst_ratio[2] <= 1 + tol && equal_hd && equal_irw;
  return {pass,
          absl::StrFormat(
              "%d instances; max n*change: halfspace %.6g (equality %s), irw "
              "%.6g (equality %s); simplicial max n*change/(d+1) %.6g",
              instances, worst_ratio[0], equal_hd ? "yes" : "no",
              worst_ratio[1], equal_irw ? "yes" : "no", worst_ratio[2])};
}

// Halfspace depth of every sample point. Exact in d = 1 and d = 2.
std::vector<double> HalfspaceVector(const Dataset& z,
                                    const DirectionSet& dirs1) {
  if (z.d() == 1) return *DepthVector(z, dirs1, DepthKind::kHalfspace);
  std::vector<double> v(z.n());
  for (size_t i = 0; i < z.n(); ++i) v[i] = *ExactHalfspace2d(z.row(i), z);
  return v;
}

Outcome VectorSensitivity() {
  const auto dirs1 = *SampleDirections(2, 1, 0);
  double worst_excess = -kInf;  // max over instances of L1 change - bound
  double worst_tie_ratio = 0.0;
  double witness_n5 = 0.0;
  size_t violations = 0, instances = 0;
  for (size_t d : {1, 2}) {
    const auto& pool = d == 1 ? kPool1 : kPool2;
    for (size_t n = 2; n <= 7; ++n) {
      const double k = std::floor((n + 1) / 2.0) - 1.0;
      const double bound = 2.0 * k / static_cast<double>(n);
      for (const Dataset& data : Multisets(pool, n)) {
        ++instances;
        const double l1 = *BruteForceSensitivity(
            VectorStatistic(
                [&](const Dataset& z) { return HalfspaceVector(z, dirs1); }),
            data, ReplacementPool{pool}, Norm::kL1);
        worst_excess = std::max(worst_excess, l1 - bound);
        worst_tie_ratio = std::max(
            worst_tie_ratio, l1 / (2.0 * (n - 1.0) / static_cast<double>(n)));
        if (l1 > bound + 1e-12) ++violations;
        if (n == 5 && d == 1) witness_n5 = std::max(witness_n5, l1);
      }
    }
  }

  // Diagnostic: distinct data values and replacements off the data lattice.
  double gp_excess = -kInf, gp_n5 = 0.0;
  const std::vector<std::vector<double>> off = {
      {-1.5}, {0.5}, {2.5}, {4.5}, {9.5}};
  for (size_t n = 2; n <= 7; ++n) {
    const double bound =
        2.0 * (std::floor((n + 1) / 2.0) - 1.0) / static_cast<double>(n);
    std::vector<int> mask(8, 0);
    std::fill(mask.begin(), mask.begin() + n, 1);
    do {
      std::vector<std::vector<double>> rows;
      for (int v = 0; v < 8; ++v) {
        if (mask[v]) rows.push_back({static_cast<double>(v)});
      }
      const Dataset data = *Dataset::FromRows(rows);
      const double l1 = *BruteForceSensitivity(
          VectorStatistic(
              [&](const Dataset& z) { return HalfspaceVector(z, dirs1); }),
          data, ReplacementPool{off}, Norm::kL1);
      gp_excess = std::max(gp_excess, l1 - bound);
      if (n == 5) gp_n5 = std::max(gp_n5, l1);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }

  const bool pass = violations == 0 && std::abs(witness_n5 - 0.8) < 1e-12;
  return {pass,
          absl::StrFormat(
              "%d instances, %d above (2/n)(floor((n+1)/2)-1), worst excess "
              "%.6g, n=5 max %.6g; max L1 / (2(n-1)/n) = %.6g; "
              "general-position family: worst excess %.3g, n=5 max %.6g",
              instances, violations, worst_excess, witness_n5,
              worst_tie_ratio, gp_excess, gp_n5)};
}

std::map<std::string, std::vector<double>> Metrics(
    const std::vector<ExperimentRow>& rows, size_t n = 0) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& r : rows) {
    if (n == 0 || r.n == n) out[r.metric].push_back(r.value);
  }
  return out;
}

double Median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  return *SampleMedian(v);
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? std::nan("") : s / static_cast<double>(v.size());
}

absl::StatusOr<std::vector<ExperimentRow>> Run(ExperimentConfig c) {
  auto resolved = ResolveExperiment(std::move(c));
  if (!resolved.ok()) return resolved.status();
  return RunExperiment(*resolved);
}

Outcome DpRatio() {
  ExperimentConfig c;
  c.name = "audit";
  auto rows = Run(c);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  auto m = Metrics(*rows);
  const double main = m["max_log_ratio"].at(0);
  const double control = m["negative_control_max_log_ratio"].at(0);
  return {main <= 1.1 && control > 1.1,
          absl::StrFormat("max log-ratio %.4f (<= 1.1), halved-noise control "
                          "%.4f (> 1.1)",
                          main, control)};
}

Outcome ExponentialExactness() {
  const auto grid = *CandidateGrid::FromPoints({{0}, {1}, {2}, {3}, {4}});
  const std::vector<double> u = {0.1, 0.4, 0.5, 0.3, 0.2};
  const double eps = 2.0, gs = 0.1;
  // Closed form, computed here without the library.
  std::vector<double> w(5);
  double z = 0.0;
  for (size_t i = 0; i < 5; ++i) z += w[i] = std::exp(eps * u[i] / (2 * gs));
  for (double& x : w) x /= z;

  SeededRandom rng(11);
  std::vector<double> counts(5, 0.0);
  constexpr int kDraws = 100000;
  const SensitivityBound bound{gs, Norm::kSup, Scope::kPoint};
  for (int t = 0; t < kDraws; ++t) {
    auto o = ExponentialMechanismDiscrete(grid, u, bound, eps, Prior::Uniform(),
                                          false, rng);
    counts[o->audit.selected_index] += 1.0;
  }
  double tv = 0.0;
  for (size_t i = 0; i < 5; ++i) tv += std::abs(counts[i] / kDraws - w[i]);
  tv /= 2.0;

  // Mass on the argmax as the exponent scale doubles.
  bool monotone = true;
  double prev = 0.0;
  std::string trace;
  const std::vector<double> prior(5, 1.0);
  for (double s = 0.5; s <= 512.0; s *= 2.0) {
    auto p = ExponentialProbabilities(u, gs, s, prior);
    const double top = (*p)[2];
    monotone &= top >= prev;
    prev = top;
    absl::StrAppend(&trace, absl::StrFormat(" %.4g", top));
  }
  return {tv <= 0.01 && monotone,
          absl::StrFormat("TV %.5f (<= 0.01); argmax mass%s (monotone %s)", tv,
                          trace, monotone ? "yes" : "no")};
}

Outcome BreakdownSoundness() {
  size_t checked = 0, certified = 0, violations = 0, skipped = 0;
  const std::vector<double> etas = {0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> k_stars = {0.5, 1.0, 1.5, 2.0};
  const std::vector<double> xs = {-1.0, 0.5, 2.0, 2.5, 6.0};
  const auto dirs = *SampleDirections(2, 1, 0);
  const std::vector<std::vector<double>> extra = {
      {0.5}, {1.5}, {2.5}, {3.5}, {-1.0}, {6.0}};
  for (size_t n = 1; n <= 6; ++n) {
    for (const Dataset& data : Multisets(kPool1, n)) {
      const ReplacementPool pool = ReplacementPool::Standard(data, 1e6, extra);
      for (ScaleKind scale : {ScaleKind::kMad, ScaleKind::kIqr}) {
        for (double x : xs) {
          const std::vector<double> xv = {x};
          const ScalarStatistic stat = [&](const Dataset& z) {
            return *Outlyingness(xv, z, dirs, scale);
          };
          for (double k_star : k_stars) {
            for (double eta : etas) {
              ++checked;
              auto holds = BreakdownHolds(xv, data, dirs, eta, k_star, scale);
              if (!holds.ok()) {
                ++skipped;  // 2k >= n: no certificate is possible
                continue;
              }
              if (!*holds) continue;
              ++certified;
              const int k_max = static_cast<int>(std::ceil(k_star));
              auto a = BruteForceAEta(stat, data, eta, pool, k_max);
              if (!a.ok()) return {false, std::string(a.status().message())};
              if (a->has_value() && **a <= k_star) ++violations;
            }
          }
        }
      }
    }
  }
  return {violations == 0 && certified > 0,
          absl::StrFormat("%d queries, %d certified, %d without a certificate "
                          "(2k >= n), %d violations",
                          checked, certified, skipped, violations)};
}

Outcome Consistency() {
  ExperimentConfig c;
  c.name = "consistency";
  c.reps = 100;
  auto rows = Run(c);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  std::vector<double> med;
  std::string trace;
  for (size_t n : {200, 1000, 5000}) {
    med.push_back(Median(Metrics(*rows, n)["abs_error"]));
    absl::StrAppend(&trace, absl::StrFormat(" n=%d: %.4f", n, med.back()));
  }
  const bool pass = med[0] >= med[1] && med[1] >= med[2] && med[2] <= 0.05;
  return {pass, absl::StrCat("median |D - 0.5|", trace)};
}

Outcome PtrDepth() {
  ExperimentConfig c;
  c.name = "ptr-depth";
  c.reps = 100;
  auto rows = Run(c);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  auto m = Metrics(*rows);
  const double bottom = Mean(m["bottom"]);
  const double err = Median(m["abs_error"]);
  return {bottom <= 0.05 && err <= 0.1,
          absl::StrFormat("bottom rate %.3f (<= 0.05), median error %.4f "
                          "(<= 0.1), eta %.4f",
                          bottom, err, DefaultEta(2000))};
}

Outcome GridMedian() {
  // Standard Gaussian draws together with their mirror images, so the data
  // are exactly symmetric about 0. n * eps / 2 = 250 for halfspace depth.
  const size_t n = 500;
  const Dataset half = GaussianSample(n / 2, 1, 8);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < half.n(); ++i) {
    rows.push_back({half.row(i)[0]});
    rows.push_back({-half.row(i)[0]});
  }
  const Dataset data = *Dataset::FromRows(rows);
  const auto grid = *CandidateGrid::Regular({-2.0}, {2.0}, {41});
  const auto dirs = *SampleDirections(2, 1, 0);
  auto p = MedianExpProbabilities(data, DepthKind::kHalfspace, grid,
                                  Prior::Uniform(), dirs, 1.0);
  if (!p.ok()) return {false, std::string(p.status().message())};
  const size_t center = 20;
  bool symmetric = true;
  for (size_t i = 0; i < grid.size(); ++i) {
    symmetric &= (*p)[i] == (*p)[grid.size() - 1 - i];
  }
  const size_t argmax = static_cast<size_t>(
      std::max_element(p->begin(), p->end()) - p->begin());
  return {argmax == center && (*p)[center] >= 0.99 && symmetric,
          absl::StrFormat("P(argmax) %.6f (>= 0.99) at grid point %.2f; exact "
                          "mirror symmetry %s",
                          (*p)[argmax], grid.point(argmax)[0],
                          symmetric ? "yes" : "no")};
}

Outcome ProjectionMedian() {
  ExperimentConfig c;
  c.name = "median-ptr";
  c.reps = 100;
  auto rows = Run(c);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  auto m = Metrics(*rows);
  const double bottom = Mean(m["bottom"]);
  size_t close = 0;
  for (double v : m["distance"]) close += v <= 0.3 ? 1 : 0;
  return {close >= 90 && bottom <= 0.05,
          absl::StrFormat("within 0.3 of origin in %d/100 runs (>= 90), bottom "
                          "rate %.3f (<= 0.05), eta %.4f",
                          close, bottom, DefaultEta(2000))};
}

Outcome RankSum() {
  const auto dirs = *SampleDirections(100, 2, 5);
  PrivacyParams params{2.0, 0.0, NoiseVariant::kLaplace};

  // Zero noise: ranks equal the classical depth ranks.
  const Dataset a = GaussianSample(50, 2, 1);
  const Dataset b = GaussianSample(50, 2, 2, 3.0);
  ConstantNoise zero;
  auto r0 = PrivateRankSumScaleTest(a, b, DepthKind::kHalfspace, dirs, params,
                                    zero);
  if (!r0.ok()) return {false, std::string(r0.status().message())};
  const auto classical =
      CountingRanks(*DepthVector(*a.Concat(b), dirs, DepthKind::kHalfspace));
  const bool zero_path = r0->ranks == classical;

  // Identical groups: exact permutation mean of the statistic.
  bool mean_ok = true;
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Dataset g = GaussianSample(5, 2, 100 + seed);
    SeededRandom rng(seed);
    auto r = PrivateRankSumScaleTest(g, g, DepthKind::kHalfspace, dirs, params,
                                     rng);
    if (!r.ok()) return {false, std::string(r.status().message())};
    // Average of sum-of-ranks over all C(10, 5) group labellings.
    double total = 0.0, count = 0.0;
    for (int mask = 0; mask < (1 << 10); ++mask) {
      if (__builtin_popcount(mask) != 5) continue;
      double s = 0.0;
      for (int i = 0; i < 10; ++i) {
        if (mask & (1 << i)) s += r->ranks[i];
      }
      total += s;
      count += 1.0;
    }
    const double target = 5.0 * 11.0 / 2.0;
    worst = std::max({worst, std::abs(total / count - target),
                      std::abs(r->test.null_mean - target)});
  }
  mean_ok = worst <= 1e-9;

  ExperimentConfig c;
  c.name = "power";
  auto rows = Run(c);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  auto m = Metrics(*rows);
  const double power_private = Mean(m["reject_private"]);
  const double power_classic = Mean(m["reject_nonprivate"]);
  const bool pass = zero_path && mean_ok && power_private >= 0.5 &&
                    power_private <= power_classic;
  return {pass,
          absl::StrFormat(
              "zero-noise ranks match %s; permutation mean error %.3g; power "
              "private %.3f (>= 0.5), non-private %.3f (private <= "
              "non-private %s)",
              zero_path ? "yes" : "no", worst, power_private, power_classic,
              power_private <= power_classic ? "yes" : "no")};
}

Outcome Composition() {
  double worst = 0.0;
  for (const AdvancedCase& c : kAdvancedCases) {
    auto r = AdvancedCompositionBudget(c.epsilon, c.delta_prime, c.k);
    if (!r.ok()) return {false, std::string(r.status().message())};
    worst = std::max(
        worst, std::abs(r->per_mechanism_epsilon - c.per_mechanism_epsilon));
  }
  return {worst <= 1e-12,
          absl::StrFormat("%d triples, max abs error %.3g (<= 1e-12)",
                          std::size(kAdvancedCases), worst)};
}

}  // namespace
}  // namespace depthguard

int main() {
  using depthguard::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {
          {"sensitivity exactness", depthguard::SensitivityExactness},
          {"vector sensitivity", depthguard::VectorSensitivity},
          {"dp ratio audit", depthguard::DpRatio},
          {"exponential mechanism exactness",
           depthguard::ExponentialExactness},
          {"breakdown soundness", depthguard::BreakdownSoundness},
          {"pointwise depth consistency", depthguard::Consistency},
          {"ptr projection depth", depthguard::PtrDepth},
          {"exponential grid median", depthguard::GridMedian},
          {"ptr projection median", depthguard::ProjectionMedian},
          {"rank-sum scale test", depthguard::RankSum},
          {"advanced composition", depthguard::Composition},
      };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = criteria[i].second();
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
