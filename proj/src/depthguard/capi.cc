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

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "depthguard/dataset.h"
#include "depthguard/depth.h"
#include "depthguard/depthguard.h"
#include "depthguard/estimators.h"
#include "depthguard/experiments.h"
#include "depthguard/ledger.h"
#include "depthguard/mechanisms.h"
#include "depthguard/oracle.h"
#include "depthguard/rank_test.h"
#include "depthguard/report_json.h"
#include "depthguard/sensitivity.h"

struct dg_dataset {
  depthguard::Dataset data;
};
struct dg_directions {
  depthguard::DirectionSet dirs;
};
struct dg_grid {
  depthguard::CandidateGrid grid;
};
struct dg_prior {
  depthguard::Prior prior;
};
struct dg_ledger {
  std::optional<std::string> path;
  depthguard::BudgetLedger ledger;
};
struct dg_report {
  depthguard::PrivateDepthReport report;
  std::optional<depthguard::RankTestReport> rank_test;
};

namespace {

using namespace depthguard;  // NOLINT

thread_local std::string last_error;

dg_status Fail(dg_status code, std::string message) {
  last_error = std::move(message);
  return code;
}

dg_status FromStatus(const absl::Status& s) {
  if (s.ok()) {
    last_error.clear();
    return DG_OK;
  }
  dg_status code = DG_INTERNAL;
  switch (s.code()) {
    case absl::StatusCode::kInvalidArgument:
      code = DG_INVALID_ARGUMENT;
      break;
    case absl::StatusCode::kDataLoss:
      code = DG_DATA_ERROR;
      break;
    case absl::StatusCode::kNotFound:
      code = DG_NOT_FOUND;
      break;
    case absl::StatusCode::kFailedPrecondition:
      code = DG_FAILED_PRECONDITION;
      break;
    case absl::StatusCode::kOutOfRange:
      code = DG_OUT_OF_RANGE;
      break;
    case absl::StatusCode::kResourceExhausted:
      code = DG_RESOURCE_EXHAUSTED;
      break;
    case absl::StatusCode::kUnavailable:
      code = DG_IO_ERROR;
      break;
    default:
      break;
  }
  return Fail(code, std::string(s.message()));
}

#define DG_REQUIRE(cond, what)                                 \
  do {                                                         \
    if (!(cond)) return Fail(DG_INVALID_ARGUMENT, (what));     \
  } while (0)

#define DG_TRY(expr)                                 \
  do {                                               \
    ::absl::Status dg_s_ = (expr);                   \
    if (!dg_s_.ok()) return FromStatus(dg_s_);       \
  } while (0)

absl::StatusOr<DepthKind> ToKind(dg_kind k) {
  switch (k) {
    case DG_HALFSPACE:
      return DepthKind::kHalfspace;
    case DG_IRW:
      return DepthKind::kIrw;
    case DG_SIMPLICIAL:
      return DepthKind::kSimplicial;
    case DG_PROJECTION_MAD:
      return DepthKind::kProjectionMad;
    case DG_PROJECTION_IQR:
      return DepthKind::kProjectionIqr;
  }
  return absl::InvalidArgumentError("unknown depth kind");
}

absl::StatusOr<ScaleKind> ToScale(dg_kind k) {
  if (k == DG_PROJECTION_MAD) return ScaleKind::kMad;
  if (k == DG_PROJECTION_IQR) return ScaleKind::kIqr;
  return absl::InvalidArgumentError(
      "a projection kind (MAD or IQR scale) is required");
}

absl::StatusOr<PrivacyParams> ToParams(const dg_privacy* p) {
  if (p == nullptr) return absl::InvalidArgumentError("privacy is NULL");
  PrivacyParams params;
  params.epsilon = p->epsilon;
  params.delta = p->delta;
  if (p->variant == DG_LAPLACE) {
    params.variant = NoiseVariant::kLaplace;
  } else if (p->variant == DG_GAUSSIAN) {
    params.variant = NoiseVariant::kGaussian;
  } else {
    return absl::InvalidArgumentError("unknown noise variant");
  }
  absl::Status s = params.Validate();
  if (!s.ok()) return s;
  return params;
}

SimplicialOptions ToSimplicial(const dg_simplicial_options* o) {
  SimplicialOptions s;
  if (o != nullptr && o->monte_carlo) {
    s.mode = SimplicialOptions::Mode::kMonteCarlo;
    s.samples = o->samples;
    s.seed = o->seed;
  }
  return s;
}

dg_run_options DefaultRun() {
  dg_run_options o;
  o.seed = 0;
  o.ledger = nullptr;
  o.budget_epsilon = 0.0;
  o.budget_delta = -1.0;
  o.tie_robust = 0;
  o.simplicial = nullptr;
  return o;
}

// Refuses to run a mechanism whose advertised spend would overrun the cap.
dg_status CheckBudget(const dg_run_options& o, const PrivacySpend& spend) {
  if (o.budget_epsilon <= 0.0 || o.ledger == nullptr) return DG_OK;
  PrivacySpend cap{o.budget_epsilon,
                   o.budget_delta < 0.0
                       ? std::numeric_limits<double>::infinity()
                       : o.budget_delta};
  if (o.ledger->ledger.WouldExceed(spend, cap)) {
    const PrivacySpend t = o.ledger->ledger.BasicTotal();
    return Fail(DG_BUDGET_EXCEEDED,
                "spend (" + std::to_string(spend.epsilon) + ", " +
                    std::to_string(spend.delta) + ") on top of (" +
                    std::to_string(t.epsilon) + ", " +
                    std::to_string(t.delta) + ") exceeds the budget cap");
  }
  return DG_OK;
}

dg_status Finish(absl::StatusOr<PrivateDepthReport> r,
                 const dg_run_options& o, dg_report** out) {
  if (!r.ok()) return FromStatus(r.status());
  auto handle = std::make_unique<dg_report>();
  handle->report = *std::move(r);
  if (o.ledger != nullptr) {
    o.ledger->ledger.Append(handle->report.ledger_entry);
    if (o.ledger->path) {
      DG_TRY(BudgetLedger::AppendToFile(*o.ledger->path,
                                        handle->report.ledger_entry));
    }
  }
  *out = handle.release();
  last_error.clear();
  return DG_OK;
}

EstimatorOptions ToEstimatorOptions(const dg_run_options& o) {
  EstimatorOptions e;
  e.simplicial = ToSimplicial(o.simplicial);
  e.vector_bound = o.tie_robust ? VectorBound::kTieRobust
                                : VectorBound::kGeneralPosition;
  return e;
}

char* CopyString(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* dg_last_error(void) { return last_error.c_str(); }

const char* dg_version(void) { return "0.1.0"; }

void dg_string_free(char* s) { std::free(s); }

dg_status dg_dataset_from_values(const double* values, size_t n, size_t d,
                                 dg_dataset** out) {
  DG_REQUIRE(values != nullptr && out != nullptr, "NULL argument");
  auto data = Dataset::FromFlat(std::vector<double>(values, values + n * d),
                                d);
  if (!data.ok()) return FromStatus(data.status());
  *out = new dg_dataset{*std::move(data)};
  return DG_OK;
}

dg_status dg_dataset_load_csv(const char* path, int skip_header,
                              dg_dataset** out) {
  DG_REQUIRE(path != nullptr && out != nullptr, "NULL argument");
  auto data = LoadCsv(path, CsvOptions{skip_header != 0});
  if (!data.ok()) return FromStatus(data.status());
  *out = new dg_dataset{*std::move(data)};
  return DG_OK;
}

size_t dg_dataset_n(const dg_dataset* data) {
  return data == nullptr ? 0 : data->data.n();
}

size_t dg_dataset_d(const dg_dataset* data) {
  return data == nullptr ? 0 : data->data.d();
}

void dg_dataset_free(dg_dataset* data) { delete data; }

dg_status dg_directions_sample(size_t m, size_t d, uint64_t seed,
                               dg_directions** out) {
  DG_REQUIRE(out != nullptr, "NULL argument");
  auto dirs = SampleDirections(m, d, seed);
  if (!dirs.ok()) return FromStatus(dirs.status());
  *out = new dg_directions{*std::move(dirs)};
  return DG_OK;
}

dg_status dg_directions_from_values(const double* values, size_t m, size_t d,
                                    dg_directions** out) {
  DG_REQUIRE(values != nullptr && out != nullptr, "NULL argument");
  std::vector<Direction> list;
  for (size_t j = 0; j < m; ++j) {
    auto u = Direction::Normalized(
        std::vector<double>(values + j * d, values + (j + 1) * d));
    if (!u.ok()) return FromStatus(u.status());
    list.push_back(*std::move(u));
  }
  auto dirs = DirectionSet::FromDirections(std::move(list));
  if (!dirs.ok()) return FromStatus(dirs.status());
  *out = new dg_directions{*std::move(dirs)};
  return DG_OK;
}

size_t dg_directions_m(const dg_directions* dirs) {
  return dirs == nullptr ? 0 : dirs->dirs.m();
}

void dg_directions_free(dg_directions* dirs) { delete dirs; }

dg_status dg_depth(dg_kind kind, const double* x, const dg_dataset* data,
                   const dg_directions* dirs,
                   const dg_simplicial_options* simplicial, double* out) {
  DG_REQUIRE(x && data && dirs && out, "NULL argument");
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  auto v = Depth(*k, std::span<const double>(x, data->data.d()), data->data,
                 dirs->dirs, ToSimplicial(simplicial));
  if (!v.ok()) return FromStatus(v.status());
  *out = v->value;
  return DG_OK;
}

dg_status dg_depth_vector(dg_kind kind, const dg_dataset* data,
                          const dg_directions* dirs,
                          const dg_simplicial_options* simplicial,
                          double* out) {
  DG_REQUIRE(data && dirs && out, "NULL argument");
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  auto v = DepthVector(data->data, dirs->dirs, *k, ToSimplicial(simplicial));
  if (!v.ok()) return FromStatus(v.status());
  std::copy(v->begin(), v->end(), out);
  return DG_OK;
}

dg_status dg_outlyingness(dg_kind kind, const double* x,
                          const dg_dataset* data, const dg_directions* dirs,
                          double* out) {
  DG_REQUIRE(x && data && dirs && out, "NULL argument");
  auto s = ToScale(kind);
  if (!s.ok()) return FromStatus(s.status());
  auto v = Outlyingness(std::span<const double>(x, data->data.d()),
                        data->data, dirs->dirs, *s);
  if (!v.ok()) return FromStatus(v.status());
  *out = *v;
  return DG_OK;
}

dg_status dg_global_sensitivity(dg_kind kind, size_t n, size_t d,
                                double* out) {
  DG_REQUIRE(out != nullptr, "NULL argument");
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  auto b = GlobalSensitivity(*k, n, d);
  if (!b.ok()) return FromStatus(b.status());
  *out = b->value;
  return DG_OK;
}

dg_status dg_vector_global_sensitivity(dg_kind kind, size_t n, size_t d,
                                       int norm, int tie_robust, double* out) {
  DG_REQUIRE(out != nullptr, "NULL argument");
  DG_REQUIRE(norm == 1 || norm == 2, "norm must be 1 or 2");
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  auto b = VectorGlobalSensitivity(
      *k, n, d, norm == 1 ? Norm::kL1 : Norm::kL2,
      tie_robust ? VectorBound::kTieRobust : VectorBound::kGeneralPosition);
  if (!b.ok()) return FromStatus(b.status());
  *out = b->value;
  return DG_OK;
}

dg_status dg_breakdown_holds(dg_kind kind, const double* x,
                             const dg_dataset* data,
                             const dg_directions* dirs, double eta,
                             double k_star, int* out) {
  DG_REQUIRE(x && data && dirs && out, "NULL argument");
  auto s = ToScale(kind);
  if (!s.ok()) return FromStatus(s.status());
  auto h = BreakdownHolds(std::span<const double>(x, data->data.d()),
                          data->data, dirs->dirs, eta, k_star, *s);
  if (!h.ok()) return FromStatus(h.status());
  *out = *h ? 1 : 0;
  return DG_OK;
}

dg_status dg_grid_regular(const double* lo, const double* hi,
                          const size_t* counts, size_t d, dg_grid** out) {
  DG_REQUIRE(lo && hi && counts && out, "NULL argument");
  auto g = CandidateGrid::Regular(std::vector<double>(lo, lo + d),
                                  std::vector<double>(hi, hi + d),
                                  std::vector<size_t>(counts, counts + d));
  if (!g.ok()) return FromStatus(g.status());
  *out = new dg_grid{*std::move(g)};
  return DG_OK;
}

dg_status dg_grid_from_points(const double* values, size_t count, size_t d,
                              dg_grid** out) {
  DG_REQUIRE(values && out, "NULL argument");
  std::vector<std::vector<double>> pts;
  for (size_t i = 0; i < count; ++i) {
    pts.emplace_back(values + i * d, values + (i + 1) * d);
  }
  auto g = CandidateGrid::FromPoints(pts);
  if (!g.ok()) return FromStatus(g.status());
  *out = new dg_grid{*std::move(g)};
  return DG_OK;
}

size_t dg_grid_size(const dg_grid* grid) {
  return grid == nullptr ? 0 : grid->grid.size();
}

size_t dg_grid_count_inside(const dg_grid* grid, double radius) {
  if (grid == nullptr) return 0;
  size_t count = 0;
  for (size_t i = 0; i < grid->grid.size(); ++i) {
    double r2 = 0.0;
    for (double c : grid->grid.point(i)) r2 += c * c;
    if (std::sqrt(r2) <= radius) ++count;
  }
  return count;
}

void dg_grid_free(dg_grid* grid) { delete grid; }

dg_status dg_prior_uniform(dg_prior** out) {
  DG_REQUIRE(out != nullptr, "NULL argument");
  *out = new dg_prior{Prior::Uniform()};
  return DG_OK;
}

dg_status dg_prior_gaussian(const double* center, size_t d, double scale,
                            dg_prior** out) {
  DG_REQUIRE(center && out, "NULL argument");
  auto p = Prior::Gaussian(std::vector<double>(center, center + d), scale);
  if (!p.ok()) return FromStatus(p.status());
  *out = new dg_prior{*std::move(p)};
  return DG_OK;
}

dg_status dg_prior_table(const double* weights, size_t count,
                         dg_prior** out) {
  DG_REQUIRE(weights && out, "NULL argument");
  auto p = Prior::Table(std::vector<double>(weights, weights + count));
  if (!p.ok()) return FromStatus(p.status());
  *out = new dg_prior{*std::move(p)};
  return DG_OK;
}

void dg_prior_free(dg_prior* prior) { delete prior; }

dg_status dg_ledger_open(const char* path, dg_ledger** out) {
  DG_REQUIRE(out != nullptr, "NULL argument");
  auto l = std::make_unique<dg_ledger>();
  if (path != nullptr) {
    auto loaded = BudgetLedger::Load(path);
    if (!loaded.ok()) return FromStatus(loaded.status());
    l->ledger = *loaded;
    l->path = path;
  }
  *out = l.release();
  return DG_OK;
}

size_t dg_ledger_size(const dg_ledger* ledger) {
  return ledger == nullptr ? 0 : ledger->ledger.size();
}

void dg_ledger_total(const dg_ledger* ledger, double* epsilon,
                     double* delta) {
  PrivacySpend t;
  if (ledger != nullptr) t = ledger->ledger.BasicTotal();
  if (epsilon) *epsilon = t.epsilon;
  if (delta) *delta = t.delta;
}

void dg_ledger_free(dg_ledger* ledger) { delete ledger; }

dg_status dg_advanced_composition(double epsilon, double delta_prime,
                                  size_t k, double* per_mechanism) {
  DG_REQUIRE(per_mechanism != nullptr, "NULL argument");
  auto a = AdvancedCompositionBudget(epsilon, delta_prime, k);
  if (!a.ok()) return FromStatus(a.status());
  *per_mechanism = a->per_mechanism_epsilon;
  return DG_OK;
}

dg_status dg_private_depth_point(dg_kind kind, const double* x,
                                 const dg_dataset* data,
                                 const dg_directions* dirs,
                                 const dg_privacy* privacy,
                                 const dg_run_options* options,
                                 dg_report** out) {
  DG_REQUIRE(x && data && dirs && out, "NULL argument");
  const dg_run_options o = options ? *options : DefaultRun();
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  auto params = ToParams(privacy);
  if (!params.ok()) return FromStatus(params.status());
  const PrivacySpend spend = params->variant == NoiseVariant::kLaplace
                                 ? LaplaceSpend(params->epsilon)
                                 : GaussianSpend(params->epsilon,
                                                 params->delta);
  if (dg_status s = CheckBudget(o, spend); s != DG_OK) return s;
  SeededRandom rng(o.seed);
  return Finish(PrivateDepthPoint(std::span<const double>(x, data->data.d()),
                                  data->data, *k, dirs->dirs, *params, rng,
                                  ToEstimatorOptions(o)),
                o, out);
}

dg_status dg_private_depth_vector(dg_kind kind, const dg_dataset* data,
                                  const dg_directions* dirs,
                                  const dg_privacy* privacy,
                                  const dg_run_options* options,
                                  dg_report** out) {
  DG_REQUIRE(data && dirs && out, "NULL argument");
  const dg_run_options o = options ? *options : DefaultRun();
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  auto params = ToParams(privacy);
  if (!params.ok()) return FromStatus(params.status());
  const PrivacySpend spend = params->variant == NoiseVariant::kLaplace
                                 ? LaplaceSpend(params->epsilon)
                                 : GaussianSpend(params->epsilon,
                                                 params->delta);
  if (dg_status s = CheckBudget(o, spend); s != DG_OK) return s;
  SeededRandom rng(o.seed);
  return Finish(PrivateDepthVector(data->data, *k, dirs->dirs, *params, rng,
                                   ToEstimatorOptions(o)),
                o, out);
}

dg_status dg_private_projection_depth(dg_kind kind, const double* x,
                                      const dg_dataset* data,
                                      const dg_directions* dirs, double eta,
                                      const dg_privacy* privacy,
                                      const dg_run_options* options,
                                      dg_report** out) {
  DG_REQUIRE(x && data && dirs && out, "NULL argument");
  const dg_run_options o = options ? *options : DefaultRun();
  auto scale = ToScale(kind);
  if (!scale.ok()) return FromStatus(scale.status());
  auto params = ToParams(privacy);
  if (!params.ok()) return FromStatus(params.status());
  if (dg_status s = CheckBudget(o, PtrSpend(*params)); s != DG_OK) return s;
  if (!(eta > 0.0)) eta = DefaultEta(data->data.n());
  SeededRandom rng(o.seed);
  return Finish(
      PrivateProjectionDepth(std::span<const double>(x, data->data.d()),
                             data->data, *scale, dirs->dirs, eta, *params,
                             rng, ToEstimatorOptions(o)),
      o, out);
}

dg_status dg_private_median_exp(dg_kind kind, const dg_dataset* data,
                                const dg_grid* grid, const dg_prior* prior,
                                const dg_directions* dirs, double epsilon,
                                const dg_run_options* options,
                                dg_report** out) {
  DG_REQUIRE(data && grid && prior && dirs && out, "NULL argument");
  const dg_run_options o = options ? *options : DefaultRun();
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  DG_REQUIRE(epsilon > 0.0 && std::isfinite(epsilon),
             "epsilon must be positive and finite");
  if (dg_status s = CheckBudget(o, LaplaceSpend(epsilon)); s != DG_OK) {
    return s;
  }
  SeededRandom rng(o.seed);
  return Finish(PrivateDepthMedianExp(data->data, *k, grid->grid,
                                      prior->prior, dirs->dirs, epsilon, rng,
                                      ToEstimatorOptions(o)),
                o, out);
}

dg_status dg_private_projection_median(dg_kind kind, const dg_dataset* data,
                                       const dg_directions* dirs,
                                       double radius, const dg_grid* grid,
                                       double eta, const dg_privacy* privacy,
                                       const dg_run_options* options,
                                       dg_report** out) {
  DG_REQUIRE(data && dirs && grid && out, "NULL argument");
  const dg_run_options o = options ? *options : DefaultRun();
  auto scale = ToScale(kind);
  if (!scale.ok()) return FromStatus(scale.status());
  auto params = ToParams(privacy);
  if (!params.ok()) return FromStatus(params.status());
  auto trunc = TruncatedOutlyingnessSpec::Create(radius, *scale, dirs->dirs);
  if (!trunc.ok()) return FromStatus(trunc.status());
  if (dg_status s = CheckBudget(o, PtrExponentialSpend(*params)); s != DG_OK) {
    return s;
  }
  if (!(eta > 0.0)) eta = DefaultEta(data->data.n());
  SeededRandom rng(o.seed);
  return Finish(PrivateProjectionMedianPtr(data->data, *trunc, grid->grid,
                                           eta, *params, rng,
                                           ToEstimatorOptions(o)),
                o, out);
}

dg_status dg_private_rank_test(dg_kind kind, const dg_dataset* group_a,
                               const dg_dataset* group_b,
                               const dg_directions* dirs,
                               const dg_privacy* privacy,
                               const dg_run_options* options,
                               dg_report** out) {
  DG_REQUIRE(group_a && group_b && dirs && out, "NULL argument");
  const dg_run_options o = options ? *options : DefaultRun();
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  auto params = ToParams(privacy);
  if (!params.ok()) return FromStatus(params.status());
  const PrivacySpend spend = params->variant == NoiseVariant::kLaplace
                                 ? LaplaceSpend(params->epsilon)
                                 : GaussianSpend(params->epsilon,
                                                 params->delta);
  if (dg_status s = CheckBudget(o, spend); s != DG_OK) return s;
  SeededRandom rng(o.seed);
  auto r = PrivateRankSumScaleTest(group_a->data, group_b->data, *k,
                                   dirs->dirs, *params, rng,
                                   ToEstimatorOptions(o));
  if (!r.ok()) return FromStatus(r.status());
  dg_report* handle = nullptr;
  if (dg_status s = Finish(r->depths, o, &handle); s != DG_OK) return s;
  handle->rank_test = *std::move(r);
  *out = handle;
  return DG_OK;
}

int dg_report_is_bottom(const dg_report* report) {
  return report != nullptr && report->report.bottom() ? 1 : 0;
}

size_t dg_report_payload_size(const dg_report* report) {
  if (report == nullptr || report->report.bottom()) return 0;
  return report->report.raw->size();
}

size_t dg_report_payload(const dg_report* report, double* out,
                         size_t capacity) {
  const size_t n = std::min(dg_report_payload_size(report), capacity);
  if (n > 0 && out != nullptr) {
    std::copy(report->report.raw->begin(), report->report.raw->begin() + n,
              out);
  }
  return n;
}

void dg_report_spend(const dg_report* report, double* epsilon,
                     double* delta) {
  if (report == nullptr) return;
  if (epsilon) *epsilon = report->report.spend.epsilon;
  if (delta) *delta = report->report.spend.delta;
}

double dg_report_p_value(const dg_report* report) {
  if (report == nullptr || !report->rank_test) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return report->rank_test->test.p_value;
}

dg_status dg_report_to_json(const dg_report* report, int include_unsafe_audit,
                            char** out) {
  DG_REQUIRE(report && out, "NULL argument");
  ReportJsonOptions o;
  o.include_unsafe_audit = include_unsafe_audit != 0;
  const std::string s = report->rank_test
                            ? RankTestToJson(*report->rank_test, o)
                            : ReportToJson(report->report, o);
  *out = CopyString(s);
  if (*out == nullptr) return Fail(DG_INTERNAL, "out of memory");
  return DG_OK;
}

void dg_report_free(dg_report* report) { delete report; }

dg_status dg_audit_depth_point(dg_kind kind, const double* x,
                               const dg_dataset* data,
                               const dg_directions* dirs, double epsilon,
                               size_t samples, double noise_factor,
                               uint64_t seed, double* max_log_ratio) {
  DG_REQUIRE(x && data && dirs && max_log_ratio, "NULL argument");
  DG_REQUIRE(epsilon > 0.0 && std::isfinite(epsilon),
             "epsilon must be positive and finite");
  DG_REQUIRE(noise_factor > 0.0, "noise factor must be positive");
  auto k = ToKind(kind);
  if (!k.ok()) return FromStatus(k.status());
  const Dataset& ds = data->data;
  auto gs = GlobalSensitivity(*k, ds.n(), ds.d());
  if (!gs.ok()) return FromStatus(gs.status());
  if (IsProjectionKind(*k)) {
    return Fail(DG_INVALID_ARGUMENT,
                "the Laplace depth-point audit does not apply to projection "
                "depth");
  }
  const std::span<const double> point(x, ds.d());
  auto d0 = Depth(*k, point, ds, dirs->dirs);
  if (!d0.ok()) return FromStatus(d0.status());
  double reach = 1.0;
  for (double v : ds.values()) reach = std::max(reach, std::abs(v));
  const std::vector<double> far(ds.d(), 10.0 * reach);
  const double b = noise_factor * gs->value / epsilon;
  std::vector<AuditPair> pairs;
  for (size_t p = 0; p < std::min<size_t>(10, ds.n()); ++p) {
    auto d1 = Depth(*k, point, ds.WithRow(p, far), dirs->dirs);
    if (!d1.ok()) return FromStatus(d1.status());
    const double v0 = d0->value, v1 = d1->value;
    pairs.push_back(
        {[=](NoiseSource& r) -> std::optional<double> {
           return v0 + b * r.Laplace();
         },
         [=](NoiseSource& r) -> std::optional<double> {
           return v1 + b * r.Laplace();
         }});
  }
  auto a = DpRatioAudit(pairs, samples, 50, seed);
  if (!a.ok()) return FromStatus(a.status());
  *max_log_ratio = a->max_log_ratio;
  return DG_OK;
}

dg_status dg_experiment_run(const char* name,
                            const dg_experiment_config* config, char** csv) {
  DG_REQUIRE(name && csv, "NULL argument");
  ExperimentConfig c;
  c.name = name;
  if (config != nullptr) {
    if (config->n_grid != nullptr) {
      c.n_grid.assign(config->n_grid, config->n_grid + config->n_grid_size);
    }
    c.epsilon = config->epsilon;
    c.delta = config->delta;
    c.reps = config->reps;
    c.directions = config->directions;
    c.samples = config->samples;
    c.seed = config->seed;
  }
  auto rows = RunExperiment(c);
  if (!rows.ok()) return FromStatus(rows.status());
  *csv = CopyString(RowsToCsv(*rows));
  if (*csv == nullptr) return Fail(DG_INTERNAL, "out of memory");
  return DG_OK;
}

int dg_experiment_known(const char* name) {
  if (name == nullptr) return 0;
  for (const std::string& n : ExperimentNames()) {
    if (n == name) return 1;
  }
  return 0;
}

}  // extern "C"
