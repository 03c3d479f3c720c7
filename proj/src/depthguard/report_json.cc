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

#include "depthguard/report_json.h"

#include <cmath>

#include "depthguard/sensitivity.h"
#include "json.hpp"

namespace depthguard {

namespace {

using nlohmann::json;

// JSON has no infinities; they are written as strings.
json Num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json NumArray(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(Num(x));
  return a;
}

json AuditJson(const MechanismAudit& a, bool include_unsafe) {
  if (!a.releasable && !include_unsafe) {
    return "redacted: conditions on the raw data (use --unsafe-audit)";
  }
  json j = {{"mechanism", a.mechanism},
            {"noise_scale", Num(a.noise_scale)},
            {"releasable", a.releasable}};
  if (a.mechanism == "ptr" || a.mechanism == "ptr-exponential") {
    j["variant"] = VariantName(a.variant);
    j["threshold"] = Num(a.threshold);
    j["test_noise"] = Num(a.test_noise);
    j["k_star"] = Num(a.k_star);
    j["breakdown_bound"] = Num(a.breakdown_bound);
    j["test_passed"] = a.test_passed;
  }
  if (a.grid_size > 0) j["grid_size"] = a.grid_size;
  return j;
}

json ReportObject(const PrivateDepthReport& r, const ReportJsonOptions& o) {
  json params = {{"epsilon", Num(r.params.epsilon)},
                 {"delta", Num(r.params.delta)},
                 {"variant", r.ledger_entry.variant}};
  if (r.eta > 0.0) params["eta"] = Num(r.eta);
  if (r.radius > 0.0) params["radius"] = Num(r.radius);
  json j = {{"schema", kReportSchemaVersion},
            {"estimator", r.estimator},
            {"kind", KindName(r.kind)},
            {"params", params}};
  if (!r.points.empty()) {
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back(NumArray(p));
    j["points"] = pts;
  }
  if (r.raw) {
    j["payload"] = NumArray(*r.raw);
  } else {
    j["payload"] = "bottom";
  }
  if (r.post_processed) {
    j["post_processed"] = {{"values", NumArray(*r.post_processed)},
                           {"rule", r.post_processing}};
  }
  json ledger = {{"mechanism", r.ledger_entry.mechanism},
                 {"epsilon", Num(r.ledger_entry.epsilon)},
                 {"delta", Num(r.ledger_entry.delta)},
                 {"variant", r.ledger_entry.variant}};
  if (o.include_timestamp) ledger["timestamp"] = r.ledger_entry.timestamp;
  j["ledger_entry"] = ledger;
  if (r.grid_spec) j["grid_spec"] = *r.grid_spec;
  j["audit"] = AuditJson(r.audit, o.include_unsafe_audit);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string ReportToJson(const PrivateDepthReport& report,
                         const ReportJsonOptions& options) {
  return ReportObject(report, options).dump(2);
}

std::string RankTestToJson(const RankTestReport& report,
                           const ReportJsonOptions& options) {
  json j = ReportObject(report.depths, options);
  j["estimator"] = "rank-sum-test";
  j["ranks"] = NumArray(report.ranks);
  j["test"] = {{"statistic", Num(report.test.statistic)},
               {"null_mean", Num(report.test.null_mean)},
               {"null_variance", Num(report.test.null_variance)},
               {"p_value", Num(report.test.p_value)},
               {"method", report.test.method},
               {"n1", report.test.n1},
               {"n2", report.test.n2}};
  return j.dump(2);
}

std::string DepthValuesToJson(DepthKind kind,
                              const std::vector<DepthValue>& values) {
  json pts = json::array();
  for (const DepthValue& v : values) {
    pts.push_back({{"point", NumArray(v.point)}, {"value", Num(v.value)}});
  }
  json j = {{"schema", kReportSchemaVersion},
            {"kind", KindName(kind)},
            {"depths", pts}};
  return j.dump(2);
}

std::string DepthVectorToJson(DepthKind kind,
                              const std::vector<double>& values) {
  json j = {{"schema", kReportSchemaVersion},
            {"kind", KindName(kind)},
            {"vector", NumArray(values)}};
  return j.dump(2);
}

}  // namespace depthguard
