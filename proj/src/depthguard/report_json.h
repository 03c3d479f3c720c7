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

#ifndef DEPTHGUARD_REPORT_JSON_H_
#define DEPTHGUARD_REPORT_JSON_H_

#include <string>
#include <vector>

#include "depthguard/depth.h"
#include "depthguard/estimators.h"
#include "depthguard/rank_test.h"

namespace depthguard {

inline constexpr int kReportSchemaVersion = 1;

struct ReportJsonOptions {
  // PTR audits condition on the raw data; they are redacted unless set.
  bool include_unsafe_audit = false;
  // The ledger file carries timestamps; reports omit them by default so
  // reruns with a fixed seed are byte-identical.
  bool include_timestamp = false;
};

std::string ReportToJson(const PrivateDepthReport& report,
                         const ReportJsonOptions& options = {});

std::string RankTestToJson(const RankTestReport& report,
                           const ReportJsonOptions& options = {});

std::string DepthValuesToJson(DepthKind kind,
                              const std::vector<DepthValue>& values);

std::string DepthVectorToJson(DepthKind kind,
                              const std::vector<double>& values);

}  // namespace depthguard

#endif  // DEPTHGUARD_REPORT_JSON_H_
