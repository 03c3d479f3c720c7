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

#ifndef DEPTHGUARD_LEDGER_H_
#define DEPTHGUARD_LEDGER_H_

#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "depthguard/mechanisms.h"

namespace depthguard {

struct LedgerEntry {
  std::string mechanism;
  double epsilon = 0.0;
  double delta = 0.0;
  std::string timestamp;  // UTC, ISO 8601
  std::string variant;
};

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string UtcTimestamp();

std::string LedgerEntryToJson(const LedgerEntry& entry);
absl::StatusOr<LedgerEntry> LedgerEntryFromJson(const std::string& line);

PrivacySpend BasicComposition(const std::vector<PrivacySpend>& spends);

// Per-mechanism epsilon_i = epsilon / (2 sqrt(2 k log(1 / delta_prime)));
// k mechanisms that are each (epsilon_i, delta) compose to
// (epsilon, k delta + delta_prime).
struct AdvancedComposition {
  double per_mechanism_epsilon = 0.0;
  double total_epsilon = 0.0;
  double delta_prime = 0.0;
  size_t k = 0;

  double TotalDelta(double per_mechanism_delta) const {
    return static_cast<double>(k) * per_mechanism_delta + delta_prime;
  }
};

// Requires 0 < epsilon < 1, 0 < delta_prime < 1 and k >= 1.
absl::StatusOr<AdvancedComposition> AdvancedCompositionBudget(
    double epsilon, double delta_prime, size_t k);

// Append-only record of privacy spends. Appends are serialized internally.
class BudgetLedger {
 public:
  BudgetLedger() = default;
  BudgetLedger(const BudgetLedger& other);
  BudgetLedger& operator=(const BudgetLedger& other);

  // Reads newline-delimited JSON; a missing file is an empty ledger.
  static absl::StatusOr<BudgetLedger> Load(const std::string& path);

  void Append(LedgerEntry entry);
  std::vector<LedgerEntry> entries() const;
  size_t size() const;
  PrivacySpend BasicTotal() const;
  // True if adding `spend` would push either coordinate of the basic total
  // above `cap`.
  bool WouldExceed(const PrivacySpend& spend, const PrivacySpend& cap) const;

  // Appends one record to `path`, never rewriting earlier lines.
  static absl::Status AppendToFile(const std::string& path,
                                   const LedgerEntry& entry);

 private:
  mutable std::mutex mu_;
  std::vector<LedgerEntry> entries_;
};

}  // namespace depthguard

#endif  // DEPTHGUARD_LEDGER_H_
