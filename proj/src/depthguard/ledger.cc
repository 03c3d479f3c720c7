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

#include "depthguard/ledger.h"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "depthguard/status_macros.h"
#include "json.hpp"

namespace depthguard {

using nlohmann::json;

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string LedgerEntryToJson(const LedgerEntry& entry) {
  json j = {{"mechanism", entry.mechanism},
            {"epsilon", entry.epsilon},
            {"delta", entry.delta},
            {"timestamp", entry.timestamp},
            {"variant", entry.variant}};
  return j.dump();
}

absl::StatusOr<LedgerEntry> LedgerEntryFromJson(const std::string& line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::DataLossError("ledger record is not a JSON object");
  }
  LedgerEntry e;
  try {
    e.mechanism = j.at("mechanism").get<std::string>();
    e.epsilon = j.at("epsilon").get<double>();
    e.delta = j.at("delta").get<double>();
    e.timestamp = j.value("timestamp", "");
    e.variant = j.value("variant", "");
  } catch (const json::exception& ex) {
    return absl::DataLossError(absl::StrCat("bad ledger record: ", ex.what()));
  }
  if (!(e.epsilon >= 0.0) || !(e.delta >= 0.0)) {
    return absl::DataLossError("ledger record has a negative spend");
  }
  return e;
}

PrivacySpend BasicComposition(const std::vector<PrivacySpend>& spends) {
  PrivacySpend total;
  for (const PrivacySpend& s : spends) {
    total.epsilon += s.epsilon;
    total.delta += s.delta;
  }
  return total;
}

absl::StatusOr<AdvancedComposition> AdvancedCompositionBudget(
    double epsilon, double delta_prime, size_t k) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    return absl::InvalidArgumentError(
        "advanced composition needs 0 < epsilon < 1");
  }
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    return absl::InvalidArgumentError(
        "advanced composition needs 0 < delta' < 1");
  }
  if (k == 0) return absl::InvalidArgumentError("k must be at least 1");
  AdvancedComposition a;
  a.k = k;
  a.total_epsilon = epsilon;
  a.delta_prime = delta_prime;
  a.per_mechanism_epsilon =
      epsilon / (2.0 * std::sqrt(2.0 * static_cast<double>(k) *
                                 std::log(1.0 / delta_prime)));
  return a;
}

BudgetLedger::BudgetLedger(const BudgetLedger& other) {
  std::lock_guard<std::mutex> lock(other.mu_);
  entries_ = other.entries_;
}

BudgetLedger& BudgetLedger::operator=(const BudgetLedger& other) {
  if (this == &other) return *this;
  std::vector<LedgerEntry> copy = other.entries();
  std::lock_guard<std::mutex> lock(mu_);
  entries_ = std::move(copy);
  return *this;
}

absl::StatusOr<BudgetLedger> BudgetLedger::Load(const std::string& path) {
  BudgetLedger ledger;
  std::ifstream in(path);
  if (!in) return ledger;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto e = LedgerEntryFromJson(line);
    if (!e.ok()) {
      return absl::DataLossError(absl::StrCat(path, " line ", lineno, ": ",
                                              e.status().message()));
    }
    ledger.entries_.push_back(*std::move(e));
  }
  return ledger;
}

void BudgetLedger::Append(LedgerEntry entry) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(std::move(entry));
}

std::vector<LedgerEntry> BudgetLedger::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

size_t BudgetLedger::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

PrivacySpend BudgetLedger::BasicTotal() const {
  std::lock_guard<std::mutex> lock(mu_);
  PrivacySpend total;
  for (const LedgerEntry& e : entries_) {
    total.epsilon += e.epsilon;
    total.delta += e.delta;
  }
  return total;
}

bool BudgetLedger::WouldExceed(const PrivacySpend& spend,
                               const PrivacySpend& cap) const {
  const PrivacySpend total = BasicTotal();
  // Relative slack so that exactly spending the cap is allowed.
  const double tol = 1e-12;
  return total.epsilon + spend.epsilon > cap.epsilon * (1.0 + tol) ||
         total.delta + spend.delta > cap.delta * (1.0 + tol) + 1e-300;
}

absl::Status BudgetLedger::AppendToFile(const std::string& path,
                                        const LedgerEntry& entry) {
  std::ofstream out(path, std::ios::app);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("cannot open ledger file ", path));
  }
  out << LedgerEntryToJson(entry) << "\n";
  out.flush();
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("failed to write ledger file ", path));
  }
  return absl::OkStatus();
}

}  // namespace depthguard
