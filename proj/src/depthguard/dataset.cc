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

#include "depthguard/dataset.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"
#include "depthguard/random.h"

namespace depthguard {

absl::StatusOr<Dataset> Dataset::FromFlat(std::vector<double> values,
                                          size_t d) {
  if (d == 0) return absl::InvalidArgumentError("dimension must be >= 1");
  if (values.empty() || values.size() % d != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected a positive multiple of d=", d, " values, got ",
        values.size()));
  }
  for (size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", k / d, " has a non-finite coordinate"));
    }
  }
  const size_t n = values.size() / d;
  return Dataset(std::move(values), n, d);
}

absl::StatusOr<Dataset> Dataset::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return absl::InvalidArgumentError("dataset is empty");
  const size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", i, " has ", rows[i].size(), " coordinates, expected ", d));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return FromFlat(std::move(flat), d);
}

Dataset Dataset::WithRow(size_t i, std::span<const double> point) const {
  std::vector<double> copy = values_;
  std::copy(point.begin(), point.end(), copy.begin() + i * d_);
  return Dataset(std::move(copy), n_, d_);
}

absl::StatusOr<Dataset> Dataset::Concat(const Dataset& other) const {
  if (other.d_ != d_) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension mismatch: ", d_, " vs ", other.d_));
  }
  std::vector<double> all = values_;
  all.insert(all.end(), other.values_.begin(), other.values_.end());
  return Dataset(std::move(all), n_ + other.n_, d_);
}

absl::StatusOr<Dataset> ParseCsv(const std::string& text,
                                 CsvOptions options) {
  std::vector<double> flat;
  size_t d = 0;
  size_t row = 0;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && options.skip_header) continue;
    absl::string_view view = absl::StripAsciiWhitespace(line);
    if (view.empty()) continue;
    std::vector<absl::string_view> cells = absl::StrSplit(view, ',');
    if (row == 0) {
      d = cells.size();
    } else if (cells.size() != d) {
      return absl::DataLossError(absl::StrCat(
          "row ", row, " (line ", line_no, "): expected ", d,
          " columns, found ", cells.size()));
    }
    for (size_t c = 0; c < cells.size(); ++c) {
      absl::string_view cell = absl::StripAsciiWhitespace(cells[c]);
      double v = 0.0;
      auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(),
                                       v);
      if (cell.empty() || ec != std::errc() ||
          end != cell.data() + cell.size() || !std::isfinite(v)) {
        return absl::DataLossError(absl::StrCat(
            "row ", row, " (line ", line_no, "), column ", c,
            ": not a finite number: '", cell, "'"));
      }
      flat.push_back(v);
    }
    ++row;
  }
  if (row == 0) return absl::DataLossError("no data rows");
  return Dataset::FromFlat(std::move(flat), d);
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path, CsvOptions options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return ParseCsv(buffer.str(), options);
}

absl::StatusOr<Direction> Direction::Normalized(std::vector<double> u) {
  double norm2 = 0.0;
  for (double v : u) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("direction has non-finite entries");
    }
    norm2 += v * v;
  }
  if (u.empty() || norm2 == 0.0) {
    return absl::InvalidArgumentError("direction must be a nonzero vector");
  }
  const double norm = std::sqrt(norm2);
  for (double& v : u) v /= norm;
  return Direction(std::move(u));
}

absl::StatusOr<DirectionSet> DirectionSet::FromDirections(
    std::vector<Direction> directions, uint64_t seed) {
  if (directions.empty()) {
    return absl::InvalidArgumentError("direction set is empty");
  }
  const size_t d = directions.front().d();
  for (const Direction& u : directions) {
    if (u.d() != d) {
      return absl::InvalidArgumentError("directions differ in dimension");
    }
  }
  return DirectionSet(std::move(directions), d, seed);
}

absl::StatusOr<DirectionSet> SampleDirections(size_t m, size_t d,
                                              uint64_t seed) {
  if (m == 0) return absl::InvalidArgumentError("m must be >= 1");
  if (d == 0) return absl::InvalidArgumentError("d must be >= 1");
  std::vector<Direction> dirs;
  if (d == 1) {
    dirs.push_back(*Direction::Normalized({1.0}));
    dirs.push_back(*Direction::Normalized({-1.0}));
    return DirectionSet(std::move(dirs), 1, seed);
  }
  SeededRandom rng(seed);
  dirs.reserve(m);
  while (dirs.size() < m) {
    std::vector<double> g(d);
    for (double& v : g) v = rng.Gaussian();
    auto u = Direction::Normalized(std::move(g));
    if (u.ok()) dirs.push_back(*std::move(u));
  }
  return DirectionSet(std::move(dirs), d, seed);
}

absl::StatusOr<ProjectedSample> Project(const Dataset& data,
                                        const Direction& u) {
  if (u.d() != data.d()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "direction has dimension ", u.d(), ", data has ", data.d()));
  }
  ProjectedSample s;
  s.values.reserve(data.n());
  for (size_t i = 0; i < data.n(); ++i) {
    s.values.push_back(Dot(data.row(i), u.u()));
  }
  s.direction.assign(u.u().begin(), u.u().end());
  return s;
}

std::string VariantName(NoiseVariant variant) {
  return variant == NoiseVariant::kLaplace ? "laplace" : "gaussian";
}

absl::Status PrivacyParams::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  if (!(delta >= 0.0) || delta >= 1.0) {
    return absl::InvalidArgumentError("delta must lie in [0, 1)");
  }
  if (variant == NoiseVariant::kGaussian && delta == 0.0) {
    return absl::InvalidArgumentError(
        "the Gaussian variant requires delta > 0");
  }
  return absl::OkStatus();
}

}  // namespace depthguard
