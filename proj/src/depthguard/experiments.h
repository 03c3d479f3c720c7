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

#ifndef DEPTHGUARD_EXPERIMENTS_H_
#define DEPTHGUARD_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "depthguard/dataset.h"

namespace depthguard {

struct ExperimentRow {
  std::string experiment;
  size_t n = 0;
  double epsilon = 0.0;
  uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

// Zero / empty fields take the experiment's default (see DefaultExperiment).
struct ExperimentConfig {
  std::string name;
  std::vector<size_t> n_grid;
  double epsilon = 0.0;
  double delta = 0.0;
  size_t reps = 0;
  size_t directions = 0;
  size_t samples = 0;  // audit draws per side; reference sample size
  uint64_t seed = 0;
};

// consistency  private halfspace depth at the origin, d = 2 Gaussian data
// audit        binned likelihood-ratio audit of the Laplace halfspace
//              mechanism on ten adjacent pairs, plus a halved-noise control
// power        private and classical depth rank-sum tests, B scaled by 3
// ptr-depth    PTR projection depth at the origin
// median-ptr   PTR + exponential projection median on a 21 x 21 grid
std::vector<std::string> ExperimentNames();

absl::StatusOr<ExperimentConfig> DefaultExperiment(const std::string& name);

// Fills unset fields of `config` from DefaultExperiment(config.name).
absl::StatusOr<ExperimentConfig> ResolveExperiment(ExperimentConfig config);

absl::StatusOr<std::vector<ExperimentRow>> RunExperiment(
    const ExperimentConfig& config);

// Header "experiment,n,epsilon,seed,metric,value" followed by one line per
// row.
std::string RowsToCsv(const std::vector<ExperimentRow>& rows);

// n rows of i.i.d. N(0, scale^2 I_d).
Dataset GaussianSample(size_t n, size_t d, uint64_t seed, double scale = 1.0);

}  // namespace depthguard

#endif  // DEPTHGUARD_EXPERIMENTS_H_
