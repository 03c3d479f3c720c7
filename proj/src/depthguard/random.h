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

#ifndef DEPTHGUARD_RANDOM_H_
#define DEPTHGUARD_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace depthguard {

// Source of the standard draws every mechanism consumes. One instance per
// mechanism invocation; never shared across threads.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;

  // Standard Laplace: density exp(-|w|) / 2.
  virtual double Laplace() = 0;
  // Standard normal.
  virtual double Gaussian() = 0;
  // Uniform on [0, 1).
  virtual double Uniform() = 0;
};

// Seeded stream. Identical seeds reproduce identical draw sequences.
class SeededRandom : public NoiseSource {
 public:
  explicit SeededRandom(uint64_t seed) : seed_(seed), engine_(seed) {}

  double Laplace() override;
  double Gaussian() override;
  double Uniform() override;

  uint64_t seed() const { return seed_; }
  // Number of Laplace/Gaussian/Uniform draws taken so far.
  uint64_t position() const { return position_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

// Returns fixed Laplace and Gaussian values (zero by default) while keeping a
// seeded uniform stream for categorical sampling. Used to exercise the
// noiseless path of a mechanism.
class ConstantNoise : public NoiseSource {
 public:
  explicit ConstantNoise(double laplace = 0.0, double gaussian = 0.0,
                         uint64_t uniform_seed = 0)
      : laplace_(laplace), gaussian_(gaussian), uniform_(uniform_seed) {}

  double Laplace() override { return laplace_; }
  double Gaussian() override { return gaussian_; }
  double Uniform() override { return uniform_.Uniform(); }

 private:
  double laplace_;
  double gaussian_;
  SeededRandom uniform_;
};

// Derives an independent sub-stream seed from a root seed and a fixed label,
// so adding a consumer never perturbs another consumer's draws.
uint64_t DeriveSeed(uint64_t root, std::string_view label);

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

}  // namespace depthguard

#endif  // DEPTHGUARD_RANDOM_H_
