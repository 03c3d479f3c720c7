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

#include "depthguard/random.h"

#include <cmath>

namespace depthguard {

namespace {

// 53-bit mantissa uniform; independent of the standard library's
// distribution implementations so draws are identical across toolchains.
double ToUnit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

double SeededRandom::Uniform() {
  ++position_;
  return ToUnit(engine_());
}

double SeededRandom::Laplace() {
  ++position_;
  // Inverse CDF on (-1/2, 1/2); u = 0 is excluded to keep the log finite.
  double u;
  do {
    u = ToUnit(engine_());
  } while (u == 0.0);
  u -= 0.5;
  return u < 0 ? std::log1p(2.0 * u) : -std::log1p(-2.0 * u);
}

double SeededRandom::Gaussian() {
  ++position_;
  // Marsaglia polar method, discarding the second variate so that every
  // call consumes a self-contained block of the stream.
  double a, b, s;
  do {
    a = 2.0 * ToUnit(engine_()) - 1.0;
    b = 2.0 * ToUnit(engine_()) - 1.0;
    s = a * a + b * b;
  } while (s >= 1.0 || s == 0.0);
  return a * std::sqrt(-2.0 * std::log(s) / s);
}

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t root, std::string_view label) {
  // FNV-1a over the label, then mixed with the root.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Mix64(Mix64(root) ^ h);
}

}  // namespace depthguard
