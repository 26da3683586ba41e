// Copyright 2026 The drawdown-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ddk {

/// 256-layer ziggurat for the standard normal (Marsaglia and Tsang). The
/// common case consumes a single 64-bit word: 8 bits pick the layer, one
/// bit the sign and 53 bits the abscissa.
class ZigguratNormal {
 public:
  static const ZigguratNormal& instance() {
    static const ZigguratNormal z;
    return z;
  }

  template <class Stream>
  double operator()(Stream& s) const {
    for (;;) {
      const std::uint64_t r = s.next();
      const unsigned i = static_cast<unsigned>(r & 0xffu);
      const bool negative = (r >> 8) & 1u;
      const double u = static_cast<double>(r >> 11) * 0x1p-53;
      const double z = u * x_[i];
      if (z < x_[i + 1]) return negative ? -z : z;
      if (i == 0) {
        // Base strip beyond R: exponential rejection from the tail.
        double a, b;
        do {
          a = -std::log(s.uniform()) / kR;
          b = -std::log(s.uniform());
        } while (b + b < a * a);
        return negative ? -(kR + a) : kR + a;
      }
      if (f_[i + 1] + s.uniform() * (f_[i] - f_[i + 1]) < std::exp(-0.5 * z * z))
        return negative ? -z : z;
    }
  }

 private:
  static constexpr double kR = 3.6541528853610088;
  static constexpr double kV = 4.92867323399e-3;

  ZigguratNormal() {
    auto f = [](double t) { return std::exp(-0.5 * t * t); };
    x_[0] = kV / f(kR);
    x_[1] = kR;
    for (int i = 2; i < 256; ++i)
      x_[i] = std::sqrt(-2.0 * std::log(kV / x_[i - 1] + f(x_[i - 1])));
    x_[256] = 0.0;
    for (int i = 0; i <= 256; ++i) f_[i] = f(x_[i]);
  }

  std::array<double, 257> x_{};
  std::array<double, 257> f_{};
};

}  // namespace ddk
