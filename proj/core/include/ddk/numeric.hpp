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

#include <cmath>
#include <limits>

namespace ddk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lower endpoint sentinel for diffusions living on (-inf, +inf). It orders
/// beneath every real, so std::max(x, delta + kUnboundedBelow) == x.
inline constexpr double kUnboundedBelow = -kInf;

inline bool is_unbounded_below(double l) { return l == kUnboundedBelow; }

/// log(e^t - 1) for t > 0 without overflow for large t.
inline double log_expm1(double t) {
  if (t > 30.0) return t + std::log1p(-std::exp(-t));
  return std::log(std::expm1(t));
}

/// log(1 - e^{-t}) for t > 0.
inline double log1m_exp(double t) {
  if (t < 0.6931471805599453) return std::log(-std::expm1(-t));
  return std::log1p(-std::exp(-t));
}

/// log cosh(t), accurate near 0 and overflow-free for large |t|.
inline double log_cosh(double t) {
  t = std::fabs(t);
  if (t < 1.0) {
    const double s = std::sinh(0.5 * t);
    return std::log1p(2.0 * s * s);
  }
  return t + std::log1p(std::exp(-2.0 * t)) - 0.6931471805599453;
}

/// log sinh(t) for t > 0.
inline double log_sinh(double t) {
  if (t < 1.0) return std::log(std::sinh(t));
  return t + std::log1p(-std::exp(-2.0 * t)) - 0.6931471805599453;
}

/// e^a - e^b for a >= b, returned as log; -inf when a == b.
inline double log_diff_exp(double a, double b) {
  if (a == b) return -kInf;
  return a + log1m_exp(a - b);
}

}  // namespace ddk
