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

#include <functional>
#include <span>

#include "ddk/model.hpp"

namespace ddk {

using Integrand = std::function<double(double)>;

/// How an integral over [a, +inf) is closed off.
struct TailPolicy {
  enum class Kind { fixed_truncation, adaptive };
  Kind kind = Kind::adaptive;
  /// Truncation point Z for fixed_truncation, growth factor g for adaptive.
  double value = 2.0;

  static TailPolicy fixed(double z) { return {Kind::fixed_truncation, z}; }
  static TailPolicy adaptive(double g = 2.0) { return {Kind::adaptive, g}; }
};

struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  TailPolicy tail = TailPolicy::adaptive();

  void validate() const;
};

enum class QuadStatus { converged, diverged };

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int segments_used = 0;
  /// Upper end actually reached; +inf when a tail integral converged to its
  /// stopping rule, b for finite ranges.
  double truncation_point = 0.0;
  QuadStatus status = QuadStatus::converged;

  bool diverged() const { return status == QuadStatus::diverged; }
};

/// Global adaptive Gauss-Kronrod (7/15) on [a, b], split first at any
/// breakpoints inside (a, b). Integrands are never evaluated at a, b or a
/// breakpoint. Throws NumericalError on NaN or when the error target is not
/// met within spec.max_subdivisions.
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadSpec& spec = {},
                     std::span<const double> breakpoints = {});

/// Integral over [a, +inf) following spec.tail. With the adaptive policy the
/// range is covered by segments whose widths grow by the factor g; it stops
/// once a segment contributes less than abs_tol. Divergence (contributions
/// not decreasing, running sum overflowing, or the segment budget running
/// out) is reported through status rather than thrown. A finite stop_above
/// ends the walk as soon as the running sum exceeds it (reported as
/// diverged); exp(-sum) is then zero to double precision.
QuadResult integrate_tail(const Integrand& f, double a, const QuadSpec& spec = {},
                          double stop_above = kInf);

/// Integral of f(z) dS(z) = f(z) S'(z) dz over [a, b]; b may be +inf.
QuadResult integrate_dS(const DiffusionModel& model, const Integrand& f,
                        double a, double b, const QuadSpec& spec = {},
                        std::span<const double> breakpoints = {});

QuadResult integrate_dS_tail(const DiffusionModel& model, const Integrand& f,
                             double a, const QuadSpec& spec = {});

/// exp(-int_a^b hazard dS); b may be +inf. Divergence maps to 0.
double exp_neg_integral(const DiffusionModel& model, const Integrand& hazard,
                        double a, double b, const QuadSpec& spec = {});

/// exp(-value), or 0 for a diverged integral.
double exp_neg(const QuadResult& r);

struct RunningResult {
  double value = 0.0;
  double err_estimate = 0.0;
  /// int_a^end hazard, the log-survival accumulated over the whole range.
  double hazard_integral = 0.0;
  int segments_used = 0;
  double truncation_point = 0.0;
  QuadStatus status = QuadStatus::converged;
};

/// int_a^b weight(y) exp(-int_a^y hazard(z) dz) dy with b possibly +inf.
/// Segments are refined depth-first from left to right so the inner
/// integral is carried along as a running log-survival instead of being
/// recomputed from a for every node.
RunningResult integrate_running(const Integrand& weight, const Integrand& hazard,
                                double a, double b, const QuadSpec& spec = {},
                                std::span<const double> breakpoints = {});

}  // namespace ddk
