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

// The pure-jump process rho -> M_{theta_rho} started from X_0 = 0, and the
// maximum-drawdown process a -> D^-_{H_a}.
//
// Laws conditional on M_{theta_rho} = y only look at S above y - delta and
// accept any model with y - delta > l. Laws that integrate from the start
// level 0 need l = -inf.

#pragma once

#include <functional>
#include <vector>

#include "ddk/laws.hpp"
#include "ddk/model.hpp"
#include "ddk/quadrature.hpp"

namespace ddk {

/// A bounded function of the level that vanishes outside [lo, hi]. hi may be
/// +inf for indicators of upper half-lines; at_infinity is the value taken
/// on the event M = +inf (only reachable for Class 2).
struct TestFunction {
  std::function<double(double)> f;
  double lo = -kInf;
  double hi = kInf;
  std::vector<double> breakpoints;
  double at_infinity = 0.0;

  double operator()(double z) const { return (z < lo || z > hi) ? 0.0 : f(z); }

  /// 1 on the open interval (a, b).
  static TestFunction indicator(double a, double b = kInf);
  /// c on [a, b].
  static TestFunction constant(double c, double a, double b);
};

/// Q_{rho,delta}(y; f) = E_0(f(M_{theta_delta}) | M_{theta_rho} = y).
LawValue kernel_apply(const DiffusionModel& model, double rho, double delta,
                      double y, const TestFunction& f, const QuadSpec& spec = {});

/// P_0(M_{theta_delta} > v | M_{theta_rho} = y).
LawValue cond_survival(const DiffusionModel& model, double rho, double delta,
                       double y, double v, const QuadSpec& spec = {});

/// P_0(M_{theta_rho} > y, M_{theta_delta} > v) for delta > rho, v > y > 0.
LawValue joint_survival(const DiffusionModel& model, double rho, double delta,
                        double y, double v, const QuadSpec& spec = {});

/// The generator A_rho f(y) of rho -> M_{theta_rho}.
LawValue generator_apply(const DiffusionModel& model, double rho, double y,
                         const TestFunction& f, const QuadSpec& spec = {});

/// Density in z > 0 of the jump measure nu_{y,rho}(dz).
LawValue jump_measure_density(const DiffusionModel& model, double rho, double y,
                              double z, const QuadSpec& spec = {});

/// nu_{y,rho}((0, inf)), integrated numerically from the density.
LawValue jump_measure_mass(const DiffusionModel& model, double rho, double y,
                           const QuadSpec& spec = {});

/// P_0(T+_rho > delta | M_{theta_rho} = y) for delta > rho.
LawValue tplus_survival(const DiffusionModel& model, double rho, double delta,
                        double y);

/// P_0(T-_rho < delta | M_{theta_rho} = y) for 0 < delta < rho.
LawValue tminus_cdf(const DiffusionModel& model, double rho, double delta,
                    double y, const QuadSpec& spec = {});

/// P_0(T+_rho < delta, J_rho > z | M_{theta_rho} = y), J_rho the size of
/// the first jump after rho. z may be +inf.
LawValue jump_time_size_joint(const DiffusionModel& model, double rho,
                              double delta, double y, double z,
                              const QuadSpec& spec = {});

/// P_0(D^-_{H_a} < delta | D^-_{H_b} = rho) for a > b > 0.
LawValue dminus_cond_cdf(const DiffusionModel& model, double a, double b,
                         double delta, double rho, const QuadSpec& spec = {});

/// P_0(D^-_{H_a} < delta, D^-_{H_b} < rho) for delta >= rho, a > b > 0.
LawValue dminus_joint_cdf(const DiffusionModel& model, double a, double b,
                          double delta, double rho, const QuadSpec& spec = {});

/// Density of D^-_{H_a} under P_0 at delta.
LawValue dminus_density(const DiffusionModel& model, double a, double delta,
                        const QuadSpec& spec = {});

/// phi_rho(t) = P_0(T+_rho > rho + t | M_{theta_rho} = y).
LawValue holding_survival(const DiffusionModel& model, double rho, double y,
                          double t);

/// S'(y - rho) / (S(y) - S(y - rho)): the total jump rate out of y at rho.
LawValue holding_hazard(const DiffusionModel& model, double rho, double y);

}  // namespace ddk
