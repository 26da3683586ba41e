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

#include "ddk/model.hpp"
#include "ddk/quadrature.hpp"

namespace ddk {

/// A law evaluated at one point together with its propagated quadrature
/// error estimate.
struct LawValue {
  double value = 0.0;
  double err = 0.0;
};

/// x v (delta + l): the smallest possible value of M at the first drawdown
/// of size delta started from x.
double drawdown_start(const DiffusionModel& model, double x, double delta);

/// S'(z) / (S(z) - S(z - delta)), the hazard of M at the first drawdown.
double drawdown_hazard(const DiffusionModel& model, double z, double delta);

/// int_a^b drawdown_hazard(z, delta) dz; b may be +inf. Tail walks stop once
/// the sum exceeds 800, where exp(-sum) underflows anyway.
QuadResult hazard_integral(const DiffusionModel& model, double delta, double a,
                           double b, const QuadSpec& spec = {});

/// Determinant ratio b_alpha(y; delta); alpha == 0 gives 1/(S(y) - S(y - delta)).
double b_alpha(const DiffusionModel& model, double alpha, double y, double delta);

/// Determinant ratio c_alpha(y; delta) = w_alpha / (phi(y-d) psi(y) - phi(y) psi(y-d)).
double c_alpha(const DiffusionModel& model, double alpha, double y, double delta);

/// P_x(M_{theta_delta} > y) for y >= x v (delta + l); y may be +inf.
LawValue survival_max_at_drawdown(const DiffusionModel& model, double x,
                                  double delta, double y,
                                  const QuadSpec& spec = {});

/// Density of M_{theta_rho} under P_x at level y.
LawValue density_max_at_drawdown(const DiffusionModel& model, double x,
                                 double rho, double y, const QuadSpec& spec = {});

/// E_x[exp(-alpha theta_delta - beta M_{theta_delta})]. alpha = 0 is accepted
/// for Class 2 models (psi_0 = 1).
LawValue lehoczky_lt(const DiffusionModel& model, double x, double delta,
                     double alpha, double beta, const QuadSpec& spec = {});

/// P_x(M_{theta_delta} = +inf) = P_x(theta_delta = +inf), the limit of the
/// survival function as y -> inf. Zero for every Class 1 model.
LawValue escape_probability(const DiffusionModel& model, double x, double delta,
                            const QuadSpec& spec = {});

/// P_x(D^-_{H_eta} < y) for x < eta and 0 < y <= eta - l.
LawValue maxdd_cdf(const DiffusionModel& model, double x, double eta, double y,
                   const QuadSpec& spec = {});

/// E_x[exp(-alpha H_eta); D^-_{H_eta} < y] through b_alpha.
LawValue malyutin_lt(const DiffusionModel& model, double x, double eta, double y,
                     double alpha, const QuadSpec& spec = {});

/// The same transform through the h-transform form with c_alpha; kept as an
/// independent cross-check of malyutin_lt.
LawValue malyutin_lt_alt(const DiffusionModel& model, double x, double eta,
                         double y, double alpha, const QuadSpec& spec = {});

/// P_x(M_{theta_phi} > y) for theta_phi = inf{t : M_t - X_t = phi(M_t)}.
/// Only models with l = -inf are accepted.
LawValue general_drawdown_survival(const DiffusionModel& model, double x,
                                   const std::function<double(double)>& phi,
                                   double y, const QuadSpec& spec = {});

}  // namespace ddk
