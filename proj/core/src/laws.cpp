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

#include "ddk/laws.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ddk/errors.hpp"

namespace ddk {
namespace {

void require_level(const DiffusionModel& model, double z, const char* name) {
  if (!model.contains(z)) {
    std::ostringstream os;
    os << name << " = " << z << " is outside the domain of model " << model.id();
    throw DomainError(os.str());
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(name) + " must be positive");
}

LawValue from_hazard(const QuadResult& r) {
  const double v = exp_neg(r);
  return {v, r.diverged() ? 0.0 : v * r.err_estimate};
}

// 1 - R and the pieces of the determinant ratios, with
// R = phi(y) psi(y-d) / (phi(y-d) psi(y)) in (0, 1).
struct Determinant {
  LogBasis top;
  LogBasis low;
  double log_r;
  double one_minus_r;
};

Determinant determinant(const DiffusionModel& model, double alpha, double y,
                        double delta) {
  require_positive(delta, "delta");
  if (!(y - delta > model.lower()))
    throw DomainError("b_alpha/c_alpha need y - delta > l");
  Determinant d{model.log_basis(alpha, y), model.log_basis(alpha, y - delta), 0, 0};
  d.log_r = model.log_basis_ratio(alpha, y, delta);
  d.one_minus_r = -std::expm1(d.log_r);
  if (!(d.one_minus_r > 0.0))
    throw NumericalError("eigenfunction determinant vanished");
  return d;
}

}  // namespace

double drawdown_start(const DiffusionModel& model, double x, double delta) {
  return std::max(x, delta + model.lower());
}

double drawdown_hazard(const DiffusionModel& model, double z, double delta) {
  const double log_diff = model.log_scale_diff(z - delta, z);
  if (log_diff == kInf) return 0.0;
  return std::exp(model.log_scale_deriv(z) - log_diff);
}

QuadResult hazard_integral(const DiffusionModel& model, double delta, double a,
                           double b, const QuadSpec& spec) {
  auto h = [&](double z) { return drawdown_hazard(model, z, delta); };
  if (a == b) return QuadResult{0.0, 0.0, 0, b, QuadStatus::converged};
  if (b == kInf) return integrate_tail(h, a, spec, 800.0);
  return integrate(h, a, b, spec);
}

double b_alpha(const DiffusionModel& model, double alpha, double y, double delta) {
  require(alpha >= 0.0, "alpha must be nonnegative");
  if (alpha == 0.0) {
    require_positive(delta, "delta");
    return std::exp(-model.log_scale_diff(y - delta, y));
  }
  const Determinant d = determinant(model, alpha, y, delta);
  const double r = std::exp(d.log_r);
  return (d.top.psi_slope - d.top.phi_slope * r) / d.one_minus_r;
}

double c_alpha(const DiffusionModel& model, double alpha, double y, double delta) {
  require(alpha >= 0.0, "alpha must be nonnegative");
  if (alpha == 0.0) {
    require_positive(delta, "delta");
    return std::exp(-model.log_scale_diff(y - delta, y));
  }
  const Determinant d = determinant(model, alpha, y, delta);
  // w = psi(y) phi(y) (psi^-/psi - phi^-/phi) at y; psi(y) cancels.
  return (d.top.psi_slope - d.top.phi_slope) *
         std::exp(d.top.log_phi - d.low.log_phi) / d.one_minus_r;
}

LawValue survival_max_at_drawdown(const DiffusionModel& model, double x,
                                  double delta, double y, const QuadSpec& spec) {
  require_positive(delta, "delta");
  require_level(model, x, "x");
  const double start = drawdown_start(model, x, delta);
  if (y < start) {
    std::ostringstream os;
    os << "y = " << y << " lies below x v (delta + l) = " << start
       << "; the survival probability there is 1";
    throw DomainError(os.str());
  }
  if (y == start) return {1.0, 0.0};
  return from_hazard(hazard_integral(model, delta, start, y, spec));
}

LawValue density_max_at_drawdown(const DiffusionModel& model, double x,
                                 double rho, double y, const QuadSpec& spec) {
  const LawValue surv = survival_max_at_drawdown(model, x, rho, y, spec);
  const double h = drawdown_hazard(model, y, rho);
  return {h * surv.value, h * surv.err};
}

LawValue lehoczky_lt(const DiffusionModel& model, double x, double delta,
                     double alpha, double beta, const QuadSpec& spec) {
  require_positive(delta, "delta");
  require_level(model, x, "x");
  require(alpha >= 0.0, "alpha must be nonnegative");
  require(beta >= 0.0, "beta must be nonnegative");
  if (alpha == 0.0 && is_recurrent(model.boundary_class()))
    throw DomainError("alpha must be positive for Class 1 models");
  const double start = drawdown_start(model, x, delta);
  double log_prefactor = 0.0;
  if (alpha > 0.0 && start > x)
    log_prefactor = model.log_basis(alpha, x).log_psi -
                    model.log_basis(alpha, start).log_psi;

  auto weight = [&](double y) {
    return c_alpha(model, alpha, y, delta) * model.scale_deriv(y) *
           std::exp(-beta * (y - start));
  };
  auto hazard = [&](double y) {
    return b_alpha(model, alpha, y, delta) * model.scale_deriv(y);
  };
  const RunningResult r = integrate_running(weight, hazard, start, kInf, spec);
  if (r.status == QuadStatus::diverged)
    throw NumericalError("outer Lehoczky integral did not settle in the tail");
  const double factor = std::exp(log_prefactor - beta * start);
  return {factor * r.value, factor * r.err_estimate};
}

LawValue escape_probability(const DiffusionModel& model, double x, double delta,
                            const QuadSpec& spec) {
  require_positive(delta, "delta");
  require_level(model, x, "x");
  const double start = drawdown_start(model, x, delta);
  return from_hazard(hazard_integral(model, delta, start, kInf, spec));
}

LawValue maxdd_cdf(const DiffusionModel& model, double x, double eta, double y,
                   const QuadSpec& spec) {
  require_level(model, x, "x");
  require(x < eta, "maxdd needs x < eta");
  require_positive(y, "y");
  require(y <= eta - model.lower(), "maxdd needs y <= eta - l");
  const double start = drawdown_start(model, x, y);
  if (start >= eta) return {1.0, 0.0};
  return from_hazard(hazard_integral(model, y, start, eta, spec));
}

LawValue malyutin_lt(const DiffusionModel& model, double x, double eta, double y,
                     double alpha, const QuadSpec& spec) {
  require_level(model, x, "x");
  require_positive(y, "y");
  require_positive(alpha, "alpha");
  const double start = drawdown_start(model, x, y);
  require(eta > x && eta >= start, "malyutin needs eta > x and eta >= x v (y + l)");
  double log_value = 0.0;
  if (start > x)
    log_value = model.log_basis(alpha, x).log_psi -
                model.log_basis(alpha, start).log_psi;
  auto hazard = [&](double z) {
    return b_alpha(model, alpha, z, y) * model.scale_deriv(z);
  };
  const QuadResult r =
      eta > start ? integrate(hazard, start, eta, spec) : QuadResult{};
  const double v = std::exp(log_value - r.value);
  return {v, v * r.err_estimate};
}

LawValue malyutin_lt_alt(const DiffusionModel& model, double x, double eta,
                         double y, double alpha, const QuadSpec& spec) {
  require_level(model, x, "x");
  require_positive(y, "y");
  require_positive(alpha, "alpha");
  const double start = drawdown_start(model, x, y);
  require(eta > x && eta >= start, "malyutin needs eta > x and eta >= x v (y + l)");
  auto hazard = [&](double z) {
    const double ratio = std::exp(model.log_basis(alpha, z - y).log_psi -
                                  model.log_basis(alpha, z).log_psi);
    return c_alpha(model, alpha, z, y) * ratio * model.scale_deriv(z);
  };
  const QuadResult r =
      eta > start ? integrate(hazard, start, eta, spec) : QuadResult{};
  const double log_pref =
      model.log_basis(alpha, x).log_psi - model.log_basis(alpha, eta).log_psi;
  const double v = std::exp(log_pref - r.value);
  return {v, v * r.err_estimate};
}

LawValue general_drawdown_survival(const DiffusionModel& model, double x,
                                   const std::function<double(double)>& phi,
                                   double y, const QuadSpec& spec) {
  if (!is_unbounded_below(model.lower()))
    throw DomainError(
        "general drawdown survival is only available for models with l = -inf");
  require_level(model, x, "x");
  require(y >= x, "general drawdown survival needs y >= x");
  if (y == x) return {1.0, 0.0};
  for (int i = 0; i <= 8; ++i) {
    const double z = x + (y == kInf ? i : (y - x) * i / 8.0);
    if (!(phi(z) > 0.0)) throw DomainError("phi must be positive on [x, y]");
  }
  auto hazard = [&](double z) {
    const double width = phi(z);
    if (!(width > 0.0)) throw DomainError("phi must be positive on [x, y]");
    return drawdown_hazard(model, z, width);
  };
  if (y == kInf) return from_hazard(integrate_tail(hazard, x, spec, 800.0));
  return from_hazard(integrate(hazard, x, y, spec));
}

}  // namespace ddk
