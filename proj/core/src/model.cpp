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

#include "ddk/model.hpp"

#include <cmath>
#include <sstream>

#include "ddk/errors.hpp"

namespace ddk {

std::string_view to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::k1a: return "1a";
    case BoundaryClass::k1b: return "1b";
    case BoundaryClass::k2a: return "2a";
    case BoundaryClass::k2b: return "2b";
  }
  return "?";
}

DiffusionModel::DiffusionModel(std::string id, std::vector<double> params,
                               double lower, BoundaryClass boundary_class,
                               double scale_at_infinity,
                               ModelFunctions functions,
                               std::optional<Dynamics> dynamics) {
  require(static_cast<bool>(functions.scale), "model needs a scale function");
  require(static_cast<bool>(functions.log_scale_deriv),
          "model needs a scale derivative");
  require(!is_reflecting(boundary_class) || std::isfinite(lower),
          "reflecting boundary class requires a finite lower endpoint");
  require(is_recurrent(boundary_class) ? scale_at_infinity == kInf
                                       : std::isfinite(scale_at_infinity),
          "S(+inf) must be +inf for Class 1 and finite for Class 2");
  state_ = std::make_shared<const State>(State{
      std::move(id), std::move(params), lower, boundary_class,
      scale_at_infinity, std::move(functions), std::move(dynamics)});
}

double DiffusionModel::scale_at_lower() const {
  if (!is_reflecting(state_->boundary_class)) return -kInf;
  return state_->fns.scale(state_->lower);
}

bool DiffusionModel::contains(double z) const {
  if (std::isnan(z) || z == kInf) return false;
  const double l = state_->lower;
  if (is_unbounded_below(l)) return std::isfinite(z);
  return is_reflecting(state_->boundary_class) ? z >= l : z > l;
}

double DiffusionModel::scale(double z) const {
  if (!contains(z)) {
    if (z == kInf) return state_->scale_at_infinity;
    if (z <= state_->lower && !is_reflecting(state_->boundary_class))
      return -kInf;
    std::ostringstream os;
    os << "level " << z << " is outside the domain of model " << id();
    throw DomainError(os.str());
  }
  return state_->fns.scale(z);
}

double DiffusionModel::log_scale_deriv(double z) const {
  return state_->fns.log_scale_deriv(z);
}

double DiffusionModel::scale_deriv(double z) const {
  return std::exp(log_scale_deriv(z));
}

double DiffusionModel::log_scale_diff(double a, double b) const {
  if (!(a <= b)) throw DomainError("scale increment needs a <= b");
  if (a == b) return -kInf;
  const double l = state_->lower;
  if (!is_reflecting(state_->boundary_class) && a <= l) return kInf;
  if (is_reflecting(state_->boundary_class) && a < l) {
    std::ostringstream os;
    os << "level " << a << " lies below the reflecting boundary " << l;
    throw DomainError(os.str());
  }
  if (state_->fns.log_scale_diff) return state_->fns.log_scale_diff(a, b);
  const double sb = b == kInf ? state_->scale_at_infinity : state_->fns.scale(b);
  return std::log(sb - state_->fns.scale(a));
}

double DiffusionModel::scale_diff(double a, double b) const {
  return std::exp(log_scale_diff(a, b));
}

std::optional<double> DiffusionModel::speed_density(double z) const {
  if (!state_->fns.speed_density) return std::nullopt;
  return state_->fns.speed_density(z);
}

LogBasis DiffusionModel::log_basis(double alpha, double z) const {
  require(alpha >= 0.0 && std::isfinite(alpha), "alpha must be nonnegative");
  if (!contains(z)) {
    std::ostringstream os;
    os << "level " << z << " is outside the domain of model " << id();
    throw DomainError(os.str());
  }
  if (alpha == 0.0) {
    if (is_recurrent(state_->boundary_class))
      throw DomainError(
          "alpha = 0 requested for a Class 1 model: phi_0 is undefined");
    LogBasis out;
    out.log_phi = log_scale_diff(z, kInf);
    out.phi_slope = -std::exp(-out.log_phi);
    return out;
  }
  if (!has_basis())
    throw DomainError("model " + id() + " has no alpha-eigenfunctions");
  const LogBasis out = state_->fns.log_basis(alpha, z);
  if (!std::isfinite(out.log_psi) || !std::isfinite(out.log_phi) ||
      std::isnan(out.psi_slope) || std::isnan(out.phi_slope))
    throw NumericalError("eigenfunction evaluation failed for model " + id());
  return out;
}

double DiffusionModel::log_basis_ratio(double alpha, double y,
                                       double delta) const {
  const LogBasis top = log_basis(alpha, y);
  const LogBasis low = log_basis(alpha, y - delta);
  if (alpha > 0.0 && state_->fns.log_basis_ratio) {
    const double r = state_->fns.log_basis_ratio(alpha, y, delta);
    if (std::isnan(r))
      throw NumericalError("eigenfunction ratio failed for model " + id());
    return r;
  }
  return top.log_phi + low.log_psi - low.log_phi - top.log_psi;
}

std::optional<double> DiffusionModel::closed_form_wronskian(
    double alpha) const {
  if (alpha == 0.0 && !is_recurrent(state_->boundary_class)) return 1.0;
  if (!state_->fns.wronskian) return std::nullopt;
  return state_->fns.wronskian(alpha);
}

AlphaBasis eval_basis(const DiffusionModel& model, double alpha, double z) {
  const LogBasis lb = model.log_basis(alpha, z);
  AlphaBasis out;
  out.alpha = alpha;
  out.psi = std::exp(lb.log_psi);
  out.phi = std::exp(lb.log_phi);
  out.psi_minus = lb.psi_slope * out.psi;
  out.phi_minus = lb.phi_slope * out.phi;
  out.w = model.closed_form_wronskian(alpha).value_or(
      wronskian_at(model, alpha, z));
  return out;
}

double wronskian_at(const DiffusionModel& model, double alpha, double z) {
  const LogBasis lb = model.log_basis(alpha, z);
  return std::exp(lb.log_psi + lb.log_phi) * (lb.psi_slope - lb.phi_slope);
}

double hitting_lt(const DiffusionModel& model, double alpha, double x,
                  double y) {
  require(alpha > 0.0, "alpha must be positive");
  if (x == y) return 1.0;
  const LogBasis bx = model.log_basis(alpha, x);
  const LogBasis by = model.log_basis(alpha, y);
  return x <= y ? std::exp(bx.log_psi - by.log_psi)
                : std::exp(bx.log_phi - by.log_phi);
}

ExitTransforms two_sided_exit_lt(const DiffusionModel& model, double alpha,
                                 double start, double lower, double upper) {
  require(lower < start && start < upper,
          "two-sided exit needs lower < start < upper");
  require(lower > model.lower(), "lower exit level must lie above l");
  require(alpha >= 0.0, "alpha must be nonnegative");
  if (alpha == 0.0) {
    const double log_den = model.log_scale_diff(lower, upper);
    return {std::exp(model.log_scale_diff(start, upper) - log_den),
            std::exp(model.log_scale_diff(lower, start) - log_den)};
  }
  const LogBasis bl = model.log_basis(alpha, lower);
  const LogBasis bs = model.log_basis(alpha, start);
  const LogBasis bu = model.log_basis(alpha, upper);
  // Every term is divided by phi(lower) psi(upper), the largest product.
  const double base = bl.log_phi + bu.log_psi;
  const double r0 = bu.log_phi + bl.log_psi - base;
  const double log_den = log1m_exp(-r0);
  const double low_num =
      log_diff_exp(bs.log_phi + bu.log_psi - base, bu.log_phi + bs.log_psi - base);
  const double up_num =
      log_diff_exp(bs.log_psi + bl.log_phi - base, bs.log_phi + bl.log_psi - base);
  return {std::exp(low_num - log_den), std::exp(up_num - log_den)};
}

DiffusionModel make_custom_model(const CustomModelSpec& spec) {
  require(static_cast<bool>(spec.scale) && static_cast<bool>(spec.scale_deriv),
          "custom model needs S and S'");
  std::vector<double> probe = spec.probe_levels;
  if (probe.empty()) {
    const double base = is_unbounded_below(spec.lower) ? -5.0 : spec.lower;
    for (int i = 1; i <= 20; ++i) probe.push_back(base + 0.5 * i);
  }
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double d = spec.scale_deriv(probe[i]);
    if (!(d > 0.0) || !std::isfinite(d))
      throw DomainError("custom model failing monotonicity probe: S' <= 0");
    if (i > 0 && probe[i - 1] < probe[i] &&
        !(spec.scale(probe[i - 1]) < spec.scale(probe[i])))
      throw DomainError(
          "custom model failing monotonicity probe: S not increasing");
  }

  ModelFunctions fns;
  fns.scale = spec.scale;
  auto sd = spec.scale_deriv;
  fns.log_scale_deriv = [sd](double z) { return std::log(sd(z)); };
  fns.speed_density = spec.speed_density;
  if (spec.psi && spec.psi_deriv && spec.phi && spec.phi_deriv) {
    fns.log_basis = [spec](double alpha, double z) {
      const double psi = spec.psi(alpha, z);
      const double phi = spec.phi(alpha, z);
      if (!(psi > 0.0) || !(phi > 0.0))
        throw NumericalError("custom eigenfunction is not positive");
      const double s = spec.scale_deriv(z);
      return LogBasis{std::log(psi), std::log(phi),
                      spec.psi_deriv(alpha, z) / (psi * s),
                      spec.phi_deriv(alpha, z) / (phi * s)};
    };
  }
  return DiffusionModel("custom", {}, spec.lower, spec.boundary_class,
                        spec.scale_at_infinity, std::move(fns), spec.dynamics);
}

}  // namespace ddk
