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

#include "ddk/jump.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ddk/errors.hpp"

namespace ddk {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(name) + " must be positive");
}

void require_sizes(double rho, double delta, bool strict) {
  require_positive(rho, "rho");
  require_positive(delta, "delta");
  if (strict ? !(delta > rho) : !(delta >= rho))
    throw DomainError(strict ? "need delta > rho" : "need delta >= rho");
}

// Conditioning on M_{theta_rho} = y needs y strictly inside the support,
// i.e. y - size > l for the largest drawdown size the formula touches.
void require_conditional_level(const DiffusionModel& model, double y,
                               double size) {
  if (!std::isfinite(y)) throw DomainError("y must be finite");
  if (!(y - size > model.lower())) {
    std::ostringstream os;
    os << "conditional laws need y - " << size << " > l (y = " << y
       << ", l = " << model.lower() << ")";
    throw DomainError(os.str());
  }
}

void require_origin_convention(const DiffusionModel& model, const char* what) {
  if (!is_unbounded_below(model.lower()))
    throw DomainError(std::string(what) +
                      " is only available for models with l = -inf (X_0 = 0)");
}

Integrand hazard_fn(const DiffusionModel& model, double size) {
  return [&model, size](double z) { return drawdown_hazard(model, z, size); };
}

double jump_rate(const DiffusionModel& model, double rho, double y) {
  return std::exp(model.log_scale_deriv(y - rho) -
                  model.log_scale_diff(y - rho, y));
}

double escape_from(const DiffusionModel& model, double y, double size,
                   const QuadSpec& spec) {
  if (is_recurrent(model.boundary_class())) return 0.0;
  return escape_probability(model, y, size, spec).value;
}

std::vector<double> support_breaks(const TestFunction& f) {
  std::vector<double> b = f.breakpoints;
  if (std::isfinite(f.lo)) b.push_back(f.lo);
  if (std::isfinite(f.hi)) b.push_back(f.hi);
  return b;
}

// E_y f(M_{theta_delta}) from the density of M_{theta_delta} under P_y.
LawValue expectation_at_drawdown(const DiffusionModel& model, double delta,
                                 double y, const TestFunction& f,
                                 const QuadSpec& spec) {
  LawValue out;
  const Integrand h = hazard_fn(model, delta);
  const double a = std::max(y, f.lo);
  if (a < f.hi) {
    double h0 = 0.0;
    if (a > y) {
      const QuadResult pre = hazard_integral(model, delta, y, a, spec);
      h0 = pre.value;
      out.err += pre.err_estimate;
    }
    auto weight = [&](double u) {
      const double fu = f(u);
      return fu == 0.0 ? 0.0 : fu * h(u);
    };
    const auto breaks = support_breaks(f);
    const RunningResult r = integrate_running(weight, h, a, f.hi, spec, breaks);
    if (r.status == QuadStatus::diverged)
      throw NumericalError("expectation of f(M_theta) did not settle in the tail");
    const double s = std::exp(-h0);
    out.value = s * r.value;
    out.err = s * (r.err_estimate + std::fabs(r.value) * out.err);
  }
  if (f.at_infinity != 0.0)
    out.value += f.at_infinity * escape_from(model, y, delta, spec);
  return out;
}

}  // namespace

TestFunction TestFunction::indicator(double a, double b) {
  require(a < b, "indicator needs a < b");
  TestFunction t;
  t.f = [a, b](double z) { return (z > a && z < b) ? 1.0 : 0.0; };
  t.lo = a;
  t.hi = b;
  t.at_infinity = b == kInf ? 1.0 : 0.0;
  return t;
}

TestFunction TestFunction::constant(double c, double a, double b) {
  require(a <= b, "constant test function needs a <= b");
  TestFunction t;
  t.f = [c](double) { return c; };
  t.lo = a;
  t.hi = b;
  t.at_infinity = b == kInf ? c : 0.0;
  return t;
}

LawValue kernel_apply(const DiffusionModel& model, double rho, double delta,
                      double y, const TestFunction& f, const QuadSpec& spec) {
  require_sizes(rho, delta, false);
  require_conditional_level(model, y, delta);
  require(static_cast<bool>(f.f), "test function has no evaluator");
  const double fy = f(y);
  if (delta == rho) return {fy, 0.0};
  // P_{y-rho}(H_y < H_{y-delta})
  const double w = std::exp(model.log_scale_diff(y - delta, y - rho) -
                            model.log_scale_diff(y - delta, y));
  const LawValue e = expectation_at_drawdown(model, delta, y, f, spec);
  return {fy + (e.value - fy) * w, w * e.err};
}

LawValue cond_survival(const DiffusionModel& model, double rho, double delta,
                       double y, double v, const QuadSpec& spec) {
  require_sizes(rho, delta, true);
  require_conditional_level(model, y, delta);
  if (y > v) return {1.0, 0.0};
  const double log_w = model.log_scale_diff(y - delta, y - rho) -
                       model.log_scale_diff(y - delta, y);
  if (y == v) return {std::exp(log_w), 0.0};
  const QuadResult r = hazard_integral(model, delta, y, v, spec);
  const double val = std::exp(log_w) * exp_neg(r);
  return {val, val * r.err_estimate};
}

LawValue joint_survival(const DiffusionModel& model, double rho, double delta,
                        double y, double v, const QuadSpec& spec) {
  require_origin_convention(model, "joint_survival");
  require_sizes(rho, delta, true);
  require(y > 0.0 && v > y, "joint_survival needs v > y > 0");
  const QuadResult first = hazard_integral(model, rho, 0.0, y, spec);
  const QuadResult second = hazard_integral(model, delta, y, v, spec);
  const double val = std::exp(-first.value - second.value);
  return {val, val * (first.err_estimate + second.err_estimate)};
}

LawValue generator_apply(const DiffusionModel& model, double rho, double y,
                         const TestFunction& f, const QuadSpec& spec) {
  require_positive(rho, "rho");
  require_conditional_level(model, y, rho);
  require(static_cast<bool>(f.f), "test function has no evaluator");
  const double rate = jump_rate(model, rho, y);
  const double fy = f(y);
  const double escape = escape_from(model, y, rho, spec);
  if (!(f.hi > y)) return {-rate * fy * (1.0 - escape), 0.0};

  const Integrand h = hazard_fn(model, rho);
  auto weight = [&](double z) {
    const double d = f(z) - fy;
    return d == 0.0 ? 0.0 : d * h(z);
  };
  const auto breaks = support_breaks(f);
  const RunningResult r = integrate_running(weight, h, y, f.hi, spec, breaks);
  if (r.status == QuadStatus::diverged)
    throw NumericalError("generator integral did not settle in the tail");
  double tail = 0.0;
  // Beyond the support only the -f(y) part survives; its integral is a
  // difference of survival values.
  if (std::isfinite(f.hi) && fy != 0.0)
    tail = -fy * (std::exp(-r.hazard_integral) - escape);
  return {rate * (r.value + tail), rate * r.err_estimate};
}

LawValue jump_measure_density(const DiffusionModel& model, double rho, double y,
                              double z, const QuadSpec& spec) {
  require_positive(rho, "rho");
  require_conditional_level(model, y, rho);
  require_positive(z, "z");
  const QuadResult r = hazard_integral(model, rho, y, y + z, spec);
  const double val =
      jump_rate(model, rho, y) * drawdown_hazard(model, y + z, rho) * exp_neg(r);
  return {val, val * r.err_estimate};
}

LawValue jump_measure_mass(const DiffusionModel& model, double rho, double y,
                           const QuadSpec& spec) {
  require_positive(rho, "rho");
  require_conditional_level(model, y, rho);
  const Integrand h = [&model, rho, y](double z) {
    return drawdown_hazard(model, y + z, rho);
  };
  const RunningResult r = integrate_running(h, h, 0.0, kInf, spec);
  if (r.status == QuadStatus::diverged)
    throw NumericalError("jump measure mass did not settle in the tail");
  const double rate = jump_rate(model, rho, y);
  return {rate * r.value, rate * r.err_estimate};
}

LawValue tplus_survival(const DiffusionModel& model, double rho, double delta,
                        double y) {
  require_sizes(rho, delta, true);
  require_conditional_level(model, y, delta);
  return {std::exp(model.log_scale_diff(y - rho, y) -
                   model.log_scale_diff(y - delta, y)),
          0.0};
}

LawValue tminus_cdf(const DiffusionModel& model, double rho, double delta,
                    double y, const QuadSpec& spec) {
  require_origin_convention(model, "tminus_cdf");
  require_positive(rho, "rho");
  require_positive(delta, "delta");
  require(delta < rho, "tminus_cdf needs 0 < delta < rho");
  require(y >= 0.0 && std::isfinite(y), "tminus_cdf needs y >= 0");
  if (y == 0.0) return {1.0, 0.0};
  // One integral of the hazard difference; the two exponents nearly cancel
  // as delta -> rho.
  auto diff = [&](double z) {
    return drawdown_hazard(model, z, delta) - drawdown_hazard(model, z, rho);
  };
  const QuadResult r = integrate(diff, 0.0, y, spec);
  const double val = std::exp(-r.value);
  return {val, val * r.err_estimate};
}

LawValue jump_time_size_joint(const DiffusionModel& model, double rho,
                              double delta, double y, double z,
                              const QuadSpec& spec) {
  require_sizes(rho, delta, true);
  require_conditional_level(model, y, delta);
  require(z >= 0.0, "jump size z must be nonnegative");
  const double log_head = model.log_scale_diff(y - rho, y);
  QuadSpec inner = spec;
  inner.rel_tol = std::min(spec.rel_tol, 1e-12);
  inner.abs_tol = std::min(spec.abs_tol, 1e-14);
  // T+ density in u times P(J > z | T+ = u).
  auto integrand = [&](double u) {
    double h = 0.0;
    if (z > 0.0) {
      const QuadResult r = hazard_integral(model, u, y, y + z, inner);
      if (r.diverged()) return 0.0;
      h = r.value;
    }
    return std::exp(log_head + model.log_scale_deriv(y - u) -
                    2.0 * model.log_scale_diff(y - u, y) - h);
  };
  const QuadResult r = integrate(integrand, rho, delta, spec);
  return {r.value, r.err_estimate};
}

LawValue dminus_cond_cdf(const DiffusionModel& model, double a, double b,
                         double delta, double rho, const QuadSpec& spec) {
  require_origin_convention(model, "dminus_cond_cdf");
  require(b > 0.0 && a > b, "dminus laws need a > b > 0");
  require_positive(delta, "delta");
  require_positive(rho, "rho");
  if (delta < rho) return {0.0, 0.0};
  const QuadResult r = hazard_integral(model, delta, b, a, spec);
  const double val = exp_neg(r);
  return {val, val * r.err_estimate};
}

LawValue dminus_joint_cdf(const DiffusionModel& model, double a, double b,
                          double delta, double rho, const QuadSpec& spec) {
  require_origin_convention(model, "dminus_joint_cdf");
  require(b > 0.0 && a > b, "dminus laws need a > b > 0");
  require_sizes(rho, delta, false);
  const QuadResult first = hazard_integral(model, rho, 0.0, b, spec);
  const QuadResult second = hazard_integral(model, delta, b, a, spec);
  const double val = std::exp(-first.value - second.value);
  return {val, val * (first.err_estimate + second.err_estimate)};
}

LawValue dminus_density(const DiffusionModel& model, double a, double delta,
                        const QuadSpec& spec) {
  require_origin_convention(model, "dminus_density");
  require_positive(a, "a");
  require_positive(delta, "delta");
  auto rate = [&](double z) {
    return std::exp(model.log_scale_deriv(z - delta) + model.log_scale_deriv(z) -
                    2.0 * model.log_scale_diff(z - delta, z));
  };
  const QuadResult lead = integrate(rate, 0.0, a, spec);
  const QuadResult haz = hazard_integral(model, delta, 0.0, a, spec);
  const double s = exp_neg(haz);
  const double val = lead.value * s;
  return {val, s * lead.err_estimate + val * haz.err_estimate};
}

LawValue holding_survival(const DiffusionModel& model, double rho, double y,
                          double t) {
  require_positive(rho, "rho");
  require_conditional_level(model, y, rho);
  require(t >= 0.0, "holding time t must be nonnegative");
  if (t == 0.0) return {1.0, 0.0};
  if (!(y - rho - t > model.lower())) return {0.0, 0.0};
  return {std::exp(model.log_scale_diff(y - rho, y) -
                   model.log_scale_diff(y - rho - t, y)),
          0.0};
}

LawValue holding_hazard(const DiffusionModel& model, double rho, double y) {
  require_positive(rho, "rho");
  require_conditional_level(model, y, rho);
  return {jump_rate(model, rho, y), 0.0};
}

}  // namespace ddk
