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

// Exactly solvable models. Scale increments and eigenfunctions are written
// in log form so that laws can be evaluated far out in the tail.

#include <cmath>
#include <string>

#include "ddk/errors.hpp"
#include "ddk/model.hpp"

namespace ddk {
namespace {

std::vector<double> with_defaults(std::span<const double> given,
                                  const CatalogEntryInfo& info) {
  require(given.size() <= info.default_params.size(),
          "too many parameters for model " + info.id);
  std::vector<double> out(info.default_params);
  for (std::size_t i = 0; i < given.size(); ++i) out[i] = given[i];
  for (double p : out) require(std::isfinite(p), "model parameters must be finite");
  return out;
}

// Brownian motion with drift mu >= 0 and volatility sigma on the real line.
// Scale S(z) = (1 - e^{-gz})/g with g = 2 mu / sigma^2 (S(z) = z when g = 0).
DiffusionModel arithmetic_bm(std::string id, std::vector<double> params,
                             double mu, double sigma) {
  require(sigma > 0.0, "sigma must be positive");
  require(mu >= 0.0,
          "drift must be nonnegative (negative drift is neither Class 1 nor 2)");
  const double g = 2.0 * mu / (sigma * sigma);
  const double s2 = sigma * sigma;
  ModelFunctions f;
  if (g == 0.0) {
    f.scale = [](double z) { return z; };
    f.log_scale_deriv = [](double) { return 0.0; };
    f.log_scale_diff = [](double a, double b) {
      return b == kInf ? kInf : std::log(b - a);
    };
  } else {
    f.scale = [g](double z) { return -std::expm1(-g * z) / g; };
    f.log_scale_deriv = [g](double z) { return -g * z; };
    f.log_scale_diff = [g](double a, double b) {
      if (b == kInf) return -g * a - std::log(g);
      return -g * a + log1m_exp(g * (b - a)) - std::log(g);
    };
  }
  f.speed_density = [g, s2](double z) { return 2.0 * std::exp(g * z) / s2; };
  f.log_basis = [mu, s2, g](double alpha, double z) {
    const double disc = std::sqrt(mu * mu + 2.0 * alpha * s2);
    const double up = 2.0 * alpha / (mu + disc);
    const double down = -(mu + disc) / s2;
    const double inv_sd = std::exp(g * z);
    return LogBasis{up * z, down * z, up * inv_sd, down * inv_sd};
  };
  f.wronskian = [mu, s2](double alpha) {
    return 2.0 * std::sqrt(mu * mu + 2.0 * alpha * s2) / s2;
  };
  f.log_basis_ratio = [mu, s2](double alpha, double, double delta) {
    return -2.0 * std::sqrt(mu * mu + 2.0 * alpha * s2) / s2 * delta;
  };
  Dynamics dyn;
  dyn.kind = Dynamics::Kind::arithmetic;
  dyn.mu = mu;
  dyn.sigma = sigma;
  const BoundaryClass cls = g == 0.0 ? BoundaryClass::k1a : BoundaryClass::k2a;
  const double s_inf = g == 0.0 ? kInf : 1.0 / g;
  return DiffusionModel(std::move(id), std::move(params), kUnboundedBelow, cls,
                        s_inf, std::move(f), dyn);
}

DiffusionModel reflected_bm(std::vector<double> params) {
  ModelFunctions f;
  f.scale = [](double z) { return z; };
  f.log_scale_deriv = [](double) { return 0.0; };
  f.log_scale_diff = [](double a, double b) {
    return b == kInf ? kInf : std::log(b - a);
  };
  f.speed_density = [](double) { return 2.0; };
  f.log_basis = [](double alpha, double z) {
    const double k = std::sqrt(2.0 * alpha);
    return LogBasis{log_cosh(k * z), -k * z, k * std::tanh(k * z), -k};
  };
  f.wronskian = [](double alpha) { return std::sqrt(2.0 * alpha); };
  // cosh(k(y - d)) / cosh(ky) = cosh(kd) - tanh(ky) sinh(kd).
  f.log_basis_ratio = [](double alpha, double y, double delta) {
    const double k = std::sqrt(2.0 * alpha);
    const double h = std::sinh(0.5 * k * delta);
    return -k * delta + std::log1p(2.0 * h * h - std::tanh(k * y) * std::sinh(k * delta));
  };
  Dynamics dyn;
  dyn.reflect_at_lower = true;
  return DiffusionModel("rbm", std::move(params), 0.0, BoundaryClass::k1b, kInf,
                        std::move(f), dyn);
}

// dX = mu X dt + sigma X dW on (0, inf). With nu = 2 mu / sigma^2 the scale
// derivative is z^{-nu}; nu = 1 is Class 1a, nu > 1 is Class 2a.
DiffusionModel geometric_bm(std::vector<double> params, double mu,
                            double sigma) {
  require(sigma > 0.0, "sigma must be positive");
  const double s2 = sigma * sigma;
  const double nu = 2.0 * mu / s2;
  require(nu >= 1.0,
          "geometric BM needs mu >= sigma^2/2 (otherwise it tends to 0)");
  const double p = 1.0 - nu;
  ModelFunctions f;
  if (p == 0.0) {
    f.scale = [](double z) { return std::log(z); };
  } else {
    f.scale = [p](double z) { return std::pow(z, p) / p; };
  }
  f.log_scale_deriv = [nu](double z) { return -nu * std::log(z); };
  f.log_scale_diff = [p](double a, double b) {
    if (b == kInf) {
      if (p == 0.0) return kInf;
      return p * std::log(a) - std::log(-p);
    }
    const double len = std::log(b / a);
    if (p == 0.0) return std::log(len);
    return p * std::log(a) + log1m_exp(-p * len) - std::log(-p);
  };
  f.speed_density = [nu, s2](double z) {
    return 2.0 * std::pow(z, nu - 2.0) / s2;
  };
  const double c = mu - 0.5 * s2;
  f.log_basis = [c, s2, nu](double alpha, double z) {
    const double disc = std::sqrt(c * c + 2.0 * alpha * s2);
    const double up = 2.0 * alpha / (c + disc);
    const double down = -(c + disc) / s2;
    const double lz = std::log(z);
    const double inv_sd_over_z = std::exp((nu - 1.0) * lz);
    return LogBasis{up * lz, down * lz, up * inv_sd_over_z,
                    down * inv_sd_over_z};
  };
  f.wronskian = [c, s2](double alpha) {
    return 2.0 * std::sqrt(c * c + 2.0 * alpha * s2) / s2;
  };
  f.log_basis_ratio = [c, s2](double alpha, double y, double delta) {
    const double gap = 2.0 * std::sqrt(c * c + 2.0 * alpha * s2) / s2;
    return gap * std::log1p(-delta / y);
  };
  Dynamics dyn;
  dyn.kind = Dynamics::Kind::geometric;
  dyn.mu = mu;
  dyn.sigma = sigma;
  const BoundaryClass cls = p == 0.0 ? BoundaryClass::k1a : BoundaryClass::k2a;
  const double s_inf = p == 0.0 ? kInf : 0.0;
  return DiffusionModel("gbm", std::move(params), 0.0, cls, s_inf, std::move(f),
                        dyn);
}

// l = 0, S(z) = 1 - exp(-e^z): Class 2b with positive escape probability.
DiffusionModel example33(std::vector<double> params) {
  ModelFunctions f;
  f.scale = [](double z) { return -std::expm1(-std::exp(z)); };
  f.log_scale_deriv = [](double z) { return z - std::exp(z); };
  f.log_scale_diff = [](double a, double b) {
    const double ea = std::exp(a);
    if (b == kInf) return -ea;
    return -ea + log1m_exp(ea * std::expm1(b - a));
  };
  f.speed_density = [](double z) { return 2.0 * std::exp(std::exp(z) - z); };
  return DiffusionModel("example33", std::move(params), 0.0, BoundaryClass::k2b,
                        1.0, std::move(f));
}

// l = 0, S(z) = 1 - e^{-z}: Brownian motion with drift 1/2 reflected at 0.
DiffusionModel example34(std::vector<double> params) {
  ModelFunctions f;
  f.scale = [](double z) { return -std::expm1(-z); };
  f.log_scale_deriv = [](double z) { return -z; };
  f.log_scale_diff = [](double a, double b) {
    if (b == kInf) return -a;
    return -a + log1m_exp(b - a);
  };
  f.speed_density = [](double z) { return 2.0 * std::exp(z); };
  f.log_basis = [](double alpha, double z) {
    const double disc = std::sqrt(0.25 + 2.0 * alpha);
    const double up = -0.5 + disc;
    const double down = -0.5 - disc;
    const double gap = up - down;
    const double decay = std::exp(-gap * z);
    // psi = (-down e^{up z} + up e^{down z}) / gap, psi'(0) = 0.
    const double log_psi = up * z + std::log(-down + up * decay) - std::log(gap);
    const double dlog_psi = -down * up * (-std::expm1(-gap * z)) / (-down + up * decay);
    const double inv_sd = std::exp(z);
    return LogBasis{log_psi, down * z, dlog_psi * inv_sd, down * inv_sd};
  };
  f.wronskian = [](double alpha) { return 0.5 + std::sqrt(0.25 + 2.0 * alpha); };
  f.log_basis_ratio = [](double alpha, double y, double delta) {
    const double disc = std::sqrt(0.25 + 2.0 * alpha);
    const double up = -0.5 + disc;
    const double down = -0.5 - disc;
    const double gap = up - down;
    const double decay = std::exp(-gap * y);
    return -gap * delta +
           std::log1p(up * decay * std::expm1(gap * delta) / (-down + up * decay));
  };
  Dynamics dyn;
  dyn.mu = 0.5;
  dyn.reflect_at_lower = true;
  return DiffusionModel("example34", std::move(params), 0.0, BoundaryClass::k2b,
                        1.0, std::move(f), dyn);
}

}  // namespace

const std::vector<CatalogEntryInfo>& model_catalog() {
  static const std::vector<CatalogEntryInfo> entries = {
      {"bm_std", "standard Brownian motion, S(z) = z (Class 1a)", {}, {}},
      {"bm_drift", "Brownian motion with drift mu >= 0 (Class 2a for mu > 0)",
       {"mu", "sigma"}, {1.0, 1.0}},
      {"rbm", "Brownian motion reflected at 0, S(z) = z (Class 1b)", {}, {}},
      {"gbm", "geometric Brownian motion, mu >= sigma^2/2 (Class 1a or 2a)",
       {"mu", "sigma"}, {0.5, 1.0}},
      {"example33", "l = 0, S(z) = 1 - exp(-e^z) (Class 2b), no eigenfunctions",
       {}, {}},
      {"example34", "l = 0, S(z) = 1 - e^{-z}, reflected BM with drift 1/2 (Class 2b)",
       {}, {}},
  };
  return entries;
}

DiffusionModel build_model(std::string_view model_id,
                           std::span<const double> params) {
  for (const auto& info : model_catalog()) {
    if (info.id != model_id) continue;
    std::vector<double> p = with_defaults(params, info);
    if (info.id == "bm_std") return arithmetic_bm("bm_std", p, 0.0, 1.0);
    if (info.id == "bm_drift") {
      const double mu = p[0], sigma = p[1];
      return arithmetic_bm("bm_drift", std::move(p), mu, sigma);
    }
    if (info.id == "rbm") return reflected_bm(std::move(p));
    if (info.id == "gbm") {
      const double mu = p[0], sigma = p[1];
      return geometric_bm(std::move(p), mu, sigma);
    }
    if (info.id == "example33") return example33(std::move(p));
    if (info.id == "example34") return example34(std::move(p));
  }
  throw DomainError("unknown model id '" + std::string(model_id) + "'");
}

}  // namespace ddk
