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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddk/numeric.hpp"

namespace ddk {

/// Recurrent (1) vs transient (2) diffusions on (l, +inf); case b has a
/// finite reflecting lower endpoint with S(l) > -inf.
enum class BoundaryClass { k1a, k1b, k2a, k2b };

std::string_view to_string(BoundaryClass c);
inline bool is_recurrent(BoundaryClass c) {
  return c == BoundaryClass::k1a || c == BoundaryClass::k1b;
}
inline bool is_reflecting(BoundaryClass c) {
  return c == BoundaryClass::k1b || c == BoundaryClass::k2b;
}

/// Log-space view of the alpha-eigenfunctions at one level. The slopes are
/// scale derivatives divided by the function value, i.e. psi^-/psi and
/// phi^-/phi, so every ratio the laws need is formed without overflow.
struct LogBasis {
  double log_psi = 0.0;
  double log_phi = 0.0;
  double psi_slope = 0.0;  // >= 0
  double phi_slope = 0.0;  // <= 0
};

/// Plain values of (psi, psi^-, phi, phi^-) and the Wronskian at one level.
/// May overflow for large |z|; the law code works from LogBasis instead.
struct AlphaBasis {
  double alpha = 0.0;
  double psi = 0.0;
  double psi_minus = 0.0;
  double phi = 0.0;
  double phi_minus = 0.0;
  double w = 0.0;
};

/// How paths of the model are simulated. Arithmetic and geometric kinds use
/// exact Gaussian increments; general uses Euler-Maruyama on drift/vol.
struct Dynamics {
  enum class Kind { arithmetic, geometric, general };
  Kind kind = Kind::arithmetic;
  double mu = 0.0;
  double sigma = 1.0;
  std::function<double(double)> drift;
  std::function<double(double)> vol;
  bool reflect_at_lower = false;
};

/// The evaluators a model is assembled from. Only scale and
/// log_scale_deriv are mandatory.
struct ModelFunctions {
  std::function<double(double)> scale;
  std::function<double(double)> log_scale_deriv;
  /// log(S(b) - S(a)) for l <= a < b <= +inf; defaults to the plain
  /// difference of scale values.
  std::function<double(double, double)> log_scale_diff;
  std::function<double(double)> speed_density;
  /// (alpha, z) -> log-space eigenfunctions, alpha > 0.
  std::function<LogBasis(double, double)> log_basis;
  /// Closed-form Wronskian alpha -> w_alpha, if known.
  std::function<double(double)> wronskian;
  /// (alpha, y, delta) -> log[phi(y) psi(y - delta) / (phi(y - delta) psi(y))],
  /// accurate as delta -> 0. Optional; the default subtracts log_basis values.
  std::function<double(double, double, double)> log_basis_ratio;
};

/// A one-dimensional diffusion on (l, +inf) described by its scale function,
/// optional speed density and optional alpha-eigenfunctions. Immutable and
/// cheap to copy; evaluators are shared and must be reentrant.
class DiffusionModel {
 public:
  DiffusionModel(std::string id, std::vector<double> params, double lower,
                 BoundaryClass boundary_class, double scale_at_infinity,
                 ModelFunctions functions,
                 std::optional<Dynamics> dynamics = std::nullopt);

  const std::string& id() const { return state_->id; }
  std::span<const double> params() const { return state_->params; }
  double lower() const { return state_->lower; }
  double upper() const { return kInf; }
  BoundaryClass boundary_class() const { return state_->boundary_class; }
  /// S(+inf); +inf for Class 1.
  double scale_at_infinity() const { return state_->scale_at_infinity; }
  /// S(l); -inf unless the lower endpoint is reflecting.
  double scale_at_lower() const;

  bool contains(double z) const;

  double scale(double z) const;
  double scale_deriv(double z) const;
  double log_scale_deriv(double z) const;
  /// S(b) - S(a) for a <= b, computed without cancellation where the model
  /// provides a closed form. a at or below an unreachable l gives +inf.
  double scale_diff(double a, double b) const;
  double log_scale_diff(double a, double b) const;

  std::optional<double> speed_density(double z) const;

  bool has_basis() const { return static_cast<bool>(state_->fns.log_basis); }
  /// Eigenfunctions in log form. alpha == 0 is served for Class 2 with
  /// psi_0 = 1 and phi_0 = S(+inf) - S; Class 1 rejects it.
  LogBasis log_basis(double alpha, double z) const;
  std::optional<double> closed_form_wronskian(double alpha) const;
  /// log[phi(y) psi(y - delta) / (phi(y - delta) psi(y))], which lies in
  /// (-inf, 0) for delta > 0.
  double log_basis_ratio(double alpha, double y, double delta) const;

  const std::optional<Dynamics>& dynamics() const { return state_->dynamics; }

 private:
  struct State {
    std::string id;
    std::vector<double> params;
    double lower;
    BoundaryClass boundary_class;
    double scale_at_infinity;
    ModelFunctions fns;
    std::optional<Dynamics> dynamics;
  };
  std::shared_ptr<const State> state_;
};

/// User-supplied model. Derivatives of psi/phi are ordinary z-derivatives;
/// they are converted to scale derivatives internally.
struct CustomModelSpec {
  double lower = kUnboundedBelow;
  BoundaryClass boundary_class = BoundaryClass::k1a;
  double scale_at_infinity = kInf;
  std::function<double(double)> scale;
  std::function<double(double)> scale_deriv;
  std::function<double(double)> speed_density;
  std::function<double(double, double)> psi;
  std::function<double(double, double)> psi_deriv;
  std::function<double(double, double)> phi;
  std::function<double(double, double)> phi_deriv;
  std::optional<Dynamics> dynamics;
  /// Levels used for the monotonicity probe; defaults to a spread over the
  /// domain when empty.
  std::vector<double> probe_levels;
};

DiffusionModel make_custom_model(const CustomModelSpec& spec);

struct CatalogEntryInfo {
  std::string id;
  std::string description;
  std::vector<std::string> param_names;
  std::vector<double> default_params;
};

const std::vector<CatalogEntryInfo>& model_catalog();

/// Builds a catalog model. Missing trailing params take their defaults.
DiffusionModel build_model(std::string_view model_id,
                           std::span<const double> params = {});

AlphaBasis eval_basis(const DiffusionModel& model, double alpha, double z);

/// psi^- phi - psi phi^- evaluated at z; independent of z in exact
/// arithmetic.
double wronskian_at(const DiffusionModel& model, double alpha, double z);

/// E_x[exp(-alpha H_y)], alpha > 0.
double hitting_lt(const DiffusionModel& model, double alpha, double x,
                  double y);

struct ExitTransforms {
  double lower = 0.0;  // E[e^{-alpha H_lower}; H_lower < H_upper]
  double upper = 0.0;  // E[e^{-alpha H_upper}; H_upper < H_lower]
};

/// Two-sided exit transforms from start in (lower, upper). alpha == 0 gives
/// the scale-ratio exit probabilities for every class.
ExitTransforms two_sided_exit_lt(const DiffusionModel& model, double alpha,
                                 double start, double lower, double upper);

}  // namespace ddk
