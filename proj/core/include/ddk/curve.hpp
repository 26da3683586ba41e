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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddk/laws.hpp"
#include "ddk/model.hpp"
#include "ddk/quadrature.hpp"

namespace ddk {

/// Named scalar inputs of a law: x, delta, y, eta, alpha, beta, rho, v, z,
/// t, a, b, and the shape parameters phi0/phi1 (drawdown size
/// phi(z) = phi0 + phi1 z) and fa/fb (test function 1 on (fa, fb)).
using LawQuery = std::map<std::string, double, std::less<>>;

/// A law sampled on a grid of one query parameter.
struct CurveTable {
  std::string law_id;
  std::string model_id;
  std::vector<double> model_params;
  LawQuery query;
  std::string grid_param;
  std::vector<double> grid;
  std::vector<double> values;
  /// Quadrature error estimates, or standard errors for Monte Carlo tables.
  std::vector<double> err;
  /// Provenance: "source" (analytic or mc), seed, paths, step, ...
  std::map<std::string, std::string> meta;

  std::size_t size() const { return grid.size(); }
  /// Throws DomainError unless the grid is strictly increasing and the
  /// columns have equal length.
  void validate() const;
};

enum class Codomain { probability, nonnegative, real };

struct LawSpec {
  std::string id;
  std::string description;
  /// Parameters that must be present (the grid parameter included).
  std::vector<std::string> required;
  /// Optional parameters with their defaults.
  LawQuery defaults;
  Codomain codomain = Codomain::probability;
  std::function<LawValue(const DiffusionModel&, const LawQuery&, const QuadSpec&)>
      eval;
};

/// Every analytic law, in CLI order.
const std::vector<LawSpec>& law_registry();
const LawSpec& find_law(std::string_view id);

/// Fills defaults and checks that required parameters are present.
LawQuery complete_query(const LawSpec& law, const LawQuery& given);

/// Evaluates law_id at every grid point, with query[grid_param] set to the
/// grid value.
CurveTable evaluate_curve(const DiffusionModel& model, std::string_view law_id,
                          const LawQuery& query, std::string_view grid_param,
                          const std::vector<double>& grid,
                          const QuadSpec& spec = {});

/// start:stop:step, inclusive of stop up to rounding.
std::vector<double> parse_grid(std::string_view text);

}  // namespace ddk
