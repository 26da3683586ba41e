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

#include "ddk/curve.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ddk/errors.hpp"
#include "ddk/jump.hpp"

namespace ddk {
namespace {

double num(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

LawValue value_only(double v) { return {v, 0.0}; }

std::vector<LawSpec> build_registry() {
  using Q = const LawQuery&;
  using M = const DiffusionModel&;
  using S = const QuadSpec&;
  const LawQuery x0 = {{"x", 0.0}};
  std::vector<LawSpec> r;
  r.push_back({"hitting", "E_x exp(-alpha H_y)", {"alpha", "y"}, x0,
               Codomain::probability, [](M m, Q q, S) {
                 return value_only(hitting_lt(m, q.at("alpha"), q.at("x"), q.at("y")));
               }});
  r.push_back({"b-alpha", "determinant ratio b_alpha(y; delta)",
               {"alpha", "y", "delta"}, {}, Codomain::nonnegative, [](M m, Q q, S) {
                 return value_only(b_alpha(m, q.at("alpha"), q.at("y"), q.at("delta")));
               }});
  r.push_back({"c-alpha", "determinant ratio c_alpha(y; delta)",
               {"alpha", "y", "delta"}, {}, Codomain::nonnegative, [](M m, Q q, S) {
                 return value_only(c_alpha(m, q.at("alpha"), q.at("y"), q.at("delta")));
               }});
  r.push_back({"survival-m", "P_x(M_{theta_delta} > y)", {"delta", "y"}, x0,
               Codomain::probability, [](M m, Q q, S s) {
                 return survival_max_at_drawdown(m, q.at("x"), q.at("delta"),
                                                 q.at("y"), s);
               }});
  r.push_back({"density-m", "density of M_{theta_rho} at y", {"rho", "y"}, x0,
               Codomain::nonnegative, [](M m, Q q, S s) {
                 return density_max_at_drawdown(m, q.at("x"), q.at("rho"), q.at("y"), s);
               }});
  r.push_back({"lehoczky", "E_x exp(-alpha theta_delta - beta M_{theta_delta})",
               {"delta", "alpha"}, {{"x", 0.0}, {"beta", 0.0}},
               Codomain::probability, [](M m, Q q, S s) {
                 return lehoczky_lt(m, q.at("x"), q.at("delta"), q.at("alpha"),
                                    q.at("beta"), s);
               }});
  r.push_back({"escape", "P_x(theta_delta = inf)", {"delta"}, x0,
               Codomain::probability, [](M m, Q q, S s) {
                 return escape_probability(m, q.at("x"), q.at("delta"), s);
               }});
  r.push_back({"maxdd", "P_x(D^-_{H_eta} < y)", {"eta", "y"}, x0,
               Codomain::probability, [](M m, Q q, S s) {
                 return maxdd_cdf(m, q.at("x"), q.at("eta"), q.at("y"), s);
               }});
  r.push_back({"malyutin", "E_x[exp(-alpha H_eta); D^-_{H_eta} < y]",
               {"eta", "y", "alpha"}, x0, Codomain::probability, [](M m, Q q, S s) {
                 return malyutin_lt(m, q.at("x"), q.at("eta"), q.at("y"),
                                    q.at("alpha"), s);
               }});
  r.push_back({"malyutin-alt", "Malyutin transform through c_alpha",
               {"eta", "y", "alpha"}, x0, Codomain::probability, [](M m, Q q, S s) {
                 return malyutin_lt_alt(m, q.at("x"), q.at("eta"), q.at("y"),
                                        q.at("alpha"), s);
               }});
  r.push_back({"general-phi", "P_x(M_{theta_phi} > y), phi(z) = phi0 + phi1 z",
               {"y", "phi0"}, {{"x", 0.0}, {"phi1", 0.0}}, Codomain::probability,
               [](M m, Q q, S s) {
                 const double p0 = q.at("phi0"), p1 = q.at("phi1");
                 return general_drawdown_survival(
                     m, q.at("x"), [p0, p1](double z) { return p0 + p1 * z; },
                     q.at("y"), s);
               }});
  r.push_back({"kernel", "Q_{rho,delta}(y; 1_(fa,fb))", {"rho", "delta", "y", "fa"},
               {{"fb", kInf}}, Codomain::probability, [](M m, Q q, S s) {
                 return kernel_apply(m, q.at("rho"), q.at("delta"), q.at("y"),
                                     TestFunction::indicator(q.at("fa"), q.at("fb")), s);
               }});
  r.push_back({"cond", "P_0(M_{theta_delta} > v | M_{theta_rho} = y)",
               {"rho", "delta", "y", "v"}, {}, Codomain::probability,
               [](M m, Q q, S s) {
                 return cond_survival(m, q.at("rho"), q.at("delta"), q.at("y"),
                                      q.at("v"), s);
               }});
  r.push_back({"joint", "P_0(M_{theta_rho} > y, M_{theta_delta} > v)",
               {"rho", "delta", "y", "v"}, {}, Codomain::probability,
               [](M m, Q q, S s) {
                 return joint_survival(m, q.at("rho"), q.at("delta"), q.at("y"),
                                       q.at("v"), s);
               }});
  r.push_back({"generator", "A_rho 1_(fa,fb) (y)", {"rho", "y", "fa"},
               {{"fb", kInf}}, Codomain::real, [](M m, Q q, S s) {
                 return generator_apply(m, q.at("rho"), q.at("y"),
                                        TestFunction::indicator(q.at("fa"), q.at("fb")),
                                        s);
               }});
  r.push_back({"measure", "jump measure density nu_{y,rho} at z", {"rho", "y", "z"},
               {}, Codomain::nonnegative, [](M m, Q q, S s) {
                 return jump_measure_density(m, q.at("rho"), q.at("y"), q.at("z"), s);
               }});
  r.push_back({"measure-mass", "total mass of nu_{y,rho}", {"rho", "y"}, {},
               Codomain::nonnegative, [](M m, Q q, S s) {
                 return jump_measure_mass(m, q.at("rho"), q.at("y"), s);
               }});
  r.push_back({"tplus", "P_0(T+_rho > delta | M_{theta_rho} = y)",
               {"rho", "delta", "y"}, {}, Codomain::probability, [](M m, Q q, S) {
                 return tplus_survival(m, q.at("rho"), q.at("delta"), q.at("y"));
               }});
  r.push_back({"tminus", "P_0(T-_rho < delta | M_{theta_rho} = y)",
               {"rho", "delta", "y"}, {}, Codomain::probability, [](M m, Q q, S s) {
                 return tminus_cdf(m, q.at("rho"), q.at("delta"), q.at("y"), s);
               }});
  r.push_back({"jumpjoint", "P_0(T+_rho < delta, J_rho > z | M_{theta_rho} = y)",
               {"rho", "delta", "y", "z"}, {}, Codomain::probability,
               [](M m, Q q, S s) {
                 return jump_time_size_joint(m, q.at("rho"), q.at("delta"), q.at("y"),
                                             q.at("z"), s);
               }});
  r.push_back({"dminus-cond", "P_0(D^-_{H_a} < delta | D^-_{H_b} = rho)",
               {"a", "b", "delta", "rho"}, {}, Codomain::probability,
               [](M m, Q q, S s) {
                 return dminus_cond_cdf(m, q.at("a"), q.at("b"), q.at("delta"),
                                        q.at("rho"), s);
               }});
  r.push_back({"dminus-joint", "P_0(D^-_{H_a} < delta, D^-_{H_b} < rho)",
               {"a", "b", "delta", "rho"}, {}, Codomain::probability,
               [](M m, Q q, S s) {
                 return dminus_joint_cdf(m, q.at("a"), q.at("b"), q.at("delta"),
                                         q.at("rho"), s);
               }});
  r.push_back({"dminus-density", "density of D^-_{H_a} at delta", {"a", "delta"},
               {}, Codomain::nonnegative, [](M m, Q q, S s) {
                 return dminus_density(m, q.at("a"), q.at("delta"), s);
               }});
  r.push_back({"holding", "phi_rho(t) = P_0(T+_rho > rho + t | M_{theta_rho} = y)",
               {"rho", "y", "t"}, {}, Codomain::probability, [](M m, Q q, S) {
                 return holding_survival(m, q.at("rho"), q.at("y"), q.at("t"));
               }});
  r.push_back({"holding-hazard", "S'(y - rho) / (S(y) - S(y - rho))", {"rho", "y"},
               {}, Codomain::nonnegative, [](M m, Q q, S) {
                 return holding_hazard(m, q.at("rho"), q.at("y"));
               }});
  return r;
}

}  // namespace

void CurveTable::validate() const {
  require(values.size() == grid.size() && err.size() == grid.size(),
          "curve columns have different lengths");
  for (std::size_t i = 1; i < grid.size(); ++i)
    require(grid[i] > grid[i - 1], "curve grid must be strictly increasing");
}

const std::vector<LawSpec>& law_registry() {
  static const std::vector<LawSpec> registry = build_registry();
  return registry;
}

const LawSpec& find_law(std::string_view id) {
  for (const auto& law : law_registry())
    if (law.id == id) return law;
  throw DomainError("unknown law id '" + std::string(id) + "'");
}

LawQuery complete_query(const LawSpec& law, const LawQuery& given) {
  LawQuery q = law.defaults;
  for (const auto& [k, v] : given) q[k] = v;
  for (const auto& name : law.required)
    if (!q.count(name))
      throw DomainError("law " + law.id + " needs parameter '" + name + "'");
  for (const auto& [k, v] : q)
    if (std::isnan(v)) throw DomainError("parameter '" + k + "' is NaN");
  return q;
}

CurveTable evaluate_curve(const DiffusionModel& model, std::string_view law_id,
                          const LawQuery& query, std::string_view grid_param,
                          const std::vector<double>& grid, const QuadSpec& spec) {
  spec.validate();
  const LawSpec& law = find_law(law_id);
  LawQuery q = query;
  q[std::string(grid_param)] = grid.empty() ? 0.0 : grid.front();
  q = complete_query(law, q);

  CurveTable t;
  t.law_id = law.id;
  t.model_id = model.id();
  t.model_params.assign(model.params().begin(), model.params().end());
  t.query = q;
  t.query.erase(std::string(grid_param));
  t.grid_param = std::string(grid_param);
  t.grid = grid;
  t.meta["source"] = "analytic";
  for (std::size_t i = 1; i < grid.size(); ++i)
    require(grid[i] > grid[i - 1], "curve grid must be strictly increasing");
  for (double g : grid) {
    q[std::string(grid_param)] = g;
    const LawValue v = law.eval(model, q, spec);
    t.values.push_back(v.value);
    t.err.push_back(v.err);
  }
  t.validate();
  return t;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') == std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      out.push_back(num(text.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return out;
  }
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = text.find(':', c1 + 1);
  require(c2 != std::string_view::npos, "grid must be start:stop:step");
  const double start = num(text.substr(0, c1));
  const double stop = num(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = num(text.substr(c2 + 1));
  require(std::isfinite(start) && std::isfinite(stop), "grid ends must be finite");
  require(step > 0.0 && std::isfinite(step), "grid step must be positive");
  require(stop >= start, "grid stop must not be below start");
  const double span = (stop - start) / step;
  require(span < 1e7, "grid has too many points");
  const auto n = static_cast<long>(std::floor(span + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

}  // namespace ddk
