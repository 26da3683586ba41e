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

#include "ddk/tools/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ddk/curve.hpp"
#include "ddk/errors.hpp"
#include "ddk/mc.hpp"
#include "ddk/model.hpp"
#include "ddk/tools/io.hpp"
#include "ddk/tools/validation.hpp"

#ifndef DDK_VERSION_STRING
#define DDK_VERSION_STRING "unknown"
#endif

namespace ddk::cli {
namespace {

constexpr int kUsage = 2;
constexpr int kNumerical = 3;
constexpr int kFailed = 4;

const std::vector<std::string> kParamNames = {"x",   "delta", "y",    "eta",
                                              "alpha", "beta", "rho", "v",
                                              "z",   "t",     "a",    "b",
                                              "phi0", "phi1", "fa",   "fb"};

const std::set<std::string, std::less<>> kJumpLaws = {
    "kernel",     "cond",        "joint",        "generator",     "measure",
    "measure-mass", "tplus",     "tminus",       "jumpjoint",     "dminus-cond",
    "dminus-joint", "dminus-density", "holding", "holding-hazard"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using ConfigMap = std::map<std::string, std::string>;

// [section] headers and key = value lines. Keys are flag names without the
// leading dashes; [model] also accepts id and params.
ConfigMap read_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open config file '" + path + "'");
  ConfigMap out;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      require(line.back() == ']', "config line " + std::to_string(lineno) +
                                      " has an unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos,
            "config line " + std::to_string(lineno) + " is not key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (section == "model" && key == "id") key = "model";
    if (section == "model" && key == "params") key = "model-params";
    out[key] = value;
  }
  return out;
}

// One runnable subcommand. Every option is bound to a string so that the
// command line can be layered over the config file after parsing.
struct Leaf {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  const ConfigMap* config = nullptr;
  std::function<int(Leaf&)> action;

  CLI::Option* add(const std::string& name, const std::string& help) {
    CLI::Option* o = app->add_option("--" + name, values[name], help);
    options[name] = o;
    return o;
  }

  std::optional<std::string> get(const std::string& name) const {
    const auto it = options.find(name);
    if (it == options.end()) return std::nullopt;
    if (it->second->count() > 0) return values.at(name);
    if (config) {
      const auto c = config->find(name);
      if (c != config->end()) return c->second;
    }
    return std::nullopt;
  }
};

double scalar(const std::string& name, const std::string& text) {
  std::vector<double> v;
  try {
    v = parse_grid(text);
  } catch (const DomainError&) {
    throw DomainError(name + " must be a number, got '" + text + "'");
  }
  require(v.size() == 1, name + " must be a single number");
  return v.front();
}

void check_param(const std::string& name, double v) {
  require(!std::isnan(v), name + " must not be NaN");
  if (name == "delta" || name == "rho") require(v > 0.0, name + " must be positive");
  if (name == "alpha" || name == "beta" || name == "t" || name == "z")
    require(v >= 0.0, name + " must be nonnegative");
}

// --- shared option groups -------------------------------------------------

void add_model_flags(Leaf& leaf) {
  leaf.add("model", "model id (see `model list`)");
  leaf.add("model-params", "comma-separated model parameters");
}

void add_quad_flags(Leaf& leaf) {
  leaf.add("rel-tol", "relative quadrature tolerance");
  leaf.add("abs-tol", "absolute quadrature tolerance");
  leaf.add("max-subdiv", "maximum quadrature subdivisions");
  leaf.add("tail", "tail policy fixed:Z or adaptive:g");
}

void add_output_flags(Leaf& leaf) {
  auto* fmt = leaf.add("format", "csv or json");
  auto* csv = leaf.app->add_flag("--csv", "same as --format csv");
  auto* json = leaf.app->add_flag("--json", "same as --format json");
  leaf.options["csv"] = csv;
  leaf.options["json"] = json;
  fmt->excludes(csv)->excludes(json);
  csv->excludes(json);
  leaf.add("output", "output file (default standard output)");
}

void add_param_flags(Leaf& leaf, const std::vector<std::string>& names) {
  for (const auto& n : names) {
    auto* s = leaf.add(n, "law parameter " + n);
    auto* g = leaf.add(n + "-grid", "grid for " + n + ": start:stop:step or a,b,c");
    s->excludes(g);
  }
}

void add_mc_flags(Leaf& leaf) {
  leaf.add("seed", "Philox key");
  leaf.add("paths", "number of paths");
  leaf.add("step", "time step");
  leaf.add("horizon", "maximum simulated time (0 = automatic)");
  leaf.add("scheme", "auto, exact, euler or reflected-euler");
  leaf.add("threads", "worker threads (0 = DRAWDOWN_KIT_THREADS or hardware)");
}

std::string require_value(const Leaf& leaf, const std::string& name) {
  auto v = leaf.get(name);
  require(v.has_value(), "--" + name + " is required");
  return *v;
}

DiffusionModel model_from(const Leaf& leaf) {
  const std::string id = require_value(leaf, "model");
  std::vector<double> params;
  if (auto p = leaf.get("model-params"); p && !p->empty()) {
    std::stringstream ss(*p);
    std::string item;
    while (std::getline(ss, item, ',')) params.push_back(scalar("model-params", trim(item)));
  }
  return build_model(id, params);
}

QuadSpec quad_from(const Leaf& leaf) {
  QuadSpec q;
  if (auto v = leaf.get("rel-tol")) q.rel_tol = scalar("rel-tol", *v);
  if (auto v = leaf.get("abs-tol")) q.abs_tol = scalar("abs-tol", *v);
  if (auto v = leaf.get("max-subdiv")) {
    const double d = scalar("max-subdiv", *v);
    require(d >= 1.0 && d <= 1e7 && d == std::floor(d),
            "max-subdiv must be a positive integer");
    q.max_subdivisions = static_cast<int>(d);
  }
  if (auto v = leaf.get("tail")) {
    const std::string t = *v;
    const auto colon = t.find(':');
    const std::string kind = t.substr(0, colon);
    const bool has_arg = colon != std::string::npos;
    if (kind == "fixed") {
      require(has_arg, "tail fixed needs a truncation point, e.g. fixed:50");
      q.tail = TailPolicy::fixed(scalar("tail", t.substr(colon + 1)));
    } else if (kind == "adaptive") {
      q.tail = has_arg ? TailPolicy::adaptive(scalar("tail", t.substr(colon + 1)))
                       : TailPolicy::adaptive();
    } else {
      throw DomainError("tail must be fixed:Z or adaptive:g");
    }
  }
  q.validate();
  return q;
}

McConfig mc_from(const Leaf& leaf) {
  McConfig c;
  auto whole = [](const std::string& name, const std::string& text, double max) {
    const double d = scalar(name, text);
    require(d >= 0.0 && d <= max && d == std::floor(d),
            name + " must be a nonnegative integer");
    return d;
  };
  if (auto v = leaf.get("seed")) {
    try {
      std::size_t used = 0;
      c.seed = std::stoull(*v, &used, 0);
      require(used == v->size(), "");
    } catch (const std::exception&) {
      throw DomainError("seed must be an unsigned integer");
    }
  }
  if (auto v = leaf.get("paths")) c.n_paths = static_cast<std::int64_t>(whole("paths", *v, 1e12));
  if (auto v = leaf.get("step")) c.step = scalar("step", *v);
  if (auto v = leaf.get("horizon")) c.horizon = scalar("horizon", *v);
  if (auto v = leaf.get("scheme")) {
    std::string name = *v;
    std::replace(name.begin(), name.end(), '-', '_');
    c.scheme = parse_scheme(name);
  }
  if (auto v = leaf.get("threads")) c.threads = static_cast<unsigned>(whole("threads", *v, 4096));
  c.validate();
  return c;
}

struct GridQuery {
  LawQuery query;
  std::string grid_param;
  std::vector<double> grid;
};

// Reads the law parameters and the single grid flag. Sign constraints are
// checked here, before anything else touches the model.
GridQuery query_from(const Leaf& leaf, const LawSpec& law) {
  GridQuery g;
  for (const auto& name : kParamNames) {
    if (auto v = leaf.get(name)) {
      const double d = scalar(name, *v);
      check_param(name, d);
      g.query[name] = d;
    }
    if (auto v = leaf.get(name + "-grid")) {
      require(g.grid_param.empty(), "only one grid flag may be given (--" +
                                        g.grid_param + "-grid and --" + name + "-grid)");
      require(!g.query.count(name), "give either --" + name + " or --" + name + "-grid");
      g.grid_param = name;
      g.grid = parse_grid(*v);
      for (double x : g.grid) check_param(name, x);
    }
  }
  if (g.grid_param.empty()) {
    g.grid_param = law.required.back();
    require(g.query.count(g.grid_param) > 0,
            "law " + law.id + " needs --" + g.grid_param + " or --" + g.grid_param + "-grid");
    g.grid = {g.query.at(g.grid_param)};
    g.query.erase(g.grid_param);
  }
  return g;
}

io::Format format_from(const Leaf& leaf) {
  if (leaf.options.at("json")->count() > 0) return io::Format::json;
  if (leaf.options.at("csv")->count() > 0) return io::Format::csv;
  if (auto f = leaf.get("format")) return io::parse_format(*f);
  return io::Format::csv;
}

// Writes through `emit` to --output, or to `out` when none is given.
void emit_to(const Leaf& leaf, std::ostream& out,
             const std::function<void(std::ostream&)>& emit) {
  if (auto path = leaf.get("output"); path && *path != "-") {
    std::ofstream f(*path, std::ios::binary);
    require(static_cast<bool>(f), "cannot open output file '" + *path + "'");
    emit(f);
    f.flush();
    if (!f) throw NumericalError("failed writing '" + *path + "'");
    return;
  }
  emit(out);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

nlohmann::ordered_json jnum(double v) {
  if (std::isfinite(v)) return v;
  return io::format_double(v);
}

std::string join_params(std::span<const double> p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ';';
    s += io::format_double(p[i]);
  }
  return s;
}

int report(std::ostream& out, const std::vector<validation::CriterionResult>& results) {
  bool ok = true;
  for (const auto& r : results) {
    out << validation::format_line(r) << '\n' << std::flush;
    ok = ok && r.pass;
  }
  return ok ? 0 : kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drawdown laws of one-dimensional diffusions", "drawdown-kit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DDK_VERSION_STRING);
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file with [sections]");

  ConfigMap config;
  std::vector<std::unique_ptr<Leaf>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto l = std::make_unique<Leaf>();
    l->app = parent->add_subcommand(name, help);
    l->app->fallthrough();
    l->config = &config;
    leaves.push_back(std::move(l));
    return leaves.back().get();
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };

  // model
  CLI::App* model_cmd = group("model", "model catalog");
  {
    Leaf* l = leaf(model_cmd, "list", "list catalog models");
    l->action = [&out](Leaf&) {
      out << "id,class,params,description\n";
      for (const auto& m : model_catalog()) {
        const DiffusionModel built = build_model(m.id);
        std::string params;
        for (std::size_t i = 0; i < m.param_names.size(); ++i) {
          if (i) params += ';';
          params += m.param_names[i] + '=' + io::format_double(m.default_params[i]);
        }
        out << m.id << ',' << to_string(built.boundary_class()) << ','
            << csv_field(params) << ',' << csv_field(m.description) << '\n';
      }
      return 0;
    };
  }
  {
    Leaf* l = leaf(model_cmd, "describe", "show one model");
    add_model_flags(*l);
    l->action = [&out](Leaf& self) {
      const DiffusionModel m = model_from(self);
      out << "key,value\n";
      out << "id," << m.id() << '\n';
      out << "params," << join_params(m.params()) << '\n';
      out << "class," << to_string(m.boundary_class()) << '\n';
      out << "lower," << io::format_double(m.lower()) << '\n';
      out << "scale_at_lower," << io::format_double(m.scale_at_lower()) << '\n';
      out << "scale_at_infinity," << io::format_double(m.scale_at_infinity()) << '\n';
      out << "eigenfunctions," << (m.has_basis() ? "yes" : "no") << '\n';
      std::string dyn = "none";
      if (m.dynamics()) {
        switch (m.dynamics()->kind) {
          case Dynamics::Kind::arithmetic: dyn = "arithmetic"; break;
          case Dynamics::Kind::geometric: dyn = "geometric"; break;
          case Dynamics::Kind::general: dyn = "general"; break;
        }
        if (m.dynamics()->reflect_at_lower) dyn += " reflected";
      }
      out << "dynamics," << dyn << '\n';
      return 0;
    };
  }

  // law / jump
  CLI::App* law_cmd = group("law", "drawdown laws on a grid");
  CLI::App* jump_cmd = group("jump", "jump structure of the maximum at drawdown");
  for (const LawSpec& spec : law_registry()) {
    CLI::App* parent = kJumpLaws.count(spec.id) ? jump_cmd : law_cmd;
    Leaf* l = leaf(parent, spec.id, spec.description);
    std::vector<std::string> names;
    for (const auto& n : kParamNames)
      if (std::find(spec.required.begin(), spec.required.end(), n) != spec.required.end() ||
          spec.defaults.count(n))
        names.push_back(n);
    add_model_flags(*l);
    add_param_flags(*l, names);
    add_quad_flags(*l);
    add_output_flags(*l);
    const std::string id = spec.id;
    l->action = [&out, id](Leaf& self) {
      const LawSpec& law = find_law(id);
      const GridQuery g = query_from(self, law);
      const QuadSpec quad = quad_from(self);
      const io::Format fmt = format_from(self);
      const DiffusionModel m = model_from(self);
      const CurveTable t = evaluate_curve(m, id, g.query, g.grid_param, g.grid, quad);
      emit_to(self, out, [&](std::ostream& o) { io::write_table(o, t, fmt); });
      return 0;
    };
  }

  // mc
  CLI::App* mc_cmd = group("mc", "Monte Carlo path oracle");
  {
    Leaf* l = leaf(mc_cmd, "estimate", "empirical curve from simulated paths");
    l->add("law", "survival-m, maxdd, lehoczky or malyutin");
    add_model_flags(*l);
    add_param_flags(*l, kParamNames);
    add_mc_flags(*l);
    add_output_flags(*l);
    l->action = [&out](Leaf& self) {
      const LawSpec& law = find_law(require_value(self, "law"));
      const GridQuery g = query_from(self, law);
      const McConfig cfg = mc_from(self);
      const io::Format fmt = format_from(self);
      const DiffusionModel m = model_from(self);
      const CurveTable t = estimate_curve(m, cfg, law.id, g.query, g.grid_param, g.grid);
      emit_to(self, out, [&](std::ostream& o) { io::write_table(o, t, fmt); });
      return 0;
    };
  }
  {
    Leaf* l = leaf(mc_cmd, "compare", "compare an analytic and an empirical table");
    l->options["analytic"] =
        l->app->add_option("analytic", l->values["analytic"], "analytic table (CSV or JSON)");
    l->options["empirical"] = l->app->add_option("empirical", l->values["empirical"],
                                                 "empirical table with standard errors");
    l->add("band", "flag when |a - e| > band * stderr + bias (default 3)");
    l->add("bias", "allowance for discretisation bias (default 0)");
    add_output_flags(*l);
    l->action = [&out, &err](Leaf& self) {
      const double band = scalar("band", self.get("band").value_or("3"));
      const double bias = scalar("bias", self.get("bias").value_or("0"));
      require(band > 0.0, "band must be positive");
      require(bias >= 0.0, "bias must be nonnegative");
      const io::Format fmt = format_from(self);
      const CurveTable a = io::read_table_file(require_value(self, "analytic"));
      const CurveTable e = io::read_table_file(require_value(self, "empirical"));
      const Comparison c = compare_to_analytic(a, e, band, bias);
      emit_to(self, out, [&](std::ostream& o) {
        if (fmt == io::Format::csv) {
          o << "grid,analytic,empirical,bound,flagged\n";
          for (const auto& p : c.points)
            o << io::format_double(p.grid) << ',' << io::format_double(p.analytic) << ','
              << io::format_double(p.empirical) << ',' << io::format_double(p.bound) << ','
              << (p.flagged ? 1 : 0) << '\n';
        } else {
          nlohmann::ordered_json j;
          j["pass"] = c.pass;
          j["flagged"] = c.flagged;
          j["band"] = band;
          j["bias"] = bias;
          j["points"] = nlohmann::ordered_json::array();
          for (const auto& p : c.points)
            j["points"].push_back({jnum(p.grid), jnum(p.analytic), jnum(p.empirical),
                                   jnum(p.bound), p.flagged});
          o << j.dump(2) << '\n';
        }
      });
      err << "compare: " << c.flagged << " of " << c.points.size() << " points flagged: "
          << (c.pass ? "PASS" : "FAIL") << '\n';
      return c.pass ? 0 : kFailed;
    };
  }

  // validate
  CLI::App* val_cmd = group("validate", "acceptance suites");
  {
    Leaf* l = leaf(val_cmd, "closed-forms", "closed-form checks");
    l->add("model", "bm_std, rbm, example33, example34 or all (default)");
    l->action = [&out](Leaf& self) {
      return report(out, validation::run_closed_forms(self.get("model").value_or("all")));
    };
  }
  {
    Leaf* l = leaf(val_cmd, "identities", "cross-formula identities");
    l->action = [&out](Leaf&) { return report(out, validation::run_identities()); };
  }
  {
    Leaf* l = leaf(val_cmd, "mc", "Monte Carlo agreement");
    l->add("seed", "Philox key");
    l->add("paths", "number of paths");
    l->add("step", "time step");
    l->add("threads", "worker threads");
    l->action = [&out](Leaf& self) {
      const McConfig cfg = mc_from(self);
      validation::McSettings s;
      if (self.get("seed")) s.seed = cfg.seed;
      if (self.get("paths")) s.n_paths = cfg.n_paths;
      if (self.get("step")) s.step = cfg.step;
      s.threads = cfg.threads;
      return report(out, {validation::monte_carlo(s)});
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kUsage;
  }

  try {
    if (!config_path.empty()) config = read_config(config_path);
    for (auto& l : leaves)
      if (l->app->parsed()) return l->action(*l);
    err << "error: no command given\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace ddk::cli
