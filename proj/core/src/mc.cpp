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

#include "ddk/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "ddk/errors.hpp"
#include "ddk/normal.hpp"
#include "ddk/philox.hpp"

namespace ddk {
namespace {

constexpr std::int64_t kChunk = 256;
constexpr std::uint64_t kStreamStride = std::uint64_t{1} << 40;

// Runs body(i) for every path index, spreading chunks over workers. Each
// index is visited exactly once and results are written by index, so the
// outcome is the same for any worker count.
template <class Body>
void for_each_path(std::int64_t n, unsigned threads, const Body& body) {
  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      const std::int64_t end = std::min(n, (c + 1) * kChunk);
      for (std::int64_t i = c * kChunk; i < end; ++i) body(i);
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(chunks, 1)));
  if (workers == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// One time step of the chosen scheme.
struct Stepper {
  Scheme scheme = Scheme::exact;
  Dynamics::Kind kind = Dynamics::Kind::arithmetic;
  double h = 0.0;
  double drift_step = 0.0;  // mu h (arithmetic) or (mu - sigma^2/2) h (geometric)
  double vol_step = 0.0;    // sigma sqrt(h)
  double sqrt_h = 0.0;
  bool reflect = false;
  double lower = 0.0;
  const Dynamics* dyn = nullptr;

  double operator()(double x, double z) const {
    double next;
    if (scheme == Scheme::exact) {
      if (kind == Dynamics::Kind::geometric)
        next = x * std::exp(drift_step + vol_step * z);
      else
        next = x + drift_step + vol_step * z;
    } else if (dyn->drift) {
      next = x + dyn->drift(x) * h + dyn->vol(x) * sqrt_h * z;
    } else {
      const double d = kind == Dynamics::Kind::geometric ? dyn->mu * x : dyn->mu;
      const double v = kind == Dynamics::Kind::geometric ? dyn->sigma * x : dyn->sigma;
      next = x + d * h + v * sqrt_h * z;
    }
    if (reflect && next < lower) next = lower + (lower - next);
    return next;
  }
};

Stepper make_stepper(const DiffusionModel& model, const McConfig& cfg,
                     Scheme* chosen) {
  const auto& dyn = model.dynamics();
  if (!dyn)
    throw DomainError("model " + model.id() + " has no simulation dynamics");
  Scheme s = cfg.scheme;
  const bool closed = dyn->kind != Dynamics::Kind::general;
  if (s == Scheme::automatic)
    s = closed ? Scheme::exact
               : (dyn->reflect_at_lower ? Scheme::reflected_euler : Scheme::euler);
  if (s == Scheme::exact && !closed)
    throw DomainError("exact scheme needs an arithmetic or geometric BM model");
  if (s == Scheme::reflected_euler && !dyn->reflect_at_lower)
    throw DomainError("reflected_euler needs a model reflected at its lower end");
  if (s == Scheme::euler && dyn->reflect_at_lower)
    throw DomainError("model is reflected at its lower end; use reflected_euler");
  if (dyn->kind == Dynamics::Kind::general && !(dyn->drift && dyn->vol))
    throw DomainError("general dynamics need drift and vol evaluators");
  Stepper st;
  st.scheme = s;
  st.kind = dyn->kind;
  st.h = cfg.step;
  st.sqrt_h = std::sqrt(cfg.step);
  st.vol_step = dyn->sigma * st.sqrt_h;
  st.drift_step = dyn->kind == Dynamics::Kind::geometric
                      ? (dyn->mu - 0.5 * dyn->sigma * dyn->sigma) * cfg.step
                      : dyn->mu * cfg.step;
  st.reflect = dyn->reflect_at_lower;
  st.lower = model.lower();
  st.dyn = &*dyn;
  *chosen = s;
  return st;
}

unsigned resolve_threads(const McConfig& cfg) {
  return cfg.threads > 0 ? cfg.threads : default_threads();
}

double resolve_horizon(const McConfig& cfg, double scale) {
  if (cfg.horizon > 0.0) return cfg.horizon;
  const double s = std::max(scale, 1.0);
  return 50.0 * s * s;
}

const DrawdownRecord& record_for(const Simulation& sim, const PathRecord& p,
                                 double delta) {
  for (std::size_t k = 0; k < sim.deltas.size(); ++k)
    if (sim.deltas[k] == delta) return p.drawdowns[k];
  throw DomainError("delta was not simulated");
}

double param(const LawQuery& q, const char* name) {
  auto it = q.find(name);
  if (it == q.end()) throw DomainError(std::string("query needs '") + name + "'");
  return it->second;
}

double param_or(const LawQuery& q, const char* name, double fallback) {
  auto it = q.find(name);
  return it == q.end() ? fallback : it->second;
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
  if (name == "auto" || name == "automatic") return Scheme::automatic;
  if (name == "exact" || name == "exact_bm") return Scheme::exact;
  if (name == "euler") return Scheme::euler;
  if (name == "reflected_euler") return Scheme::reflected_euler;
  throw DomainError("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::automatic: return "auto";
    case Scheme::exact: return "exact_bm";
    case Scheme::euler: return "euler";
    case Scheme::reflected_euler: return "reflected_euler";
  }
  return "?";
}

void McConfig::validate() const {
  require(n_paths >= 1, "n_paths must be at least 1");
  require(step > 0.0 && std::isfinite(step), "step must be positive");
  require(horizon >= 0.0, "horizon must be positive (0 selects the default)");
}

unsigned default_threads() {
  if (const char* env = std::getenv("DRAWDOWN_KIT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Simulation simulate_drawdown_stats(const DiffusionModel& model,
                                   const McConfig& config, double x,
                                   std::span<const double> deltas,
                                   std::optional<double> eta) {
  config.validate();
  require(model.contains(x), "start level is outside the model domain");
  require(!deltas.empty() || eta.has_value(), "nothing to record");
  Simulation sim;
  sim.deltas.assign(deltas.begin(), deltas.end());
  for (double d : sim.deltas) require(d > 0.0 && std::isfinite(d), "delta must be positive");
  std::sort(sim.deltas.begin(), sim.deltas.end());
  sim.deltas.erase(std::unique(sim.deltas.begin(), sim.deltas.end()), sim.deltas.end());
  if (eta) require(std::isfinite(*eta), "eta must be finite");
  sim.eta = eta;
  sim.x = x;
  sim.config = config;
  const double top = sim.deltas.empty() ? 0.0 : sim.deltas.back();
  sim.horizon = resolve_horizon(config, std::max(top, eta ? *eta - x : 0.0));
  const Stepper step = make_stepper(model, config, &sim.scheme);
  const auto& normal = ZigguratNormal::instance();
  const std::size_t nd = sim.deltas.size();
  const auto max_steps = static_cast<std::int64_t>(std::ceil(sim.horizon / config.step));

  sim.paths.resize(static_cast<std::size_t>(config.n_paths));
  for_each_path(config.n_paths, resolve_threads(config), [&](std::int64_t i) {
    PhiloxStream rng(config.seed, static_cast<std::uint64_t>(i));
    PathRecord& rec = sim.paths[static_cast<std::size_t>(i)];
    rec.drawdowns.assign(nd, DrawdownRecord{});
    double xt = x, m = x, maxdd = 0.0;
    std::size_t k = 0;
    if (eta && x >= *eta) {
      rec.hit = true;
      rec.hit_time = 0.0;
    }
    auto done = [&] { return k == nd && (!eta || rec.hit); };
    std::int64_t n = 0;
    while (!done()) {
      if (n == max_steps) {
        rec.censored = true;
        for (std::size_t j = k; j < nd; ++j) rec.drawdowns[j].censored = true;
        break;
      }
      xt = step(xt, normal(rng));
      ++n;
      const double t = static_cast<double>(n) * config.step;
      if (xt > m) m = xt;
      const double dd = m - xt;
      if (dd > maxdd) maxdd = dd;
      if (eta && !rec.hit && xt >= *eta) {
        rec.hit = true;
        rec.hit_time = t;
        rec.maxdd_at_hit = maxdd;
      }
      while (k < nd && dd > sim.deltas[k]) {
        rec.drawdowns[k].theta = t;
        rec.drawdowns[k].max_at_theta = m;
        ++k;
      }
      // Past theta of the largest delta the value of D^- at H_eta is only
      // known to exceed it; stop there.
      if (k == nd) break;
    }
  });

  for (const auto& p : sim.paths)
    for (std::size_t j = 1; j < nd; ++j) {
      const auto& a = p.drawdowns[j - 1];
      const auto& b = p.drawdowns[j];
      if (b.censored) continue;
      if (a.censored || a.theta > b.theta || a.max_at_theta > b.max_at_theta)
        throw NumericalError("pathwise monotonicity of theta violated");
    }
  return sim;
}

std::vector<double> simulate_hitting_times(const DiffusionModel& model,
                                           const McConfig& config, double x,
                                           double level, std::uint64_t stream) {
  config.validate();
  require(model.contains(x), "start level is outside the model domain");
  require(level > x, "hitting level must lie above the start");
  Scheme chosen;
  const Stepper step = make_stepper(model, config, &chosen);
  const auto& normal = ZigguratNormal::instance();
  const double horizon = resolve_horizon(config, level - x);
  const auto max_steps = static_cast<std::int64_t>(std::ceil(horizon / config.step));
  std::vector<double> out(static_cast<std::size_t>(config.n_paths), kInf);
  for_each_path(config.n_paths, resolve_threads(config), [&](std::int64_t i) {
    PhiloxStream rng(config.seed, stream * kStreamStride + static_cast<std::uint64_t>(i));
    double xt = x;
    for (std::int64_t n = 1; n <= max_steps; ++n) {
      xt = step(xt, normal(rng));
      if (xt >= level) {
        out[static_cast<std::size_t>(i)] = static_cast<double>(n) * config.step;
        break;
      }
    }
  });
  return out;
}

McEstimate summarize(std::span<const double> samples, std::int64_t censored) {
  McEstimate e;
  const auto n = static_cast<std::int64_t>(samples.size());
  e.n_effective = n;
  e.censored_fraction =
      n + censored > 0 ? static_cast<double>(censored) / static_cast<double>(n + censored) : 0.0;
  if (n == 0) return e;
  // Two-pass mean and variance in index order.
  double sum = 0.0;
  for (double v : samples) sum += v;
  e.value = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - e.value) * (v - e.value);
    e.std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return e;
}

CurveTable curve_from_simulation(const Simulation& sim, std::string_view law_id,
                                 const LawQuery& query,
                                 std::string_view grid_param,
                                 const std::vector<double>& grid) {
  CurveTable t;
  t.law_id = std::string(law_id);
  t.query = query;
  t.query.erase(std::string(grid_param));
  t.grid_param = std::string(grid_param);
  t.grid = grid;
  t.meta["source"] = "mc";
  t.meta["seed"] = std::to_string(sim.config.seed);
  t.meta["paths"] = std::to_string(sim.config.n_paths);
  {
    std::ostringstream os;
    os.precision(17);
    os << sim.config.step;
    t.meta["step"] = os.str();
    os.str("");
    os << sim.horizon;
    t.meta["horizon"] = os.str();
  }
  t.meta["scheme"] = std::string(to_string(sim.scheme));

  const bool theta_law = law_id == "survival-m" || law_id == "lehoczky";
  const bool hit_law = law_id == "maxdd" || law_id == "malyutin";
  if (!theta_law && !hit_law)
    throw DomainError("no Monte Carlo estimator for law '" + std::string(law_id) + "'");
  if (hit_law && !sim.eta) throw DomainError("simulation did not track H_eta");

  std::vector<double> samples;
  samples.reserve(sim.paths.size());
  std::int64_t censored_total = 0;
  for (double g : grid) {
    LawQuery q = query;
    q[std::string(grid_param)] = g;
    samples.clear();
    std::int64_t censored = 0;
    if (theta_law) {
      const double delta = param(q, "delta");
      const double y = law_id == "survival-m" ? param(q, "y") : 0.0;
      const double alpha = law_id == "lehoczky" ? param(q, "alpha") : 0.0;
      const double beta = law_id == "lehoczky" ? param_or(q, "beta", 0.0) : 0.0;
      for (const auto& p : sim.paths) {
        const DrawdownRecord& r = record_for(sim, p, delta);
        if (r.censored) {
          ++censored;
          continue;
        }
        if (law_id == "survival-m")
          samples.push_back(r.max_at_theta > y ? 1.0 : 0.0);
        else
          samples.push_back(std::exp(-alpha * r.theta - beta * r.max_at_theta));
      }
    } else {
      const double y = param(q, "y");
      require(!sim.deltas.empty() && y <= sim.deltas.back(),
              "maxdd grid exceeds the simulated drawdown range");
      const double alpha = law_id == "malyutin" ? param(q, "alpha") : 0.0;
      for (const auto& p : sim.paths) {
        if (p.censored) {
          ++censored;
          continue;
        }
        const bool below = p.hit && p.maxdd_at_hit < y;
        samples.push_back(below ? std::exp(-alpha * p.hit_time) : 0.0);
      }
    }
    const McEstimate e = summarize(samples, censored);
    if (e.n_effective == 0)
      throw NumericalError("every path was censored; raise the horizon");
    t.values.push_back(e.value);
    t.err.push_back(e.std_error);
    censored_total = std::max(censored_total, censored);
  }
  {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(censored_total) / static_cast<double>(sim.paths.size());
    t.meta["censored_fraction"] = os.str();
  }
  t.validate();
  return t;
}

CurveTable estimate_curve(const DiffusionModel& model, const McConfig& config,
                          std::string_view law_id, const LawQuery& query,
                          std::string_view grid_param,
                          const std::vector<double>& grid) {
  require(!grid.empty(), "grid must not be empty");
  const double x = param_or(query, "x", 0.0);
  LawQuery q = query;
  q["x"] = x;
  Simulation sim;
  if (law_id == "survival-m" || law_id == "lehoczky") {
    LawQuery probe = q;
    probe[std::string(grid_param)] = grid.front();
    std::vector<double> deltas;
    if (grid_param == "delta")
      deltas = grid;
    else
      deltas = {param(probe, "delta")};
    sim = simulate_drawdown_stats(model, config, x, deltas);
  } else if (law_id == "maxdd" || law_id == "malyutin") {
    LawQuery probe = q;
    probe[std::string(grid_param)] = grid.back();
    const double eta = param(probe, "eta");
    double top = param(probe, "y");
    if (grid_param == "y") top = *std::max_element(grid.begin(), grid.end());
    sim = simulate_drawdown_stats(model, config, x, std::vector<double>{top}, eta);
  } else {
    throw DomainError("no Monte Carlo estimator for law '" + std::string(law_id) + "'");
  }
  CurveTable t = curve_from_simulation(sim, law_id, q, grid_param, grid);
  t.model_id = model.id();
  t.model_params.assign(model.params().begin(), model.params().end());
  return t;
}

Comparison compare_to_analytic(const CurveTable& analytic,
                               const CurveTable& empirical, double band_sigma,
                               double bias_allowance) {
  analytic.validate();
  empirical.validate();
  require(analytic.grid == empirical.grid, "tables are on different grids");
  require(band_sigma >= 0.0 && bias_allowance >= 0.0,
          "band and allowance must be nonnegative");
  Comparison c;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    PointCheck p;
    p.grid = analytic.grid[i];
    p.analytic = analytic.values[i];
    p.empirical = empirical.values[i];
    p.bound = band_sigma * empirical.err[i] + bias_allowance;
    p.flagged = !(std::fabs(p.analytic - p.empirical) <= p.bound);
    c.flagged += p.flagged ? 1 : 0;
    c.points.push_back(p);
  }
  c.pass = static_cast<double>(c.flagged) <= 0.01 * static_cast<double>(c.points.size());
  return c;
}

}  // namespace ddk
