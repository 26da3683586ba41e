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

// Monte Carlo path oracle. Paths are monitored on a fixed time grid, so
// running maxima are biased low and first-passage times high by O(sqrt(h)).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddk/curve.hpp"
#include "ddk/model.hpp"

namespace ddk {

enum class Scheme { automatic, exact, euler, reflected_euler };

Scheme parse_scheme(std::string_view name);
std::string_view to_string(Scheme s);

struct McConfig {
  std::uint64_t seed = 1;
  std::int64_t n_paths = 100000;
  double step = 1e-4;
  Scheme scheme = Scheme::automatic;
  /// Maximum simulated time; 0 picks 50 * max(delta, 1)^2.
  double horizon = 0.0;
  /// Worker count; 0 reads DRAWDOWN_KIT_THREADS, then the hardware count.
  unsigned threads = 0;

  void validate() const;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_effective = 0;
  double censored_fraction = 0.0;
};

/// First drawdown of one size along one path.
struct DrawdownRecord {
  double theta = kInf;         // theta_delta, +inf when censored
  double max_at_theta = 0.0;   // M at theta_delta
  bool censored = false;
};

struct PathRecord {
  std::vector<DrawdownRecord> drawdowns;  // one per requested delta
  /// H_eta and D^- at H_eta, when H_eta came before theta of the largest
  /// delta. Otherwise D^-_{H_eta} exceeds that delta.
  bool hit = false;
  double hit_time = kInf;
  double maxdd_at_hit = 0.0;
  bool censored = false;  // horizon reached before the stopping rule
};

struct Simulation {
  std::vector<double> deltas;  // sorted increasing
  std::optional<double> eta;
  double x = 0.0;
  double horizon = 0.0;
  Scheme scheme = Scheme::exact;
  McConfig config;
  std::vector<PathRecord> paths;  // in path-index order
};

/// Simulates until theta of the largest delta (and H_eta, if requested and
/// earlier) or the horizon. Path i draws from the Philox stream (seed, i),
/// so results do not depend on the thread count. Throws NumericalError if
/// the per-path monotonicity theta_rho <= theta_delta, M_rho <= M_delta
/// fails.
Simulation simulate_drawdown_stats(const DiffusionModel& model,
                                   const McConfig& config, double x,
                                   std::span<const double> deltas,
                                   std::optional<double> eta = std::nullopt);

/// First passage times above `level` from x (+inf when censored). stream
/// offsets the Philox stream ids so independent ensembles can share a seed.
std::vector<double> simulate_hitting_times(const DiffusionModel& model,
                                           const McConfig& config, double x,
                                           double level,
                                           std::uint64_t stream = 0);

/// Mean and standard error over the non-censored values.
McEstimate summarize(std::span<const double> samples, std::int64_t censored);

/// Empirical version of an analytic law on the grid; err holds standard
/// errors. Supported: survival-m, maxdd, lehoczky (grid alpha or beta),
/// malyutin (grid y or alpha).
CurveTable estimate_curve(const DiffusionModel& model, const McConfig& config,
                          std::string_view law_id, const LawQuery& query,
                          std::string_view grid_param,
                          const std::vector<double>& grid);

/// The same curve from an existing simulation.
CurveTable curve_from_simulation(const Simulation& sim, std::string_view law_id,
                                 const LawQuery& query,
                                 std::string_view grid_param,
                                 const std::vector<double>& grid);

struct PointCheck {
  double grid = 0.0;
  double analytic = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  bool flagged = false;
};

struct Comparison {
  std::vector<PointCheck> points;
  std::size_t flagged = 0;
  bool pass = false;
};

/// Flags points with |analytic - empirical| > band_sigma * stderr +
/// bias_allowance; passes when at most 1% of the points are flagged.
Comparison compare_to_analytic(const CurveTable& analytic,
                               const CurveTable& empirical, double band_sigma,
                               double bias_allowance);

/// Worker count from DRAWDOWN_KIT_THREADS or the hardware.
unsigned default_threads();

}  // namespace ddk
