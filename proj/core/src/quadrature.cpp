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

#include "ddk/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "ddk/errors.hpp"

namespace ddk {
namespace {

// Kronrod abscissae (descending); odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Rule {
  double value;
  double err;
};

double checked(double v) {
  if (std::isnan(v)) throw NumericalError("integrand returned NaN");
  return v;
}

// Abscissae of the 15-point rule on [a, b] in the order used by Kronrod.
std::array<double, 15> nodes(double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, 15> x{};
  x[0] = c;
  // On intervals a few ulps wide the outer nodes round onto a or b.
  const double lo = std::nextafter(a, b), hi = std::nextafter(b, a);
  for (int j = 0; j < 7; ++j) {
    x[1 + 2 * j] = std::max(c - h * kXgk[j], lo);
    x[2 + 2 * j] = std::min(c + h * kXgk[j], hi);
  }
  return x;
}

// Combines 15 samples (ordered as in nodes()) into the Kronrod value and the
// QUADPACK error estimate.
Rule combine(const std::array<double, 15>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double fc = f[0];
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 7; ++j) {
    const double f1 = f[1 + 2 * j], f2 = f[2 + 2 * j];
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(f[1 + 2 * j] - reskh) +
                         std::fabs(f[2 + 2 * j] - reskh));
  const double ah = std::fabs(h);
  resasc *= ah;
  resabs *= ah;
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {resk * h, err};
}

Rule gk15(const Integrand& f, double a, double b) {
  const auto x = nodes(a, b);
  std::array<double, 15> fx{};
  for (int i = 0; i < 15; ++i) fx[i] = checked(f(x[i]));
  return combine(fx, a, b);
}

struct Interval {
  double a, b, value, err;
  bool operator<(const Interval& o) const { return err < o.err; }
};

std::vector<double> split_points(double a, double b,
                                 std::span<const double> breakpoints) {
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double p : breakpoints)
    if (p > a && p < b) inner.push_back(p);
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  pts.insert(pts.end(), inner.begin(), inner.end());
  pts.push_back(b);
  return pts;
}

bool splittable(double a, double b) {
  const double m = 0.5 * (a + b);
  return m > a && m < b &&
         (b - a) > 64.0 * kEps * std::max(std::fabs(a), std::fabs(b));
}

double tail_edge(double a, double base, double g, int k) {
  return a + base * (std::pow(g, k) - 1.0);
}

}  // namespace

void QuadSpec::validate() const {
  require(rel_tol > 0.0 && abs_tol > 0.0, "quadrature tolerances must be positive");
  require(max_subdivisions >= 1, "max_subdivisions must be at least 1");
  if (tail.kind == TailPolicy::Kind::adaptive)
    require(tail.value > 1.0, "tail growth factor must exceed 1");
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadSpec& spec,
                     std::span<const double> breakpoints) {
  spec.validate();
  require(a <= b, "integration needs a <= b");
  if (b == kInf) {
    if (breakpoints.empty()) return integrate_tail(f, a, spec);
    const double last = *std::max_element(breakpoints.begin(), breakpoints.end());
    if (last <= a) return integrate_tail(f, a, spec);
    QuadResult head = integrate(f, a, last, spec, breakpoints);
    QuadResult tail = integrate_tail(f, last, spec);
    tail.value += head.value;
    tail.err_estimate += head.err_estimate;
    tail.segments_used += head.segments_used;
    return tail;
  }
  require(std::isfinite(a) && std::isfinite(b), "finite integration limits required");
  QuadResult out;
  out.truncation_point = b;
  if (a == b) return out;

  std::priority_queue<Interval> heap;
  std::vector<Interval> frozen;
  double total = 0.0, total_err = 0.0;
  const auto pts = split_points(a, b, breakpoints);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rule r = gk15(f, pts[i], pts[i + 1]);
    heap.push({pts[i], pts[i + 1], r.value, r.err});
    total += r.value;
    total_err += r.err;
  }
  int segments = static_cast<int>(heap.size());
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };

  while (!heap.empty() && total_err > tolerance()) {
    if (segments >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "quadrature on [" << a << ", " << b << "] did not converge within "
         << spec.max_subdivisions << " subdivisions (error estimate "
         << total_err << ")";
      throw NumericalError(os.str());
    }
    Interval worst = heap.top();
    heap.pop();
    if (!splittable(worst.a, worst.b)) {
      // Roundoff floor: keep the interval's contribution as is.
      frozen.push_back(worst);
      if (heap.empty()) break;
      continue;
    }
    const double m = 0.5 * (worst.a + worst.b);
    const Rule left = gk15(f, worst.a, m);
    const Rule right = gk15(f, m, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push({worst.a, m, left.value, left.err});
    heap.push({m, worst.b, right.value, right.err});
    ++segments;
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    frozen.push_back(heap.top());
    heap.pop();
  }
  std::sort(frozen.begin(), frozen.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (const auto& iv : frozen) {
    total += iv.value;
    total_err += iv.err;
  }
  out.value = total;
  out.err_estimate = total_err;
  out.segments_used = segments;
  return out;
}

QuadResult integrate_tail(const Integrand& f, double a, const QuadSpec& spec,
                          double stop_above) {
  spec.validate();
  require(std::isfinite(a), "tail integral needs a finite start");
  if (spec.tail.kind == TailPolicy::Kind::fixed_truncation) {
    const double z = spec.tail.value;
    QuadResult r = z > a ? integrate(f, a, z, spec) : QuadResult{};
    r.truncation_point = std::max(a, z);
    return r;
  }
  const double g = spec.tail.value;
  const double base = std::max(std::fabs(a), 1.0);
  const int max_segments = std::min(spec.max_subdivisions, 1000);
  QuadResult out;
  double prev = kInf;
  int stagnant = 0;
  for (int k = 0; k < max_segments; ++k) {
    const double lo = tail_edge(a, base, g, k);
    const double hi = tail_edge(a, base, g, k + 1);
    if (!std::isfinite(hi) || hi > 1e300) break;
    const QuadResult seg = integrate(f, lo, hi, spec);
    out.value += seg.value;
    out.err_estimate += seg.err_estimate;
    out.segments_used += seg.segments_used;
    out.truncation_point = hi;
    const double c = std::fabs(seg.value);
    if (!std::isfinite(out.value)) break;
    if (out.value > stop_above) {
      out.status = QuadStatus::diverged;
      return out;
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(out.value));
    if (k >= 1 && c <= tol && c <= prev) {
      // Geometric decay bound on what lies beyond the last segment.
      out.err_estimate += c;
      out.truncation_point = kInf;
      return out;
    }
    stagnant = (k >= 1 && c >= 0.999 * prev) ? stagnant + 1 : 0;
    if (stagnant >= 25) break;
    prev = c;
  }
  out.status = QuadStatus::diverged;
  return out;
}

QuadResult integrate_dS(const DiffusionModel& model, const Integrand& f, double a,
                        double b, const QuadSpec& spec,
                        std::span<const double> breakpoints) {
  auto g = [&](double z) {
    const double v = f(z);
    return v == 0.0 ? 0.0 : v * model.scale_deriv(z);
  };
  return integrate(g, a, b, spec, breakpoints);
}

QuadResult integrate_dS_tail(const DiffusionModel& model, const Integrand& f,
                             double a, const QuadSpec& spec) {
  auto g = [&](double z) {
    const double v = f(z);
    return v == 0.0 ? 0.0 : v * model.scale_deriv(z);
  };
  return integrate_tail(g, a, spec);
}

double exp_neg(const QuadResult& r) {
  if (r.diverged()) return 0.0;
  return std::exp(-r.value);
}

double exp_neg_integral(const DiffusionModel& model, const Integrand& hazard,
                        double a, double b, const QuadSpec& spec) {
  require(a <= b, "integration needs a <= b");
  if (a == b) return 1.0;
  auto g = [&](double z) {
    const double v = hazard(z);
    return v == 0.0 ? 0.0 : v * model.scale_deriv(z);
  };
  if (b == kInf) return exp_neg(integrate_tail(g, a, spec, 800.0));
  return exp_neg(integrate(g, a, b, spec));
}

namespace {

class RunningIntegrator {
 public:
  RunningIntegrator(const Integrand& weight, const Integrand& hazard,
                    const QuadSpec& spec)
      : weight_(weight), hazard_(hazard), spec_(spec) {}

  // Integrates over [a, b] given the hazard integral h_a accumulated up to a;
  // returns the hazard integral at b.
  double run(double a, double b, double h_a, int depth = 0) {
    const auto x = nodes(a, b);
    std::array<double, 15> g{};
    double inner_err = 0.0;
    const double h = 0.5 * (b - a);
    for (int i = 0; i < 15; ++i) {
      const Rule inner = gk15(hazard_, a, x[i]);
      const double w = checked(weight_(x[i]));
      g[i] = w == 0.0 ? 0.0 : w * std::exp(-(h_a + inner.value));
      const double wt = i == 0 ? kWgk[7] : kWgk[(i - 1) / 2];
      inner_err += wt * std::fabs(g[i]) * inner.err;
    }
    const Rule outer = combine(g, a, b);
    const double err = outer.err + inner_err * std::fabs(h);
    const double tol = std::max(spec_.abs_tol, spec_.rel_tol * std::fabs(outer.value));
    const bool budget_left = segments_ < spec_.max_subdivisions;
    if (err <= tol || depth >= 48 || !splittable(a, b) || !budget_left) {
      if (err > tol) unresolved_ = true;
      value_ += outer.value;
      err_ += err;
      ++segments_;
      QuadSpec tight = spec_;
      tight.abs_tol = std::min(spec_.abs_tol, 1e-14);
      return h_a + integrate(hazard_, a, b, tight).value;
    }
    const double m = 0.5 * (a + b);
    const double h_m = run(a, m, h_a, depth + 1);
    return run(m, b, h_m, depth + 1);
  }

  double value() const { return value_; }
  double err() const { return err_; }
  int segments() const { return segments_; }
  bool unresolved() const { return unresolved_; }

 private:
  const Integrand& weight_;
  const Integrand& hazard_;
  const QuadSpec& spec_;
  double value_ = 0.0;
  double err_ = 0.0;
  int segments_ = 0;
  bool unresolved_ = false;
};

}  // namespace

RunningResult integrate_running(const Integrand& weight, const Integrand& hazard,
                                double a, double b, const QuadSpec& spec,
                                std::span<const double> breakpoints) {
  spec.validate();
  require(a <= b, "integration needs a <= b");
  require(std::isfinite(a), "running integral needs a finite start");
  RunningIntegrator it(weight, hazard, spec);
  RunningResult out;
  double h = 0.0;
  double finite_end = b;
  if (b == kInf) {
    finite_end = a;
    for (double p : breakpoints)
      if (p > finite_end && std::isfinite(p)) finite_end = p;
  }
  const auto pts = split_points(a, finite_end, breakpoints);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i] < pts[i + 1]) h = it.run(pts[i], pts[i + 1], h);
  out.truncation_point = finite_end;

  if (b == kInf) {
    if (spec.tail.kind == TailPolicy::Kind::fixed_truncation) {
      if (spec.tail.value > finite_end) h = it.run(finite_end, spec.tail.value, h);
      out.truncation_point = std::max(finite_end, spec.tail.value);
    } else {
      const double g = spec.tail.value;
      const double base = std::max(std::fabs(finite_end), 1.0);
      const int max_segments = std::min(spec.max_subdivisions, 1000);
      double prev = kInf;
      int stagnant = 0;
      bool done = false;
      for (int k = 0; k < max_segments && !done; ++k) {
        const double lo = tail_edge(finite_end, base, g, k);
        const double hi = tail_edge(finite_end, base, g, k + 1);
        if (!std::isfinite(hi) || hi > 1e300) break;
        const double before = it.value();
        h = it.run(lo, hi, h);
        out.truncation_point = hi;
        const double c = std::fabs(it.value() - before);
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(it.value()));
        if (k >= 1 && c <= tol && c <= prev) {
          out.truncation_point = kInf;
          done = true;
          break;
        }
        stagnant = (k >= 1 && c >= 0.999 * prev) ? stagnant + 1 : 0;
        if (stagnant >= 25) break;
        prev = c;
      }
      if (!done) out.status = QuadStatus::diverged;
    }
  }
  out.value = it.value();
  out.err_estimate = it.err();
  out.hazard_integral = h;
  out.segments_used = it.segments();
  if (it.unresolved() &&
      out.err_estimate > 10.0 * std::max(spec.abs_tol, spec.rel_tol * std::fabs(out.value))) {
    std::ostringstream os;
    os << "running quadrature did not reach its tolerance (error estimate "
       << out.err_estimate << ")";
    throw NumericalError(os.str());
  }
  return out;
}

}  // namespace ddk
