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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ddk/errors.hpp"
#include "ddk/laws.hpp"
#include "ddk/model.hpp"

namespace ddk {
namespace {

const double kE1 = std::exp(-1.0);
const double kCoth1 = std::cosh(1.0) / std::sinh(1.0);

class Laws : public ::testing::Test {
 protected:
  DiffusionModel bm = build_model("bm_std");
  DiffusionModel rbm = build_model("rbm");
  DiffusionModel drift = build_model("bm_drift", std::vector<double>{1.0, 1.0});
};

TEST_F(Laws, BAlpha) {
  for (double y : {-3.0, 0.0, 2.0, 50.0}) EXPECT_NEAR(b_alpha(bm, 0.5, y, 1.0), kCoth1, 1e-12);
  EXPECT_NEAR(b_alpha(bm, 0.0, 1.0, 2.0), 0.5, 1e-15);
  EXPECT_NEAR(b_alpha(rbm, 0.5, 2.0, 1.0), kCoth1, 1e-12);
}

TEST_F(Laws, CAlpha) {
  for (double y : {-3.0, 0.0, 2.0, 50.0})
    EXPECT_NEAR(c_alpha(bm, 0.5, y, 1.0), 1.0 / std::sinh(1.0), 1e-12);
  EXPECT_NEAR(c_alpha(bm, 0.0, 1.0, 2.0), 0.5, 1e-15);
  EXPECT_NEAR(c_alpha(rbm, 0.5, 2.0, 1.0), 1.0 / std::sinh(1.0), 1e-12);
}

TEST_F(Laws, DeterminantsSurviveLargeLevels) {
  // The eigenfunctions overflow near z = 500 for alpha = 2.
  EXPECT_NEAR(b_alpha(bm, 2.0, 500.0, 1.0), 2.0 / std::tanh(2.0), 1e-10);
  EXPECT_NEAR(c_alpha(bm, 2.0, -500.0, 1.0), 2.0 / std::sinh(2.0), 1e-10);
  EXPECT_NEAR(b_alpha(rbm, 2.0, 500.0, 3.0), 2.0 / std::tanh(6.0), 1e-10);
}

TEST_F(Laws, DeterminantsAtSmallDelta) {
  // sqrt(2a) coth(d sqrt(2a)) ~ 1/d + 2ad/3 as d -> 0.
  for (double d : {1e-3, 1e-6, 1e-9}) {
    const double k = std::sqrt(2.0 * 0.7);
    EXPECT_NEAR(b_alpha(bm, 0.7, 1.0, d) * d, k * d / std::tanh(k * d), 1e-9);
    EXPECT_NEAR(c_alpha(bm, 0.7, 1.0, d) * d, k * d / std::sinh(k * d), 1e-9);
  }
}

TEST_F(Laws, BDominatesC) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (const auto* m : {&bm, &rbm, &drift}) {
    for (int i = 0; i < 200; ++i) {
      const double alpha = u(rng), delta = u(rng);
      const double y = m->lower() + delta + u(rng);
      const double y_eff = std::isfinite(y) ? y : u(rng);
      EXPECT_GE(b_alpha(*m, alpha, y_eff, delta), c_alpha(*m, alpha, y_eff, delta));
    }
  }
}

TEST_F(Laws, SurvivalOfMaximumAtDrawdown) {
  EXPECT_NEAR(survival_max_at_drawdown(bm, 0.0, 2.0, 3.0).value, std::exp(-1.5), 1e-12);
  EXPECT_NEAR(survival_max_at_drawdown(rbm, 0.0, 1.0, 2.0).value, kE1, 1e-12);
  EXPECT_DOUBLE_EQ(survival_max_at_drawdown(bm, 0.3, 2.0, 0.3).value, 1.0);
  EXPECT_DOUBLE_EQ(survival_max_at_drawdown(rbm, 0.2, 1.0, 1.0).value, 1.0);
  EXPECT_THROW(survival_max_at_drawdown(bm, 1.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(survival_max_at_drawdown(bm, 0.0, -1.0, 0.5), DomainError);
}

TEST_F(Laws, SurvivalIsMonotoneProbability) {
  for (const auto* m : {&bm, &rbm, &drift}) {
    double prev = 1.0;
    for (double y = 1.0; y < 8.0; y += 0.25) {
      const double v = survival_max_at_drawdown(*m, 0.5, 1.0, y).value;
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, prev + 1e-15);
      prev = v;
    }
  }
}

TEST_F(Laws, DensityOfMaximum) {
  EXPECT_NEAR(density_max_at_drawdown(bm, 0.0, 1.0, 0.0).value, 1.0, 1e-12);
  EXPECT_NEAR(density_max_at_drawdown(bm, 0.0, 2.0, 2.0).value, 0.5 * kE1, 1e-12);
  // Finite difference of the survival function.
  const double h = 1e-5;
  const double fd = (survival_max_at_drawdown(drift, 0.0, 1.5, 2.0 - h).value -
                     survival_max_at_drawdown(drift, 0.0, 1.5, 2.0 + h).value) /
                    (2 * h);
  EXPECT_NEAR(density_max_at_drawdown(drift, 0.0, 1.5, 2.0).value, fd, 1e-8);
}

TEST_F(Laws, Lehoczky) {
  EXPECT_NEAR(lehoczky_lt(bm, 0.0, 1.0, 0.5, 0.0).value, 1.0 / std::cosh(1.0), 1e-12);
  EXPECT_NEAR(lehoczky_lt(bm, 0.0, 1.0, 0.5, 1.0).value, kE1, 1e-12);
  EXPECT_NEAR(lehoczky_lt(rbm, 0.0, 1.0, 0.5, 0.0).value, std::pow(std::cosh(1.0), -2), 1e-10);
}

TEST_F(Laws, LehoczkySmallAlphaApproachesFinitenessProbability) {
  for (const auto* m : {&bm, &rbm, &drift}) {
    const double target = 1.0 - escape_probability(*m, 0.0, 1.0).value;
    double prev = 0.0;
    for (double alpha : {1e-2, 1e-4, 1e-6}) {
      const double v = lehoczky_lt(*m, 0.0, 1.0, alpha, 0.0).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
    EXPECT_NEAR(prev, target, 1e-2);
  }
  // Class 2 also accepts alpha = 0 directly.
  const auto e34 = build_model("example34");
  EXPECT_NEAR(lehoczky_lt(e34, 1.0, 1.0, 0.0, 0.0).value, 1.0, 1e-8);
}

TEST_F(Laws, EscapeProbability) {
  EXPECT_DOUBLE_EQ(escape_probability(bm, 0.0, 1.0).value, 0.0);
  EXPECT_NEAR(escape_probability(build_model("example34"), 1.0, 1.0).value, 0.0, 1e-10);
  const double c = 1.0 - kE1;
  const double expected = std::exp(std::log1p(-std::exp(-c * std::exp(1.0))) / c);
  const LawValue e33 = escape_probability(build_model("example33"), 1.0, 1.0);
  EXPECT_NEAR(e33.value, expected, 1e-8);
  EXPECT_GT(e33.value, 0.0);
  EXPECT_LT(e33.value, 1.0);
}

TEST_F(Laws, MaxDrawdownBeforeHitting) {
  EXPECT_NEAR(maxdd_cdf(bm, 0.0, 1.0, 1.0).value, kE1, 1e-12);
  EXPECT_NEAR(maxdd_cdf(bm, 0.0, 1.0, 100.0).value, std::exp(-0.01), 1e-12);
  EXPECT_NEAR(maxdd_cdf(rbm, 0.0, 1.0, 0.5).value, kE1, 1e-12);
}

TEST_F(Laws, Malyutin) {
  // exp(-b (eta - x)) with b = coth(1) for BM.
  EXPECT_NEAR(malyutin_lt(bm, 0.0, 1.0, 1.0, 0.5).value, std::exp(-kCoth1), 1e-10);
  EXPECT_NEAR(malyutin_lt(rbm, 0.0, 1.0, 1.0, 0.5).value, 1.0 / std::cosh(1.0), 1e-10);
  EXPECT_NEAR(malyutin_lt(bm, 0.0, 1.0, 1.0, 1e-8).value, maxdd_cdf(bm, 0.0, 1.0, 1.0).value,
              1e-5);
}

TEST_F(Laws, MalyutinAlternativeForm) {
  for (const auto* m : {&bm, &rbm})
    EXPECT_NEAR(malyutin_lt_alt(*m, 0.0, 1.0, 1.0, 0.5).value,
                malyutin_lt(*m, 0.0, 1.0, 1.0, 0.5).value, 1e-9);
  EXPECT_NEAR(malyutin_lt_alt(bm, 0.0, 1.0, 1.0, 1e-8).value, kE1, 1e-5);
}

TEST_F(Laws, MalyutinMonotoneAndVacuousLimit) {
  double prev = 1.0;
  for (double alpha : {0.01, 0.1, 0.5, 1.0, 4.0}) {
    const double v = malyutin_lt(bm, 0.0, 1.5, 0.8, alpha).value;
    EXPECT_LE(v, prev);
    prev = v;
  }
  prev = 1.0;
  for (double eta : {1.0, 2.0, 4.0, 8.0}) {
    const double v = malyutin_lt(rbm, 0.0, eta, 0.8, 0.5).value;
    EXPECT_LE(v, prev);
    prev = v;
  }
  // A drawdown bound far above eta never binds.
  EXPECT_NEAR(malyutin_lt(bm, 0.0, 1.0, 60.0, 0.5).value, hitting_lt(bm, 0.5, 0.0, 1.0), 1e-12);
}

TEST_F(Laws, GeneralDrawdownBarrier) {
  EXPECT_NEAR(general_drawdown_survival(bm, 0.0, [](double) { return 2.0; }, 3.0).value,
              survival_max_at_drawdown(bm, 0.0, 2.0, 3.0).value, 1e-12);
  EXPECT_NEAR(general_drawdown_survival(bm, 1.0, [](double z) { return z / 2.0; }, 2.0).value,
              0.25, 1e-10);
  EXPECT_DOUBLE_EQ(
      general_drawdown_survival(bm, 0.7, [](double) { return 1.0; }, 0.7).value, 1.0);
  EXPECT_THROW(general_drawdown_survival(bm, 0.0, [](double) { return -1.0; }, 1.0),
               DomainError);
}

TEST_F(Laws, RejectsBadParameters) {
  EXPECT_THROW(lehoczky_lt(bm, 0.0, 0.0, 0.5, 0.0), DomainError);
  EXPECT_THROW(lehoczky_lt(bm, 0.0, 1.0, -0.5, 0.0), DomainError);
  EXPECT_THROW(lehoczky_lt(bm, 0.0, 1.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(maxdd_cdf(bm, 1.0, 0.5, 1.0), DomainError);
  EXPECT_THROW(escape_probability(rbm, -1.0, 1.0), DomainError);
  EXPECT_THROW(malyutin_lt(bm, 0.0, 1.0, 1.0, -1.0), DomainError);
}

}  // namespace
}  // namespace ddk
