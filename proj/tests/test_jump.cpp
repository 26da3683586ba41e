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
#include "ddk/jump.hpp"
#include "ddk/laws.hpp"
#include "ddk/model.hpp"

namespace ddk {
namespace {

const double kE1 = std::exp(-1.0);
const double kHalfE = 0.5 * std::exp(-0.5);

class Jump : public ::testing::Test {
 protected:
  DiffusionModel bm = build_model("bm_std");
  DiffusionModel rbm = build_model("rbm");
  DiffusionModel drift = build_model("bm_drift", std::vector<double>{1.0, 1.0});
};

TEST_F(Jump, KernelExamples) {
  EXPECT_NEAR(kernel_apply(bm, 1.0, 2.0, 1.0, TestFunction::indicator(2.0)).value, kHalfE,
              1e-10);
  EXPECT_NEAR(kernel_apply(bm, 1.0, 2.0, 1.0, TestFunction::constant(1.0, -kInf, kInf)).value,
              1.0, 1e-10);
  const TestFunction f{[](double z) { return std::sin(z); }};
  EXPECT_DOUBLE_EQ(kernel_apply(bm, 1.5, 1.5, 0.3, f).value, std::sin(0.3));
}

TEST_F(Jump, KernelIsSubMarkovOnIndicators) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (const auto* m : {&bm, &drift, &rbm}) {
    for (int i = 0; i < 30; ++i) {
      const double rho = u(rng), delta = rho + u(rng);
      const double y = std::isfinite(m->lower()) ? delta + u(rng) : u(rng) - 1.0;
      const double a = y + u(rng) - 1.0;
      const double v = kernel_apply(*m, rho, delta, y, TestFunction::indicator(a, a + u(rng))).value;
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST_F(Jump, ConditionalSurvival) {
  EXPECT_NEAR(cond_survival(bm, 1.0, 2.0, 1.0, 2.0).value, kHalfE, 1e-10);
  EXPECT_DOUBLE_EQ(cond_survival(bm, 1.0, 2.0, 3.0, 2.0).value, 1.0);
  EXPECT_NEAR(cond_survival(bm, 1.0, 2.0, 1.0, 1.0).value, 0.5, 1e-12);
}

TEST_F(Jump, JointSurvival) {
  EXPECT_NEAR(joint_survival(bm, 1.0, 2.0, 1.0, 2.0).value, std::exp(-1.5), 1e-10);
  EXPECT_NEAR(joint_survival(bm, 1.0, 2.0, 0.5, 3.0).value, std::exp(-1.75), 1e-10);
  // Sizes merging with v = y: both events become the marginal one.
  EXPECT_NEAR(joint_survival(bm, 1.0, 1.0 + 1e-9, 2.0 - 1e-9, 2.0).value,
              survival_max_at_drawdown(bm, 0.0, 1.0, 2.0).value, 1e-8);
}

TEST_F(Jump, Generator) {
  const TestFunction f = TestFunction::indicator(1.0, 60.0);
  EXPECT_NEAR(generator_apply(bm, 1.0, 0.0, f).value, kE1 - std::exp(-60.0), 1e-9);
  EXPECT_NEAR(generator_apply(bm, 2.0, 0.0, f).value, kHalfE - 0.5 * std::exp(-30.0), 1e-9);
  EXPECT_NEAR(
      generator_apply(bm, 1.0, 0.5, TestFunction::constant(3.0, 0.5, kInf)).value, 0.0, 1e-12);
}

TEST_F(Jump, GeneratorMatchesKernelDifferenceQuotient) {
  const TestFunction f = TestFunction::indicator(1.0, 60.0);
  const double g = generator_apply(bm, 2.0, 0.0, f).value;
  const double h = 1e-4;
  const double fd = (kernel_apply(bm, 2.0, 2.0 + h, 0.0, f).value - f(0.0)) / h;
  EXPECT_NEAR(fd, g, 1e-3);
}

TEST_F(Jump, JumpMeasure) {
  EXPECT_NEAR(jump_measure_density(bm, 1.0, 0.0, 1e-12).value, 1.0, 1e-9);
  EXPECT_NEAR(jump_measure_density(bm, 1.0, 0.0, 1.0).value, kE1, 1e-10);
  EXPECT_NEAR(jump_measure_mass(bm, 1.0, 0.0).value, 1.0, 1e-8);
  for (const auto* m : {&bm, &drift})
    EXPECT_NEAR(jump_measure_mass(*m, 0.7, 1.3).value, holding_hazard(*m, 0.7, 1.3).value,
                1e-8);
}

TEST_F(Jump, HoldingTimes) {
  for (double y : {-2.0, 0.0, 5.0}) {
    EXPECT_NEAR(tplus_survival(bm, 1.0, 2.0, y).value, 0.5, 1e-14);
    EXPECT_NEAR(holding_survival(bm, 1.0, y, 1.0).value, 0.5, 1e-14);
  }
  EXPECT_NEAR(tplus_survival(bm, 1.0, 1.0 + 1e-12, 0.0).value, 1.0, 1e-10);
  EXPECT_NEAR(tplus_survival(rbm, 1.0, 2.0, 3.0).value, 0.5, 1e-14);
  EXPECT_DOUBLE_EQ(holding_survival(bm, 1.0, 0.0, 0.0).value, 1.0);
  EXPECT_NEAR(holding_survival(bm, 1.0, 0.0, 3.0).value, 0.25, 1e-14);
  EXPECT_NEAR(holding_survival(bm, 1.0, 0.0, 1.0).value * holding_survival(bm, 2.0, 0.0, 2.0).value,
              0.25, 1e-14);
}

TEST_F(Jump, HoldingMultiplicativity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (const auto* m : {&bm, &drift}) {
    for (int i = 0; i < 50; ++i) {
      const double s = 0.1 + u(rng), t = u(rng), w = u(rng), y = u(rng) - 1.0;
      EXPECT_NEAR(holding_survival(*m, s, y, t + w).value,
                  holding_survival(*m, s, y, t).value * holding_survival(*m, s + t, y, w).value,
                  1e-12);
    }
  }
}

TEST_F(Jump, LastJumpTime) {
  EXPECT_NEAR(tminus_cdf(bm, 2.0, 1.0, 1.0).value, std::exp(-0.5), 1e-10);
  EXPECT_NEAR(tminus_cdf(bm, 2.0, 1.0, 2.0).value, kE1, 1e-10);
  EXPECT_NEAR(tminus_cdf(bm, 2.0, 2.0 - 1e-9, 1.0).value, 1.0, 1e-8);
}

TEST_F(Jump, JumpTimeAndSize) {
  EXPECT_NEAR(jump_time_size_joint(bm, 1.0, 2.0, 0.0, 0.0).value, 0.5, 1e-10);
  EXPECT_NEAR(jump_time_size_joint(bm, 1.0, 2.0, 3.0, 1.0).value,
              std::exp(-0.5) - kE1, 1e-10);
  EXPECT_NEAR(jump_time_size_joint(bm, 1.0, 2.0, 0.0, 200.0).value, 0.0, 1e-12);
  for (double y : {-1.0, 0.5, 2.0})
    EXPECT_NEAR(jump_time_size_joint(drift, 0.8, 1.7, y, 0.0).value,
                1.0 - tplus_survival(drift, 0.8, 1.7, y).value, 1e-10);
}

TEST_F(Jump, MaximumDrawdownLaws) {
  EXPECT_NEAR(dminus_cond_cdf(bm, 2.0, 1.0, 1.0, 0.5).value, kE1, 1e-10);
  EXPECT_DOUBLE_EQ(dminus_cond_cdf(bm, 2.0, 1.0, 0.4, 0.5).value, 0.0);
  EXPECT_NEAR(dminus_cond_cdf(bm, 2.0, 1.0, 1e6, 0.5).value, 1.0, 1e-5);
  EXPECT_NEAR(dminus_joint_cdf(bm, 2.0, 1.0, 2.0, 1.0).value, std::exp(-1.5), 1e-10);
  EXPECT_NEAR(dminus_joint_cdf(bm, 1.0, 0.5, 1.0, 0.5).value, std::exp(-1.5), 1e-10);
  EXPECT_NEAR(dminus_joint_cdf(bm, 2.0, 1.0, 1.5, 1.5).value, maxdd_cdf(bm, 0.0, 2.0, 1.5).value,
              1e-10);
  EXPECT_NEAR(dminus_density(bm, 1.0, 1.0).value, kE1, 1e-10);
  EXPECT_NEAR(dminus_density(bm, 2.0, 1.0).value, 2.0 * std::exp(-2.0), 1e-10);
}

TEST_F(Jump, RejectsUnsupportedInputs) {
  EXPECT_THROW(joint_survival(rbm, 1.0, 2.0, 3.0, 4.0), DomainError);
  EXPECT_THROW(kernel_apply(bm, 2.0, 1.0, 0.0, TestFunction::indicator(1.0)), DomainError);
  EXPECT_THROW(cond_survival(rbm, 1.0, 2.0, 1.5, 3.0), DomainError);
  EXPECT_THROW(tplus_survival(bm, 0.0, 1.0, 0.0), DomainError);
}

}  // namespace
}  // namespace ddk
