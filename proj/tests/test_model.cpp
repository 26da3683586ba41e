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
#include <vector>

#include "ddk/errors.hpp"
#include "ddk/model.hpp"

namespace ddk {
namespace {

TEST(Catalog, StandardBrownianMotion) {
  const auto m = build_model("bm_std");
  EXPECT_DOUBLE_EQ(m.scale(1.0), 1.0);
  EXPECT_EQ(m.lower(), kUnboundedBelow);
  EXPECT_EQ(m.boundary_class(), BoundaryClass::k1a);
  EXPECT_TRUE(m.has_basis());
}

TEST(Catalog, DriftedBrownianMotionIsTransient) {
  const auto m = build_model("bm_drift", std::vector<double>{1.0});
  EXPECT_EQ(m.boundary_class(), BoundaryClass::k2a);
  EXPECT_TRUE(std::isfinite(m.scale_at_infinity()));
}

TEST(Catalog, ReflectedBrownianMotion) {
  const auto m = build_model("rbm");
  EXPECT_EQ(m.lower(), 0.0);
  EXPECT_EQ(m.boundary_class(), BoundaryClass::k1b);
  for (double z : {0.0, 0.5, 3.0}) EXPECT_DOUBLE_EQ(m.scale(z), z);
  EXPECT_EQ(m.scale_at_lower(), 0.0);
}

TEST(Catalog, ScaleExamples) {
  const auto e33 = build_model("example33");
  EXPECT_EQ(e33.boundary_class(), BoundaryClass::k2b);
  EXPECT_NEAR(e33.scale(1.0), 1.0 - std::exp(-std::exp(1.0)), 1e-15);
  EXPECT_FALSE(e33.has_basis());
  const auto e34 = build_model("example34");
  EXPECT_EQ(e34.boundary_class(), BoundaryClass::k2b);
  EXPECT_NEAR(e34.scale(2.0), 1.0 - std::exp(-2.0), 1e-15);
}

TEST(Catalog, RejectsBadInput) {
  EXPECT_THROW(build_model("no_such_model"), DomainError);
  EXPECT_THROW(build_model("bm_drift", std::vector<double>{-1.0}), DomainError);
  EXPECT_THROW(build_model("bm_drift", std::vector<double>{1.0, 0.0}), DomainError);
  EXPECT_THROW(build_model("gbm", std::vector<double>{0.1, 1.0}), DomainError);
}

TEST(Catalog, EveryEntryBuildsWithDefaults) {
  for (const auto& e : model_catalog()) {
    SCOPED_TRACE(e.id);
    const auto m = build_model(e.id);
    EXPECT_EQ(m.id(), e.id);
    EXPECT_EQ(e.param_names.size(), e.default_params.size());
  }
}

TEST(Basis, BrownianMotionValues) {
  const auto m = build_model("bm_std");
  const AlphaBasis b = eval_basis(m, 0.5, 1.0);
  EXPECT_NEAR(b.psi, std::exp(1.0), 1e-14);
  EXPECT_NEAR(b.phi, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(b.w, 2.0, 1e-14);
  const AlphaBasis b0 = eval_basis(m, 0.7, 0.0);
  EXPECT_DOUBLE_EQ(b0.psi, 1.0);
  EXPECT_DOUBLE_EQ(b0.phi, 1.0);
}

TEST(Basis, ReflectedAtZero) {
  const auto m = build_model("rbm");
  const AlphaBasis b = eval_basis(m, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(b.psi, 1.0);
  EXPECT_NEAR(b.psi_minus, 0.0, 1e-15);
}

TEST(Basis, WronskianDoesNotDependOnLevel) {
  for (const char* id : {"bm_std", "rbm", "bm_drift", "gbm", "example34"}) {
    const auto m = build_model(id);
    for (double alpha : {0.05, 0.5, 3.0}) {
      const double lo = m.lower() == kUnboundedBelow ? -3.0 : m.lower() + 0.1;
      const double w0 = wronskian_at(m, alpha, lo + 0.5);
      for (double z : {lo + 0.2, lo + 1.0, lo + 2.5}) {
        SCOPED_TRACE(std::string(id) + " alpha=" + std::to_string(alpha) +
                     " z=" + std::to_string(z));
        EXPECT_NEAR(wronskian_at(m, alpha, z) / w0, 1.0, 1e-10);
      }
      if (auto w = m.closed_form_wronskian(alpha)) EXPECT_NEAR(*w / w0, 1.0, 1e-10);
    }
  }
}

TEST(Basis, ClosedFormRatioMatchesEigenfunctions) {
  for (const char* id : {"bm_std", "bm_drift", "rbm", "gbm", "example34"}) {
    const auto m = build_model(id);
    const double base = m.lower() == kUnboundedBelow ? -1.0 : m.lower();
    for (double alpha : {0.1, 1.0, 4.0})
      for (double y : {1.0, 2.0, 4.0})
        for (double delta : {0.3, 0.9}) {
          const LogBasis top = m.log_basis(alpha, base + y);
          const LogBasis low = m.log_basis(alpha, base + y - delta);
          const double generic = top.log_phi + low.log_psi - low.log_phi - top.log_psi;
          EXPECT_NEAR(m.log_basis_ratio(alpha, base + y, delta), generic,
                      1e-12 * (1.0 + std::fabs(generic)))
              << id << " alpha=" << alpha << " y=" << y << " delta=" << delta;
        }
  }
}

TEST(Basis, ClassOneRejectsAlphaZero) {
  EXPECT_THROW(build_model("bm_std").log_basis(0.0, 1.0), DomainError);
  const LogBasis b = build_model("bm_drift").log_basis(0.0, 1.0);
  EXPECT_DOUBLE_EQ(b.log_psi, 0.0);
}

TEST(Hitting, Examples) {
  const auto m = build_model("bm_std");
  EXPECT_NEAR(hitting_lt(m, 0.5, 0.0, 1.0), std::exp(-1.0), 1e-14);
  EXPECT_NEAR(hitting_lt(m, 0.5, 1.0, 0.0), std::exp(-1.0), 1e-14);
  for (const char* id : {"bm_std", "rbm", "bm_drift", "gbm"})
    EXPECT_DOUBLE_EQ(hitting_lt(build_model(id), 1.3, 0.7, 0.7), 1.0);
}

TEST(Hitting, FarLevelsDoNotOverflow) {
  const auto m = build_model("bm_std");
  const double v = hitting_lt(m, 2.0, 0.0, 400.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
  EXPECT_LT(v, 1e-300);
  EXPECT_NEAR(hitting_lt(m, 2.0, 0.0, 100.0), std::exp(-200.0), 1e-95);
}

TEST(TwoSidedExit, ScaleRatioLimit) {
  const auto m = build_model("bm_std");
  const ExitTransforms a = two_sided_exit_lt(m, 0.0, 0.5, 0.0, 1.0);
  EXPECT_NEAR(a.lower, 0.5, 1e-15);
  EXPECT_NEAR(a.upper, 0.5, 1e-15);
  const ExitTransforms b = two_sided_exit_lt(m, 0.0, 0.25, 0.0, 1.0);
  EXPECT_NEAR(b.lower, 0.75, 1e-15);
  EXPECT_NEAR(b.upper, 0.25, 1e-15);
}

TEST(TwoSidedExit, BrownianMotionAtHalf) {
  // sinh(sqrt(2a)(1-s))/sinh(sqrt(2a)) with s = 0.5, a = 0.5.
  const ExitTransforms e = two_sided_exit_lt(build_model("bm_std"), 0.5, 0.5, 0.0, 1.0);
  EXPECT_NEAR(e.lower, 0.44340944, 1e-8);
  EXPECT_NEAR(e.upper, 0.44340944, 1e-8);
}

TEST(TwoSidedExit, ComponentsSumToAtMostOne) {
  for (const char* id : {"bm_std", "rbm", "bm_drift", "gbm", "example34"}) {
    const auto m = build_model(id);
    const double lo = m.lower() == kUnboundedBelow ? -1.0 : m.lower() + 0.05;
    for (double alpha : {0.0, 1e-3, 0.2, 1.0, 5.0})
      for (double s : {0.1, 0.5, 0.9}) {
        const double hi = lo + 2.0;
        const ExitTransforms e = two_sided_exit_lt(m, alpha, lo + s * 2.0, lo, hi);
        EXPECT_GE(e.lower, 0.0);
        EXPECT_GE(e.upper, 0.0);
        EXPECT_LE(e.lower + e.upper, 1.0 + 1e-12);
        if (alpha == 0.0) EXPECT_NEAR(e.lower + e.upper, 1.0, 1e-12);
      }
  }
}

TEST(CustomModel, MatchesCatalogBrownianMotion) {
  CustomModelSpec spec;
  spec.scale = [](double z) { return z; };
  spec.scale_deriv = [](double) { return 1.0; };
  spec.psi = [](double a, double z) { return std::exp(z * std::sqrt(2 * a)); };
  spec.psi_deriv = [](double a, double z) {
    return std::sqrt(2 * a) * std::exp(z * std::sqrt(2 * a));
  };
  spec.phi = [](double a, double z) { return std::exp(-z * std::sqrt(2 * a)); };
  spec.phi_deriv = [](double a, double z) {
    return -std::sqrt(2 * a) * std::exp(-z * std::sqrt(2 * a));
  };
  const auto m = make_custom_model(spec);
  const auto ref = build_model("bm_std");
  for (double y : {0.5, 1.0, 2.0})
    EXPECT_NEAR(hitting_lt(m, 0.8, 0.0, y), hitting_lt(ref, 0.8, 0.0, y), 1e-12);
}

TEST(CustomModel, RejectsDecreasingScale) {
  CustomModelSpec spec;
  spec.scale = [](double z) { return -z; };
  spec.scale_deriv = [](double) { return -1.0; };
  EXPECT_THROW(make_custom_model(spec), DomainError);
}

}  // namespace
}  // namespace ddk
