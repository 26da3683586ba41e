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
#include <set>
#include <sstream>
#include <string>

#include "ddk/curve.hpp"
#include "ddk/errors.hpp"
#include "ddk/tools/io.hpp"

namespace ddk {
namespace {

TEST(Grid, StartStopStep) {
  const auto g = parse_grid("0:5:0.1");
  ASSERT_EQ(g.size(), 51u);
  EXPECT_DOUBLE_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 5.0, 1e-12);
  EXPECT_EQ(parse_grid("1,2.5,4").size(), 3u);
  EXPECT_EQ(parse_grid("0.5").size(), 1u);
}

TEST(Grid, RejectsMalformed) {
  EXPECT_THROW(parse_grid("0:5"), DomainError);
  EXPECT_THROW(parse_grid("0:5:0"), DomainError);
  EXPECT_THROW(parse_grid("5:0:1"), DomainError);
  EXPECT_THROW(parse_grid("a:b:c"), DomainError);
  EXPECT_THROW(parse_grid(""), DomainError);
}

TEST(Registry, CoversCommandLineLaws) {
  std::set<std::string> ids;
  for (const auto& l : law_registry()) ids.insert(l.id);
  for (const char* id : {"survival-m", "density-m", "lehoczky", "maxdd", "malyutin", "escape",
                         "general-phi", "kernel", "cond", "joint", "generator", "measure",
                         "tplus", "tminus", "jumpjoint", "dminus-cond", "dminus-joint",
                         "dminus-density", "holding"})
    EXPECT_TRUE(ids.count(id)) << id;
  EXPECT_THROW(find_law("nope"), DomainError);
}

TEST(Registry, MissingParameterIsNamed) {
  try {
    complete_query(find_law("survival-m"), {{"delta", 1.0}});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("'y'"), std::string::npos);
  }
}

TEST(Curve, SurvivalTable) {
  const auto m = build_model("bm_std");
  const CurveTable t = evaluate_curve(m, "survival-m", {{"x", 0.0}, {"delta", 2.0}}, "y",
                                      parse_grid("0:5:0.1"));
  ASSERT_EQ(t.size(), 51u);
  for (std::size_t i = 0; i < t.size(); ++i)
    EXPECT_NEAR(t.values[i], std::exp(-t.grid[i] / 2.0), 1e-12);
  EXPECT_EQ(t.meta.at("source"), "analytic");
  EXPECT_FALSE(t.query.count("y"));
  EXPECT_THROW(evaluate_curve(m, "survival-m", {{"delta", 2.0}}, "y", {1.0, 0.5}),
               DomainError);
}

CurveTable sample_table() {
  CurveTable t;
  t.law_id = "survival-m";
  t.model_id = "bm_drift";
  t.model_params = {1.0, 0.3};
  t.query = {{"x", 0.1}, {"delta", 2.0 / 3.0}};
  t.grid_param = "y";
  t.grid = {0.1, 1.0 / 3.0, 7.0};
  t.values = {1.0, std::exp(-1.0 / 3.0), 0.0};
  t.err = {0.0, 1e-17, kInf};
  t.meta = {{"source", "mc"}, {"seed", "42"}};
  return t;
}

void expect_same(const CurveTable& a, const CurveTable& b) {
  EXPECT_EQ(a.grid, b.grid);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.err, b.err);
}

TEST(TableIo, CsvRoundTripIsExact) {
  const CurveTable t = sample_table();
  std::stringstream ss;
  io::write_csv(ss, t);
  EXPECT_EQ(ss.str().substr(0, 15), "grid,value,err\n");
  const CurveTable back = io::read_table(ss);
  expect_same(t, back);
}

TEST(TableIo, JsonRoundTripIsExact) {
  const CurveTable t = sample_table();
  std::stringstream ss;
  io::write_json(ss, t);
  const CurveTable back = io::read_table(ss);
  expect_same(t, back);
  EXPECT_EQ(back.law_id, t.law_id);
  EXPECT_EQ(back.model_id, t.model_id);
  EXPECT_EQ(back.model_params, t.model_params);
  EXPECT_EQ(back.query, t.query);
  EXPECT_EQ(back.grid_param, "y");
  EXPECT_EQ(back.meta, t.meta);
  std::stringstream again;
  io::write_json(again, back);
  std::stringstream first;
  io::write_json(first, t);
  EXPECT_EQ(first.str(), again.str());
}

TEST(TableIo, FormatDouble) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(kInf), "inf");
  EXPECT_EQ(io::format_double(-kInf), "-inf");
  EXPECT_EQ(io::format_double(std::nan("")), "nan");
}

TEST(TableIo, RejectsMalformed) {
  std::stringstream a("grid,value\n1,2\n");
  EXPECT_THROW(io::read_table(a), DomainError);
  std::stringstream b("grid,value,err\n1,x,0\n");
  EXPECT_THROW(io::read_table(b), DomainError);
  std::stringstream c("{\"law_id\": 3");
  EXPECT_THROW(io::read_table(c), DomainError);
  EXPECT_THROW(io::parse_format("xml"), DomainError);
}

}  // namespace
}  // namespace ddk
