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

// Validation suites shared by `drawdown-kit validate` and the acceptance
// test binary. Each suite checks one acceptance criterion and reports the
// worst deviation it saw.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ddk::validation {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct McSettings {
  std::uint64_t seed = 20240601;
  std::int64_t n_paths = 100000;
  double step = 1e-4;
  unsigned threads = 0;
};

CriterionResult closed_form_bm();
CriterionResult closed_form_rbm();
CriterionResult cross_identities();
CriterionResult limit_oracle();
CriterionResult jump_suite();
CriterionResult monte_carlo(const McSettings& settings);
CriterionResult escape_examples();
CriterionResult recurrent_escape();

/// Closed-form suites touching the given model ("all" for every one).
std::vector<CriterionResult> run_closed_forms(std::string_view model);
std::vector<CriterionResult> run_identities();

/// "PASS criterion 3 ...: detail (1.23 s)".
std::string format_line(const CriterionResult& r);

}  // namespace ddk::validation
