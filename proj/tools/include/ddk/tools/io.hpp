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

#pragma once

#include <iosfwd>
#include <string>

#include "ddk/curve.hpp"

namespace ddk::io {

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// %.17g, with inf/-inf/nan spelled out.
std::string format_double(double v);

/// grid,value,err with one row per point.
void write_csv(std::ostream& out, const CurveTable& table);

/// {law_id, model{id, params}, query{...}, grid_param, meta{...},
///  points[[g, v, e], ...]}. Non-finite numbers are written as strings.
void write_json(std::ostream& out, const CurveTable& table);

void write_table(std::ostream& out, const CurveTable& table, Format format);

/// Parses either format; JSON is recognised by a leading '{'.
CurveTable read_table(std::istream& in);
CurveTable read_table_file(const std::string& path);

}  // namespace ddk::io
