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

#include "ddk/tools/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "ddk/errors.hpp"

namespace ddk::io {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '"' || s.back() == '\r'))
    s.remove_suffix(1);
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::nan("");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DomainError("malformed number '" + std::string(s) + "' in table");
  return v;
}

double from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number(j.get<std::string>());
  throw DomainError("expected a number in table JSON");
}

CurveTable read_csv(std::istream& in) {
  CurveTable t;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "grid,value,err")
    throw DomainError("CSV table must start with the header grid,value,err");
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw DomainError("CSV row needs three fields: " + line);
    const std::string_view sv(line);
    t.grid.push_back(parse_number(sv.substr(0, c1)));
    t.values.push_back(parse_number(sv.substr(c1 + 1, c2 - c1 - 1)));
    t.err.push_back(parse_number(sv.substr(c2 + 1)));
  }
  t.validate();
  return t;
}

CurveTable parse_json_table(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed table JSON: ") + e.what());
  }
  CurveTable t;
  t.law_id = j.value("law_id", "");
  if (j.contains("model")) {
    t.model_id = j["model"].value("id", "");
    const json params = j["model"].value("params", json::array());
    for (const auto& p : params) t.model_params.push_back(from_json(p));
  }
  const json query = j.value("query", json::object());
  for (const auto& [k, v] : query.items()) t.query[k] = from_json(v);
  t.grid_param = j.value("grid_param", "");
  const json meta = j.value("meta", json::object());
  for (const auto& [k, v] : meta.items()) {
    if (!v.is_string()) throw DomainError("table JSON meta values must be strings");
    t.meta[k] = v.get<std::string>();
  }
  if (!j.contains("points")) throw DomainError("table JSON has no points");
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 3)
      throw DomainError("each point must be [grid, value, err]");
    t.grid.push_back(from_json(p[0]));
    t.values.push_back(from_json(p[1]));
    t.err.push_back(from_json(p[2]));
  }
  t.validate();
  return t;
}

CurveTable read_json(const std::string& text) {
  try {
    return parse_json_table(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed table JSON: ") + e.what());
  }
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw DomainError("format must be csv or json");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const CurveTable& table) {
  out << "grid,value,err\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    out << format_double(table.grid[i]) << ',' << format_double(table.values[i])
        << ',' << format_double(table.err[i]) << '\n';
}

void write_json(std::ostream& out, const CurveTable& table) {
  json j;
  j["law_id"] = table.law_id;
  json params = json::array();
  for (double p : table.model_params) params.push_back(number(p));
  j["model"] = {{"id", table.model_id}, {"params", params}};
  json query = json::object();
  for (const auto& [k, v] : table.query) query[k] = number(v);
  j["query"] = query;
  j["grid_param"] = table.grid_param;
  j["meta"] = table.meta;
  json points = json::array();
  for (std::size_t i = 0; i < table.size(); ++i)
    points.push_back({number(table.grid[i]), number(table.values[i]), number(table.err[i])});
  j["points"] = points;
  out << j.dump(1) << '\n';
}

void write_table(std::ostream& out, const CurveTable& table, Format format) {
  if (format == Format::csv)
    write_csv(out, table);
  else
    write_json(out, table);
}

CurveTable read_table(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_json(text);
  std::istringstream s(text);
  return read_csv(s);
}

CurveTable read_table_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open table file '" + path + "'");
  return read_table(f);
}

}  // namespace ddk::io
