// Copyright 2026 The Vaultgate Authors
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

#include "vaultgate/contract/codec.hpp"

#include <charconv>
#include <cmath>

#include "vaultgate/core/catalog.hpp"
#include "vaultgate/core/error.hpp"

namespace vaultgate::contract {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::BadRequest, "malformed contract json: " + what);
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing '") + key + "'");
  return j.at(key);
}

std::string string_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_string()) malformed(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t int_member(const Json& v, const char* key) {
  if (!v.is_number_integer()) malformed(std::string("'") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

Json literal_to_json(const Value& literal) {
  switch (literal.index()) {
    case 0:
      return {{"type", "INTEGER"}, {"value", std::get<std::int64_t>(literal)}};
    case 1:
      return {{"type", "DECIMAL"}, {"value", format_decimal(std::get<double>(literal))}};
    case 2:
      return {{"type", "STRING"}, {"value", std::get<std::string>(literal)}};
    default:
      return {{"type", "DATE"}, {"value", format_date(std::get<Date>(literal))}};
  }
}

Value literal_from_json(const Json& j) {
  const std::string type = string_member(j, "type");
  const Json& v = member(j, "value");
  if (type == "INTEGER") return int_member(v, "value");
  if (!v.is_string()) malformed("literal value must be a string");
  const auto text = v.get<std::string>();
  if (type == "STRING") return text;
  if (type == "DATE") {
    const auto d = parse_date(text);
    if (!d) malformed("bad date '" + text + "'");
    return *d;
  }
  if (type == "DECIMAL") {
    double d = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(d)) {
      malformed("bad decimal '" + text + "'");
    }
    return d;
  }
  malformed("unknown literal type '" + type + "'");
}

Json predicate_to_json(const Predicate& p) {
  Json arr = Json::array();
  for (const auto& c : p.conjuncts) {
    arr.push_back({{"column", c.column},
                   {"op", std::string(to_string(c.op))},
                   {"value", literal_to_json(c.literal)}});
  }
  return arr;
}

Predicate predicate_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("predicate must be a non-empty array");
  Predicate p;
  for (const auto& item : j) {
    Comparison c;
    c.column = string_member(item, "column");
    const auto op = parse_compare_op(string_member(item, "op"));
    if (!op) malformed("bad comparison operator");
    c.op = *op;
    c.literal = literal_from_json(member(item, "value"));
    p.conjuncts.push_back(std::move(c));
  }
  return p;
}

Json to_json(const DataContract& c) {
  Json grants = Json::array();
  for (const auto& g : c.grants) {
    Json jg;
    jg["source"] = g.source;
    if (g.all_columns()) {
      jg["columns"] = "*";
    } else {
      jg["columns"] = std::get<std::vector<std::string>>(g.columns);
    }
    jg["where"] = g.row_predicate ? predicate_to_json(*g.row_predicate) : Json(nullptr);
    jg["row_limit"] = g.row_limit ? Json(*g.row_limit) : Json(nullptr);
    grants.push_back(std::move(jg));
  }
  Json j;
  j["contract_id"] = c.contract_id;
  j["principal"] = c.principal;
  j["purpose"] = c.purpose;
  j["grants"] = std::move(grants);
  j["ttl"] = c.ttl;
  j["status"] = std::string(to_string(c.status));
  j["activated_at"] = c.activated_at ? Json(*c.activated_at) : Json(nullptr);
  j["origin"] = std::string(to_string(c.origin));
  return j;
}

DataContract from_json(const Json& j) {
  DataContract c;
  c.contract_id = string_member(j, "contract_id");
  c.principal = string_member(j, "principal");
  c.purpose = string_member(j, "purpose");
  c.ttl = int_member(member(j, "ttl"), "ttl");
  const auto status = parse_status(string_member(j, "status"));
  if (!status) malformed("bad status");
  c.status = *status;
  const auto origin = parse_origin(string_member(j, "origin"));
  if (!origin) malformed("bad origin");
  c.origin = *origin;
  const Json& act = member(j, "activated_at");
  if (!act.is_null()) c.activated_at = int_member(act, "activated_at");

  const Json& grants = member(j, "grants");
  if (!grants.is_array()) malformed("'grants' must be an array");
  for (const auto& jg : grants) {
    Grant g;
    g.source = string_member(jg, "source");
    if (!split_qualified(g.source)) malformed("bad source '" + g.source + "'");
    const Json& cols = member(jg, "columns");
    if (cols.is_string() && cols.get<std::string>() == "*") {
      g.columns = AllColumns{};
    } else if (cols.is_array()) {
      std::vector<std::string> names;
      for (const auto& n : cols) {
        if (!n.is_string()) malformed("column names must be strings");
        names.push_back(n.get<std::string>());
      }
      g.columns = std::move(names);
    } else {
      malformed("'columns' must be \"*\" or an array");
    }
    const Json& where = member(jg, "where");
    if (!where.is_null()) g.row_predicate = predicate_from_json(where);
    const Json& limit = member(jg, "row_limit");
    if (!limit.is_null()) {
      g.row_limit = int_member(limit, "row_limit");
      if (*g.row_limit <= 0) malformed("'row_limit' must be positive");
    }
    c.grants.push_back(std::move(g));
  }
  return c;
}

std::string canonical_encode(const DataContract& c) { return canonical_dump(to_json(c)); }

}  // namespace vaultgate::contract
