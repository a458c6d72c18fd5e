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

#include "vaultgate/store/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vaultgate/core/error.hpp"

namespace vaultgate::store {

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
      } else {
        field.push_back(c);
      }
      ++i;
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      ++i;
    } else if (c == '\n') {
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
    ++i;
  }
  if (in_quotes) throw Error(ErrorCode::BadConfig, "csv: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

namespace {

Value parse_cell(const std::string& cell, const ColumnDef& col, std::size_t line) {
  auto bad = [&]() -> Error {
    return Error(ErrorCode::TypeMismatch, "csv line " + std::to_string(line) + ": '" + cell +
                                              "' is not a valid " + std::string(to_string(col.type)) +
                                              " for column " + col.name);
  };
  switch (col.type) {
    case ColumnType::Text:
      return cell;
    case ColumnType::Int: {
      std::int64_t v = 0;
      const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc{} || p != cell.data() + cell.size()) throw bad();
      return v;
    }
    case ColumnType::Real: {
      double v = 0;
      const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc{} || p != cell.data() + cell.size() || !std::isfinite(v)) {
        throw bad();
      }
      return v;
    }
    case ColumnType::Date: {
      const auto d = parse_date(cell);
      if (!d) throw bad();
      return *d;
    }
  }
  throw bad();
}

std::string quote_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

LoadedTable parse_table_csv(std::string_view text) {
  const auto records = parse_csv_records(text);
  if (records.size() < 2) throw Error(ErrorCode::BadConfig, "csv: missing two-row header");
  const auto& names = records[0];
  const auto& types = records[1];
  if (names.size() != types.size()) throw Error(ErrorCode::BadConfig, "csv: header rows differ in width");
  LoadedTable out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto type = parse_column_type(types[i]);
    if (!type) throw Error(ErrorCode::BadConfig, "csv: unknown column type '" + types[i] + "'");
    if (!is_identifier(names[i])) throw Error(ErrorCode::BadConfig, "csv: bad column name '" + names[i] + "'");
    out.schema.columns.push_back({names[i], *type});
  }
  for (std::size_t r = 2; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() == 1 && rec[0].empty()) continue;  // blank line
    if (rec.size() != names.size()) {
      throw Error(ErrorCode::TypeMismatch, "csv line " + std::to_string(r + 1) + ": expected " +
                                               std::to_string(names.size()) + " cells");
    }
    Row row;
    row.reserve(rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) row.push_back(parse_cell(rec[i], out.schema.columns[i], r + 1));
    out.rows.push_back(std::move(row));
  }
  return out;
}

LoadedTable load_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadConfig, "cannot read table file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table_csv(buf.str());
}

std::string write_table_csv(const TableSchema& schema, const std::vector<Row>& rows) {
  std::string out;
  auto line = [&](auto&& cell_of, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) out.push_back(',');
      out += quote_cell(cell_of(i));
    }
    out.push_back('\n');
  };
  const auto n = schema.columns.size();
  line([&](std::size_t i) { return schema.columns[i].name; }, n);
  line([&](std::size_t i) { return std::string(to_string(schema.columns[i].type)); }, n);
  for (const auto& row : rows) line([&](std::size_t i) { return format_value(row[i]); }, n);
  return out;
}

}  // namespace vaultgate::store
