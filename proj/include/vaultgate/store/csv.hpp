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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vaultgate/store/table_store.hpp"

namespace vaultgate::store {

struct LoadedTable {
  TableSchema schema;
  std::vector<Row> rows;
};

// RFC-4180 records: comma separated, double-quote quoting with "" escapes,
// CRLF or LF terminators. Throws Error{BadConfig} on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

// Two-row header (names, then INT|TEXT|DATE|REAL), then data rows. Cell
// conversion failures throw Error{TypeMismatch} naming the line.
LoadedTable parse_table_csv(std::string_view text);
LoadedTable load_table_csv(const std::filesystem::path& path);

std::string write_table_csv(const TableSchema& schema, const std::vector<Row>& rows);

}  // namespace vaultgate::store
