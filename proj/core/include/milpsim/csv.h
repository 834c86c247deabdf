// Copyright 2026 The milpsim Authors
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

#ifndef MILPSIM_CSV_H_
#define MILPSIM_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace milpsim {

using CsvRecord = std::vector<std::string>;

// RFC 4180 quoting: fields holding a comma, quote or newline are quoted.
std::string CsvLine(const CsvRecord& fields);

// Accepts what CsvLine writes; "\r\n" line ends are tolerated. Throws
// Error(kMalformedFile) on an unterminated quote.
std::vector<CsvRecord> ParseCsv(std::string_view text);

// Shortest round-trip text; +inf is written as "inf".
std::string FormatCost(double value);
// Inverse of FormatCost. Throws Error(kMalformedFile).
double ParseCost(std::string_view text);

std::string ReadTextFile(const std::filesystem::path& path);
// Writes through a temporary file and renames it into place.
void WriteTextFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace milpsim

#endif  // MILPSIM_CSV_H_
