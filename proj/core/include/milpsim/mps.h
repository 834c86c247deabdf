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
#ifndef MILPSIM_MPS_H_
#define MILPSIM_MPS_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "milpsim/milp.h"

namespace milpsim {

// Reads the free-format MPS subset documented in docs/formats.md: NAME, ROWS,
// COLUMNS (with INTORG/INTEND markers), RHS, BOUNDS, ENDATA. The objective is
// minimized. Errors name the offending line number.
MilpInstance ParseMps(std::string_view text);

// Writes the canonical form: columns x1..xn and rows c1..cm in index order.
// ParseMps(WriteMps(i)) == i for every valid instance.
std::string WriteMps(const MilpInstance& instance);

MilpInstance ReadMpsFile(const std::filesystem::path& path);
void WriteMpsFile(const MilpInstance& instance, const std::filesystem::path& path);

// Shortest decimal text that parses back to the same double; infinities are
// written as "+inf"/"-inf".
std::string FormatDouble(double value);
// Accepts everything FormatDouble produces plus "inf", "infinity" and an
// optional leading '+'. Returns false on malformed or NaN input.
bool ParseDouble(std::string_view token, double* value);

}  // namespace milpsim

#endif  // MILPSIM_MPS_H_
