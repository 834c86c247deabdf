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

#include "oracles/reference_mps.h"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace milpsim::oracle {
namespace {

double Number(const std::string& token) {
  if (token == "+inf" || token == "inf") return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  size_t used = 0;
  const double v = std::stod(token, &used);
  if (used != token.size()) throw std::runtime_error("bad number " + token);
  return v;
}

}  // namespace

ReferenceMps ReadReferenceMps(const std::string& text) {
  ReferenceMps out;
  std::istringstream lines(text);
  std::string line, section;
  bool in_int = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '*') continue;
    std::istringstream words(line);
    std::vector<std::string> t;
    for (std::string w; words >> w;) t.push_back(w);
    if (t.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      section = t[0];
      if (section == "NAME" && t.size() > 1) out.name = t[1];
      if (section == "ENDATA") break;
      continue;
    }
    if (section == "ROWS") {
      if (t[0] == "N") {
        out.objective_row = t[1];
      } else {
        out.row_order.push_back(t[1]);
        out.row_sense[t[1]] = t[0][0];
      }
    } else if (section == "COLUMNS") {
      if (t.size() == 3 && t[1] == "'MARKER'") {
        in_int = t[2] == "'INTORG'";
        continue;
      }
      const std::string& col = t[0];
      if (out.integer.find(col) == out.integer.end()) {
        out.column_order.push_back(col);
        out.integer[col] = in_int;
      }
      for (size_t k = 1; k + 1 < t.size(); k += 2) {
        const double v = Number(t[k + 1]);
        if (t[k] == out.objective_row) {
          out.objective[col] = v;
        } else {
          out.coefficients[{t[k], col}] = v;
        }
      }
    } else if (section == "RHS") {
      for (size_t k = 1; k + 1 < t.size(); k += 2) out.rhs[t[k]] = Number(t[k + 1]);
    } else if (section == "BOUNDS") {
      const std::string& kind = t[0];
      const std::string& col = t[2];
      const double v = t.size() > 3 ? Number(t[3]) : 0.0;
      out.bounded[col] = true;
      if (kind == "UP") out.upper[col] = v;
      if (kind == "LO") out.lower[col] = v;
      if (kind == "FX") out.lower[col] = out.upper[col] = v;
      if (kind == "FR") {
        out.lower[col] = -std::numeric_limits<double>::infinity();
        out.upper[col] = std::numeric_limits<double>::infinity();
      }
      if (kind == "MI") out.lower[col] = -std::numeric_limits<double>::infinity();
      if (kind == "PL") out.upper[col] = std::numeric_limits<double>::infinity();
      if (kind == "LI") out.lower[col] = v;
      if (kind == "UI") out.upper[col] = v;
      if (kind == "BV") {
        out.binary[col] = true;
        out.lower[col] = 0.0;
        out.upper[col] = 1.0;
      }
    }
  }
  return out;
}

}  // namespace milpsim::oracle
