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

#include "milpsim/mps.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "milpsim/error.h"

namespace milpsim {
namespace {

enum class Section { kNone, kName, kRows, kColumns, kRhs, kBounds, kEnd };

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void Fail(ErrorCode code, int line, const std::string& what) {
  throw Error(code, "line " + std::to_string(line) + ": " + what);
}

class MpsReader {
 public:
  MilpInstance Read(std::string_view text) {
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (line.empty() || line[0] == '*') continue;
      const auto tokens = Tokenize(line);
      if (tokens.empty()) continue;
      if (line[0] != ' ' && line[0] != '\t') {
        Header(tokens, line, line_no);
        if (section_ == Section::kEnd) break;
        continue;
      }
      switch (section_) {
        case Section::kRows: Row(tokens, line_no); break;
        case Section::kColumns: Column(tokens, line_no); break;
        case Section::kRhs: Rhs(tokens, line_no); break;
        case Section::kBounds: Bound(tokens, line_no); break;
        default:
          Fail(ErrorCode::kUnknownSection, line_no, "data line outside any section");
      }
      if (end == text.size()) break;
    }
    return Finish();
  }

 private:
  void Header(const std::vector<std::string_view>& tokens, std::string_view line,
              int line_no) {
    const std::string_view key = tokens[0];
    if (key == "NAME") {
      section_ = Section::kName;
      std::string_view rest = line.substr(4);
      while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) rest.remove_suffix(1);
      data_.name = std::string(rest);
    } else if (key == "ROWS") {
      section_ = Section::kRows;
    } else if (key == "COLUMNS") {
      section_ = Section::kColumns;
    } else if (key == "RHS") {
      section_ = Section::kRhs;
    } else if (key == "BOUNDS") {
      section_ = Section::kBounds;
    } else if (key == "ENDATA") {
      section_ = Section::kEnd;
    } else {
      Fail(ErrorCode::kUnknownSection, line_no,
           "unsupported section '" + std::string(key) + "'");
    }
  }

  void Row(const std::vector<std::string_view>& t, int line_no) {
    if (t.size() != 2) Fail(ErrorCode::kMalformedNumeric, line_no, "ROWS line needs type and name");
    const std::string name(t[1]);
    if (rows_.contains(name) || name == objective_name_) {
      Fail(ErrorCode::kDuplicateRow, line_no, "row '" + name + "' declared twice");
    }
    if (t[0] == "N") {
      if (!objective_name_.empty()) {
        Fail(ErrorCode::kUnsupportedFeature, line_no, "more than one N row");
      }
      objective_name_ = name;
      return;
    }
    Sense sense;
    if (t[0] == "G") {
      sense = Sense::kGe;
    } else if (t[0] == "L") {
      sense = Sense::kLe;
    } else if (t[0] == "E") {
      sense = Sense::kEq;
    } else {
      Fail(ErrorCode::kMalformedNumeric, line_no, "unknown row type '" + std::string(t[0]) + "'");
    }
    rows_.emplace(name, static_cast<int>(data_.senses.size()));
    data_.senses.push_back(sense);
    data_.rhs.push_back(0.0);
  }

  double Number(std::string_view token, int line_no) {
    double value;
    if (!ParseDouble(token, &value)) {
      Fail(ErrorCode::kMalformedNumeric, line_no, "cannot parse '" + std::string(token) + "'");
    }
    return value;
  }

  void Column(const std::vector<std::string_view>& t, int line_no) {
    if (t.size() >= 3 && t[1] == "'MARKER'") {
      if (t[2] == "'INTORG'") {
        in_integer_block_ = true;
      } else if (t[2] == "'INTEND'") {
        in_integer_block_ = false;
      } else {
        Fail(ErrorCode::kMalformedNumeric, line_no, "unknown marker " + std::string(t[2]));
      }
      return;
    }
    if (t.size() != 3 && t.size() != 5) {
      Fail(ErrorCode::kMalformedNumeric, line_no, "COLUMNS line needs 3 or 5 fields");
    }
    const int col = ColumnIndex(t[0]);
    for (size_t k = 1; k + 1 < t.size(); k += 2) {
      const std::string row_name(t[k]);
      const double value = Number(t[k + 1], line_no);
      if (!std::isfinite(value)) {
        Fail(ErrorCode::kMalformedNumeric, line_no, "coefficient must be finite");
      }
      if (row_name == objective_name_ && !objective_name_.empty()) {
        data_.objective[col] = value;
        continue;
      }
      auto it = rows_.find(row_name);
      if (it == rows_.end()) {
        Fail(ErrorCode::kUnknownRowInColumns, line_no, "unknown row '" + row_name + "'");
      }
      const uint64_t key = (static_cast<uint64_t>(it->second) << 32) | static_cast<uint32_t>(col);
      if (!seen_entries_.emplace(key, line_no).second) {
        Fail(ErrorCode::kInvalidInstance, line_no,
             "coefficient for row '" + row_name + "' given twice");
      }
      data_.entries.push_back({it->second, col, value});
    }
  }

  int ColumnIndex(std::string_view name) {
    const std::string key(name);
    auto it = columns_.find(key);
    if (it != columns_.end()) return it->second;
    const int index = static_cast<int>(data_.objective.size());
    columns_.emplace(key, index);
    column_names_.push_back(key);
    data_.objective.push_back(0.0);
    data_.kinds.push_back(in_integer_block_ ? VarKind::kInteger : VarKind::kContinuous);
    data_.lower.push_back(0.0);
    data_.upper.push_back(kInfinity);
    has_bound_line_.push_back(false);
    return index;
  }

  void Rhs(const std::vector<std::string_view>& t, int line_no) {
    // The RHS set name is optional: an odd token count means it is present.
    const size_t first = t.size() % 2 == 1 ? 1 : 0;
    if (t.size() < 2 || t.size() > 5) {
      Fail(ErrorCode::kMalformedNumeric, line_no, "RHS line needs 2 to 5 fields");
    }
    for (size_t k = first; k + 1 < t.size(); k += 2) {
      const std::string row_name(t[k]);
      const double value = Number(t[k + 1], line_no);
      if (row_name == objective_name_) {
        Fail(ErrorCode::kUnsupportedFeature, line_no, "objective constants are not supported");
      }
      auto it = rows_.find(row_name);
      if (it == rows_.end()) {
        Fail(ErrorCode::kUnknownRowInColumns, line_no, "unknown row '" + row_name + "'");
      }
      if (!std::isfinite(value)) Fail(ErrorCode::kMalformedNumeric, line_no, "rhs must be finite");
      data_.rhs[it->second] = value;
    }
  }

  void Bound(const std::vector<std::string_view>& t, int line_no) {
    if (t.size() < 2) Fail(ErrorCode::kMalformedNumeric, line_no, "BOUNDS line too short");
    const std::string_view type = t[0];
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" ||
                             type == "LI" || type == "UI";
    const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (!needs_value && !no_value) {
      Fail(ErrorCode::kMalformedNumeric, line_no, "unknown bound type '" + std::string(type) + "'");
    }
    // Layout: TYPE [SET] COLUMN [VALUE].
    const size_t expected_with_set = needs_value ? 4 : 3;
    size_t col_pos;
    if (t.size() == expected_with_set) {
      col_pos = 2;
    } else if (t.size() == expected_with_set - 1) {
      col_pos = 1;
    } else if (no_value && t.size() == 4) {
      col_pos = 2;  // tolerate a trailing value on BV/FR/MI/PL
    } else {
      Fail(ErrorCode::kMalformedNumeric, line_no, "wrong number of fields in BOUNDS line");
    }
    auto it = columns_.find(std::string(t[col_pos]));
    if (it == columns_.end()) {
      Fail(ErrorCode::kInvalidInstance, line_no, "unknown column '" + std::string(t[col_pos]) + "'");
    }
    const int j = it->second;
    if (!has_bound_line_[j] && data_.kinds[j] == VarKind::kInteger) {
      // An integer-marker column without bound lines defaults to [0, 1]; the
      // first bound line switches it to the ordinary [0, +inf) default.
      data_.lower[j] = 0.0;
      data_.upper[j] = kInfinity;
    }
    has_bound_line_[j] = true;
    const double value = needs_value ? Number(t[col_pos + 1], line_no) : 0.0;
    if (type == "UP") {
      data_.upper[j] = value;
    } else if (type == "LO") {
      data_.lower[j] = value;
    } else if (type == "FX") {
      data_.lower[j] = data_.upper[j] = value;
    } else if (type == "FR") {
      data_.lower[j] = -kInfinity;
      data_.upper[j] = kInfinity;
    } else if (type == "MI") {
      data_.lower[j] = -kInfinity;
    } else if (type == "PL") {
      data_.upper[j] = kInfinity;
    } else if (type == "BV") {
      data_.kinds[j] = VarKind::kBinary;
      data_.lower[j] = 0.0;
      data_.upper[j] = 1.0;
    } else if (type == "LI") {
      if (data_.kinds[j] == VarKind::kContinuous) data_.kinds[j] = VarKind::kInteger;
      data_.lower[j] = value;
    } else if (type == "UI") {
      if (data_.kinds[j] == VarKind::kContinuous) data_.kinds[j] = VarKind::kInteger;
      data_.upper[j] = value;
    }
    if (std::isnan(data_.lower[j]) || std::isnan(data_.upper[j])) {
      Fail(ErrorCode::kMalformedNumeric, line_no, "NaN bound");
    }
  }

  MilpInstance Finish() {
    for (size_t j = 0; j < has_bound_line_.size(); ++j) {
      if (!has_bound_line_[j] && data_.kinds[j] == VarKind::kInteger) {
        data_.lower[j] = 0.0;
        data_.upper[j] = 1.0;
      }
    }
    return MilpInstance(std::move(data_));
  }

  Section section_ = Section::kNone;
  MilpData data_;
  std::string objective_name_;
  std::unordered_map<std::string, int> rows_;
  std::unordered_map<std::string, int> columns_;
  std::unordered_map<uint64_t, int> seen_entries_;
  std::vector<std::string> column_names_;
  std::vector<bool> has_bound_line_;
  bool in_integer_block_ = false;
};

}  // namespace

std::string FormatDouble(double value) {
  if (value == kInfinity) return "+inf";
  if (value == -kInfinity) return "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

bool ParseDouble(std::string_view token, double* value) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, *value);
  if (ec != std::errc() || ptr != last) return false;
  return !std::isnan(*value);
}

MilpInstance ParseMps(std::string_view text) { return MpsReader().Read(text); }

std::string WriteMps(const MilpInstance& instance) {
  const int n = instance.num_vars();
  const int m = instance.num_rows();
  std::ostringstream out;
  out << "NAME " << instance.name() << "\n";
  out << "ROWS\n N  obj\n";
  for (int i = 0; i < m; ++i) {
    const char* type = instance.senses()[i] == Sense::kGe   ? "G"
                       : instance.senses()[i] == Sense::kLe ? "L"
                                                            : "E";
    out << " " << type << "  c" << (i + 1) << "\n";
  }

  // Column-major view of A.
  std::vector<std::vector<std::pair<int, double>>> columns(n);
  for (const MatrixEntry& e : instance.entries()) columns[e.col].push_back({e.row, e.value});

  out << "COLUMNS\n";
  bool in_block = false;
  int marker = 0;
  for (int j = 0; j < n; ++j) {
    const bool integral = instance.kinds()[j] != VarKind::kContinuous;
    if (integral != in_block) {
      out << "    M" << marker++ << "  'MARKER'  " << (integral ? "'INTORG'" : "'INTEND'") << "\n";
      in_block = integral;
    }
    const std::string name = "x" + std::to_string(j + 1);
    if (instance.objective()[j] != 0.0 || columns[j].empty()) {
      out << "    " << name << "  obj  " << FormatDouble(instance.objective()[j]) << "\n";
    }
    for (const auto& [row, value] : columns[j]) {
      out << "    " << name << "  c" << (row + 1) << "  " << FormatDouble(value) << "\n";
    }
  }
  if (in_block) out << "    M" << marker++ << "  'MARKER'  'INTEND'\n";

  out << "RHS\n";
  for (int i = 0; i < m; ++i) {
    if (instance.rhs()[i] != 0.0) {
      out << "    rhs  c" << (i + 1) << "  " << FormatDouble(instance.rhs()[i]) << "\n";
    }
  }

  out << "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const std::string name = "x" + std::to_string(j + 1);
    const double lo = instance.lower()[j];
    const double up = instance.upper()[j];
    switch (instance.kinds()[j]) {
      case VarKind::kBinary:
        out << " BV bnd  " << name << "\n";
        if (lo != 0.0) out << " LO bnd  " << name << "  " << FormatDouble(lo) << "\n";
        if (up != 1.0) out << " UP bnd  " << name << "  " << FormatDouble(up) << "\n";
        break;
      case VarKind::kInteger:
        // Always written so the [0, 1] marker default never applies.
        out << " LO bnd  " << name << "  " << FormatDouble(lo) << "\n";
        if (up != kInfinity) out << " UP bnd  " << name << "  " << FormatDouble(up) << "\n";
        break;
      case VarKind::kContinuous:
        if (lo != 0.0) out << " LO bnd  " << name << "  " << FormatDouble(lo) << "\n";
        if (up != kInfinity) out << " UP bnd  " << name << "  " << FormatDouble(up) << "\n";
        break;
    }
  }
  out << "ENDATA\n";
  return out.str();
}

MilpInstance ReadMpsFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseMps(buffer.str());
}

void WriteMpsFile(const MilpInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << WriteMps(instance);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace milpsim
