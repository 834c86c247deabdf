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
#include "milpsim/milp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <utility>

#include "milpsim/error.h"

namespace milpsim {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidInstance, what);
}

class Fnv1a {
 public:
  void Bytes(const void* p, size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      state_ ^= b[i];
      state_ *= 0x100000001B3ULL;
    }
  }
  void U64(uint64_t v) { Bytes(&v, sizeof(v)); }
  void F64(double v) {
    if (v == 0.0) v = 0.0;  // fold -0 into +0
    U64(std::bit_cast<uint64_t>(v));
  }
  uint64_t digest() const { return state_; }

 private:
  uint64_t state_ = 0xCBF29CE484222325ULL;
};

}  // namespace

MilpInstance::MilpInstance(MilpData data) : data_(std::move(data)) {
  const size_t n = data_.objective.size();
  const size_t m = data_.rhs.size();
  Require(n >= 1, "instance needs at least one variable");
  Require(data_.senses.size() == m, "senses length differs from rhs length");
  Require(data_.kinds.size() == n, "kinds length differs from objective length");
  Require(data_.lower.size() == n && data_.upper.size() == n,
          "bounds length differs from objective length");

  for (size_t j = 0; j < n; ++j) {
    Require(std::isfinite(data_.objective[j]), "objective coefficient not finite");
    const double lo = data_.lower[j];
    const double up = data_.upper[j];
    Require(!std::isnan(lo) && !std::isnan(up), "NaN bound");
    Require(lo != kInfinity && up != -kInfinity, "bound at the wrong infinity");
    Require(lo <= up, "lower bound exceeds upper bound for variable " +
                          std::to_string(j));
    if (data_.kinds[j] == VarKind::kBinary) {
      Require(lo >= 0.0 && up <= 1.0,
              "binary variable " + std::to_string(j) + " has bounds outside [0, 1]");
    }
    if (data_.kinds[j] != VarKind::kContinuous) ++num_integer_;
  }
  for (size_t i = 0; i < m; ++i) {
    Require(std::isfinite(data_.rhs[i]), "rhs not finite");
  }

  std::erase_if(data_.entries, [](const MatrixEntry& e) { return e.value == 0.0; });
  for (const MatrixEntry& e : data_.entries) {
    Require(e.row >= 0 && static_cast<size_t>(e.row) < m && e.col >= 0 &&
                static_cast<size_t>(e.col) < n,
            "matrix entry index out of range");
    Require(std::isfinite(e.value), "matrix entry not finite");
  }
  std::sort(data_.entries.begin(), data_.entries.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  for (size_t k = 1; k < data_.entries.size(); ++k) {
    const MatrixEntry& a = data_.entries[k - 1];
    const MatrixEntry& b = data_.entries[k];
    Require(a.row != b.row || a.col != b.col,
            "duplicate entry at (" + std::to_string(a.row) + ", " +
                std::to_string(a.col) + ")");
  }

  row_start_.assign(m + 1, 0);
  for (const MatrixEntry& e : data_.entries) ++row_start_[e.row + 1];
  for (size_t i = 0; i < m; ++i) row_start_[i + 1] += row_start_[i];
}

double MilpInstance::RowActivity(int i, std::span<const double> x) const {
  double activity = 0.0;
  for (const MatrixEntry& e : row(i)) activity += e.value * x[e.col];
  return activity;
}

std::string MilpInstance::ContentHash() const {
  Fnv1a h;
  h.U64(data_.objective.size());
  h.U64(data_.rhs.size());
  for (double c : data_.objective) h.F64(c);
  h.U64(data_.entries.size());
  for (const MatrixEntry& e : data_.entries) {
    h.U64(static_cast<uint64_t>(e.row));
    h.U64(static_cast<uint64_t>(e.col));
    h.F64(e.value);
  }
  for (double b : data_.rhs) h.F64(b);
  for (Sense s : data_.senses) h.U64(static_cast<uint64_t>(s));
  for (VarKind k : data_.kinds) h.U64(static_cast<uint64_t>(k));
  for (double l : data_.lower) h.F64(l);
  for (double u : data_.upper) h.F64(u);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h.digest()));
  return buf;
}

MilpInstance MilpInstance::WithName(std::string name) const {
  MilpData copy = data_;
  copy.name = std::move(name);
  return MilpInstance(std::move(copy));
}

bool operator==(const MilpInstance& a, const MilpInstance& b) {
  const MilpData& x = a.data_;
  const MilpData& y = b.data_;
  return x.name == y.name && x.objective == y.objective &&
         x.entries == y.entries && x.rhs == y.rhs && x.senses == y.senses &&
         x.kinds == y.kinds && x.lower == y.lower && x.upper == y.upper;
}

double ObjectiveValue(const MilpInstance& instance, std::span<const double> x) {
  double cost = 0.0;
  const auto c = instance.objective();
  for (size_t j = 0; j < c.size(); ++j) cost += c[j] * x[j];
  return cost;
}

FeasibilityReport EvaluateAssignment(const MilpInstance& instance,
                                     const Assignment& x, double tol) {
  const auto& v = x.values;
  if (v.size() != static_cast<size_t>(instance.num_vars())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "assignment has " + std::to_string(v.size()) +
                    " entries, instance has " +
                    std::to_string(instance.num_vars()) + " variables");
  }
  FeasibilityReport report;
  report.cost = ObjectiveValue(instance, v);

  for (int i = 0; i < instance.num_rows(); ++i) {
    const double activity = instance.RowActivity(i, v);
    const double b = instance.rhs()[i];
    double violation = 0.0;
    switch (instance.senses()[i]) {
      case Sense::kGe: violation = b - activity; break;
      case Sense::kLe: violation = activity - b; break;
      case Sense::kEq: violation = std::abs(activity - b); break;
    }
    report.max_violation = std::max(report.max_violation, violation);
  }

  report.integrality_ok = true;
  for (int j = 0; j < instance.num_vars(); ++j) {
    report.bound_violation =
        std::max({report.bound_violation, instance.lower()[j] - v[j],
                  v[j] - instance.upper()[j]});
    if (instance.kinds()[j] != VarKind::kContinuous &&
        std::abs(v[j] - std::round(v[j])) > tol) {
      report.integrality_ok = false;
    }
  }
  bool finite = true;
  for (double value : v) finite = finite && std::isfinite(value);
  report.feasible = finite && report.integrality_ok &&
                    report.max_violation <= tol && report.bound_violation <= tol;
  return report;
}

}  // namespace milpsim
