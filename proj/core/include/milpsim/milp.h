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
#ifndef MILPSIM_MILP_H_
#define MILPSIM_MILP_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace milpsim {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTolerance = 1e-6;
inline constexpr double kIntegralityTolerance = 1e-6;

enum class Sense : uint8_t { kGe, kLe, kEq };
enum class VarKind : uint8_t { kBinary, kInteger, kContinuous };

struct MatrixEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

// Raw field bundle handed to the MilpInstance constructor.
struct MilpData {
  std::string name;
  std::vector<double> objective;       // c, length n
  std::vector<MatrixEntry> entries;    // nonzeros of A (m x n)
  std::vector<double> rhs;             // b, length m
  std::vector<Sense> senses;           // length m
  std::vector<VarKind> kinds;          // length n
  std::vector<double> lower;           // length n, may be -inf
  std::vector<double> upper;           // length n, may be +inf
};

// min c'x  s.t.  a_i'x (>=|<=|=) b_i,  l <= x <= u,  x_j integral unless
// continuous. Immutable once constructed; matrix entries are kept sorted by
// (row, col) with explicit zeros dropped.
class MilpInstance {
 public:
  // Validates every structural invariant; throws Error(kInvalidInstance).
  explicit MilpInstance(MilpData data);

  const std::string& name() const { return data_.name; }
  int num_vars() const { return static_cast<int>(data_.objective.size()); }
  int num_rows() const { return static_cast<int>(data_.rhs.size()); }
  int num_nonzeros() const { return static_cast<int>(data_.entries.size()); }
  // Count of variables that are not continuous (p).
  int num_integer() const { return num_integer_; }

  std::span<const double> objective() const { return data_.objective; }
  std::span<const MatrixEntry> entries() const { return data_.entries; }
  std::span<const double> rhs() const { return data_.rhs; }
  std::span<const Sense> senses() const { return data_.senses; }
  std::span<const VarKind> kinds() const { return data_.kinds; }
  std::span<const double> lower() const { return data_.lower; }
  std::span<const double> upper() const { return data_.upper; }

  // Nonzeros of row i, in column order.
  std::span<const MatrixEntry> row(int i) const {
    return std::span<const MatrixEntry>(data_.entries)
        .subspan(row_start_[i], row_start_[i + 1] - row_start_[i]);
  }

  double RowActivity(int i, std::span<const double> x) const;

  // 16 hex digits of a 64-bit FNV-1a digest over every field except the name.
  // Used as the instance id throughout the pipeline.
  std::string ContentHash() const;

  const MilpData& data() const { return data_; }
  MilpInstance WithName(std::string name) const;

  friend bool operator==(const MilpInstance& a, const MilpInstance& b);

 private:
  MilpData data_;
  std::vector<int> row_start_;
  int num_integer_ = 0;
};

struct Assignment {
  std::vector<double> values;
};

struct FeasibilityReport {
  bool feasible = false;
  double cost = 0.0;
  // Largest sense-signed row violation (>= 0).
  double max_violation = 0.0;
  // Largest violation of a variable bound (>= 0).
  double bound_violation = 0.0;
  bool integrality_ok = false;
};

// Throws Error(kDimensionMismatch) if x has the wrong length.
FeasibilityReport EvaluateAssignment(const MilpInstance& instance,
                                     const Assignment& x,
                                     double tol = kFeasibilityTolerance);

// Linear objective c'x accumulated in index order.
double ObjectiveValue(const MilpInstance& instance, std::span<const double> x);

}  // namespace milpsim

#endif  // MILPSIM_MILP_H_
