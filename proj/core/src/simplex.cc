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

#include "milpsim/simplex.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "milpsim/error.h"

namespace milpsim {
namespace {

// Column layout: [0, n) structural, [n, n + m) row activities r_i with
// a_i'x - r_i = 0, [n + m, n + m + k) artificials. The tableau holds
// B^{-1} [A | -I | S] densely, one row per constraint.
class BoundedSimplex {
 public:
  BoundedSimplex(const MilpInstance& instance, std::span<const double> lower,
                 std::span<const double> upper, const LpOptions& options)
      : instance_(instance), options_(options), n_(instance.num_vars()),
        m_(instance.num_rows()) {
    dense_a_.assign(static_cast<size_t>(m_) * n_, 0.0);
    for (const MatrixEntry& e : instance.entries()) dense_a_[e.row * n_ + e.col] = e.value;

    lo_.assign(lower.begin(), lower.end());
    up_.assign(upper.begin(), upper.end());
    value_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      value_[j] = std::isfinite(lo_[j]) ? lo_[j] : std::isfinite(up_[j]) ? up_[j] : 0.0;
    }
    for (int i = 0; i < m_; ++i) {
      const double b = instance.rhs()[i];
      switch (instance.senses()[i]) {
        case Sense::kGe: lo_.push_back(b); up_.push_back(kInfinity); break;
        case Sense::kLe: lo_.push_back(-kInfinity); up_.push_back(b); break;
        case Sense::kEq: lo_.push_back(b); up_.push_back(b); break;
      }
    }

    // Decide per row whether the activity variable can start basic.
    std::vector<double> activity(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      for (const MatrixEntry& e : instance.row(i)) activity[i] += e.value * value_[e.col];
    }
    std::vector<int> artificial_row;
    std::vector<double> artificial_sign;
    value_.resize(n_ + m_);
    for (int i = 0; i < m_; ++i) {
      const double lo = lo_[n_ + i];
      const double up = up_[n_ + i];
      if (activity[i] < lo || activity[i] > up) {
        const double target = activity[i] < lo ? lo : up;
        value_[n_ + i] = target;
        artificial_row.push_back(i);
        artificial_sign.push_back(target - activity[i] > 0 ? 1.0 : -1.0);
      } else {
        value_[n_ + i] = activity[i];
      }
    }
    k_ = static_cast<int>(artificial_row.size());
    cols_ = n_ + m_ + k_;
    for (int a = 0; a < k_; ++a) {
      lo_.push_back(0.0);
      up_.push_back(kInfinity);
      value_.push_back(std::abs(value_[n_ + artificial_row[a]] - activity[artificial_row[a]]));
    }
    artificial_row_ = artificial_row;
    artificial_sign_ = artificial_sign;

    tableau_.assign(static_cast<size_t>(m_) * cols_, 0.0);
    basis_.assign(m_, -1);
    position_.assign(cols_, -1);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
    for (int a = 0; a < k_; ++a) basis_[artificial_row[a]] = n_ + m_ + a;
    for (int i = 0; i < m_; ++i) {
      // Row scale is 1 / (basis column entry): -1 for r_i, s for artificials.
      const int b = basis_[i];
      const double scale = b < n_ + m_ ? -1.0 : artificial_sign_[b - n_ - m_];
      double* row = &tableau_[static_cast<size_t>(i) * cols_];
      for (int j = 0; j < n_; ++j) row[j] = scale * dense_a_[i * n_ + j];
      row[n_ + i] = -scale;
    }
    for (int a = 0; a < k_; ++a) {
      const int i = artificial_row[a];
      tableau_[static_cast<size_t>(i) * cols_ + n_ + m_ + a] =
          artificial_sign_[a] * artificial_sign_[a];
    }
    for (int i = 0; i < m_; ++i) position_[basis_[i]] = i;
  }

  LpResult Solve() {
    LpResult result;
    // Phase one: minimize the sum of artificials.
    if (k_ > 0) {
      std::vector<double> cost(cols_, 0.0);
      for (int a = 0; a < k_; ++a) cost[n_ + m_ + a] = 1.0;
      const LpStatus status = Iterate(cost, &result.pivots);
      if (status == LpStatus::kNumericalBreakdown) {
        result.status = status;
        return result;
      }
      double infeasibility = 0.0;
      for (int a = 0; a < k_; ++a) infeasibility += value_[n_ + m_ + a];
      double scale = 1.0;
      for (double b : instance_.rhs()) scale = std::max(scale, std::abs(b));
      if (infeasibility > options_.feasibility_tolerance * scale) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
      for (int a = 0; a < k_; ++a) {
        const int j = n_ + m_ + a;
        up_[j] = 0.0;
        if (position_[j] < 0) value_[j] = 0.0;
      }
    }

    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = instance_.objective()[j];
    const LpStatus status = Iterate(cost, &result.pivots);
    if (status != LpStatus::kOptimal) {
      result.status = status;
      return result;
    }
    if (!Refactor()) {
      result.status = LpStatus::kNumericalBreakdown;
      return result;
    }
    result.status = LpStatus::kOptimal;
    result.x.assign(value_.begin(), value_.begin() + n_);
    result.objective = ObjectiveValue(instance_, result.x);
    return result;
  }

 private:
  double* Row(int i) { return &tableau_[static_cast<size_t>(i) * cols_]; }

  LpStatus Iterate(const std::vector<double>& cost, int64_t* pivots) {
    // Reduced costs d = c - c_B' T.
    std::vector<double> d(cost);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = Row(i);
      for (int j = 0; j < cols_; ++j) d[j] -= cb * row[j];
    }

    while (true) {
      int entering = -1;
      double direction = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (position_[j] >= 0 || lo_[j] == up_[j]) continue;
        if (d[j] < -options_.optimality_tolerance && value_[j] < up_[j]) {
          entering = j;
          direction = 1.0;
          break;
        }
        if (d[j] > options_.optimality_tolerance && value_[j] > lo_[j]) {
          entering = j;
          direction = -1.0;
          break;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;
      if (++*pivots > options_.max_pivots) return LpStatus::kNumericalBreakdown;

      // Ratio test with smallest-index tie breaking.
      double best = up_[entering] - lo_[entering];
      if (!std::isfinite(best)) best = kInfinity;
      int leaving_row = -1;  // -1 means the entering variable flips bounds
      int leaving_var = entering;
      bool leaving_to_upper = direction > 0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = Row(i)[entering];
        if (std::abs(alpha) <= options_.zero_tolerance) continue;
        const int b = basis_[i];
        const double rate = -direction * alpha;  // d x_b / d theta
        double theta;
        bool to_upper;
        if (rate < 0) {
          if (!std::isfinite(lo_[b])) continue;
          theta = (value_[b] - lo_[b]) / -rate;
          to_upper = false;
        } else {
          if (!std::isfinite(up_[b])) continue;
          theta = (up_[b] - value_[b]) / rate;
          to_upper = true;
        }
        theta = std::max(theta, 0.0);
        const bool closer = !std::isfinite(best) || theta < best - 1e-12 * std::max(1.0, best);
        const bool tied = std::isfinite(best) && theta <= best + 1e-12 * std::max(1.0, best);
        if (closer || (tied && b < leaving_var)) {
          best = theta;
          leaving_row = i;
          leaving_var = b;
          leaving_to_upper = to_upper;
        }
      }
      if (!std::isfinite(best)) return LpStatus::kUnbounded;

      const double theta = best;
      value_[entering] += direction * theta;
      for (int i = 0; i < m_; ++i) {
        const double alpha = Row(i)[entering];
        if (alpha != 0.0) value_[basis_[i]] -= direction * theta * alpha;
      }
      if (leaving_row < 0) {
        value_[entering] = direction > 0 ? up_[entering] : lo_[entering];
        continue;
      }

      const double pivot = Row(leaving_row)[entering];
      if (std::abs(pivot) < options_.min_pivot) return LpStatus::kNumericalBreakdown;
      value_[leaving_var] = leaving_to_upper ? up_[leaving_var] : lo_[leaving_var];

      double* prow = Row(leaving_row);
      const double inv = 1.0 / pivot;
      for (int j = 0; j < cols_; ++j) prow[j] *= inv;
      prow[entering] = 1.0;
      for (int i = 0; i < m_; ++i) {
        if (i == leaving_row) continue;
        double* row = Row(i);
        const double factor = row[entering];
        if (factor == 0.0) continue;
        for (int j = 0; j < cols_; ++j) row[j] -= factor * prow[j];
        row[entering] = 0.0;
      }
      const double dq = d[entering];
      if (dq != 0.0) {
        for (int j = 0; j < cols_; ++j) d[j] -= dq * prow[j];
        d[entering] = 0.0;
      }
      position_[leaving_var] = -1;
      basis_[leaving_row] = entering;
      position_[entering] = leaving_row;
    }
  }

  // Column j of [A | -I | S] at row i.
  double Original(int i, int j) const {
    if (j < n_) return dense_a_[i * n_ + j];
    if (j < n_ + m_) return j - n_ == i ? -1.0 : 0.0;
    const int a = j - n_ - m_;
    return artificial_row_[a] == i ? artificial_sign_[a] : 0.0;
  }

  // Recomputes basic values from the nonbasic ones with a fresh LU of B and
  // checks the primal residual.
  bool Refactor() {
    if (m_ == 0) return true;
    Eigen::MatrixXd basis(m_, m_);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int c = 0; c < m_; ++c) {
      for (int i = 0; i < m_; ++i) basis(i, c) = Original(i, basis_[c]);
    }
    for (int j = 0; j < cols_; ++j) {
      if (position_[j] >= 0 || value_[j] == 0.0) continue;
      for (int i = 0; i < m_; ++i) rhs(i) -= Original(i, j) * value_[j];
    }
    const Eigen::VectorXd xb = basis.partialPivLu().solve(rhs);
    for (int c = 0; c < m_; ++c) {
      if (!std::isfinite(xb(c))) return false;
      value_[basis_[c]] = xb(c);
    }
    double residual = 0.0;
    for (int i = 0; i < m_; ++i) {
      double act = 0.0;
      for (int j = 0; j < n_; ++j) act += dense_a_[i * n_ + j] * value_[j];
      residual = std::max(residual, std::abs(act - value_[n_ + i]));
    }
    return residual <= 1e-7;
  }

  const MilpInstance& instance_;
  const LpOptions options_;
  const int n_;
  const int m_;
  int k_ = 0;
  int cols_ = 0;
  std::vector<double> dense_a_;
  std::vector<double> lo_, up_, value_;
  std::vector<double> tableau_;
  std::vector<int> basis_, position_;
  std::vector<int> artificial_row_;
  std::vector<double> artificial_sign_;
};

}  // namespace

LpResult SolveLpRelaxation(const MilpInstance& instance,
                           std::span<const double> lower,
                           std::span<const double> upper,
                           const LpOptions& options) {
  const size_t n = static_cast<size_t>(instance.num_vars());
  if (lower.size() != n || upper.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "local bounds have the wrong length");
  }
  for (size_t j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) return LpResult{LpStatus::kInfeasible, {}, 0.0, 0};
  }
  return BoundedSimplex(instance, lower, upper, options).Solve();
}

}  // namespace milpsim
