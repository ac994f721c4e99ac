// Copyright 2026 The simgood Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simgood/lp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "simgood/error.hpp"
#include "simgood/simd.hpp"

namespace simgood {
namespace {

class Simplex {
 public:
  Simplex(const LpProblem& problem, const LpOptions& options)
      : options_(options), m_(problem.a.rows()), n_(problem.a.cols()), total_(n_ + m_) {
    if (problem.b.size() != m_ || problem.c.size() != n_ || problem.lower.size() != n_ ||
        problem.upper.size() != n_ || (!problem.start.empty() && problem.start.size() != n_)) {
      throw Error(ErrorKind::kDimensionMismatch, "solve_lp: inconsistent problem shapes");
    }
    b_ = problem.b;
    columns_ = Matrix(total_, m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) columns_(j, i) = problem.a(i, j);
    }
    lower_.assign(total_, 0.0);
    upper_.assign(total_, kInf);
    x_.assign(total_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      lower_[j] = problem.lower[j];
      upper_[j] = problem.upper[j];
      if (lower_[j] > upper_[j]) throw Error(ErrorKind::kInvalidParameter, "solve_lp: lower > upper");
      if (!problem.start.empty()) {
        x_[j] = std::clamp(problem.start[j], lower_[j], upper_[j]);
      } else if (std::isfinite(lower_[j])) {
        x_[j] = lower_[j];
      } else if (std::isfinite(upper_[j])) {
        x_[j] = upper_[j];
      }
    }
    // Artificial i carries sign(residual_i) e_i so it starts at |residual_i|.
    Vector residual = b_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (x_[j] != 0.0) simd::axpy(-x_[j], columns_.row(j), residual);
    }
    basis_.resize(m_);
    position_.assign(total_, kNonbasic);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t art = n_ + i;
      columns_(art, i) = residual[i] >= 0.0 ? 1.0 : -1.0;
      x_[art] = std::abs(residual[i]);
      basis_[i] = art;
      position_[art] = static_cast<std::ptrdiff_t>(i);
    }
    refactor();
  }

  LpResult run(const Vector& cost) {
    // Phase 1: drive the artificials to zero.
    Vector phase1(total_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) phase1[n_ + i] = 1.0;
    LpStatus status = iterate(phase1);
    LpResult result;
    if (status == LpStatus::kIterationLimit) return finish(result, status, phase1);
    double infeasibility = 0.0;
    double b_scale = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      infeasibility += x_[n_ + i];
      b_scale = std::max(b_scale, std::abs(b_[i]));
    }
    if (infeasibility > options_.feasibility_tol * b_scale) {
      return finish(result, LpStatus::kInfeasible, phase1);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      upper_[n_ + i] = 0.0;
      if (position_[n_ + i] == kNonbasic) x_[n_ + i] = 0.0;
    }

    Vector phase2(total_, 0.0);
    std::copy(cost.begin(), cost.end(), phase2.begin());
    status = iterate(phase2);
    return finish(result, status, phase2);
  }

 private:
  static constexpr std::ptrdiff_t kNonbasic = -1;

  void refactor() {
    // Gauss-Jordan on [B | I] with partial pivoting.
    Matrix work(m_, m_);
    for (std::size_t p = 0; p < m_; ++p) {
      auto col = columns_.row(basis_[p]);
      for (std::size_t i = 0; i < m_; ++i) work(i, p) = col[i];
    }
    binv_ = Matrix::identity(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t pivot = k;
      for (std::size_t i = k + 1; i < m_; ++i) {
        if (std::abs(work(i, k)) > std::abs(work(pivot, k))) pivot = i;
      }
      if (std::abs(work(pivot, k)) < 1e-14) {
        throw Error(ErrorKind::kNoConvergence, "solve_lp: basis became singular");
      }
      if (pivot != k) {
        std::swap_ranges(work.row(k).begin(), work.row(k).end(), work.row(pivot).begin());
        std::swap_ranges(binv_.row(k).begin(), binv_.row(k).end(), binv_.row(pivot).begin());
      }
      const double inv = 1.0 / work(k, k);
      for (double& v : work.row(k)) v *= inv;
      for (double& v : binv_.row(k)) v *= inv;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == k || work(i, k) == 0.0) continue;
        const double f = work(i, k);
        simd::axpy(-f, work.row(k), work.row(i));
        simd::axpy(-f, binv_.row(k), binv_.row(i));
      }
    }
    // Recompute basic values from the nonbasic ones to shed drift.
    Vector rhs = b_;
    for (std::size_t j = 0; j < total_; ++j) {
      if (position_[j] == kNonbasic && x_[j] != 0.0) simd::axpy(-x_[j], columns_.row(j), rhs);
    }
    for (std::size_t p = 0; p < m_; ++p) x_[basis_[p]] = simd::dot(binv_.row(p), rhs);
  }

  Vector duals(const Vector& cost) const {
    Vector y(m_, 0.0);
    for (std::size_t p = 0; p < m_; ++p) {
      const double cb = cost[basis_[p]];
      if (cb != 0.0) simd::axpy(cb, binv_.row(p), y);
    }
    return y;
  }

  LpStatus iterate(const Vector& cost) {
    std::size_t degenerate_run = 0;
    std::size_t since_refactor = 0;
    Vector alpha(m_);
    while (true) {
      if (iterations_ >= options_.max_iters) return LpStatus::kIterationLimit;
      if (since_refactor >= options_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
      const Vector y = duals(cost);
      const bool bland = degenerate_run >= options_.degenerate_limit;

      std::size_t entering = total_;
      double best = 0.0;
      double entering_d = 0.0;
      for (std::size_t j = 0; j < total_; ++j) {
        if (position_[j] != kNonbasic || lower_[j] == upper_[j]) continue;
        const double d = cost[j] - simd::dot(y, columns_.row(j));
        const bool can_increase = x_[j] < upper_[j];
        const bool can_decrease = x_[j] > lower_[j];
        const bool improving = (can_increase && d < -options_.optimality_tol) ||
                               (can_decrease && d > options_.optimality_tol);
        if (!improving) continue;
        if (bland) {
          entering = j;
          entering_d = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          entering_d = d;
        }
      }
      if (entering == total_) return LpStatus::kOptimal;

      const double dir = entering_d < 0.0 ? 1.0 : -1.0;
      auto col = columns_.row(entering);
      for (std::size_t p = 0; p < m_; ++p) alpha[p] = simd::dot(binv_.row(p), col);

      // Distance to the opposite bound; a start value may sit strictly inside.
      double theta = dir > 0.0 ? upper_[entering] - x_[entering] : x_[entering] - lower_[entering];
      std::size_t leave = m_;
      double leave_pivot = 0.0;
      for (std::size_t p = 0; p < m_; ++p) {
        const double a = dir * alpha[p];
        const std::size_t var = basis_[p];
        double limit = kInf;
        if (a > options_.pivot_tol && std::isfinite(lower_[var])) {
          limit = std::max(0.0, (x_[var] - lower_[var]) / a);
        } else if (a < -options_.pivot_tol && std::isfinite(upper_[var])) {
          limit = std::max(0.0, (upper_[var] - x_[var]) / -a);
        }
        if (!std::isfinite(limit)) continue;
        const bool better = limit < theta - 1e-12 ||
                            (limit <= theta + 1e-12 && leave != m_ &&
                             (bland ? var < basis_[leave] : std::abs(a) > leave_pivot));
        if (better || (leave == m_ && limit <= theta)) {
          theta = limit;
          leave = p;
          leave_pivot = std::abs(a);
        }
      }
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;

      ++iterations_;
      ++since_refactor;
      degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;

      x_[entering] += dir * theta;
      for (std::size_t p = 0; p < m_; ++p) x_[basis_[p]] -= dir * theta * alpha[p];

      if (leave == m_) {
        x_[entering] = dir > 0.0 ? upper_[entering] : lower_[entering];
        continue;
      }
      const std::size_t leaving = basis_[leave];
      x_[leaving] = dir * alpha[leave] > 0.0 ? lower_[leaving] : upper_[leaving];
      position_[leaving] = kNonbasic;
      basis_[leave] = entering;
      position_[entering] = static_cast<std::ptrdiff_t>(leave);

      const double pivot = alpha[leave];
      for (double& v : binv_.row(leave)) v /= pivot;
      for (std::size_t p = 0; p < m_; ++p) {
        if (p != leave && alpha[p] != 0.0) simd::axpy(-alpha[p], binv_.row(leave), binv_.row(p));
      }
    }
  }

  LpResult& finish(LpResult& result, LpStatus status, const Vector& cost) {
    refactor();
    result.status = status;
    result.iterations = iterations_;
    result.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
    result.duals = duals(cost);
    result.reduced_costs.resize(n_);
    result.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      result.reduced_costs[j] = cost[j] - simd::dot(result.duals, columns_.row(j));
      result.objective += cost[j] * x_[j];
    }
    return result;
  }

  LpOptions options_;
  std::size_t m_;
  std::size_t n_;
  std::size_t total_;
  Vector b_;
  Matrix columns_;  // one row per variable
  Vector lower_;
  Vector upper_;
  Vector x_;
  std::vector<std::size_t> basis_;
  std::vector<std::ptrdiff_t> position_;
  Matrix binv_;
  std::size_t iterations_ = 0;
};

}  // namespace

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LpResult solve_lp(const LpProblem& problem, const LpOptions& options) {
  Simplex simplex(problem, options);
  return simplex.run(problem.c);
}

}  // namespace simgood
