/*
 * Copyright 2026 The restricted-range Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "rr/config.hpp"

namespace rr {

//============================================================================
// Dense two-phase simplex (Bland's rule)
//============================================================================

enum class Sense { le, ge, eq };

struct LpRow {
  Eigen::VectorXd a;
  Sense sense = Sense::le;
  double b = 0.0;
};

// maximize c.x subject to rows and x >= 0.
struct LinearProgram {
  Eigen::VectorXd c;
  std::vector<LpRow> rows;

  int vars() const { return static_cast<int>(c.size()); }
  void add(Eigen::VectorXd a, Sense s, double b) { rows.push_back({std::move(a), s, b}); }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd x;
  double value = 0.0;
  double primal_residual = 0.0;  // worst constraint or sign violation
  int pivots = 0;
};

namespace detail {

class Tableau {
 public:
  Eigen::MatrixXd t;  // m constraint rows + objective row; last column is rhs
  std::vector<int> basis;
  int pivots = 0;

  int m() const { return static_cast<int>(t.rows()) - 1; }
  int rhs() const { return static_cast<int>(t.cols()) - 1; }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= m(); ++i)
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    basis[static_cast<size_t>(r)] = c;
    ++pivots;
  }

  void set_objective(const Eigen::VectorXd& cost) {
    t.row(m()).setZero();
    t.row(m()).head(cost.size()) = -cost.transpose();
    for (int i = 0; i < m(); ++i) {
      const double cb = cost(basis[static_cast<size_t>(i)]);
      if (cb != 0.0) t.row(m()) += cb * t.row(i);
    }
  }

  // Maximizes the installed objective over columns [0, ncols).
  LpStatus run(int ncols, double eps, int max_pivots) {
    for (;;) {
      if (pivots > max_pivots) return LpStatus::iteration_limit;
      int enter = -1;
      for (int j = 0; j < ncols; ++j)
        if (t(m(), j) < -eps) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::optimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      const Eigen::Index rows = t.rows() - 1;
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (t(i, enter) <= eps) continue;
        const double ratio = t(i, rhs()) / t(i, enter);
        const auto bi = static_cast<size_t>(i);
        if (ratio < best - 1e-15 ||
            (ratio <= best + 1e-15 && leave >= 0 && basis[bi] < basis[static_cast<size_t>(leave)])) {
          if (ratio < best - 1e-15) best = ratio;
          leave = static_cast<int>(i);
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp, double eps = 1e-11, int max_pivots = 100000) {
  const int n = lp.vars();
  const int m = static_cast<int>(lp.rows.size());
  int slacks = 0, arts = 0;
  for (const auto& r : lp.rows) {
    if (r.a.size() != n) throw DimensionError("LP row length differs from variable count");
    const bool flip = r.b < 0.0;
    Sense s = r.sense;
    if (flip && s != Sense::eq) s = s == Sense::le ? Sense::ge : Sense::le;
    if (s != Sense::eq) ++slacks;
    if (s != Sense::le) ++arts;
  }
  const int ncols = n + slacks + arts;
  detail::Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
  tab.basis.assign(static_cast<size_t>(m), -1);
  int sc = n, ac = n + slacks;
  for (int i = 0; i < m; ++i) {
    const auto& r = lp.rows[static_cast<size_t>(i)];
    const double sign = r.b < 0.0 ? -1.0 : 1.0;
    Sense s = r.sense;
    if (sign < 0.0 && s != Sense::eq) s = s == Sense::le ? Sense::ge : Sense::le;
    tab.t.row(i).head(n) = sign * r.a.transpose();
    tab.t(i, ncols) = sign * r.b;
    if (s == Sense::le) {
      tab.t(i, sc) = 1.0;
      tab.basis[static_cast<size_t>(i)] = sc++;
    } else if (s == Sense::ge) {
      tab.t(i, sc++) = -1.0;
      tab.t(i, ac) = 1.0;
      tab.basis[static_cast<size_t>(i)] = ac++;
    } else {
      tab.t(i, ac) = 1.0;
      tab.basis[static_cast<size_t>(i)] = ac++;
    }
  }

  LpResult res;
  // Phase 1: maximize -sum(artificials).
  if (arts > 0) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
    cost.tail(arts).setConstant(-1.0);
    tab.set_objective(cost);
    const auto st = tab.run(ncols, eps, max_pivots);
    if (st == LpStatus::iteration_limit) {
      res.status = st;
      res.pivots = tab.pivots;
      return res;
    }
    if (tab.t(m, ncols) < -1e-9) {
      res.status = LpStatus::infeasible;
      res.pivots = tab.pivots;
      return res;
    }
    // Drive zero-level artificials out of the basis.
    for (int i = 0; i < tab.m(); ++i) {
      if (tab.basis[static_cast<size_t>(i)] < n + slacks) continue;
      int col = -1;
      for (int j = 0; j < n + slacks; ++j)
        if (std::abs(tab.t(i, j)) > 1e-9) {
          col = j;
          break;
        }
      if (col >= 0) tab.pivot(i, col);
    }
  }
  // Phase 2 on the original columns; redundant rows keep a zero artificial.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
  cost.head(n) = lp.c;
  tab.set_objective(cost);
  res.status = tab.run(n + slacks, eps, max_pivots);
  res.pivots = tab.pivots;
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < tab.m(); ++i) {
    const int b = tab.basis[static_cast<size_t>(i)];
    if (b < n) res.x(b) = tab.t(i, ncols);
  }
  res.value = lp.c.dot(res.x);
  double worst = std::max(0.0, -res.x.minCoeff());
  for (const auto& r : lp.rows) {
    const double lhs = r.a.dot(res.x);
    double v = 0.0;
    if (r.sense == Sense::le) v = lhs - r.b;
    if (r.sense == Sense::ge) v = r.b - lhs;
    if (r.sense == Sense::eq) v = std::abs(lhs - r.b);
    worst = std::max(worst, v);
  }
  res.primal_residual = worst;
  return res;
}

//============================================================================
// Fidelity bound between a pure state and a diagonal state
//============================================================================

// max sum_ij p_ij B_ij over B >= 0 whose row sums and column sums, summed over
// any r-subset, lie between the sum of the r smallest and the r largest
// Schmidt weights. The full subset forces sum B = 1.
struct FidelityLpResult {
  double bound = 0.0;
  Eigen::MatrixXd b;
  int constraints = 0;  // subset constraints actually generated
  int rounds = 0;
  double residual = 0.0;
  LpStatus status = LpStatus::optimal;
};

// Two-sided subset constraints for rows and columns plus the total.
inline int fidelity_lp_full_constraint_count(int n) { return 2 * ((1 << n) - 2) + 1; }

namespace detail {

// Partial sums of the sorted weights: lower[r] = r smallest, upper[r] = r largest.
inline void partial_bounds(const Eigen::VectorXd& lambda, std::vector<double>& lower,
                           std::vector<double>& upper) {
  std::vector<double> s(lambda.data(), lambda.data() + lambda.size());
  std::sort(s.begin(), s.end());
  const size_t n = s.size();
  lower.assign(n + 1, 0.0);
  upper.assign(n + 1, 0.0);
  for (size_t r = 1; r <= n; ++r) {
    lower[r] = lower[r - 1] + s[r - 1];
    upper[r] = upper[r - 1] + s[n - r];
  }
}

inline Eigen::VectorXd subset_row(int n, const std::vector<int>& idx, bool rows) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n * n);
  for (int i : idx)
    for (int j = 0; j < n; ++j) a(rows ? i * n + j : j * n + i) = 1.0;
  return a;
}

}  // namespace detail

inline void validate_probability(const Eigen::VectorXd& v, const char* what) {
  if (v.size() < 1) throw DimensionError(std::string(what) + " must be non-empty");
  if ((v.array() < -1e-12).any() || std::abs(v.sum() - 1.0) > 1e-9)
    throw DomainError(std::string(what) + " must be a probability vector");
}

// `full` adds every subset constraint up front; otherwise they are separated
// lazily (for each size r the extreme subsets are the sorted prefixes).
inline FidelityLpResult diagonal_fidelity_lp(const Eigen::MatrixXd& p, const Eigen::VectorXd& lambda,
                                             bool full = false) {
  const int n = static_cast<int>(lambda.size());
  if (n > 12) throw GuardError("fidelity LP limited to N <= 12");
  if (p.rows() != n || p.cols() != n) throw DimensionError("weights must be N x N with N = |lambda|");
  validate_probability(lambda, "lambda");
  {
    const Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
    validate_probability(flat, "weights");
  }
  std::vector<double> lower, upper;
  detail::partial_bounds(lambda, lower, upper);

  LinearProgram lp;
  lp.c.resize(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lp.c(i * n + j) = p(i, j);
  lp.add(Eigen::VectorXd::Ones(n * n), Sense::eq, 1.0);

  FidelityLpResult out;
  auto add_subset = [&](const std::vector<int>& idx, bool rows) {
    const auto r = idx.size();
    lp.add(detail::subset_row(n, idx, rows), Sense::le, upper[r]);
    lp.add(detail::subset_row(n, idx, rows), Sense::ge, lower[r]);
    out.constraints += 2;
  };
  if (full) {
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) idx.push_back(i);
      add_subset(idx, true);
      add_subset(idx, false);
    }
  }
  for (int round = 0; round < 4 * n * n + 8; ++round) {
    ++out.rounds;
    const auto res = solve_lp(lp);
    out.status = res.status;
    if (res.status != LpStatus::optimal)
      throw Error(ErrorKind::no_certificate, "fidelity LP solver failed: " + to_string(res.status));
    out.bound = res.value;
    out.residual = res.primal_residual;
    out.b = Eigen::Map<const Eigen::MatrixXd>(res.x.data(), n, n).transpose();
    bool added = false;
    for (int side = 0; side < 2; ++side) {
      const Eigen::VectorXd sums = side == 0 ? Eigen::VectorXd(out.b.rowwise().sum())
                                             : Eigen::VectorXd(out.b.colwise().sum().transpose());
      std::vector<int> ord(static_cast<size_t>(n));
      std::iota(ord.begin(), ord.end(), 0);
      std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return sums(a) > sums(b); });
      double top = 0.0, bottom = 0.0;
      for (int r = 1; r < n; ++r) {
        top += sums(ord[static_cast<size_t>(r - 1)]);
        bottom += sums(ord[static_cast<size_t>(n - r)]);
        if (top > upper[static_cast<size_t>(r)] + 1e-12) {
          add_subset(std::vector<int>(ord.begin(), ord.begin() + r), side == 0);
          added = true;
        }
        if (bottom < lower[static_cast<size_t>(r)] - 1e-12) {
          add_subset(std::vector<int>(ord.end() - r, ord.end()), side == 0);
          added = true;
        }
      }
    }
    if (!added) return out;
  }
  throw Error(ErrorKind::no_certificate, "fidelity LP separation did not terminate");
}

}  // namespace rr
