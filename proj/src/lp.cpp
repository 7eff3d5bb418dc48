// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/lp.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "convexify/error.hpp"

namespace convexify::lp {

void LinearProgram::validate() const {
  const auto m = A.rows();
  const auto n = A.cols();
  if (b.size() != m || static_cast<Eigen::Index>(sense.size()) != m) {
    throw InputError("LP row data sizes disagree");
  }
  if (c.size() != n) throw InputError("LP objective size disagrees with column count");
  if (!free.empty() && static_cast<Eigen::Index>(free.size()) != n) {
    throw InputError("LP free-variable mask size disagrees with column count");
  }
  if (!A.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw InputError("LP data must be finite");
  }
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

constexpr std::size_t kStallLimit = 50;
constexpr std::size_t kReinvertEvery = 64;

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& opt) : opt_(opt) {
    m_ = static_cast<std::size_t>(lp.A.rows());
    const auto n = static_cast<std::size_t>(lp.A.cols());

    // Column layout: structural (free variables split in two), slacks,
    // artificials, right-hand side.
    for (std::size_t j = 0; j < n; ++j) {
      plus_col_.push_back(cols_++);
      const bool split = !lp.free.empty() && lp.free[j];
      minus_col_.push_back(split ? static_cast<long>(cols_++) : -1L);
      twin_.push_back(-1L);
      if (split) {
        twin_.back() = minus_col_.back();
        twin_.push_back(static_cast<long>(plus_col_.back()));
      }
    }
    std::vector<long> slack_col(m_, -1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (lp.sense[i] != RowSense::Equal) slack_col[i] = static_cast<long>(cols_++);
    }
    first_artificial_ = cols_;
    cols_ += m_;
    rhs_ = cols_;
    twin_.resize(cols_, -1L);

    M0_ = RowMatrix::Zero(static_cast<Index>(m_), static_cast<Index>(cols_ + 1));
    row_sign_.assign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto r = static_cast<Index>(i);
      for (std::size_t j = 0; j < n; ++j) {
        const double a = lp.A(r, static_cast<Index>(j));
        M0_(r, static_cast<Index>(plus_col_[j])) = a;
        if (minus_col_[j] >= 0) M0_(r, minus_col_[j]) = -a;
      }
      if (slack_col[i] >= 0) M0_(r, slack_col[i]) = lp.sense[i] == RowSense::LessEqual ? 1.0 : -1.0;
      M0_(r, static_cast<Index>(rhs_)) = lp.b(r);
      if (lp.b(r) < 0.0) {
        M0_.row(r) *= -1.0;
        row_sign_[i] = -1.0;
      }
      M0_(r, static_cast<Index>(first_artificial_ + i)) = 1.0;
    }
    exact_rhs_ = M0_.col(static_cast<Index>(rhs_));
    if (opt_.perturbation > 0.0) {
      // A deterministic right-hand-side shift breaks the primal degeneracy
      // that otherwise stalls pricing; restore() removes it at the end.
      std::mt19937_64 rng(0x5eedULL);
      std::uniform_real_distribution<double> xi(0.5, 1.0);
      for (std::size_t i = 0; i < m_; ++i) {
        const auto r = static_cast<Index>(i);
        M0_(r, static_cast<Index>(rhs_)) += opt_.perturbation * xi(rng) * (1.0 + std::abs(exact_rhs_(r)));
      }
    }

    cost_ = Eigen::VectorXd::Zero(static_cast<Index>(cols_));
    for (std::size_t j = 0; j < n; ++j) {
      cost_(static_cast<Index>(plus_col_[j])) = lp.c(static_cast<Index>(j));
      if (minus_col_[j] >= 0) cost_(minus_col_[j]) = -lp.c(static_cast<Index>(j));
    }
    T_ = RowMatrix::Zero(static_cast<Index>(m_ + 1), static_cast<Index>(cols_ + 1));
    T_.topRows(static_cast<Index>(m_)) = M0_;
    basis_.resize(m_);
    in_basis_.assign(cols_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = first_artificial_ + i;
      in_basis_[basis_[i]] = true;
    }
  }

  Status run_phase_one() {
    active_cost_ = Eigen::VectorXd::Zero(static_cast<Index>(cols_));
    active_cost_.tail(static_cast<Index>(m_)).setOnes();
    load_objective();
    const Status st = iterate();
    if (st != Status::Optimal) return st;
    double scale = 1.0;
    for (std::size_t i = 0; i < m_; ++i) scale = std::max(scale, std::abs(rhs_at(i)));
    if (-T_(static_cast<Index>(m_), static_cast<Index>(rhs_)) > opt_.feasibility_tol * scale) {
      return Status::Infeasible;
    }
    drive_out_artificials();
    return Status::Optimal;
  }

  Status run_phase_two() {
    active_cost_ = cost_;
    load_objective();
    stalled_ = 0;
    Status st = iterate();
    if (st != Status::Optimal || !(opt_.perturbation > 0.0)) return st;
    st = restore();
    if (st != Status::Optimal) return st;
    return iterate();
  }

  Solution extract(const LinearProgram& lp, Status status) const {
    Solution sol;
    sol.status = status;
    sol.iterations = iterations_;
    const auto n = static_cast<std::size_t>(lp.A.cols());
    Eigen::VectorXd value = Eigen::VectorXd::Zero(static_cast<Index>(cols_));
    for (std::size_t i = 0; i < m_; ++i) value(static_cast<Index>(basis_[i])) = rhs_at(i);
    sol.x.resize(static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      double v = value(static_cast<Index>(plus_col_[j]));
      if (minus_col_[j] >= 0) v -= value(minus_col_[j]);
      sol.x(static_cast<Index>(j)) = v;
    }
    // The artificial columns carry B^-1, so their reduced costs are -y on
    // the sign-normalized rows.
    sol.duals.resize(static_cast<Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      const double reduced = T_(static_cast<Index>(m_), static_cast<Index>(first_artificial_ + i));
      sol.duals(static_cast<Index>(i)) = -row_sign_[i] * reduced;
    }
    sol.objective = lp.c.dot(sol.x);
    return sol;
  }

 private:
  double rhs_at(std::size_t i) const { return T_(static_cast<Index>(i), static_cast<Index>(rhs_)); }

  void load_objective() {
    auto obj = T_.row(static_cast<Index>(m_));
    obj.setZero();
    obj.head(static_cast<Index>(cols_)) = active_cost_.transpose();
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = active_cost_(static_cast<Index>(basis_[i]));
      if (cb != 0.0) obj -= cb * T_.row(static_cast<Index>(i));
    }
  }

  // Rebuild the tableau from the original rows and the current basis so
  // that rounding accumulated over many pivots does not steer pricing.
  bool reinvert() {
    since_reinvert_ = 0;
    const auto m = static_cast<Index>(m_);
    Eigen::MatrixXd B(m, m);
    for (std::size_t i = 0; i < m_; ++i) B.col(static_cast<Index>(i)) = M0_.col(static_cast<Index>(basis_[i]));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const Eigen::MatrixXd rebuilt = lu.solve(Eigen::MatrixXd(M0_));
    const double err = (B * rebuilt.col(static_cast<Index>(rhs_)) - M0_.col(static_cast<Index>(rhs_))).norm();
    if (!rebuilt.allFinite() || err > 1e-6 * (1.0 + M0_.col(static_cast<Index>(rhs_)).norm())) return false;
    T_.topRows(m) = rebuilt;
    for (std::size_t i = 0; i < m_; ++i) {
      auto& v = T_(static_cast<Index>(i), static_cast<Index>(rhs_));
      if (v < 0.0 && v > -opt_.feasibility_tol) v = 0.0;
    }
    load_objective();
    return true;
  }

  void pivot(std::size_t row, std::size_t col) {
    const auto r = static_cast<Index>(row);
    const auto q = static_cast<Index>(col);
    T_.row(r) /= T_(r, q);
    for (Index i = 0; i < T_.rows(); ++i) {
      if (i == r) continue;
      const double f = T_(i, q);
      if (f != 0.0) T_.row(i) -= f * T_.row(r);
    }
    in_basis_[basis_[row]] = false;
    in_basis_[col] = true;
    basis_[row] = col;
    ++iterations_;
    ++since_reinvert_;
  }

  bool priceable(std::size_t j) const {
    return !(twin_[j] >= 0 && in_basis_[static_cast<std::size_t>(twin_[j])]);
  }

  Status iterate() {
    const auto rhs = static_cast<Index>(rhs_);
    const auto obj = static_cast<Index>(m_);
    for (;;) {
      if (iterations_ >= opt_.max_iterations) return Status::IterationLimit;
      if (since_reinvert_ >= kReinvertEvery) reinvert();
      // Dantzig pricing; after a run of degenerate pivots fall back to Bland
      // (lowest improving index) until the objective moves again.
      // Artificials never re-enter. The twin of a basic split free variable
      // has reduced cost zero up to rounding and would look like a ray.
      const bool bland = stalled_ >= kStallLimit;
      std::size_t entering = cols_;
      double most_negative = -opt_.cost_tol;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!priceable(j)) continue;
        const double d = T_(obj, static_cast<Index>(j));
        if (d < most_negative) {
          entering = j;
          if (bland) break;
          most_negative = d;
        }
      }
      if (entering == cols_) {
        if (since_reinvert_ > 0 && reinvert()) continue;
        return Status::Optimal;
      }
      const auto q = static_cast<Index>(entering);
      // Harris two-pass ratio test: bound the step with a slightly relaxed
      // right-hand side, then take the largest pivot among rows within it.
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = T_(static_cast<Index>(i), q);
        if (a > opt_.pivot_tol) bound = std::min(bound, (std::max(rhs_at(i), 0.0) + opt_.feasibility_tol) / a);
      }
      if (!std::isfinite(bound)) {
        if (since_reinvert_ > 0 && reinvert()) continue;
        return Status::Unbounded;
      }
      std::size_t leaving = m_;
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = T_(static_cast<Index>(i), q);
        if (a <= opt_.pivot_tol || std::max(rhs_at(i), 0.0) / a > bound) continue;
        if (a > best_pivot || (a == best_pivot && basis_[i] < basis_[leaving])) {
          best_pivot = a;
          leaving = i;
        }
      }
      const double before = T_(obj, rhs);
      pivot(leaving, entering);
      const double after = T_(obj, rhs);
      stalled_ = std::abs(after - before) <= 1e-14 * (1.0 + std::abs(before)) ? stalled_ + 1 : 0;
    }
  }

  // Swap the perturbed right-hand side for the exact one and repair any
  // small infeasibility with dual simplex pivots; reduced costs do not
  // depend on the right-hand side.
  Status restore() {
    M0_.col(static_cast<Index>(rhs_)) = exact_rhs_;
    if (!reinvert()) return Status::IterationLimit;
    const auto obj = static_cast<Index>(m_);
    for (;;) {
      if (iterations_ >= opt_.max_iterations) return Status::IterationLimit;
      if (since_reinvert_ >= kReinvertEvery) reinvert();
      std::size_t row = m_;
      double worst = -opt_.feasibility_tol;
      for (std::size_t i = 0; i < m_; ++i) {
        if (rhs_at(i) < worst) {
          worst = rhs_at(i);
          row = i;
        }
      }
      if (row == m_) {
        if (since_reinvert_ > 0 && reinvert()) continue;
        for (std::size_t i = 0; i < m_; ++i) {
          auto& v = T_(static_cast<Index>(i), static_cast<Index>(rhs_));
          v = std::max(v, 0.0);
        }
        return Status::Optimal;
      }
      const auto r = static_cast<Index>(row);
      std::size_t entering = cols_;
      double best = std::numeric_limits<double>::infinity();
      double best_mag = 0.0;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        const double a = T_(r, static_cast<Index>(j));
        if (a >= -opt_.pivot_tol) continue;
        const double ratio = std::max(T_(obj, static_cast<Index>(j)), 0.0) / -a;
        if (ratio < best || (ratio == best && -a > best_mag)) {
          best = ratio;
          best_mag = -a;
          entering = j;
        }
      }
      if (entering == cols_) return Status::Infeasible;
      pivot(row, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      const auto r = static_cast<Index>(i);
      std::size_t best = cols_;
      double best_mag = opt_.pivot_tol;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        const double mag = std::abs(T_(r, static_cast<Index>(j)));
        if (mag > best_mag) {
          best_mag = mag;
          best = j;
        }
      }
      // A row with no structural support is redundant; its artificial stays
      // basic at zero and cannot move.
      if (best != cols_) pivot(i, best);
    }
  }

  const SimplexOptions& opt_;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t rhs_ = 0;
  std::size_t iterations_ = 0;
  std::size_t stalled_ = 0;
  std::size_t since_reinvert_ = 0;
  std::vector<std::size_t> plus_col_;
  std::vector<long> minus_col_;
  std::vector<long> twin_;  // split free column -> its negated partner
  std::vector<double> row_sign_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  Eigen::VectorXd cost_;
  Eigen::VectorXd active_cost_;
  Eigen::VectorXd exact_rhs_;
  RowMatrix M0_;  // sign-normalized original rows
  RowMatrix T_;   // B^-1 M0 plus the reduced-cost row
};

}  // namespace

Solution solve(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  Tableau tab(lp, options);
  Status st = tab.run_phase_one();
  if (st != Status::Optimal) return tab.extract(lp, st);
  st = tab.run_phase_two();
  return tab.extract(lp, st);
}

}  // namespace convexify::lp
