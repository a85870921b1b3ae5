#pragma once

#include "monopole/errors.hpp"
#include "monopole/numeric.hpp"

#include <cstdint>
#include <vector>

namespace monopole {

/* Exact rational linear programming over free variables:
     minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq.
   Dense two-phase simplex with Bland's rule; every pivot is exact, so the
   result is a certificate, not an approximation.  Problem sizes here are
   tiny (tens of rows), which dense tableaus handle comfortably. */
struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    RatVec x;
    Rat value;
};

class SimplexSolver {
  public:
    LpResult solve(const RatVec& c, const RatMat& a_ub, const RatVec& b_ub, const RatMat& a_eq,
                   const RatVec& b_eq) {
        n_ = c.size();
        const std::size_t m_ub = a_ub.size(), m_eq = a_eq.size();
        m_ = m_ub + m_eq;
        const std::size_t n_struct = 2 * n_ + m_ub;  // split vars + slacks
        n_total_ = n_struct + m_;                    // + artificials

        rows_.assign(m_, RatVec(n_total_ + 1, Rat(0)));
        basis_.assign(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            const bool ub = i < m_ub;
            const RatVec& arow = ub ? a_ub[i] : a_eq[i - m_ub];
            const Rat& b = ub ? b_ub[i] : b_eq[i - m_ub];
            for (std::size_t j = 0; j < n_; ++j) {
                rows_[i][j] = arow[j];
                rows_[i][n_ + j] = -arow[j];
            }
            if (ub) rows_[i][2 * n_ + i] = 1;
            rows_[i][n_total_] = b;
            if (b < 0) {
                for (auto& v : rows_[i]) v = -v;
            }
            rows_[i][n_struct + i] = 1;
            basis_[i] = n_struct + i;
        }

        /* Phase one: minimize the artificial sum. */
        obj_.assign(n_total_ + 1, Rat(0));
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j <= n_total_; ++j) obj_[j] -= rows_[i][j];
        }
        for (std::size_t j = n_struct; j < n_total_; ++j) obj_[j] = 0;
        allowed_limit_ = n_total_;
        iterate();
        if (-obj_[n_total_] > 0) return {LpResult::Status::infeasible, {}, Rat(0)};

        /* Remove basic artificials (value zero) or drop redundant rows. */
        for (std::size_t i = 0; i < m_;) {
            if (basis_[i] < n_struct) {
                ++i;
                continue;
            }
            std::size_t piv = n_struct;
            for (std::size_t j = 0; j < n_struct; ++j) {
                if (rows_[i][j] != 0) {
                    piv = j;
                    break;
                }
            }
            if (piv < n_struct) {
                pivot(i, piv);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                --m_;
            }
        }

        /* Phase two: the real objective over split variables. */
        allowed_limit_ = n_struct;
        obj_.assign(n_total_ + 1, Rat(0));
        for (std::size_t j = 0; j < n_; ++j) {
            obj_[j] = c[j];
            obj_[n_ + j] = -c[j];
        }
        for (std::size_t i = 0; i < m_; ++i) {
            const Rat cb = basis_[i] < n_ ? c[basis_[i]]
                           : (basis_[i] < 2 * n_ ? -c[basis_[i] - n_] : Rat(0));
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= n_total_; ++j) obj_[j] -= cb * rows_[i][j];
        }
        if (!iterate()) return {LpResult::Status::unbounded, {}, Rat(0)};

        RatVec x(n_, Rat(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                x[basis_[i]] += rows_[i][n_total_];
            } else if (basis_[i] < 2 * n_) {
                x[basis_[i] - n_] -= rows_[i][n_total_];
            }
        }
        return {LpResult::Status::optimal, std::move(x), -obj_[n_total_]};
    }

  private:
    void pivot(std::size_t r, std::size_t col) {
        const Rat d = rows_[r][col];
        for (auto& v : rows_[r]) v /= d;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || rows_[i][col] == 0) continue;
            const Rat f = rows_[i][col];
            for (std::size_t j = 0; j <= n_total_; ++j) rows_[i][j] -= f * rows_[r][j];
        }
        if (obj_[col] != 0) {
            const Rat f = obj_[col];
            for (std::size_t j = 0; j <= n_total_; ++j) obj_[j] -= f * rows_[r][j];
        }
        basis_[r] = col;
    }

    /* Bland's smallest-index rule; returns false on unboundedness. */
    bool iterate() {
        for (;;) {
            std::size_t col = allowed_limit_;
            for (std::size_t j = 0; j < allowed_limit_; ++j) {
                if (obj_[j] < 0) {
                    col = j;
                    break;
                }
            }
            if (col == allowed_limit_) return true;
            std::size_t best = m_;
            Rat best_ratio(0);
            for (std::size_t i = 0; i < m_; ++i) {
                if (rows_[i][col] <= 0) continue;
                const Rat ratio = rows_[i][n_total_] / rows_[i][col];
                if (best == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[best])) {
                    best = i;
                    best_ratio = ratio;
                }
            }
            if (best == m_) return false;
            pivot(best, col);
        }
    }

    std::size_t n_ = 0, m_ = 0, n_total_ = 0, allowed_limit_ = 0;
    RatMat rows_;
    RatVec obj_;
    std::vector<std::size_t> basis_;
};

inline LpResult solve_lp(const RatVec& c, const RatMat& a_ub, const RatVec& b_ub,
                         const RatMat& a_eq = {}, const RatVec& b_eq = {}) {
    return SimplexSolver().solve(c, a_ub, b_ub, a_eq, b_eq);
}

}  // namespace monopole
