#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace monopole {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;
using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

inline Rat rat(std::int64_t n) { return Rat(n); }

/* Dense exact Gaussian elimination helpers.  Matrices are row-major and
   small (quiver ranks), so no pivoting strategy beyond nonzero search is
   needed for exact rationals. */

inline RatMat rat_matrix(const IntMat& m) {
    RatMat r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        r[i].assign(m[i].begin(), m[i].end());
    }
    return r;
}

/* Solves a x = b.  Returns nullopt when a is singular. */
inline std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        const Rat d = a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] /= d;
        b[col] /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rat f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    return b;
}

/* Right kernel of an integer matrix, as exact rational basis vectors. */
inline std::vector<RatVec> kernel_basis(const IntMat& m) {
    if (m.empty()) return {};
    RatMat a = rat_matrix(m);
    const std::size_t rows = a.size(), cols = a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const Rat d = a[r][c];
        for (std::size_t j = 0; j < cols; ++j) a[r][j] /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) {
            v[pivot_col[i]] = -a[i][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/* Scales a rational vector to the primitive integer vector on the same ray
   (positive multiple, entries coprime). */
inline std::vector<Int> primitive_ray(const RatVec& v) {
    Int lcm_den = 1;
    for (const auto& x : v) {
        lcm_den = boost::multiprecision::lcm(lcm_den, Int(boost::multiprecision::denominator(x)));
    }
    std::vector<Int> w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = Int(boost::multiprecision::numerator(v[i])) *
               (lcm_den / Int(boost::multiprecision::denominator(v[i])));
        g = boost::multiprecision::gcd(g, w[i]);
    }
    if (g > 1) {
        for (auto& x : w) x /= g;
    }
    return w;
}

inline bool is_integer(const Rat& x) { return boost::multiprecision::denominator(x) == 1; }

inline Int to_integer(const Rat& x) { return Int(boost::multiprecision::numerator(x)); }

}  // namespace monopole
