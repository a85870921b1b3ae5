#pragma once

#include "monopole/errors.hpp"
#include "monopole/numeric.hpp"
#include "monopole/weights.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace monopole {

namespace detail {

/* Weight-multiplicity workspace: highest weight lambda is fixed, weights are
   addressed by lambda minus the weight in coroot coordinates. */
struct FreudenthalTable {
    const RootSystem& rs;
    IntVec lambda_f;
    RatMat cartan_inv_cols;  // columns of C^{-1} as rational vectors
    std::map<IntVec, Int> memo;

    explicit FreudenthalTable(const RootSystem& rs_, IntVec lf) : rs(rs_), lambda_f(std::move(lf)) {
        const std::size_t n = lambda_f.size();
        cartan_inv_cols.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            RatVec e(n, Rat(0));
            e[j] = 1;
            auto col = solve_linear(rat_matrix(rs.C.entries), std::move(e));
            require(col.has_value(), Errc::NotFiniteType, "finite-type Cartan must be invertible");
            cartan_inv_cols[j] = std::move(*col);
        }
    }

    /* Coroot coordinates of a fundamental-coordinate vector; nullopt when the
       result is not integral. */
    std::optional<IntVec> to_root_coords(const IntVec& f) const {
        const std::size_t n = f.size();
        IntVec out(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            Rat s(0);
            for (std::size_t j = 0; j < n; ++j) s += cartan_inv_cols[j][i] * f[j];
            if (!is_integer(s)) return std::nullopt;
            out[i] = static_cast<std::int64_t>(to_integer(s));
        }
        return out;
    }

    Rat form_fund(const IntVec& fa, const IntVec& fb) const {
        /* (v, w) with v, w given in fundamental coordinates: pull one side to
           the coroot basis and use (alpha_j, w) = d_j f_j(w). */
        const std::size_t n = fa.size();
        Rat s(0);
        for (std::size_t j = 0; j < n; ++j) {
            Rat cj(0);
            for (std::size_t i = 0; i < n; ++i) cj += cartan_inv_cols[i][j] * fa[i];
            s += cj * rs.C.symmetrizer[j] * fb[j];
        }
        return s;
    }

    Int mult_from_beta(const IntVec& beta) {
        const std::size_t n = beta.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (beta[i] < 0) return 0;
        }
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) zero = zero && beta[i] == 0;
        if (zero) return 1;

        /* Normalize to the dominant conjugate before memoization. */
        IntVec f = lambda_f;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) f[i] -= rs.C.entries[i][j] * beta[j];
        }
        const IntVec fdom = dominant_conjugate(f, rs.C);
        auto beta_dom = to_root_coords([&] {
            IntVec d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = lambda_f[i] - fdom[i];
            return d;
        }());
        require(beta_dom.has_value(), Errc::NonIntegerResult, "conjugate left the root lattice");
        bool dom_zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            if ((*beta_dom)[i] < 0) return 0;  // dominant conjugate not below lambda
            dom_zero = dom_zero && (*beta_dom)[i] == 0;
        }
        if (dom_zero) return 1;  // mu is an extreme weight, conjugate to lambda
        if (auto it = memo.find(*beta_dom); it != memo.end()) return it->second;

        IntVec mu_f = lambda_f;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) mu_f[i] -= rs.C.entries[i][j] * (*beta_dom)[j];
        }
        IntVec rho(n, 1);
        IntVec lam_rho = lambda_f, mu_rho = mu_f;
        for (std::size_t i = 0; i < n; ++i) {
            lam_rho[i] += rho[i];
            mu_rho[i] += rho[i];
        }
        const Rat denom = form_fund(lam_rho, lam_rho) - form_fund(mu_rho, mu_rho);
        require(denom > 0, Errc::NonIntegerResult, "degenerate multiplicity denominator");

        Rat rhs(0);
        for (const auto& alpha : rs.positive_roots) {
            const IntVec alpha_f = apply_cartan(rs.C, alpha);
            for (std::int64_t j = 1;; ++j) {
                IntVec b = *beta_dom;
                bool negative = false;
                for (std::size_t i = 0; i < n; ++i) {
                    b[i] -= j * alpha[i];
                    negative = negative || b[i] < 0;
                }
                if (negative) break;
                const Int m = mult_from_beta(b);
                if (m == 0) continue;
                IntVec up_f = mu_f;
                for (std::size_t i = 0; i < n; ++i) up_f[i] += j * alpha_f[i];
                rhs += 2 * Rat(m) * form_fund(up_f, alpha_f);
            }
        }
        const Rat value = rhs / denom;
        require(is_integer(value), Errc::NonIntegerResult, "multiplicity is not an integer");
        Int result = to_integer(value);
        require(result >= 0, Errc::NonIntegerResult, "negative multiplicity");
        memo.emplace(*beta_dom, result);
        return result;
    }
};

}  // namespace detail

/* Multiplicity of the weight mu in the irreducible highest-weight module
   with dominant highest weight lambda, by the exact recursion on weight
   norms.  Weights outside the module give 0. */
inline Int weight_multiplicity(const WeightVector& lambda, const WeightVector& mu,
                               const CartanMatrix& C) {
    const RootSystem rs = build_root_system(C);
    const IntVec lf = fundamental_coords(lambda, C);
    require(std::all_of(lf.begin(), lf.end(), [](std::int64_t x) { return x >= 0; }),
            Errc::NotDominant, "highest weight must be dominant");
    detail::FreudenthalTable table(rs, lf);
    const IntVec mf = fundamental_coords(mu, C);
    IntVec diff(lf.size());
    for (std::size_t i = 0; i < lf.size(); ++i) diff[i] = lf[i] - mf[i];
    auto beta = table.to_root_coords(diff);
    if (!beta) return 0;
    return table.mult_from_beta(*beta);
}

}  // namespace monopole
