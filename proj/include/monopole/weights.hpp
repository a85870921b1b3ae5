#pragma once

#include "monopole/errors.hpp"
#include "monopole/numeric.hpp"
#include "monopole/quiver.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace monopole {

/* Lattice vectors are stored against one of two bases related by the Cartan
   matrix: fundamental coordinates f and simple-coroot coordinates c satisfy
   f = C c.  Conversion towards fundamental coordinates is always possible;
   conversion towards coroot coordinates needs C invertible and may leave the
   integral lattice. */
enum class Basis { fundamental, coroot };

struct WeightVector {
    Basis basis = Basis::fundamental;
    IntVec coords;

    static WeightVector fundamental(IntVec f) { return {Basis::fundamental, std::move(f)}; }
    static WeightVector coroot(IntVec c) { return {Basis::coroot, std::move(c)}; }

    bool operator==(const WeightVector&) const = default;
};

inline IntVec apply_cartan(const CartanMatrix& C, const IntVec& c) {
    require(static_cast<int>(c.size()) == C.size(), Errc::ShapeMismatch,
            "coordinate length does not match Cartan rank");
    IntVec f(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) f[i] += C.entries[i][j] * c[j];
    }
    return f;
}

inline IntVec fundamental_coords(const WeightVector& w, const CartanMatrix& C) {
    if (w.basis == Basis::fundamental) {
        require(static_cast<int>(w.coords.size()) == C.size(), Errc::ShapeMismatch,
                "coordinate length does not match Cartan rank");
        return w.coords;
    }
    return apply_cartan(C, w.coords);
}

inline RatVec coroot_coords(const WeightVector& w, const CartanMatrix& C) {
    if (w.basis == Basis::coroot) {
        require(static_cast<int>(w.coords.size()) == C.size(), Errc::ShapeMismatch,
                "coordinate length does not match Cartan rank");
        return RatVec(w.coords.begin(), w.coords.end());
    }
    RatVec b(w.coords.begin(), w.coords.end());
    auto x = solve_linear(rat_matrix(C.entries), std::move(b));
    if (!x) fail(Errc::NonInvertibleCartan, "cannot express weight in the coroot basis");
    return *x;
}

inline bool is_dominant(const WeightVector& w, const CartanMatrix& C) {
    const IntVec f = fundamental_coords(w, C);
    return std::all_of(f.begin(), f.end(), [](std::int64_t x) { return x >= 0; });
}

struct DominanceResult {
    bool leq = false;
    /* Coroot coordinates of lambda - mu when leq holds. */
    std::optional<IntVec> alpha;
};

/* Dominance order: mu <= lambda iff lambda - mu is a nonnegative integral
   combination of simple coroots. */
inline DominanceResult dominance_leq(const WeightVector& mu, const WeightVector& lambda,
                                     const CartanMatrix& C) {
    RatVec diff;
    if (mu.basis == Basis::coroot && lambda.basis == Basis::coroot) {
        require(mu.coords.size() == lambda.coords.size(), Errc::ShapeMismatch,
                "weight ranks differ");
        diff.resize(mu.coords.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = lambda.coords[i] - mu.coords[i];
    } else {
        const IntVec fl = fundamental_coords(lambda, C);
        const IntVec fm = fundamental_coords(mu, C);
        RatVec b(fl.size());
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = fl[i] - fm[i];
        auto x = solve_linear(rat_matrix(C.entries), std::move(b));
        if (!x) fail(Errc::NonInvertibleCartan, "cannot express weight difference in the coroot basis");
        diff = std::move(*x);
    }
    IntVec alpha(diff.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        if (!is_integer(diff[i]) || diff[i] < 0) return {false, std::nullopt};
        alpha[i] = static_cast<std::int64_t>(to_integer(diff[i]));
    }
    return {true, std::move(alpha)};
}

/* Simple reflection acting on fundamental coordinates. */
inline void reflect_simple(IntVec& f, const CartanMatrix& C, std::size_t i) {
    const std::int64_t fi = f[i];
    if (fi == 0) return;
    for (std::size_t r = 0; r < f.size(); ++r) f[r] -= fi * C.entries[r][i];
}

/* The dominant Weyl conjugate, by repeated simple reflections at negative
   coordinates.  Terminates for finite type. */
inline IntVec dominant_conjugate(IntVec f, const CartanMatrix& C) {
    for (long guard = 0;; ++guard) {
        require(guard < 1000000, Errc::NotFiniteType, "dominant conjugation does not terminate");
        std::size_t i = 0;
        while (i < f.size() && f[i] >= 0) ++i;
        if (i == f.size()) return f;
        reflect_simple(f, C, i);
    }
}

/* Finite root system data generated from a finite-type Cartan matrix.
   Roots are kept in coroot-basis coordinates (nonnegative for the positive
   half); fundamental coordinates follow via C. */
struct RootSystem {
    CartanMatrix C;
    std::vector<IntVec> positive_roots;  // coroot coords, height ascending
    IntVec highest_root;                 // coroot coords; empty when absent
    IntMat gram_;                        // symmetrized form in the coroot basis

    Rat form(const RatVec& a, const RatVec& b) const {
        Rat s(0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram_[i][j] * b[j];
        }
        return s;
    }

    std::int64_t form_int(const IntVec& a, const IntVec& b) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram_[i][j] * b[j];
        }
        return s;
    }

    /* <v, beta^vee> = 2 (v, beta) / (beta, beta) for a root beta, evaluated
       on fundamental coordinates of v via (v, alpha_i) = d_i f_i(v). */
    std::int64_t pair_coroot(const IntVec& f, const IntVec& beta) const {
        Rat num(0);
        for (std::size_t i = 0; i < f.size(); ++i) num += Rat(beta[i]) * C.symmetrizer[i] * f[i];
        const Rat val = 2 * num / Rat(form_int(beta, beta));
        require(is_integer(val), Errc::NonIntegerResult, "coroot pairing is not integral");
        return static_cast<std::int64_t>(to_integer(val));
    }

    std::int64_t pair_highest_coroot(const IntVec& f) const {
        return pair_coroot(f, highest_root);
    }
};

inline RootSystem build_root_system(const CartanMatrix& C) {
    C.validate();
    require(C.is_finite_type(), Errc::NotFiniteType, "Cartan matrix is not of finite type");
    RootSystem rs;
    rs.C = C;
    rs.gram_ = C.gram();
    const std::size_t n = static_cast<std::size_t>(C.size());

    std::set<IntVec> seen;
    std::vector<IntVec> queue;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        seen.insert(e);
        queue.push_back(std::move(e));
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const IntVec r = queue[head];
        require(queue.size() < 100000, Errc::NotFiniteType, "root generation does not terminate");
        const IntVec f = apply_cartan(C, r);
        for (std::size_t i = 0; i < n; ++i) {
            IntVec s = r;
            s[i] -= f[i];
            if (std::all_of(s.begin(), s.end(), [](std::int64_t x) { return x >= 0; }) &&
                seen.insert(s).second) {
                queue.push_back(std::move(s));
            }
        }
    }
    rs.positive_roots.assign(seen.begin(), seen.end());
    auto height = [](const IntVec& r) {
        return std::accumulate(r.begin(), r.end(), std::int64_t{0});
    };
    std::stable_sort(rs.positive_roots.begin(), rs.positive_roots.end(),
                     [&](const IntVec& a, const IntVec& b) { return height(a) < height(b); });

    /* The highest root exists exactly for irreducible finite type: the zero
       pattern must be connected and the maximal height unique. */
    bool connected = true;
    {
        std::vector<char> mark(n, 0);
        std::vector<std::size_t> stack{0};
        if (n > 0) mark[0] = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                if (!mark[w] && C.entries[v][w] != 0) {
                    mark[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        connected = std::all_of(mark.begin(), mark.end(), [](char c) { return c != 0; });
    }
    if (connected && !rs.positive_roots.empty()) {
        const auto& top = rs.positive_roots.back();
        const bool unique =
            rs.positive_roots.size() < 2 ||
            height(rs.positive_roots[rs.positive_roots.size() - 2]) < height(top);
        if (unique) rs.highest_root = top;
    }
    return rs;
}

inline const IntVec& highest_root(const RootSystem& rs) {
    require(!rs.highest_root.empty(), Errc::NoHighestRoot,
            "no designated highest root (type reducible or not finite)");
    return rs.highest_root;
}

/* Level k weight of the extended lattice: the triple (level, finite part,
   energy).  Dominance and orbit operations act through a finite-type root
   system on the finite part. */
struct AffineWeight {
    std::int64_t level = 1;
    WeightVector finite;
    std::int64_t energy = 0;

    bool operator==(const AffineWeight&) const = default;
};

inline bool affine_dominant(const AffineWeight& w, const RootSystem& rs) {
    require(w.level >= 0, Errc::NonpositiveLevel, "level must be nonnegative");
    const IntVec f = fundamental_coords(w.finite, rs.C);
    if (!std::all_of(f.begin(), f.end(), [](std::int64_t x) { return x >= 0; })) return false;
    return rs.pair_highest_coroot(f) <= w.level;
}

/* The unique dominant representative of the orbit of w under the finite Weyl
   group extended by level-scaled lattice translations.  Translation by nu
   maps (finite, energy) to (finite + k nu, energy - (finite, nu) - k (nu,nu)/2);
   finite reflections leave the energy unchanged. */
inline AffineWeight orbit_representative(const AffineWeight& w, const RootSystem& rs) {
    require(w.level >= 1, Errc::NonpositiveLevel, "level must be positive");
    const auto& theta = highest_root(rs);
    const std::int64_t norm2 = rs.form_int(theta, theta);
    const IntVec theta_f = apply_cartan(rs.C, theta);

    IntVec f = fundamental_coords(w.finite, rs.C);
    std::int64_t n = w.energy;
    const std::int64_t k = w.level;

    for (long guard = 0;; ++guard) {
        require(guard < 1000000, Errc::NotFiniteType, "orbit normalization does not terminate");
        f = dominant_conjugate(std::move(f), rs.C);
        const std::int64_t x = rs.pair_highest_coroot(f);
        if (x <= k) break;
        /* Reflection in the level-k wall of the highest root: first reflect
           by theta, then translate by theta. */
        Rat y(0);
        for (std::size_t i = 0; i < f.size(); ++i) y += Rat(theta[i]) * rs.C.symmetrizer[i] * f[i];
        const Rat dn = -(y - Rat(x) * norm2) - Rat(k) * norm2 / 2;
        require(is_integer(dn), Errc::NonIntegerResult, "energy update is not integral");
        n += static_cast<std::int64_t>(to_integer(dn));
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += (k - x) * theta_f[i];
    }
    return AffineWeight{k, WeightVector::fundamental(std::move(f)), n};
}

/* Scaling-aware degree attached to a pair of equal-level weights:
   k (l - m) + ((lambda,lambda) - (mu,mu)) / 2 with the symmetrized form on
   finite parts. */
inline std::int64_t instanton_number(const AffineWeight& lambda, const AffineWeight& mu,
                                     const RootSystem& rs) {
    require(lambda.level == mu.level, Errc::LevelMismatch, "levels differ");
    const RatVec cl = coroot_coords(lambda.finite, rs.C);
    const RatVec cm = coroot_coords(mu.finite, rs.C);
    const Rat d = Rat(lambda.level) * (lambda.energy - mu.energy) +
                  (rs.form(cl, cl) - rs.form(cm, cm)) / 2;
    require(is_integer(d), Errc::NonIntegerResult, "instanton number is not an integer");
    return static_cast<std::int64_t>(to_integer(d));
}

}  // namespace monopole
