#pragma once

#include "monopole/enumerate.hpp"
#include "monopole/errors.hpp"
#include "monopole/parallel.hpp"
#include "monopole/quiver.hpp"
#include "monopole/series.hpp"
#include "monopole/theory.hpp"
#include "monopole/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace monopole {

enum class SliceKind { finite, affine };

/* A transversal-slice label: a pair of weights over a quiver.  Finite labels
   carry weights of the quiver's own root system; affine labels carry
   level/finite-part/energy triples read through the quiver with one vertex
   marked as extending. */
struct SliceLabel {
    SliceKind kind = SliceKind::finite;
    Quiver quiver;
    std::optional<WeightVector> lambda;
    std::optional<WeightVector> mu;
    std::optional<AffineWeight> lambda_aff;
    std::optional<AffineWeight> mu_aff;
    std::optional<std::int64_t> extending;

    static SliceLabel finite_label(Quiver q, WeightVector l, WeightVector m) {
        SliceLabel s;
        s.kind = SliceKind::finite;
        s.quiver = std::move(q);
        s.lambda = std::move(l);
        s.mu = std::move(m);
        return s;
    }

    static SliceLabel affine_label(Quiver q, AffineWeight l, AffineWeight m,
                                   std::optional<std::int64_t> ext = std::nullopt) {
        SliceLabel s;
        s.kind = SliceKind::affine;
        s.quiver = std::move(q);
        s.lambda_aff = std::move(l);
        s.mu_aff = std::move(m);
        s.extending = ext;
        return s;
    }
};

/* The affine quiver dissected: kernel marks of its Cartan matrix, the
   extending vertex, and the finite root system on the remaining vertices. */
struct AffineStructure {
    CartanMatrix cartan;
    IntVec marks;
    std::size_t extending = 0;
    std::vector<std::size_t> finite_vertices;
    RootSystem roots;
    IntVec theta_f;  // highest finite root, fundamental coordinates
};

inline AffineStructure analyze_affine(const Quiver& q,
                                      std::optional<std::int64_t> ext = std::nullopt) {
    AffineStructure s;
    s.cartan = cartan_matrix(q);
    require(q.is_connected(), Errc::NotAffineType, "affine quiver must be connected");
    const auto kernel = kernel_basis(s.cartan.entries);
    require(kernel.size() == 1, Errc::NotAffineType, "Cartan matrix must have corank one");
    auto prim = primitive_ray(kernel.front());
    if (std::any_of(prim.begin(), prim.end(), [](const Int& x) { return x < 0; })) {
        for (auto& x : prim) x = -x;
    }
    s.marks.reserve(prim.size());
    for (const auto& x : prim) {
        require(x > 0, Errc::NotAffineType, "kernel vector must be strictly positive");
        s.marks.push_back(x.convert_to<std::int64_t>());
    }

    if (ext) {
        require(*ext >= 0 && *ext < static_cast<std::int64_t>(q.size()), Errc::ShapeMismatch,
                "extending vertex out of range");
        require(s.marks[static_cast<std::size_t>(*ext)] == 1, Errc::NotAffineType,
                "extending vertex must carry mark 1");
        s.extending = static_cast<std::size_t>(*ext);
    } else {
        const auto it = std::find(s.marks.begin(), s.marks.end(), std::int64_t{1});
        require(it != s.marks.end(), Errc::NotAffineType, "no vertex of mark 1");
        s.extending = static_cast<std::size_t>(it - s.marks.begin());
    }

    CartanMatrix fin;
    for (std::size_t i = 0; i < static_cast<std::size_t>(q.size()); ++i) {
        if (i == s.extending) continue;
        s.finite_vertices.push_back(i);
        fin.labels.push_back(q.vertices[i]);
        fin.symmetrizer.push_back(1);
        IntVec row;
        for (std::size_t j = 0; j < static_cast<std::size_t>(q.size()); ++j) {
            if (j != s.extending) row.push_back(s.cartan.entries[i][j]);
        }
        fin.entries.push_back(std::move(row));
    }
    s.roots = build_root_system(fin);  // also certifies finite type
    s.theta_f = apply_cartan(s.roots.C, highest_root(s.roots));
    return s;
}

namespace detail {

/* Expansion of lambda - mu in the affine simple roots, reported per quiver
   vertex.  The extending coefficient is the energy gap; the finite part must
   then be a nonnegative integer combination as well. */
inline IntVec affine_alpha(const AffineStructure& s, const AffineWeight& lambda,
                           const AffineWeight& mu) {
    require(lambda.level == mu.level, Errc::LevelMismatch, "slice weights must share a level");
    const std::int64_t c0 = lambda.energy - mu.energy;
    require(c0 >= 0, Errc::NonComparable, "weight difference is negative along delta");

    const IntVec lf = fundamental_coords(lambda.finite, s.roots.C);
    const IntVec mf = fundamental_coords(mu.finite, s.roots.C);
    require(lf.size() == mf.size(), Errc::ShapeMismatch, "finite parts differ in rank");
    IntVec diff(lf.size());
    for (std::size_t i = 0; i < lf.size(); ++i) diff[i] = lf[i] - mf[i] + c0 * s.theta_f[i];
    const RatVec c = coroot_coords(WeightVector::fundamental(diff), s.roots.C);

    IntVec dim_v(static_cast<std::size_t>(s.marks.size()), 0);
    dim_v[s.extending] = c0;
    for (std::size_t i = 0; i < s.finite_vertices.size(); ++i) {
        require(is_integer(c[i]), Errc::NonComparable,
                "weight difference is not in the root lattice");
        const Int ci = to_integer(c[i]);
        require(ci >= 0, Errc::NonComparable, "weight difference has a negative coefficient");
        dim_v[s.finite_vertices[i]] = ci.convert_to<std::int64_t>();
    }
    return dim_v;
}

}  // namespace detail

/* Dictionary from slice labels to framed quiver data: dimW from the
   fundamental coordinates of lambda, dimV from the expansion of
   lambda - mu in simple (co)roots.  Affine lambdas are first normalized to
   energy zero by a uniform shift of both weights. */
inline FramedTheory slice_to_theory(const SliceLabel& s) {
    FramedTheory T;
    T.quiver = s.quiver;
    if (s.kind == SliceKind::finite) {
        require(s.lambda && s.mu, Errc::ShapeMismatch, "finite slice label needs finite weights");
        const CartanMatrix C = cartan_matrix(s.quiver);
        require(is_dominant(*s.lambda, C), Errc::NotDominant, "lambda must be dominant");
        const DominanceResult dom = dominance_leq(*s.mu, *s.lambda, C);
        require(dom.leq, Errc::NonComparable, "mu must lie below lambda");
        T.dim_v = *dom.alpha;
        T.dim_w = fundamental_coords(*s.lambda, C);
    } else {
        require(s.lambda_aff && s.mu_aff, Errc::ShapeMismatch,
                "affine slice label needs level weights");
        const AffineStructure as = analyze_affine(s.quiver, s.extending);
        AffineWeight lambda = *s.lambda_aff;
        AffineWeight mu = *s.mu_aff;
        const std::int64_t shift = lambda.energy;
        lambda.energy = 0;
        mu.energy -= shift;
        require(affine_dominant(lambda, as.roots), Errc::NotAffineDominant,
                "lambda must be dominant at its level");
        T.dim_v = detail::affine_alpha(as, lambda, mu);
        const IntVec lf = fundamental_coords(lambda.finite, as.roots.C);
        T.dim_w.assign(static_cast<std::size_t>(s.quiver.size()), 0);
        T.dim_w[as.extending] = lambda.level - as.roots.pair_highest_coroot(lf);
        for (std::size_t i = 0; i < as.finite_vertices.size(); ++i) {
            T.dim_w[as.finite_vertices[i]] = lf[i];
        }
    }
    T.validate();
    return T;
}

/* Inverse dictionary on finite labels: lambda from dimW, mu = lambda - C dimV. */
inline SliceLabel theory_to_slice(const FramedTheory& T) {
    T.validate();
    const CartanMatrix C = cartan_matrix(T.quiver);
    const IntVec drop = apply_cartan(C, T.dim_v);
    IntVec mf(T.dim_w.size());
    for (std::size_t i = 0; i < mf.size(); ++i) mf[i] = T.dim_w[i] - drop[i];
    return SliceLabel::finite_label(T.quiver, WeightVector::fundamental(T.dim_w),
                                    WeightVector::fundamental(std::move(mf)));
}

struct EvalOptions {
    std::int64_t order2 = 0;
    std::optional<std::int64_t> radius_override;
    int threads = 1;
    ExponentOptions exponent;
    std::int64_t cone_cap = kDefaultConeCap;
    std::int64_t radius_cap = 1000000;
    std::int64_t item_cap = 20000000;
};

struct EvalResult {
    TruncatedSeries series;
    GoodnessReport report;
    std::int64_t radius = 0;
    std::int64_t summands = 0;
};

/* The monopole sum: over each enumerated cocharacter, a t-power from the
   grading exponent times the Casimir denominator expansion, optionally
   tagged by z to the component class.  Enumeration already restricts to
   exponents at most order2, so every summand contributes. */
inline EvalResult evaluate_monopole_sum(const FramedTheory& T, Grading grading,
                                        const std::optional<IntVec>& alpha, DomainKind domain,
                                        const EvalOptions& opts, bool with_z = false) {
    require(opts.order2 >= 0, Errc::InsufficientOrder, "truncation order must be nonnegative");
    EnumerationOptions eopts;
    eopts.radius_override = opts.radius_override;
    eopts.cone_cap = opts.cone_cap;
    eopts.radius_cap = opts.radius_cap;
    eopts.item_cap = opts.item_cap;
    eopts.exponent = opts.exponent;

    std::optional<IntVec> a = alpha;
    if (!a && grading != Grading::homological) a = T.dim_v;
    EnumerationResult en = detail::enumerate_domain(T, grading, a, opts.order2, domain, eopts);

    const std::size_t zc = with_z ? T.dim_v.size() : 0;
    TruncatedSeries total = parallel_map_reduce(
        en.items, TruncatedSeries::zero(opts.order2, zc),
        [&](const Coweight& theta) {
            const std::int64_t e2 = exponent(T, grading, theta, a, opts.exponent);
            const TruncatedSeries factor =
                expand_inverse_product(casimir_degrees2(theta), opts.order2 - e2);
            std::vector<std::int32_t> z(zc, 0);
            if (with_z) {
                const IntVec cls = theta.class_vector();
                for (std::size_t i = 0; i < zc; ++i) z[i] = static_cast<std::int32_t>(cls[i]);
            }
            TruncatedSeries local = TruncatedSeries::zero(opts.order2, zc);
            for (const auto& [key, c] : factor.terms) local.add_term(e2 + key.t2, z, c);
            return local;
        },
        [](TruncatedSeries& acc, TruncatedSeries part) { acc += part; }, opts.threads);

    EvalResult res;
    res.series = std::move(total);
    res.report = std::move(en.report);
    res.radius = en.radius;
    res.summands = static_cast<std::int64_t>(en.items.size());
    return res;
}

/* Hilbert series of the Coulomb branch itself (homological grading). */
inline EvalResult hilbert_series(const FramedTheory& T, const EvalOptions& opts) {
    return evaluate_monopole_sum(T, Grading::homological, std::nullopt, DomainKind::dominant,
                                 opts);
}

/* Hilbert series of a slice in the loop-rotation grading.  Works for both
   finite and affine labels; the Cartan matrix of the label's quiver enters
   the exponent, which for affine quivers is the affine Cartan matrix. */
inline EvalResult slice_hilbert_series(const SliceLabel& s, const EvalOptions& opts) {
    const FramedTheory T = slice_to_theory(s);
    return evaluate_monopole_sum(T, Grading::loop, T.dim_v, DomainKind::dominant, opts);
}

/* Multigraded character of the unframed space attached to alpha: partition
   tuples, character grading, z-variables recording the component class. */
inline EvalResult zastava_character(const Quiver& q, const IntVec& alpha,
                                    const EvalOptions& opts) {
    require(alpha.size() == static_cast<std::size_t>(q.size()), Errc::ShapeMismatch,
            "alpha must assign one coordinate per vertex");
    for (const auto x : alpha) {
        require(x >= 0, Errc::NegativeAlpha, "alpha coordinates must be nonnegative");
    }
    FramedTheory T;
    T.quiver = q;
    T.dim_v = alpha;
    T.dim_w.assign(alpha.size(), 0);
    return evaluate_monopole_sum(T, Grading::character, alpha, DomainKind::partitions, opts,
                                 true);
}

struct LeafIntervalResult {
    std::vector<WeightVector> finite_weights;  // fundamental coordinates
    std::vector<AffineWeight> affine_weights;
    bool truncated = false;
};

namespace detail {

inline void for_each_box(const IntVec& caps, std::int64_t item_cap,
                         const std::function<void(const IntVec&)>& visit) {
    IntVec b(caps.size(), 0);
    std::int64_t count = 0;
    for (;;) {
        require(++count <= item_cap, Errc::Overflow, "interval enumeration exceeds the cap");
        visit(b);
        std::size_t i = b.size();
        while (i > 0 && b[i - 1] == caps[i - 1]) {
            b[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
        ++b[i - 1];
    }
}

}  // namespace detail

/* All dominant weights between mu and lambda: the labels of the smaller
   slices meeting this one.  Affine intervals are cut at a delta-coefficient
   bound and flagged when the cut removes anything. */
inline LeafIntervalResult leaf_interval(const SliceLabel& s,
                                        std::optional<std::int64_t> energy_bound = std::nullopt,
                                        std::int64_t item_cap = 20000000) {
    LeafIntervalResult out;
    if (s.kind == SliceKind::finite) {
        require(s.lambda && s.mu, Errc::ShapeMismatch, "finite slice label needs finite weights");
        const CartanMatrix C = cartan_matrix(s.quiver);
        require(is_dominant(*s.lambda, C), Errc::NotDominant, "lambda must be dominant");
        const DominanceResult dom = dominance_leq(*s.mu, *s.lambda, C);
        require(dom.leq, Errc::NonComparable, "mu must lie below lambda");
        const IntVec lf = fundamental_coords(*s.lambda, C);
        detail::for_each_box(*dom.alpha, item_cap, [&](const IntVec& b) {
            const IntVec drop = apply_cartan(C, b);
            IntVec f(lf.size());
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = lf[i] - drop[i];
            if (std::all_of(f.begin(), f.end(), [](std::int64_t x) { return x >= 0; })) {
                out.finite_weights.push_back(WeightVector::fundamental(std::move(f)));
            }
        });
    } else {
        require(energy_bound.has_value(), Errc::MissingEnergyBound,
                "affine intervals need a delta-coefficient bound");
        require(*energy_bound >= 0, Errc::ShapeMismatch, "energy bound must be nonnegative");
        require(s.lambda_aff && s.mu_aff, Errc::ShapeMismatch,
                "affine slice label needs level weights");
        const AffineStructure as = analyze_affine(s.quiver, s.extending);
        AffineWeight lambda = *s.lambda_aff;
        AffineWeight mu = *s.mu_aff;
        const std::int64_t shift = lambda.energy;
        lambda.energy = 0;
        mu.energy -= shift;
        require(affine_dominant(lambda, as.roots), Errc::NotAffineDominant,
                "lambda must be dominant at its level");
        const IntVec alpha = detail::affine_alpha(as, lambda, mu);
        IntVec caps = alpha;
        const std::int64_t c0 = alpha[as.extending];
        out.truncated = *energy_bound < c0;
        caps[as.extending] = std::min(c0, *energy_bound);
        const IntVec lf = fundamental_coords(lambda.finite, as.roots.C);
        detail::for_each_box(caps, item_cap, [&](const IntVec& b) {
            IntVec bfin;
            bfin.reserve(as.finite_vertices.size());
            for (const auto v : as.finite_vertices) bfin.push_back(b[v]);
            const std::int64_t b0 = b[as.extending];
            const IntVec drop = apply_cartan(as.roots.C, bfin);
            IntVec f(lf.size());
            for (std::size_t i = 0; i < f.size(); ++i) {
                f[i] = lf[i] - drop[i] + b0 * as.theta_f[i];
            }
            AffineWeight cand{lambda.level, WeightVector::fundamental(std::move(f)), -b0};
            if (affine_dominant(cand, as.roots)) out.affine_weights.push_back(std::move(cand));
        });
    }
    return out;
}

}  // namespace monopole
