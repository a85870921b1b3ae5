#pragma once

#include "monopole/errors.hpp"
#include "monopole/numeric.hpp"
#include "monopole/simplex.hpp"
#include "monopole/theory.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace monopole {

enum class DomainKind {
    dominant,    // each vertex sequence nonincreasing
    partitions,  // nonincreasing and nonnegative
};

struct GoodnessReport {
    enum class Verdict { Proper, Divergent, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    /* A primitive integer ray in the domain whose exponent is <= 0, when
       divergent.  Every lattice point on it violates strict positivity. */
    std::optional<std::vector<Int>> witness;
    std::int64_t cones_checked = 0;
    DomainKind domain = DomainKind::dominant;
    std::string proxy = "strict-positivity";
    /* Exact lower bound for exponent / sup-norm over the domain, when proper.
       Unset means the domain has no nonzero rays at all. */
    std::optional<Rat> slope;
};

namespace detail {

inline RatMat domain_rows(const IntVec& dim_v, DomainKind domain) {
    const std::size_t n = static_cast<std::size_t>(
        std::accumulate(dim_v.begin(), dim_v.end(), std::int64_t{0}));
    RatMat rows;
    std::size_t off = 0;
    for (const auto m : dim_v) {
        for (std::int64_t a = 1; a < m; ++a) {
            RatVec r(n, Rat(0));
            r[off + static_cast<std::size_t>(a)] = 1;
            r[off + static_cast<std::size_t>(a) - 1] = -1;
            rows.push_back(std::move(r));  // theta_{a} <= theta_{a-1}
        }
        if (domain == DomainKind::partitions && m > 0) {
            RatVec r(n, Rat(0));
            r[off + static_cast<std::size_t>(m) - 1] = -1;
            rows.push_back(std::move(r));  // last entry >= 0
        }
        off += static_cast<std::size_t>(m);
    }
    return rows;
}

/* Scans the linearity cones of a piecewise-linear exponent intersected with
   the domain cone.  On each nonzero cone the minimum of the (there linear)
   exponent over the unit-box cross-section is computed exactly; the global
   minimum is the certified slope. */
struct ConeScan {
    const ExponentFunction& f;
    RatMat base;
    std::int64_t cap;

    bool capped = false;
    bool any_ray = false;
    std::int64_t cones = 0;
    Rat best;
    RatVec best_arg;

    ConeScan(const ExponentFunction& f_, RatMat base_, std::int64_t cap_)
        : f(f_), base(std::move(base_)), cap(cap_) {}

    void run() {
        RatVec acc(f.linear.begin(), f.linear.end());
        RatMat rows = base;
        recurse(0, rows, acc);
    }

  private:
    /* Face-by-face probe of the cone's unit cross-section.  In minimize mode
       returns true iff any face is nonempty, recording the least value. */
    bool probe(const RatMat& rows, const RatVec& acc, bool minimize) {
        const std::size_t n = f.dims();
        RatMat a_ub = rows;
        RatVec b_ub(rows.size(), Rat(0));
        for (std::size_t j = 0; j < n; ++j) {
            RatVec r(n, Rat(0));
            r[j] = 1;
            a_ub.push_back(r);
            b_ub.emplace_back(1);
            r[j] = -1;
            a_ub.push_back(std::move(r));
            b_ub.emplace_back(1);
        }
        const RatVec zero_obj(n, Rat(0));
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (const int sigma : {+1, -1}) {
                RatMat a_eq(1, RatVec(n, Rat(0)));
                a_eq[0][i] = 1;
                RatVec b_eq{Rat(sigma)};
                const LpResult res =
                    solve_lp(minimize ? acc : zero_obj, a_ub, b_ub, a_eq, b_eq);
                if (res.status != LpResult::Status::optimal) continue;
                if (!minimize) return true;
                if (!any_ray || res.value < best) {
                    best = res.value;
                    best_arg = res.x;
                }
                any_ray = true;
                found = true;
            }
        }
        return found;
    }

    void recurse(std::size_t idx, RatMat& rows, RatVec& acc) {
        if (capped) return;
        if (cones >= cap) {
            capped = true;  // this cone is not examined, so it is not counted
            return;
        }
        ++cones;
        if (idx == f.max_terms.size()) {
            probe(rows, acc, true);
            return;
        }
        /* Prune subtrees whose cone is already just the origin. */
        if (!probe(rows, acc, false)) return;

        const auto& term = f.max_terms[idx];
        RatVec pos(term.linear.size()), neg(term.linear.size());
        for (std::size_t j = 0; j < term.linear.size(); ++j) {
            pos[j] = -Rat(term.linear[j]);  // -L <= 0, i.e. L >= 0
            neg[j] = Rat(term.linear[j]);   //  L <= 0
        }

        rows.push_back(std::move(pos));
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += Rat(term.coeff) * term.linear[j];
        recurse(idx + 1, rows, acc);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] -= Rat(term.coeff) * term.linear[j];
        rows.pop_back();

        rows.push_back(std::move(neg));
        recurse(idx + 1, rows, acc);
        rows.pop_back();
    }
};

}  // namespace detail

inline constexpr std::int64_t kDefaultConeCap = 1000000;

/* Convergence analysis of a grading: Proper when the exponent is strictly
   positive on every nonzero lattice ray of the domain cone, Divergent with a
   witness ray otherwise, Inconclusive past the cone cap. */
inline GoodnessReport properness_check(const FramedTheory& T, Grading grading,
                                       const std::optional<IntVec>& alpha = std::nullopt,
                                       const ExponentOptions& opts = {},
                                       DomainKind domain = DomainKind::dominant,
                                       std::int64_t cone_cap = kDefaultConeCap) {
    T.validate();
    GoodnessReport rep;
    rep.domain = domain;
    std::optional<IntVec> a = alpha;
    if (!a && grading != Grading::homological) a = T.dim_v;  // the slice convention
    if (T.rank() == 0) {
        rep.verdict = GoodnessReport::Verdict::Proper;
        return rep;
    }
    const ExponentFunction f = build_exponent_function(T, grading, a, opts);
    detail::ConeScan scan(f, detail::domain_rows(T.dim_v, domain), cone_cap);
    scan.run();
    rep.cones_checked = scan.cones;
    if (scan.capped) {
        rep.verdict = GoodnessReport::Verdict::Inconclusive;
        return rep;
    }
    if (!scan.any_ray) {
        rep.verdict = GoodnessReport::Verdict::Proper;
        return rep;
    }
    if (scan.best > 0) {
        rep.verdict = GoodnessReport::Verdict::Proper;
        rep.slope = scan.best;
    } else {
        rep.verdict = GoodnessReport::Verdict::Divergent;
        rep.witness = primitive_ray(scan.best_arg);
    }
    return rep;
}

namespace detail {

inline void gen_rows(std::int64_t m, std::int64_t lo, std::int64_t hi, IntVec& row,
                     const std::function<void()>& emit) {
    if (static_cast<std::int64_t>(row.size()) == m) {
        emit();
        return;
    }
    const std::int64_t top = row.empty() ? hi : std::min(hi, row.back());
    for (std::int64_t v = top; v >= lo; --v) {
        row.push_back(v);
        gen_rows(m, lo, hi, row, emit);
        row.pop_back();
    }
}

template <typename Pred>
void gen_coweights(const IntVec& dim_v, std::int64_t lo, std::int64_t hi, Pred&& keep,
                   std::vector<IntVec>& out, std::int64_t item_cap) {
    IntVec flat;
    std::function<void(std::size_t)> rec = [&](std::size_t vi) {
        if (vi == dim_v.size()) {
            if (keep(flat)) {
                require(static_cast<std::int64_t>(out.size()) < item_cap, Errc::Overflow,
                        "enumeration exceeds the item cap");
                out.push_back(flat);
            }
            return;
        }
        IntVec row;
        gen_rows(dim_v[vi], lo, hi, row, [&] {
            const std::size_t base = flat.size();
            flat.insert(flat.end(), row.begin(), row.end());
            rec(vi + 1);
            flat.resize(base);
        });
    };
    rec(0);
}

}  // namespace detail

struct EnumerationOptions {
    std::optional<std::int64_t> radius_override;
    std::int64_t cone_cap = kDefaultConeCap;
    std::int64_t radius_cap = 1000000;
    std::int64_t item_cap = 20000000;
    ExponentOptions exponent;
};

struct EnumerationResult {
    std::vector<Coweight> items;  // lexicographically ascending on flattened coords
    GoodnessReport report;
    std::int64_t radius = 0;
};

namespace detail {

inline EnumerationResult enumerate_domain(const FramedTheory& T, Grading grading,
                                          const std::optional<IntVec>& alpha,
                                          std::int64_t bound2, DomainKind domain,
                                          const EnumerationOptions& opts) {
    T.validate();
    EnumerationResult res;
    std::optional<IntVec> a = alpha;
    if (!a && grading != Grading::homological) a = T.dim_v;
    res.report = properness_check(T, grading, a, opts.exponent, domain, opts.cone_cap);

    std::int64_t radius = 0;
    if (opts.radius_override) {
        require(*opts.radius_override >= 0, Errc::ShapeMismatch, "radius must be nonnegative");
        radius = *opts.radius_override;
    } else {
        require(res.report.verdict == GoodnessReport::Verdict::Proper, Errc::NotProper,
                "grading is not proper on this domain; pass a radius override to truncate");
        if (res.report.slope && bound2 > 0) {
            const Rat r = Rat(bound2) / *res.report.slope;
            const Int floor_r = boost::multiprecision::numerator(r) /
                                boost::multiprecision::denominator(r);
            require(floor_r <= opts.radius_cap, Errc::Overflow,
                    "derived search radius exceeds the radius cap");
            radius = floor_r.convert_to<std::int64_t>();
        }
    }
    res.radius = radius;

    if (T.rank() == 0) {
        if (bound2 >= 0) res.items.push_back(Coweight::zeros(T.dim_v));
        return res;
    }
    const ExponentFunction f = build_exponent_function(T, grading, a, opts.exponent);
    std::vector<IntVec> flats;
    const std::int64_t lo = domain == DomainKind::partitions ? 0 : -radius;
    detail::gen_coweights(
        T.dim_v, lo, radius, [&](const IntVec& x) { return f.eval(x) <= bound2; }, flats,
        opts.item_cap);
    std::sort(flats.begin(), flats.end());
    res.items.reserve(flats.size());
    for (auto& x : flats) res.items.push_back(Coweight::unflatten(x, T.dim_v));
    return res;
}

}  // namespace detail

/* All dominant coweights with exponent at most bound2 (doubled units).  When
   the grading is proper the list is provably complete: the exponent exceeds
   slope * |theta|_inf on the domain, which caps the search radius.  With a
   radius override the list is the exact truncation to that ball. */
inline EnumerationResult enumerate_dominant(const FramedTheory& T, Grading grading,
                                            std::int64_t bound2,
                                            const std::optional<IntVec>& alpha = std::nullopt,
                                            const EnumerationOptions& opts = {}) {
    return detail::enumerate_domain(T, grading, alpha, bound2, DomainKind::dominant, opts);
}

/* Same over tuples of partitions (nonnegative nonincreasing rows). */
inline EnumerationResult enumerate_partition_tuples(const FramedTheory& T, Grading grading,
                                                    std::int64_t bound2,
                                                    const std::optional<IntVec>& alpha = std::nullopt,
                                                    const EnumerationOptions& opts = {}) {
    return detail::enumerate_domain(T, grading, alpha, bound2, DomainKind::partitions, opts);
}

}  // namespace monopole
