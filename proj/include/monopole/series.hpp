#pragma once

#include "monopole/errors.hpp"
#include "monopole/numeric.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace monopole {

/* Exponents are stored in half-steps: the integer 2x stands for t^x.  This
   keeps every grading integral, including the ones that genuinely live in
   half-integers.  The `order2` bound is inclusive and in the same doubled
   units. */
struct SeriesKey {
    std::int64_t t2 = 0;
    std::vector<std::int32_t> z;

    auto operator<=>(const SeriesKey&) const = default;
};

struct TruncatedSeries {
    std::int64_t order2 = 0;
    std::size_t zcount = 0;
    std::map<SeriesKey, Int> terms;

    static TruncatedSeries zero(std::int64_t order2, std::size_t zcount = 0) {
        TruncatedSeries s;
        s.order2 = order2;
        s.zcount = zcount;
        return s;
    }

    static TruncatedSeries one(std::int64_t order2, std::size_t zcount = 0) {
        TruncatedSeries s = zero(order2, zcount);
        s.terms.emplace(SeriesKey{0, std::vector<std::int32_t>(zcount, 0)}, Int(1));
        return s;
    }

    void add_term(std::int64_t t2, std::vector<std::int32_t> z, const Int& c) {
        require(z.size() == zcount, Errc::VariableMismatch, "wrong number of variables");
        if (t2 > order2 || c == 0) return;
        SeriesKey key{t2, std::move(z)};
        auto [it, inserted] = terms.emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    void add_term(std::int64_t t2, const Int& c) {
        add_term(t2, std::vector<std::int32_t>(zcount, 0), c);
    }

    Int coeff(std::int64_t t2, const std::vector<std::int32_t>& z) const {
        auto it = terms.find(SeriesKey{t2, z});
        return it == terms.end() ? Int(0) : it->second;
    }

    Int coeff(std::int64_t t2) const { return coeff(t2, std::vector<std::int32_t>(zcount, 0)); }

    /* Coefficient of t^(t2/2) summed over all z-monomials. */
    Int coeff_t_total(std::int64_t t2) const {
        Int s(0);
        for (auto it = terms.lower_bound(SeriesKey{t2, {}}); it != terms.end() && it->first.t2 == t2;
             ++it) {
            s += it->second;
        }
        return s;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        require(zcount == o.zcount, Errc::VariableMismatch, "adding series in different variables");
        order2 = std::min(order2, o.order2);
        for (const auto& [k, c] : o.terms) {
            if (k.t2 > order2) continue;
            auto [it, inserted] = terms.emplace(k, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) terms.erase(it);
            }
        }
        /* Drop terms beyond a possibly reduced order. */
        for (auto it = terms.begin(); it != terms.end();) {
            it = it->first.t2 > order2 ? terms.erase(it) : std::next(it);
        }
        return *this;
    }

    bool operator==(const TruncatedSeries&) const = default;
};

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require(a.zcount == b.zcount, Errc::VariableMismatch, "multiplying series in different variables");
    TruncatedSeries r = TruncatedSeries::zero(std::min(a.order2, b.order2), a.zcount);
    for (const auto& [ka, ca] : a.terms) {
        if (ka.t2 > r.order2) continue;
        for (const auto& [kb, cb] : b.terms) {
            const std::int64_t t2 = ka.t2 + kb.t2;
            if (t2 > r.order2) continue;
            std::vector<std::int32_t> z(a.zcount);
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = ka.z[i] + kb.z[i];
            r.add_term(t2, std::move(z), ca * cb);
        }
    }
    return r;
}

/* Taylor expansion of prod_d 1/(1 - t^(d/2)) over the given doubled degrees. */
inline TruncatedSeries expand_inverse_product(const std::vector<std::int64_t>& degrees2,
                                              std::int64_t order2) {
    require(order2 >= 0, Errc::InsufficientOrder, "order must be nonnegative");
    std::vector<Int> dp(static_cast<std::size_t>(order2) + 1, Int(0));
    dp[0] = 1;
    for (const std::int64_t d : degrees2) {
        require(d > 0, Errc::NonpositiveDegree, "inverse-product degree must be positive");
        if (d > order2) continue;
        for (std::int64_t e = d; e <= order2; ++e) {
            dp[static_cast<std::size_t>(e)] += dp[static_cast<std::size_t>(e - d)];
        }
    }
    TruncatedSeries s = TruncatedSeries::zero(order2, 0);
    for (std::int64_t e = 0; e <= order2; ++e) {
        if (dp[static_cast<std::size_t>(e)] != 0) s.add_term(e, {}, dp[static_cast<std::size_t>(e)]);
    }
    return s;
}

/* Integer growth order of the coefficient partial sums: the degree d at
   which an exact polynomial fit (zero regression residual) first beats
   degree d-1.  Quasi-polynomial sums become honest polynomials on any
   arithmetic progression whose step is a multiple of the period, so steps
   are tried in increasing order and the degree is read off the first
   progression whose exact difference table stabilizes.  Sums with no
   polynomial window at all fall back to the sharpest least-squares residual
   drop over the top half of the support points. */
inline std::int64_t growth_dimension_estimate(const TruncatedSeries& s) {
    require(s.zcount == 0, Errc::VariableMismatch, "estimate requires a single-variable series");
    std::vector<std::pair<std::int64_t, Int>> sums;
    Int acc(0);
    for (const auto& [k, c] : s.terms) {
        require(c > 0, Errc::NonIntegerResult, "estimate requires nonnegative coefficients");
        acc += c;
        sums.emplace_back(k.t2, acc);
    }
    bool all_equal = true;
    for (const auto& [x, v] : sums) all_equal = all_equal && v == sums.front().second;
    if (all_equal) return 0;  // constants, or empty
    require(s.order2 >= 40, Errc::InsufficientOrder, "need truncation order at least 20");
    const std::size_t m = sums.size();
    require(m >= 8, Errc::InsufficientOrder, "need at least 8 support points");

    /* Partial sum up to an arbitrary exponent. */
    const auto sum_at = [&](std::int64_t x) -> Int {
        auto it = std::upper_bound(
            sums.begin(), sums.end(), x,
            [](std::int64_t v, const std::pair<std::int64_t, Int>& p) { return v < p.first; });
        if (it == sums.begin()) return Int(0);
        return std::prev(it)->second;
    };

    /* A constancy window must span more than the largest support gap, or a
       plateau between sparse support points masquerades as stabilization. */
    std::int64_t gap = sums.front().first;
    for (std::size_t i = 1; i < m; ++i) gap = std::max(gap, sums[i].first - sums[i - 1].first);

    const std::int64_t xmax = s.order2;
    for (std::int64_t step = 1; 6 * step <= xmax; ++step) {
        std::vector<Int> table;
        for (std::int64_t x = xmax; x >= 0; x -= step) table.push_back(sum_at(x));
        const auto window = static_cast<std::size_t>(std::max<std::int64_t>(6, 2 * gap / step + 2));
        for (std::int64_t d = 0; table.size() >= 3; ++d) {
            const std::size_t probe = std::min<std::size_t>(window, table.size());
            bool constant = true;
            for (std::size_t i = 1; i < probe; ++i) {
                constant = constant && table[i] == table[0];
            }
            if (constant) return d;  // exact polynomial of degree d on this progression
            std::vector<Int> next;
            for (std::size_t i = 0; i + 1 < table.size(); ++i) {
                next.push_back(table[i] - table[i + 1]);
            }
            table = std::move(next);
        }
    }

    const std::size_t half = (m + 1) / 2;
    const std::size_t first = m - half;
    std::vector<Rat> xs(half), ys(half);
    for (std::size_t i = 0; i < half; ++i) {
        xs[i] = Rat(sums[first + i].first);
        ys[i] = Rat(sums[first + i].second);
    }

    const std::int64_t dmax =
        std::min<std::int64_t>(s.order2 / 4, static_cast<std::int64_t>(half) - 2);
    auto residual = [&](std::int64_t d) {
        const std::size_t k = static_cast<std::size_t>(d) + 1;
        RatMat g(k, RatVec(k, Rat(0)));
        RatVec rhs(k, Rat(0));
        for (std::size_t p = 0; p < half; ++p) {
            RatVec pow(2 * k - 1, Rat(1));
            for (std::size_t q = 1; q < pow.size(); ++q) pow[q] = pow[q - 1] * xs[p];
            for (std::size_t a = 0; a < k; ++a) {
                rhs[a] += ys[p] * pow[a];
                for (std::size_t b = 0; b < k; ++b) g[a][b] += pow[a + b];
            }
        }
        auto coef = solve_linear(std::move(g), std::move(rhs));
        require(coef.has_value(), Errc::InsufficientOrder, "degenerate regression system");
        Rat r2(0);
        for (std::size_t p = 0; p < half; ++p) {
            Rat fit(0), xp(1);
            for (std::size_t a = 0; a < k; ++a) {
                fit += (*coef)[a] * xp;
                xp *= xs[p];
            }
            const Rat e = ys[p] - fit;
            r2 += e * e;
        }
        return r2;
    };

    Rat prev = residual(0);
    if (prev == 0) return 0;
    std::int64_t best = 0;
    Rat best_ratio(-1);
    for (std::int64_t d = 1; d <= dmax; ++d) {
        const Rat r = residual(d);
        if (r == 0) return d;  // exact fit strictly better than d-1
        const Rat ratio = prev / r;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = d;
        }
        prev = r;
    }
    return best;
}

/* Canonical text format:
     # units=half order=<order2> vars=t[,z1..zr]
     <t2> <z...> <coeff>
   lines sorted by (t2, z) lexicographically, exponents in doubled units. */
inline void write_series(std::ostream& os, const TruncatedSeries& s) {
    os << "# units=half order=" << s.order2 << " vars=t";
    for (std::size_t i = 1; i <= s.zcount; ++i) os << (i == 1 ? "," : ",") << "z" << i;
    os << "\n";
    for (const auto& [k, c] : s.terms) {
        os << k.t2;
        for (const auto zi : k.z) os << " " << zi;
        os << " " << c << "\n";
    }
}

inline std::string series_to_string(const TruncatedSeries& s) {
    std::ostringstream os;
    write_series(os, s);
    return os.str();
}

inline TruncatedSeries read_series(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw InputError("empty series file");
    std::istringstream hs(header);
    std::string hash, units, order, vars;
    hs >> hash >> units >> order >> vars;
    if (hash != "#" || units != "units=half" || order.rfind("order=", 0) != 0 ||
        vars.rfind("vars=t", 0) != 0) {
        throw InputError("bad series header: " + header);
    }
    TruncatedSeries s;
    try {
        s.order2 = std::stoll(order.substr(6));
    } catch (const std::exception&) {
        throw InputError("bad series order: " + order);
    }
    s.zcount = std::count(vars.begin(), vars.end(), ',');
    std::string line;
    std::int64_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::int64_t t2 = 0;
        if (!(ls >> t2)) throw InputError("bad series line " + std::to_string(lineno));
        std::vector<std::int32_t> z(s.zcount, 0);
        for (auto& zi : z) {
            if (!(ls >> zi)) throw InputError("bad series line " + std::to_string(lineno));
        }
        std::string cs;
        if (!(ls >> cs)) throw InputError("bad series line " + std::to_string(lineno));
        std::string tail;
        if (ls >> tail) throw InputError("trailing data on series line " + std::to_string(lineno));
        try {
            s.add_term(t2, std::move(z), Int(cs));
        } catch (const std::exception&) {
            throw InputError("bad coefficient on series line " + std::to_string(lineno));
        }
    }
    return s;
}

}  // namespace monopole
