#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include "monopole/theory.hpp"
#include "oracles.hpp"

using namespace monopole;

namespace {

template <typename F>
std::optional<Errc> domain_error(F&& f) {
    try {
        f();
    } catch (const DomainError& e) {
        return e.code();
    }
    return std::nullopt;
}

FramedTheory sqed(std::int64_t nf) {
    FramedTheory T;
    T.quiver = Quiver({"1"}, {});
    T.dim_v = {1};
    T.dim_w = {nf};
    return T;
}

Coweight cw(std::vector<IntVec> rows) { return Coweight{std::move(rows)}; }

}  // namespace

TEST_CASE("matter degree") {
    const FramedTheory T = sqed(2);
    CHECK(d_theta(T, cw({{0}})) == 0);
    CHECK(d_theta(T, cw({{-3}})) == 6);
    CHECK(d_theta(T, cw({{5}})) == 0);

    FramedTheory A;
    A.quiver = Quiver({"1", "2"}, {{0, 1}});
    A.dim_v = {1, 1};
    A.dim_w = {0, 0};
    CHECK(d_theta(A, cw({{1}, {0}})) == 1);
    CHECK(d_theta(A, cw({{0}, {1}})) == 0);

    CHECK(domain_error([&] { d_theta(A, cw({{1}})); }) == Errc::ShapeMismatch);
}

TEST_CASE("rho pairing") {
    CHECK(two_rho_pairing(cw({{7}})) == 0);
    CHECK(two_rho_pairing(cw({{3, 1}})) == 2);
    CHECK(two_rho_pairing(cw({{2, 2, 2}})) == 0);
    CHECK(two_rho_pairing(cw({{3, 1, 0}})) == 6);
    CHECK(domain_error([] { two_rho_pairing(cw({{1, 3}})); }) == Errc::NotDominant);
}

TEST_CASE("determinant character") {
    FramedTheory edgeless;
    edgeless.quiver = Quiver({"1", "2"}, {});
    edgeless.dim_v = {1, 2};
    edgeless.dim_w = {0, 0};
    CHECK(det_character(edgeless) == IntVec{0, 0});

    FramedTheory a2;
    a2.quiver = Quiver({"1", "2"}, {{0, 1}});
    a2.dim_v = {1, 1};
    a2.dim_w = {0, 0};
    CHECK(det_character(a2) == IntVec{-1, 1});

    FramedTheory doubled;
    doubled.quiver = Quiver({"1", "2"}, {{0, 1}, {0, 1}});
    doubled.dim_v = {1, 1};
    doubled.dim_w = {0, 0};
    CHECK(det_character(doubled) == IntVec{-2, 2});
}

TEST_CASE("determinant character satisfies its defining pairing") {
    std::mt19937 gen(8127);
    for (int trial = 0; trial < 100; ++trial) {
        const FramedTheory T = oracle::random_theory(gen, 4, 2);
        const IntVec D = det_character(T);
        const Coweight theta = oracle::random_coweight(gen, T.dim_v, 5);
        std::int64_t lhs = 0;
        const IntVec cls = theta.class_vector();
        for (std::size_t i = 0; i < cls.size(); ++i) lhs += D[i] * cls[i];
        std::int64_t rhs = 0;
        for (const auto& [chi, mult] : oracle::matter_pairings(T, theta, false)) {
            rhs += chi * mult;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exponent hand values") {
    const FramedTheory T = sqed(2);
    const IntVec alpha{1};
    // loop grading: 2 max(-n,0) + n = |n| (doubled storage: 2|n|)
    for (std::int64_t n = -3; n <= 3; ++n) {
        CHECK(exponent(T, Grading::loop, cw({{n}}), alpha) == 2 * std::abs(n));
    }
    // homological grading is flat on n > 0
    CHECK(exponent(T, Grading::homological, cw({{5}}), std::nullopt) == 0);
    CHECK(exponent(T, Grading::homological, cw({{-2}}), std::nullopt) == 8);
    CHECK(exponent(T, Grading::loop, cw({{0}}), alpha) == 0);

    CHECK(domain_error([&] { exponent(T, Grading::loop, cw({{1}}), std::nullopt); }) ==
          Errc::MissingAlpha);
    CHECK(domain_error([&] { exponent(T, Grading::loop, cw({{1}}), IntVec{1, 2}); }) ==
          Errc::ShapeMismatch);
}

TEST_CASE("exponent agrees with the weight-list oracle and its symbolic form") {
    std::mt19937 gen(60601);
    for (int trial = 0; trial < 200; ++trial) {
        const FramedTheory T = oracle::random_theory(gen, 4, 2);
        const std::optional<IntVec> alpha = T.dim_v;
        const Coweight theta = oracle::random_coweight(gen, T.dim_v, 4);
        for (const auto grading :
             {Grading::homological, Grading::loop, Grading::character}) {
            for (const int sign : {+1, -1}) {
                ExponentOptions opts;
                opts.det_sign = sign;
                const std::int64_t direct = exponent(T, grading, theta, alpha, opts);
                CHECK(direct == oracle::exponent2(T, grading, alpha, theta, sign));
                const ExponentFunction f = build_exponent_function(T, grading, alpha, opts);
                CHECK(f.eval(theta.flatten()) == direct);
            }
        }
    }
}

TEST_CASE("grading differences are linear in the component class") {
    std::mt19937 gen(3321);
    for (int trial = 0; trial < 100; ++trial) {
        const FramedTheory T = oracle::random_theory(gen, 4, 2);
        const IntVec alpha = T.dim_v;
        const IntVec D = det_character(T);
        const IntVec ca = apply_cartan(cartan_matrix(T.quiver), alpha);
        const Coweight theta = oracle::random_coweight(gen, T.dim_v, 4);
        const IntVec cls = theta.class_vector();
        std::int64_t expected = 0;
        for (std::size_t i = 0; i < cls.size(); ++i) expected += (D[i] + ca[i]) * cls[i];
        CHECK(exponent(T, Grading::loop, theta, alpha) -
                  exponent(T, Grading::homological, theta, std::nullopt) ==
              expected);
    }
}

TEST_CASE("matter degree is positively homogeneous") {
    std::mt19937 gen(9099);
    for (int trial = 0; trial < 60; ++trial) {
        const FramedTheory T = oracle::random_theory(gen, 4, 2);
        const Coweight theta = oracle::random_coweight(gen, T.dim_v, 3);
        const std::int64_t base = d_theta(T, theta);
        for (std::int64_t m = 0; m <= 3; ++m) {
            Coweight scaled = theta;
            for (auto& row : scaled.rows) {
                for (auto& x : row) x *= m;
            }
            CHECK(d_theta(T, scaled) == m * base);
        }
    }
}

TEST_CASE("stabilizer factor degrees") {
    // distinct entries: all blocks have size one
    CHECK(casimir_degrees2(cw({{3, 1}, {0}})) == std::vector<std::int64_t>{2, 2, 2});
    // dimV=(2) at the origin: degrees 1 and 2, doubled
    CHECK(casimir_degrees2(cw({{0, 0}})) == std::vector<std::int64_t>{2, 4});
    CHECK(casimir_degrees2(cw({{2, 2, 1}})) == std::vector<std::int64_t>{2, 4, 2});

    const TruncatedSeries p = casimir_series(cw({{0, 0}}), 8);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(2) == 1);
    CHECK(p.coeff(4) == 2);
    CHECK(p.coeff(6) == 2);
    CHECK(p.coeff(8) == 3);

    CHECK(casimir_series(cw({{4, 2}}), 0) == TruncatedSeries::one(0, 0));
}

TEST_CASE("stabilizer factors match the counting oracle on small inputs") {
    for (std::int64_t a = -2; a <= 2; ++a) {
        for (std::int64_t b = -2; b <= 2; ++b) {
            for (std::int64_t c = -2; c <= 2; ++c) {
                IntVec row{a, b, c};
                std::sort(row.begin(), row.end(), std::greater<>());
                const Coweight theta = cw({row});
                const TruncatedSeries s = casimir_series(theta, 10);
                const auto degs = oracle::stabilizer_degrees2(theta);
                for (std::int64_t g2 = 0; g2 <= 10; ++g2) {
                    CHECK(s.coeff(g2) == oracle::count_partitions(degs, g2));
                }
            }
        }
    }
}
