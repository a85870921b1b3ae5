#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "monopole/simplex.hpp"

using namespace monopole;

using Status = LpResult::Status;

TEST_CASE("one dimensional programs") {
    // min x subject to -x <= -1  (x >= 1)
    const LpResult r = solve_lp({Rat(1)}, {{Rat(-1)}}, {Rat(-1)});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == Rat(1));
    CHECK(r.x == RatVec{Rat(1)});

    // min x with x free and unconstrained below
    CHECK(solve_lp({Rat(1)}, {}, {}).status == Status::unbounded);

    // x <= 0 and x >= 1 cannot both hold
    CHECK(solve_lp({Rat(1)}, {{Rat(1)}, {Rat(-1)}}, {Rat(0), Rat(-1)}).status ==
          Status::infeasible);
}

TEST_CASE("two dimensional vertex solution with exact rationals") {
    // min -x - y  s.t.  x + 2y <= 3, 2x + y <= 3, x,y >= 0
    const LpResult r = solve_lp({Rat(-1), Rat(-1)},
                                {{Rat(1), Rat(2)},
                                 {Rat(2), Rat(1)},
                                 {Rat(-1), Rat(0)},
                                 {Rat(0), Rat(-1)}},
                                {Rat(3), Rat(3), Rat(0), Rat(0)});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == Rat(-2));
    CHECK(r.x == RatVec{Rat(1), Rat(1)});

    // fractional optimum: min -x s.t. 3x <= 2
    const LpResult f = solve_lp({Rat(-1)}, {{Rat(3)}}, {Rat(2)});
    REQUIRE(f.status == Status::optimal);
    CHECK(f.value == Rat(-2, 3));
    CHECK(f.x == RatVec{Rat(2, 3)});
}

TEST_CASE("equality constraints") {
    // min x + y  s.t.  x + y = 2, x - y <= 0, both free
    const LpResult r =
        solve_lp({Rat(1), Rat(1)}, {{Rat(1), Rat(-1)}}, {Rat(0)}, {{Rat(1), Rat(1)}}, {Rat(2)});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == Rat(2));
    CHECK(r.x[0] + r.x[1] == Rat(2));
    CHECK(r.x[0] <= r.x[1]);

    // contradictory equalities
    CHECK(solve_lp({Rat(0), Rat(0)}, {}, {}, {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}},
                   {Rat(1), Rat(2)})
              .status == Status::infeasible);
}

TEST_CASE("free variables reach negative optima") {
    // min x  s.t.  x >= -5 (as -x <= 5)
    const LpResult r = solve_lp({Rat(1)}, {{Rat(-1)}}, {Rat(5)});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == Rat(-5));
}

TEST_CASE("degenerate constraints do not cycle") {
    // many redundant rows through the optimum
    const LpResult r = solve_lp({Rat(-1), Rat(-1)},
                                {{Rat(1), Rat(0)},
                                 {Rat(1), Rat(0)},
                                 {Rat(0), Rat(1)},
                                 {Rat(1), Rat(1)},
                                 {Rat(2), Rat(2)},
                                 {Rat(-1), Rat(0)},
                                 {Rat(0), Rat(-1)}},
                                {Rat(1), Rat(1), Rat(1), Rat(2), Rat(4), Rat(0), Rat(0)});
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == Rat(-2));
}

TEST_CASE("random feasibility problems agree with vertex enumeration") {
    // On random box-bounded 2d programs the exact optimum equals the best
    // objective over all constraint-pair intersections that are feasible.
    std::mt19937 gen(2024);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        RatMat rows{{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
        RatVec rhs{Rat(3), Rat(3), Rat(3), Rat(3)};
        for (int extra = 0; extra < 2; ++extra) {
            rows.push_back({Rat(coef(gen)), Rat(coef(gen))});
            rhs.push_back(Rat(coef(gen)));
        }
        const RatVec c{Rat(coef(gen)), Rat(coef(gen))};
        const LpResult r = solve_lp(c, rows, rhs);

        // brute force over intersection points of all row pairs
        bool any = false;
        Rat best(0);
        const auto feasible = [&](const Rat& x, const Rat& y) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][0] * x + rows[i][1] * y > rhs[i]) return false;
            }
            return true;
        };
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                const Rat det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
                if (det == 0) continue;
                const Rat x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
                const Rat y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
                if (!feasible(x, y)) continue;
                const Rat v = c[0] * x + c[1] * y;
                if (!any || v < best) best = v;
                any = true;
            }
        }
        if (r.status == Status::optimal) {
            REQUIRE(any);
            CHECK(r.value == best);
        }
        // the box makes the program bounded; feasibility of the box corner
        // check: if brute force found nothing feasible the LP must agree
        if (!any) CHECK(r.status == Status::infeasible);
    }
}
