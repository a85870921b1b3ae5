#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include "monopole/quiver.hpp"
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

}  // namespace

TEST_CASE("quiver validation") {
    CHECK_NOTHROW(Quiver({"a", "b"}, {{0, 1}, {0, 1}}));
    CHECK(domain_error([] { Quiver({"a"}, {{0, 0}}); }) == Errc::EdgeLoop);
    CHECK(domain_error([] { Quiver({"a", "b"}, {{0, 2}}); }) == Errc::ShapeMismatch);
    CHECK(domain_error([] { Quiver({"a", "a"}, {}); }) == Errc::ShapeMismatch);
    CHECK(Quiver({"a", "b", "c"}, {{0, 1}}).is_connected() == false);
    CHECK(Quiver({"a", "b", "c"}, {{0, 1}, {2, 1}}).is_connected());
    CHECK(Quiver({}, {}).is_connected());
}

TEST_CASE("cartan matrix of a quiver") {
    const Quiver a2({"1", "2"}, {{0, 1}});
    const CartanMatrix c = cartan_matrix(a2);
    CHECK(c.entries == IntMat{{2, -1}, {-1, 2}});
    CHECK(c.symmetrizer == IntVec{1, 1});

    const Quiver aff({"0", "1"}, {{0, 1}, {0, 1}});
    CHECK(cartan_matrix(aff).entries == IntMat{{2, -2}, {-2, 2}});

    // orientation is irrelevant
    const Quiver a2rev({"1", "2"}, {{1, 0}});
    CHECK(cartan_matrix(a2rev).entries == cartan_matrix(a2).entries);
}

TEST_CASE("finite type recognition") {
    CHECK(cartan_matrix(Quiver({"1"}, {})).is_finite_type());
    CHECK(cartan_matrix(Quiver({"1", "2", "3"}, {{0, 1}, {1, 2}})).is_finite_type());
    CHECK(cartan_matrix(Quiver({"1", "2", "3", "4"}, {{0, 1}, {1, 2}, {1, 3}})).is_finite_type());
    CHECK_FALSE(cartan_matrix(Quiver({"0", "1"}, {{0, 1}, {0, 1}})).is_finite_type());
    CHECK_FALSE(
        cartan_matrix(Quiver({"0", "1", "2"}, {{0, 1}, {1, 2}, {2, 0}})).is_finite_type());
}

TEST_CASE("folding the A3 chain by its flip") {
    // arrows oriented 1->2<-3 so that the flip (1<->3) is an automorphism
    const Quiver a3({"1", "2", "3"}, {{0, 1}, {2, 1}});
    const CartanMatrix c = fold(a3, {2, 1, 0});
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries == IntMat{{2, -1}, {-2, 2}});
    CHECK(c.symmetrizer == IntVec{2, 1});
    CHECK(c.is_finite_type());

    // symmetrizer * C is symmetric
    const IntMat g = c.gram();
    CHECK(g[0][1] == g[1][0]);
}

TEST_CASE("folding D4 by the rotation of its outer vertices") {
    // center vertex last; outer arrows all point inward
    const Quiver d4({"a", "b", "c", "z"}, {{0, 3}, {1, 3}, {2, 3}});
    const CartanMatrix c = fold(d4, {1, 2, 0, 3});
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries == IntMat{{2, -1}, {-3, 2}});
    CHECK(c.symmetrizer == IntVec{3, 1});
    CHECK(c.is_finite_type());
}

TEST_CASE("folding with the identity returns the plain cartan matrix") {
    const Quiver a3({"1", "2", "3"}, {{0, 1}, {1, 2}});
    const CartanMatrix folded = fold(a3, {0, 1, 2});
    CHECK(folded.entries == cartan_matrix(a3).entries);
    CHECK(folded.symmetrizer == IntVec{1, 1, 1});
}

TEST_CASE("fold rejects bad permutations") {
    const Quiver a2({"1", "2"}, {{0, 1}});
    // the flip reverses the arrow, which is not present
    CHECK(domain_error([&] { fold(a2, {1, 0}); }) == Errc::NotAutomorphism);

    // two parallel arrows are flip-symmetric but join one orbit
    const Quiver aff({"0", "1"}, {{0, 1}, {1, 0}});
    CHECK(domain_error([&] { fold(aff, {1, 0}); }) == Errc::ArrowInsideOrbit);

    // not a permutation at all
    CHECK(domain_error([&] { fold(a2, {0, 0}); }) == Errc::NotAutomorphism);
}

TEST_CASE("cartan matrices of random quivers are symmetric with diagonal 2") {
    std::mt19937 gen(20240811);
    for (int trial = 0; trial < 120; ++trial) {
        const Quiver q = oracle::random_connected_quiver(gen, 5);
        const CartanMatrix c = cartan_matrix(q);
        const int n = q.size();
        for (int i = 0; i < n; ++i) {
            CHECK(c.entries[i][i] == 2);
            for (int j = 0; j < n; ++j) {
                CHECK(c.entries[i][j] == c.entries[j][i]);
                if (i != j) CHECK(c.entries[i][j] == -q.edges_between(i, j));
            }
        }
        // identity folding reproduces the matrix and a trivial symmetrizer
        std::vector<int> id(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
        const CartanMatrix f = fold(q, id);
        CHECK(f.entries == c.entries);
        // gram = symmetrizer * C stays symmetric
        const IntMat g = f.gram();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) CHECK(g[i][j] == g[j][i]);
        }
    }
}

TEST_CASE("folded gram matrices are symmetric for nontrivial automorphisms") {
    // star quivers with k symmetric legs, rotated
    for (int legs = 2; legs <= 4; ++legs) {
        std::vector<std::string> names{"z"};
        std::vector<std::pair<int, int>> arrows;
        for (int l = 1; l <= legs; ++l) {
            names.push_back("p" + std::to_string(l));
            arrows.emplace_back(l, 0);
        }
        const Quiver q(names, arrows);
        std::vector<int> rot(names.size());
        rot[0] = 0;
        for (int l = 1; l <= legs; ++l) rot[static_cast<std::size_t>(l)] = 1 + (l % legs);
        const CartanMatrix c = fold(q, rot);
        REQUIRE(c.entries.size() == 2);
        const IntMat g = c.gram();
        CHECK(g[0][1] == g[1][0]);
        CHECK(c.entries[0][0] == 2);
        CHECK(c.entries[1][1] == 2);
    }
}
