#pragma once

#include "monopole/errors.hpp"
#include "monopole/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace monopole {

/* A finite directed graph without self-arrows.  Vertices carry string ids;
   all other code refers to vertices by their position in `vertices`, which
   fixes the total order used everywhere (coordinates, Cartan rows, series
   variables). */
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> arrows;  // (tail index, head index)

    Quiver() = default;
    Quiver(std::vector<std::string> vs, std::vector<std::pair<int, int>> as)
        : vertices(std::move(vs)), arrows(std::move(as)) {
        validate();
    }

    int size() const { return static_cast<int>(vertices.size()); }

    void validate() const {
        for (const auto& [t, h] : arrows) {
            require(t >= 0 && t < size() && h >= 0 && h < size(), Errc::ShapeMismatch,
                    "arrow endpoint out of range");
            require(t != h, Errc::EdgeLoop,
                    "self-arrow at vertex " + vertices[static_cast<std::size_t>(t)]);
        }
        std::map<std::string, int> seen;
        for (const auto& v : vertices) {
            require(++seen[v] == 1, Errc::ShapeMismatch, "duplicate vertex id " + v);
        }
    }

    /* Number of arrows between i and j in either direction. */
    int edges_between(int i, int j) const {
        int m = 0;
        for (const auto& [t, h] : arrows) {
            if ((t == i && h == j) || (t == j && h == i)) ++m;
        }
        return m;
    }

    bool is_connected() const {
        if (vertices.empty()) return true;
        std::vector<char> seen(vertices.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [t, h] : arrows) {
                int w = -1;
                if (t == v) w = h;
                if (h == v) w = t;
                if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }
};

/* A generalized Cartan matrix with a diagonal symmetrizer: diag(symmetrizer)
   times entries is symmetric.  Quiver-derived matrices are symmetric with
   symmetrizer all ones; folding produces the non-symmetric ones. */
struct CartanMatrix {
    IntMat entries;
    IntVec symmetrizer;
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(entries.size()); }

    void validate() const {
        const std::size_t n = entries.size();
        require(symmetrizer.size() == n, Errc::ShapeMismatch, "symmetrizer size mismatch");
        for (const auto& row : entries) {
            require(row.size() == n, Errc::ShapeMismatch, "Cartan matrix not square");
        }
        for (std::size_t i = 0; i < n; ++i) {
            require(entries[i][i] == 2, Errc::ShapeMismatch, "Cartan diagonal must be 2");
            require(symmetrizer[i] >= 1, Errc::ShapeMismatch, "symmetrizer must be positive");
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    require(entries[i][j] <= 0, Errc::ShapeMismatch,
                            "off-diagonal Cartan entries must be nonpositive");
                    require((entries[i][j] == 0) == (entries[j][i] == 0), Errc::ShapeMismatch,
                            "Cartan zero pattern must be symmetric");
                }
                require(symmetrizer[i] * entries[i][j] == symmetrizer[j] * entries[j][i],
                        Errc::ShapeMismatch, "symmetrizer does not symmetrize");
            }
        }
    }

    /* Symmetrized Gram matrix in the simple-root basis. */
    IntMat gram() const {
        IntMat g(entries.size(), IntVec(entries.size(), 0));
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = 0; j < entries.size(); ++j) {
                g[i][j] = symmetrizer[i] * entries[i][j];
            }
        }
        return g;
    }

    /* Positive definiteness of the symmetrized matrix, by leading principal
       minors.  This is the finite-type criterion. */
    bool is_finite_type() const {
        RatMat g = rat_matrix(gram());
        const std::size_t n = g.size();
        Rat det(1);
        for (std::size_t k = 0; k < n; ++k) {
            if (g[k][k] == 0) {
                std::size_t piv = k + 1;
                while (piv < n && g[piv][k] == 0) ++piv;
                if (piv == n) return false;
                std::swap(g[piv], g[k]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const Rat f = g[i][k] / g[k][k];
                for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
            }
            det = g[k][k];
            if (det <= 0) return false;
        }
        return true;
    }
};

/* Cartan matrix of the underlying graph: 2 on the diagonal, minus the number
   of edges (either orientation) off it. */
inline CartanMatrix cartan_matrix(const Quiver& q) {
    q.validate();
    const int n = q.size();
    CartanMatrix c;
    c.entries.assign(static_cast<std::size_t>(n), IntVec(static_cast<std::size_t>(n), 0));
    c.symmetrizer.assign(static_cast<std::size_t>(n), 1);
    c.labels = q.vertices;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            c.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (i == j) ? 2 : -q.edges_between(i, j);
        }
    }
    return c;
}

/* Vertex orbits of a permutation, ordered by least member; members ascending. */
inline std::vector<std::vector<int>> permutation_orbits(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<char> seen(sigma.size(), 0);
    std::vector<std::vector<int>> orbits;
    for (int v = 0; v < n; ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        std::vector<int> orbit;
        int w = v;
        while (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            orbit.push_back(w);
            w = sigma[static_cast<std::size_t>(w)];
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

/* Folds the Cartan matrix of q along a quiver automorphism sigma (image by
   vertex index).  Rows and columns are indexed by sigma-orbits ordered by
   least vertex; the entry at (orbit a, orbit b) pairs a fixed representative
   of a against the sum over b, which reproduces the standard folding tables.
   The symmetrizer records orbit sizes. */
inline CartanMatrix fold(const Quiver& q, const std::vector<int>& sigma) {
    q.validate();
    const int n = q.size();
    require(static_cast<int>(sigma.size()) == n, Errc::ShapeMismatch, "permutation size mismatch");
    {
        std::vector<char> hit(sigma.size(), 0);
        for (int v : sigma) {
            require(v >= 0 && v < n, Errc::ShapeMismatch, "permutation image out of range");
            require(!hit[static_cast<std::size_t>(v)], Errc::NotAutomorphism,
                    "not a permutation of the vertices");
            hit[static_cast<std::size_t>(v)] = 1;
        }
    }
    auto mapped = q.arrows;
    for (auto& [t, h] : mapped) {
        t = sigma[static_cast<std::size_t>(t)];
        h = sigma[static_cast<std::size_t>(h)];
    }
    auto key = [](std::vector<std::pair<int, int>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    require(key(mapped) == key(q.arrows), Errc::NotAutomorphism,
            "permutation does not preserve the arrow multiset");

    const auto orbits = permutation_orbits(sigma);
    std::vector<int> orbit_of(static_cast<std::size_t>(n), -1);
    for (std::size_t a = 0; a < orbits.size(); ++a) {
        for (int v : orbits[a]) orbit_of[static_cast<std::size_t>(v)] = static_cast<int>(a);
    }
    for (const auto& [t, h] : q.arrows) {
        require(orbit_of[static_cast<std::size_t>(t)] != orbit_of[static_cast<std::size_t>(h)],
                Errc::ArrowInsideOrbit, "arrow joins two vertices of one orbit");
    }

    const CartanMatrix c = cartan_matrix(q);
    CartanMatrix folded;
    const std::size_t m = orbits.size();
    folded.entries.assign(m, IntVec(m, 0));
    folded.symmetrizer.assign(m, 1);
    for (std::size_t a = 0; a < m; ++a) {
        std::string label = q.vertices[static_cast<std::size_t>(orbits[a][0])];
        for (std::size_t i = 1; i < orbits[a].size(); ++i) {
            label += "+" + q.vertices[static_cast<std::size_t>(orbits[a][i])];
        }
        folded.labels.push_back(label);
        folded.symmetrizer[a] = static_cast<std::int64_t>(orbits[a].size());
        const int rep = orbits[a][0];
        for (std::size_t b = 0; b < m; ++b) {
            std::int64_t sum = 0;
            for (int j : orbits[b]) {
                sum += c.entries[static_cast<std::size_t>(rep)][static_cast<std::size_t>(j)];
            }
            folded.entries[a][b] = sum;
        }
    }
    folded.validate();
    return folded;
}

}  // namespace monopole
