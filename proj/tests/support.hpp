#pragma once

#include "gpd/gpd.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace gpd::testing {

using Rng = std::mt19937_64;
using Rational = boost::multiprecision::cpp_rational;

inline Vec random_vector(Rng& rng, Index d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(d);
    for (Index k = 0; k < d; ++k) v(k) = g(rng);
    return v;
}

inline Mat random_matrix(Rng& rng, Index rows, Index cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) m(r, c) = g(rng);
    return m;
}

inline Subspace random_subspace(Rng& rng, Index d, Index r) { return span(random_matrix(rng, d, r)); }

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Exact rank of a real matrix whose entries are small integers.
inline long long exact_rank(const Mat& m) {
    const Index rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols)));
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) a[r][c] = Rational(static_cast<long long>(std::llround(m(r, c))));
    long long rank = 0;
    for (Index c = 0; c < cols && rank < rows; ++c) {
        Index piv = -1;
        for (Index r = rank; r < rows; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        for (Index r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            const Rational factor = a[r][c] / a[rank][c];
            for (Index k = c; k < cols; ++k) a[r][k] -= factor * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Persistent Betti number from exact integer ranks:
/// dim Z(K_i) - dim(B(K_j) ∩ C(K_i)).
inline long long exact_persistent_betti(const Filtration& f, int q, int i, int j) {
    const auto& k = f.complex();
    const auto in_i = f.present(q, i);
    const long long z = static_cast<long long>(in_i.size()) - exact_rank(select_columns(boundary_matrix(k, q), in_i));
    const Mat dj = select_columns(boundary_matrix(k, q + 1), f.present(q + 1, j));
    std::vector<char> inside(static_cast<std::size_t>(k.count(q)), 0);
    for (int r : in_i) inside[r] = 1;
    Mat outside(0, dj.cols());
    for (int r = 0; r < k.count(q); ++r)
        if (!inside[r]) {
            outside.conservativeResize(outside.rows() + 1, Eigen::NoChange);
            outside.row(outside.rows() - 1) = dj.row(r);
        }
    return z - (exact_rank(dj) - exact_rank(outside));
}

/// Classical persistence diagram from exact persistent Betti numbers.
inline SegmentFunction exact_pd(const Filtration& f, int q) {
    const int n = f.n();
    auto beta = [&](int i, int j) -> long long { return i < 1 ? 0 : exact_persistent_betti(f, q, i, j); };
    SegmentFunction out;
    for (const auto& s : segments(n, OrderTag::reverse_inclusion)) {
        const int i = s.b, j = s.d;
        const long long m = s.is_infinite(n) ? beta(i, n) - beta(i - 1, n)
                                             : beta(i, j - 1) - beta(i - 1, j - 1) + beta(i - 1, j) - beta(i, j);
        if (m != 0) out[s] = m;
    }
    return out;
}

struct FiltrationOptions {
    int min_vertices = 2;
    int max_vertices = 8;
    int max_steps = 6;
    int max_dim = 3;
    bool connected = false;
};

/// Random filtration: random simplices closed under faces, each entering at
/// a random step no earlier than its faces.
inline Filtration random_filtration(Rng& rng, const FiltrationOptions& o = {}) {
    const int nv = uniform(rng, o.min_vertices, o.max_vertices);
    const int n = uniform(rng, 1, o.max_steps);
    std::vector<std::string> names;
    for (int v = 0; v < nv; ++v) names.push_back(std::string(1, static_cast<char>('a' + v)));
    std::vector<Simplex> tops;
    const int picks = nv < 2 ? 0 : uniform(rng, 1, 2 * nv);
    for (int p = 0; p < picks; ++p) {
        const int size = uniform(rng, 2, std::min(nv, o.max_dim + 1));
        std::vector<int> verts(static_cast<std::size_t>(nv));
        std::iota(verts.begin(), verts.end(), 0);
        std::shuffle(verts.begin(), verts.end(), rng);
        verts.resize(static_cast<std::size_t>(size));
        tops.push_back(verts);
    }
    for (int v = 0; v < nv; ++v) tops.push_back({v});
    if (o.connected)
        for (int v = 1; v < nv; ++v) tops.push_back({uniform(rng, 0, v - 1), v});
    const SimplicialComplex k = SimplicialComplex::closure(names, tops);

    std::vector<std::vector<int>> entry(static_cast<std::size_t>(k.dim() + 1));
    for (int q = 0; q <= k.dim(); ++q)
        for (const auto& s : k.simplices(q)) {
            int t = uniform(rng, 1, n);
            for (std::size_t drop = 0; q > 0 && drop < s.size(); ++drop)
                t = std::max(t, entry[q - 1][k.index_of(SimplicialComplex::facet(s, drop))]);
            entry[q].push_back(t);
        }
    std::vector<double> values;
    double v = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    for (int i = 0; i < n; ++i) {
        values.push_back(v);
        v += std::uniform_real_distribution<double>(0.25, 2.0)(rng);
    }
    return Filtration(LinearMetricPoset(values), k, entry);
}

/// Components of the graph on `alive` by breadth-first search.
inline std::vector<std::vector<int>> bfs_components(int nv, const std::vector<int>& alive,
                                                    const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nv));
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> comp(static_cast<std::size_t>(nv), -1);
    std::vector<std::vector<int>> out;
    for (int s : alive) {
        if (comp[s] != -1) continue;
        std::vector<int> block;
        std::queue<int> todo;
        todo.push(s);
        comp[s] = static_cast<int>(out.size());
        while (!todo.empty()) {
            const int u = todo.front();
            todo.pop();
            block.push_back(u);
            for (int w : adj[u])
                if (comp[w] == -1) {
                    comp[w] = comp[s];
                    todo.push(w);
                }
        }
        std::sort(block.begin(), block.end());
        out.push_back(std::move(block));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Random ultrametric from random merges at increasing heights; returns the
/// matrix of merge heights.
inline Mat random_ultrametric(Rng& rng, int points) {
    std::vector<std::vector<int>> clusters;
    for (int p = 0; p < points; ++p) clusters.push_back({p});
    Mat u = Mat::Zero(points, points);
    double h = 0.0;
    while (clusters.size() > 1) {
        h += std::uniform_int_distribution<int>(1, 3)(rng) * 0.5;
        const int merges = uniform(rng, 1, static_cast<int>(clusters.size()) - 1);
        for (int m = 0; m < merges && clusters.size() > 1; ++m) {
            std::shuffle(clusters.begin(), clusters.end(), rng);
            auto a = clusters.back();
            clusters.pop_back();
            for (int x : a)
                for (int y : clusters.back()) u(x, y) = u(y, x) = h;
            clusters.back().insert(clusters.back().end(), a.begin(), a.end());
        }
    }
    return u;
}

/// Random monotone left adjoint with f(first) = first, and its right adjoint
/// g(q) = max{p : f(p) <= q}.
inline GaloisConnection random_galois_connection(Rng& rng, int n1, int n2) {
    auto values = [&](int n) {
        std::vector<double> v;
        double x = uniform(rng, -3, 3);
        for (int k = 0; k < n; ++k) v.push_back(x += uniform(rng, 1, 3) * 0.5);
        return LinearMetricPoset(v);
    };
    LinearMetricPoset p = values(n1), q = values(n2);
    std::vector<int> f{0};
    for (int k = 1; k < n1; ++k) f.push_back(uniform(rng, f.back(), n2 - 1));
    std::vector<int> g;
    for (int b = 0; b < n2; ++b) {
        int best = 0;
        for (int a = 0; a < n1; ++a)
            if (f[a] <= b) best = a;
        g.push_back(best);
    }
    return {{p, q, f}, {q, p, g}};
}

/// Random transverse family on product-ordered segments.
inline SegmentDiagram random_gpd(Rng& rng, int n, Index d) {
    SegmentDiagram g(LinearMetricPoset([&] {
                         std::vector<double> v;
                         for (int k = 0; k < n; ++k) v.push_back(k);
                         return v;
                     }()),
                     OrderTag::product, d);
    auto segs = segments(n, OrderTag::product);
    std::shuffle(segs.begin(), segs.end(), rng);
    Mat basis = random_matrix(rng, d, d);
    Index used = 0;
    for (const auto& s : segs) {
        const Index r = std::min<Index>(uniform(rng, 0, 2), d - used);
        if (r == 0) continue;
        g.set(s, span(basis.middleCols(used, r)));
        used += r;
    }
    return g;
}

/// Largest |cos| between v and any vector of the one-dimensional subspace s.
inline double cosine(const Subspace& s, const Vec& v) {
    if (s.rank() != 1) return 0.0;
    return std::abs(s.basis().col(0).dot(v)) / v.norm();
}

}  // namespace gpd::testing
