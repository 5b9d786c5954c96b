#pragma once

#include "gpd/diagrams.hpp"
#include "gpd/filtration.hpp"
#include "gpd/inversion.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpd {

struct TreegramEvent {
    double t = 0.0;
    std::vector<int> alive;
    std::vector<std::vector<int>> blocks;

    bool operator==(const TreegramEvent&) const = default;
};

/// Sub-partitions of a vertex set indexed by increasing event times.
struct Treegram {
    std::vector<std::string> vertices;
    std::vector<TreegramEvent> events;

    bool operator==(const Treegram&) const = default;
};

/// Sorts vertices within blocks and blocks by their least vertex.
inline void normalize(TreegramEvent& e) {
    for (auto& b : e.blocks) std::sort(b.begin(), b.end());
    std::sort(e.blocks.begin(), e.blocks.end());
    std::sort(e.alive.begin(), e.alive.end());
}

inline void validate(const Treegram& t) {
    const int nv = static_cast<int>(t.vertices.size());
    if (t.events.empty()) throw std::invalid_argument("treegram has no events");
    std::vector<int> owner_prev;
    for (std::size_t k = 0; k < t.events.size(); ++k) {
        const auto& e = t.events[k];
        if (k > 0 && !(t.events[k - 1].t < e.t)) throw std::invalid_argument("treegram times must increase");
        std::vector<int> owner(static_cast<std::size_t>(nv), -1);
        std::size_t covered = 0;
        for (std::size_t b = 0; b < e.blocks.size(); ++b) {
            if (e.blocks[b].empty()) throw std::invalid_argument("treegram has an empty block");
            for (int v : e.blocks[b]) {
                if (v < 0 || v >= nv) throw std::invalid_argument("treegram vertex out of range");
                if (owner[v] != -1) throw std::invalid_argument("treegram vertex in two blocks");
                owner[v] = static_cast<int>(b);
                ++covered;
            }
        }
        std::set<int> alive(e.alive.begin(), e.alive.end());
        if (alive.size() != covered || alive.size() != e.alive.size())
            throw std::invalid_argument("treegram blocks do not partition the alive set");
        for (int v : alive)
            if (v < 0 || v >= nv || owner[v] == -1) throw std::invalid_argument("treegram blocks do not partition the alive set");
        if (k > 0) {
            std::map<int, int> image;
            for (int v = 0; v < nv; ++v) {
                if (owner_prev[v] == -1) continue;
                if (owner[v] == -1) throw std::invalid_argument("treegram vertex disappears");
                auto [it, fresh] = image.emplace(owner_prev[v], owner[v]);
                if (!fresh && it->second != owner[v]) throw std::invalid_argument("treegram partitions do not coarsen");
            }
        }
        owner_prev = std::move(owner);
    }
    const auto& last = t.events.back();
    if (last.blocks.size() != 1 || static_cast<int>(last.alive.size()) != nv)
        throw std::invalid_argument("treegram does not end in a single block containing every vertex");
}

/// Index (1-based) of the first event at which v is alive.
inline int birth_index(const Treegram& t, int v) {
    for (std::size_t k = 0; k < t.events.size(); ++k)
        if (std::binary_search(t.events[k].alive.begin(), t.events[k].alive.end(), v)) return static_cast<int>(k) + 1;
    throw std::invalid_argument("vertex never alive");
}

inline double birth_time(const Treegram& t, int v) { return t.events[birth_index(t, v) - 1].t; }

namespace detail {

inline std::vector<std::vector<int>> components(int nv, const std::vector<int>& alive,
                                                const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> rank(static_cast<std::size_t>(nv), 0), parent(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) parent[v] = v;
    boost::disjoint_sets<int*, int*> ds(rank.data(), parent.data());
    for (auto [u, v] : edges) ds.union_set(u, v);
    std::map<int, std::vector<int>> groups;
    for (int v : alive) groups[ds.find_set(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

}  // namespace detail

/// One event per poset value: the vertex set of K_i and its components.
inline Treegram treegram_of_filtration(const Filtration& f) {
    const auto& k = f.complex();
    Treegram t{k.vertex_names(), {}};
    for (int i = 1; i <= f.n(); ++i) {
        TreegramEvent e;
        e.t = f.poset().value(i);
        for (int v : f.present(0, i)) e.alive.push_back(k.simplices(0)[v][0]);
        std::vector<std::pair<int, int>> edges;
        for (int c : f.present(1, i)) edges.emplace_back(k.simplices(1)[c][0], k.simplices(1)[c][1]);
        e.blocks = detail::components(k.vertex_count(), e.alive, edges);
        normalize(e);
        t.events.push_back(std::move(e));
    }
    const auto& last = t.events.back();
    if (last.blocks.size() != 1)
        throw std::invalid_argument("final complex is disconnected (" + std::to_string(last.blocks.size()) +
                                    " components); treegrams need a connected complex");
    return t;
}

namespace detail {

inline Vec centroid(const std::vector<int>& ys, Index nv) {
    Vec c = Vec::Zero(nv);
    for (int y : ys) c(y) += 1.0;
    return c / static_cast<double>(ys.size());
}

}  // namespace detail

/// Degree-0 diagram read off a treegram: centroid differences of merging
/// blocks, ephemeral points against the merged centroid, and the indicator of
/// the first vertex set on (b_0,∞).
inline SegmentDiagram treegram_to_gpd(const Treegram& t, double tol = kDefaultTol) {
    validate(t);
    const int n = static_cast<int>(t.events.size());
    const Index nv = static_cast<Index>(t.vertices.size());
    std::vector<double> times;
    for (const auto& e : t.events) times.push_back(e.t);
    std::vector<int> born(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) born[v] = birth_index(t, v);

    std::map<Segment, std::vector<Vec>> gens;
    for (int d = 1; d <= n; ++d) {
        const auto& cur = t.events[d - 1];
        for (const auto& block : cur.blocks) {
            std::vector<std::vector<int>> parts;
            if (d > 1)
                for (const auto& prev : t.events[d - 2].blocks)
                    if (std::binary_search(block.begin(), block.end(), prev.front())) parts.push_back(prev);
            std::vector<int> merged;
            for (const auto& p : parts) merged.insert(merged.end(), p.begin(), p.end());
            std::sort(merged.begin(), merged.end());

            if (parts.empty()) {
                const Vec c = detail::centroid(block, nv);
                for (int v : block) gens[{d, d}].push_back(Vec::Unit(nv, v) - c);
                continue;
            }
            const Vec cm = detail::centroid(merged, nv);
            for (int v : block)
                if (!std::binary_search(merged.begin(), merged.end(), v)) gens[{d, d}].push_back(Vec::Unit(nv, v) - cm);
            if (parts.size() < 2) continue;

            auto birth_of = [&](const std::vector<int>& y) {
                int b = n + 1;
                for (int v : y) b = std::min(b, born[v]);
                return b;
            };
            std::sort(parts.begin(), parts.end(), [&](const auto& x, const auto& y) {
                const int bx = birth_of(x), by = birth_of(y);
                return bx != by ? bx < by : x.front() < y.front();
            });
            std::vector<int> pb;
            std::vector<Vec> c;
            for (const auto& p : parts) {
                pb.push_back(birth_of(p));
                std::vector<int> r;
                for (int v : p)
                    if (born[v] == pb.back()) r.push_back(v);
                c.push_back(detail::centroid(r, nv));
            }
            std::size_t k = 1;
            while (k < parts.size() && pb[k] == pb[0]) ++k;
            for (std::size_t l = 1; l < k; ++l) gens[{pb[0], d}].push_back(c[l] - c[0]);
            for (std::size_t j = k; j < parts.size(); ++j) {
                std::vector<int> older;
                for (std::size_t jp = 0; jp < parts.size(); ++jp)
                    if (pb[jp] < pb[j])
                        for (int v : parts[jp])
                            if (born[v] <= pb[j]) older.push_back(v);
                gens[{pb[j], d}].push_back(c[j] - detail::centroid(older, nv));
            }
        }
    }
    int first = 1;
    while (t.events[first - 1].alive.empty()) ++first;
    Vec ind = Vec::Zero(nv);
    for (int v : t.events[first - 1].alive) ind(v) = 1.0;
    gens[{first, n + 1}].push_back(ind);

    SegmentDiagram out(LinearMetricPoset(times), OrderTag::product, nv, tol);
    for (const auto& [s, vs] : gens) out.set(s, orthonormalize(vs, nv, tol));
    return out;
}

/// Recovers the treegram from a degree-0 diagram: downset sums give ZB_0,
/// ZB_0((i,∞)) = Z_0(K_i) gives the vertex set and ZB_0((i,i)) = B_0(K_i)
/// the components.
inline Treegram gpd_to_treegram(const SegmentDiagram& g, const std::vector<std::string>& vertex_names,
                                double check_tol = kCheckTol) {
    const int n = g.n();
    const Index nv = static_cast<Index>(vertex_names.size());
    if (g.order() != OrderTag::product) throw std::invalid_argument("gpd_to_treegram: diagram must be product-ordered");
    if (g.ambient() != nv) throw std::invalid_argument("gpd_to_treegram: ambient dimension differs from vertex count");
    if (!is_transverse(g.family())) throw std::invalid_argument("gpd_to_treegram: diagram entries are not transverse");
    const SegmentDiagram zb = downset_sums(g);
    if (auto why = intersection_monotone_violation(zb, check_tol))
        throw std::invalid_argument("gpd_to_treegram: downset sums are not intersection-monotone: " + *why);
    if (max_residual(prhi(zb, false, false), g) > check_tol)
        throw std::invalid_argument("gpd_to_treegram: diagram is not the orthogonal inverse of its downset sums");

    Treegram t{vertex_names, {}};
    for (int i = 1; i <= n; ++i) {
        TreegramEvent e;
        e.t = g.poset().value(i);
        const Subspace z = zb.at({i, n + 1});
        for (int v = 0; v < nv; ++v)
            if (z.distance(Vec::Unit(nv, v)) <= check_tol) e.alive.push_back(v);
        if (static_cast<Index>(e.alive.size()) != z.rank())
            throw std::invalid_argument("gpd_to_treegram: cycle space at " + std::to_string(i) +
                                        " is not spanned by vertices");
        const Subspace b = zb.at({i, i});
        std::vector<std::pair<int, int>> edges;
        for (std::size_t x = 0; x < e.alive.size(); ++x)
            for (std::size_t y = x + 1; y < e.alive.size(); ++y)
                if (b.distance(Vec::Unit(nv, e.alive[x]) - Vec::Unit(nv, e.alive[y])) <= check_tol)
                    edges.emplace_back(e.alive[x], e.alive[y]);
        e.blocks = detail::components(static_cast<int>(nv), e.alive, edges);
        if (static_cast<Index>(e.alive.size() - e.blocks.size()) != b.rank())
            throw std::invalid_argument("gpd_to_treegram: boundary space at " + std::to_string(i) +
                                        " is not spanned by vertex differences");
        normalize(e);
        t.events.push_back(std::move(e));
    }
    validate(t);
    return t;
}

struct Ultrametric {
    std::vector<std::string> names;
    Mat u;
    /// Every point is present at the first event, so u is recovered exactly.
    bool dendrogram = true;
};

inline bool is_ultrametric(const Mat& u, double tol = 0.0) {
    const Index n = u.rows();
    if (u.cols() != n) return false;
    for (Index x = 0; x < n; ++x) {
        if (u(x, x) != 0.0) return false;
        for (Index y = 0; y < n; ++y) {
            if (u(x, y) < 0.0 || u(x, y) != u(y, x)) return false;
            for (Index z = 0; z < n; ++z)
                if (u(x, z) > std::max(u(x, y), u(y, z)) + tol) return false;
        }
    }
    return true;
}

/// u(x,y) = first event time at which x and y share a block.
inline Ultrametric ultrametric_from_treegram(const Treegram& t) {
    validate(t);
    const Index nv = static_cast<Index>(t.vertices.size());
    Ultrametric out{t.vertices, Mat::Zero(nv, nv), static_cast<Index>(t.events.front().alive.size()) == nv};
    std::vector<std::vector<char>> done(static_cast<std::size_t>(nv), std::vector<char>(static_cast<std::size_t>(nv), 0));
    for (const auto& e : t.events)
        for (const auto& b : e.blocks)
            for (int x : b)
                for (int y : b)
                    if (x != y && !done[x][y]) {
                        out.u(x, y) = e.t;
                        done[x][y] = 1;
                    }
    return out;
}

/// Vietoris-Rips filtration of an ultrametric up to edges.
inline Filtration vr_of_ultrametric(const Ultrametric& u) { return vietoris_rips(u.u, 1, u.names); }

}  // namespace gpd
