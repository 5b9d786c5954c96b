#pragma once

#include "gpd/subspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpd {

/// Strictly increasing vertex indices.
using Simplex = std::vector<int>;

/// Finite simplicial complex over a globally ordered vertex set. Simplices of
/// each dimension are kept lex-sorted; their position is the chain coordinate.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Simplices are given by vertex index; each is sorted on ingestion.
    /// Throws if a face is missing or an index is out of range.
    SimplicialComplex(std::vector<std::string> vertex_names, std::vector<Simplex> simplices)
        : names_(std::move(vertex_names)) {
        std::vector<std::set<Simplex>> by_dim;
        for (auto s : simplices) {
            if (s.empty()) throw std::invalid_argument("empty simplex");
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw std::invalid_argument("simplex with repeated vertex");
            for (int v : s)
                if (v < 0 || v >= static_cast<int>(names_.size()))
                    throw std::invalid_argument("vertex index out of range");
            const std::size_t q = s.size() - 1;
            if (by_dim.size() <= q) by_dim.resize(q + 1);
            by_dim[q].insert(std::move(s));
        }
        for (const auto& layer : by_dim) simplices_.emplace_back(layer.begin(), layer.end());
        index_.resize(simplices_.size());
        for (std::size_t q = 0; q < simplices_.size(); ++q)
            for (std::size_t k = 0; k < simplices_[q].size(); ++k)
                index_[q].emplace(simplices_[q][k], static_cast<int>(k));
        for (std::size_t q = 1; q < simplices_.size(); ++q)
            for (const auto& s : simplices_[q])
                for (std::size_t drop = 0; drop < s.size(); ++drop)
                    if (index_of(facet(s, drop)) < 0)
                        throw std::invalid_argument("complex is not closed under faces: missing a face of " +
                                                    label(s));
    }

    /// Closes the given simplices under faces.
    static SimplicialComplex closure(std::vector<std::string> vertex_names, const std::vector<Simplex>& simplices) {
        std::set<Simplex> all;
        for (auto s : simplices) {
            std::sort(s.begin(), s.end());
            const int k = static_cast<int>(s.size());
            for (int mask = 1; mask < (1 << k); ++mask) {
                Simplex f;
                for (int b = 0; b < k; ++b)
                    if (mask & (1 << b)) f.push_back(s[b]);
                all.insert(std::move(f));
            }
        }
        return SimplicialComplex(std::move(vertex_names), {all.begin(), all.end()});
    }

    int dim() const { return static_cast<int>(simplices_.size()) - 1; }
    int vertex_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& vertex_names() const { return names_; }

    /// n_q; zero for q outside [0, dim].
    int count(int q) const {
        if (q < 0 || q > dim()) return 0;
        return static_cast<int>(simplices_[q].size());
    }

    const std::vector<Simplex>& simplices(int q) const {
        static const std::vector<Simplex> none;
        if (q < 0 || q > dim()) return none;
        return simplices_[q];
    }

    int index_of(const Simplex& s) const {
        if (s.empty() || static_cast<int>(s.size()) - 1 > dim()) return -1;
        const auto& m = index_[s.size() - 1];
        auto it = m.find(s);
        return it == m.end() ? -1 : it->second;
    }

    std::string label(const Simplex& s) const {
        std::string out;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (k && !single_char_names()) out += ' ';
            out += names_[s[k]];
        }
        return out;
    }

    static Simplex facet(const Simplex& s, std::size_t drop) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t k = 0; k < s.size(); ++k)
            if (k != drop) f.push_back(s[k]);
        return f;
    }

private:
    bool single_char_names() const {
        return std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
    }

    std::vector<std::string> names_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<Simplex, int>> index_;
};

/// Matrix of ∂_q : C_q -> C_{q-1}, n_{q-1} x n_q, with entry (-1)^i at the
/// row of the facet omitting vertex i.
inline Mat boundary_matrix(const SimplicialComplex& k, int q) {
    Mat m = Mat::Zero(k.count(q - 1), k.count(q));
    if (q <= 0) return m;
    const auto& cols = k.simplices(q);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < cols[c].size(); ++i)
            m(k.index_of(SimplicialComplex::facet(cols[c], i)), static_cast<Index>(c)) = (i % 2 == 0) ? 1.0 : -1.0;
    return m;
}

inline Mat adjoint_boundary(const SimplicialComplex& k, int q) { return boundary_matrix(k, q).transpose(); }

inline Mat select_columns(const Mat& m, const std::vector<int>& cols) {
    Mat out(m.rows(), static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Index>(c)) = m.col(cols[c]);
    return out;
}

/// ker of the columns `cols` of ∂_q, zero-padded into C_q.
inline Subspace cycles_on(const Mat& boundary_q, const std::vector<int>& cols, double tol = kDefaultTol) {
    return embed(null_space(select_columns(boundary_q, cols), tol), cols, boundary_q.cols());
}

/// Image of the columns `cols` of ∂_{q+1}.
inline Subspace boundaries_on(const Mat& boundary_q1, const std::vector<int>& cols, double tol = kDefaultTol) {
    return span(select_columns(boundary_q1, cols), tol);
}

inline Subspace cycles(const SimplicialComplex& k, int q, double tol = kDefaultTol) {
    if (q < 0) throw std::invalid_argument("negative degree");
    return null_space(boundary_matrix(k, q), tol);
}

inline Subspace boundaries(const SimplicialComplex& k, int q, double tol = kDefaultTol) {
    if (q < 0) throw std::invalid_argument("negative degree");
    return span(boundary_matrix(k, q + 1), tol);
}

}  // namespace gpd
