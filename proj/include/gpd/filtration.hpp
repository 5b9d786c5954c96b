#pragma once

#include "gpd/complex.hpp"
#include "gpd/poset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpd {

/// Monotone map from a linear poset into subcomplexes of K, recorded as the
/// entry index (1..n) of every simplex of K.
class Filtration {
public:
    Filtration() = default;

    Filtration(LinearMetricPoset poset, SimplicialComplex k, std::vector<std::vector<int>> entry)
        : poset_(std::move(poset)), k_(std::move(k)), entry_(std::move(entry)) {
        entry_.resize(static_cast<std::size_t>(k_.dim() + 1));
        for (int q = 0; q <= k_.dim(); ++q) {
            if (static_cast<int>(entry_[q].size()) != k_.count(q))
                throw std::invalid_argument("entry table does not match the complex in degree " + std::to_string(q));
            for (int t : entry_[q])
                if (t < 1 || t > n()) throw std::invalid_argument("entry index out of range");
        }
        for (int q = 1; q <= k_.dim(); ++q)
            for (int c = 0; c < k_.count(q); ++c) {
                const Simplex& s = k_.simplices(q)[c];
                for (std::size_t drop = 0; drop < s.size(); ++drop)
                    if (this->entry(q - 1, k_.index_of(SimplicialComplex::facet(s, drop))) > entry_[q][c])
                        throw std::invalid_argument("face enters after coface " + k_.label(s));
            }
    }

    /// Builds K from the listed simplices; every face must be listed too.
    static Filtration from_simplices(LinearMetricPoset poset, std::vector<std::string> names,
                                     const std::vector<std::pair<Simplex, int>>& simplices) {
        std::vector<Simplex> all;
        for (const auto& [s, t] : simplices) all.push_back(s);
        SimplicialComplex k(std::move(names), all);
        std::vector<std::vector<int>> entry(static_cast<std::size_t>(k.dim() + 1));
        for (int q = 0; q <= k.dim(); ++q) entry[q].assign(static_cast<std::size_t>(k.count(q)), 0);
        for (auto [s, t] : simplices) {
            std::sort(s.begin(), s.end());
            int& slot = entry[s.size() - 1][k.index_of(s)];
            if (slot != 0 && slot != t) throw std::invalid_argument("simplex " + k.label(s) + " listed twice");
            slot = t;
        }
        return Filtration(std::move(poset), std::move(k), std::move(entry));
    }

    const LinearMetricPoset& poset() const { return poset_; }
    int n() const { return poset_.size(); }
    const SimplicialComplex& complex() const { return k_; }
    int entry(int q, int k) const { return entry_[q][k]; }

    /// Indices of the q-simplices of K_i; K_0 is empty.
    std::vector<int> present(int q, int i) const {
        std::vector<int> out;
        for (int c = 0; c < k_.count(q); ++c)
            if (entry_[q][c] <= i) out.push_back(c);
        return out;
    }

    int count(int q, int i) const { return static_cast<int>(present(q, i).size()); }

private:
    LinearMetricPoset poset_;
    SimplicialComplex k_;
    std::vector<std::vector<int>> entry_;
};

/// Vietoris-Rips filtration: a simplex enters at the largest pairwise distance
/// among its vertices; poset values are the distinct entry values.
inline Filtration vietoris_rips(const Mat& dist, int max_dim, std::vector<std::string> names = {}) {
    const int n = static_cast<int>(dist.rows());
    if (dist.cols() != n) throw std::invalid_argument("distance matrix must be square");
    if (n == 0) throw std::invalid_argument("distance matrix is empty");
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    const double scale = std::max(1.0, dist.cwiseAbs().maxCoeff());
    for (int a = 0; a < n; ++a) {
        if (dist(a, a) != 0.0) throw std::invalid_argument("distance matrix must have a zero diagonal");
        for (int b = 0; b < n; ++b) {
            if (!(dist(a, b) >= 0.0)) throw std::invalid_argument("distance matrix has a negative entry");
            if (std::abs(dist(a, b) - dist(b, a)) > 1e-12 * scale)
                throw std::invalid_argument("distance matrix is not symmetric");
        }
    }
    if (names.empty())
        for (int a = 0; a < n; ++a) names.push_back(std::to_string(a));
    if (static_cast<int>(names.size()) != n) throw std::invalid_argument("name count does not match matrix size");

    std::vector<std::pair<Simplex, double>> found;
    Simplex cur;
    auto grow = [&](auto&& self, int next, double diam) -> void {
        if (!cur.empty()) found.emplace_back(cur, diam);
        if (static_cast<int>(cur.size()) == max_dim + 1) return;
        for (int v = next; v < n; ++v) {
            double d = diam;
            for (int u : cur) d = std::max(d, dist(u, v));
            cur.push_back(v);
            self(self, v + 1, d);
            cur.pop_back();
        }
    };
    grow(grow, 0, 0.0);

    std::vector<double> values;
    for (const auto& f : found) values.push_back(f.second);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    LinearMetricPoset poset(values);
    std::vector<std::pair<Simplex, int>> simplices;
    for (const auto& [s, v] : found) simplices.emplace_back(s, poset.index_of(v));
    return Filtration::from_simplices(std::move(poset), std::move(names), simplices);
}

}  // namespace gpd
