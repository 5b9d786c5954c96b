#pragma once

#include "gpd/diagrams.hpp"
#include "gpd/invariants.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace gpd {

/// 𝓗_q(K) = Z_q(K) ⊖ B_q(K).
inline Subspace harmonic_space(const SimplicialComplex& k, int q, double tol = kDefaultTol) {
    return ominus(cycles(k, q, tol), boundaries(k, q, tol));
}

/// 𝓗_q(K_i) inside C_q^K; K_0 is empty.
inline Subspace harmonic_space_at(const Filtration& f, int q, int i, double tol = kDefaultTol) {
    return ominus(cycles_at(f, q, i, tol), boundaries_at(f, q, i, tol));
}

/// γ^{i,j}: 𝓗(K_i) -> 𝓗(K_j), v ↦ proj_{B(K_j)^⊥} v. `matrix` is expressed
/// in the orthonormal bases of source and target.
struct HarmonicMap {
    Subspace source;
    Subspace target;
    Mat matrix;
};

inline HarmonicMap harmonic_transition(const Filtration& f, int q, int i, int j, double tol = kDefaultTol) {
    if (i < 1 || j < i || j > f.n()) throw std::invalid_argument("harmonic_transition: complexes are not nested");
    HarmonicMap g{harmonic_space_at(f, q, i, tol), harmonic_space_at(f, q, j, tol), Mat()};
    const Subspace bj = boundaries_at(f, q, j, tol);
    Mat img = g.source.basis() - bj.basis() * (bj.basis().transpose() * g.source.basis());
    g.matrix = g.target.basis().transpose() * img;
    return g;
}

struct HarmonicCell {
    Segment seg;
    Subspace Mtilde;
    Subspace Ntilde;
    Subspace calM;
    Subspace calN;
    Subspace calP;
};

/// Harmonic barcode cells over Seg minus the diagonal. Conventions: 𝓗^{0,j}
/// is {0}; for j = ∞ the map γ^{i,∞} is zero, so 𝓜^{i,∞} = 𝓗(K_i) and
/// 𝒩^{i,∞} = 𝓜^{i,n}.
class HarmonicBarcode {
public:
    HarmonicBarcode(const Filtration& f, int q, double tol = kDefaultTol) : n_(f.n()), tol_(tol) {
        ambient_ = f.complex().count(q);
        h_.push_back(Subspace::zero(ambient_, tol));
        b_.push_back(Subspace::zero(ambient_, tol));
        for (int i = 1; i <= n_; ++i) {
            b_.push_back(boundaries_at(f, q, i, tol));
            h_.push_back(ominus(cycles_at(f, q, i, tol), b_[i]));
        }
        for (const auto& s : segments(n_, OrderTag::reverse_inclusion)) {
            HarmonicCell c;
            c.seg = s;
            c.calM = calM(s.b, s.d);
            c.calN = calM(s.b, s.is_infinite(n_) ? n_ : s.d - 1);
            c.calP = ominus(c.calM, c.calN);
            c.Mtilde = sum(c.calM, b_[s.b]);
            c.Ntilde = sum(c.calN, b_[s.b]);
            cells_.emplace(s, std::move(c));
        }
    }

    int n() const { return n_; }
    const std::map<Segment, HarmonicCell>& cells() const { return cells_; }
    const HarmonicCell& at(const Segment& s) const { return cells_.at(s); }
    const Subspace& harmonic(int i) const { return h_.at(static_cast<std::size_t>(i)); }

    /// Im γ^{i,j} as a subspace of C_q^K; {0} when i = 0 or j = ∞.
    Subspace image(int i, int j) const {
        if (i == 0 || j == n_ + 1) return Subspace::zero(ambient_, tol_);
        return span(gamma(i, j), tol_);
    }

    /// 𝓜^{i,j} = (γ^{i,j})^{-1}(Im γ^{i-1,j}) ⊆ 𝓗(K_i).
    Subspace calM(int i, int j) const {
        if (j == n_ + 1) return h_[i];
        const Subspace target = image(i - 1, j);
        Mat g = gamma(i, j);
        Mat residual = g - target.basis() * (target.basis().transpose() * g);
        const Subspace coeffs = null_space(residual, tol_);
        return span(h_[i].basis() * coeffs.basis(), tol_);
    }

private:
    /// proj_{B(K_j)^⊥} applied to the basis of 𝓗(K_i), in ambient coordinates.
    Mat gamma(int i, int j) const {
        const Mat& hb = h_[i].basis();
        const Mat& bb = b_[j].basis();
        return hb - bb * (bb.transpose() * hb);
    }

    int n_;
    double tol_;
    Index ambient_ = 0;
    std::vector<Subspace> h_;
    std::vector<Subspace> b_;
    std::map<Segment, HarmonicCell> cells_;
};

inline std::map<Segment, HarmonicCell> harmonic_barcode(const Filtration& f, int q, double tol = kDefaultTol) {
    return HarmonicBarcode(f, q, tol).cells();
}

/// proj_{𝒩^⊥} maps the diagram entry onto 𝒫 with full rank.
inline bool check_projection_isomorphism(const Subspace& entry, const HarmonicCell& cell,
                                         double check_tol = kCheckTol) {
    if (entry.rank() != cell.calP.rank()) return false;
    if (entry.is_zero()) return true;
    const Mat& nb = cell.calN.basis();
    Mat img = entry.basis() - nb * (nb.transpose() * entry.basis());
    const Subspace image = span(img, entry.tol());
    if (image.rank() != entry.rank()) return false;
    return image.residual_in(cell.calP) <= check_tol;
}

inline bool check_projection_isomorphism(const Filtration& f, int q, const Segment& s, double tol = kDefaultTol) {
    if (s.is_diagonal()) throw std::invalid_argument("check_projection_isomorphism: need i < j");
    const SegmentDiagram g = gpd_birth_death(f, q, tol);
    return check_projection_isomorphism(g.at(s), HarmonicBarcode(f, q, tol).at(s));
}

}  // namespace gpd
