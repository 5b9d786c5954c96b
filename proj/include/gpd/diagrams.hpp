#pragma once

#include "gpd/invariants.hpp"
#include "gpd/inversion.hpp"

#include <stdexcept>
#include <string>

namespace gpd {

/// Raised when a rank decision produces an impossible integer (for example a
/// negative multiplicity). Carries the offending segment.
class NumericalRankError : public std::runtime_error {
public:
    NumericalRankError(const Segment& s, int n, const std::string& what)
        : std::runtime_error(what + " at segment " + s.str(n)), segment(s) {}
    Segment segment;
};

/// prhi(ZB_q^F).
inline SegmentDiagram gpd_birth_death(const Filtration& f, int q, double tol = kDefaultTol, unsigned threads = 1) {
    return prhi(zb_diagram(f, q, tol, threads), false, true, threads);
}

/// rhi(LK_q^F), returned on the product-ordered domain with {0} on the diagonal.
inline SegmentDiagram gpd_laplacian(const Filtration& f, int q, double tol = kDefaultTol, unsigned threads = 1,
                                    bool eigen_check = false) {
    const SegmentDiagram r = rhi(lk_diagram(f, q, tol, threads, eigen_check), threads);
    SegmentDiagram out(f.poset(), OrderTag::product, r.ambient(), tol);
    for (const auto& [s, v] : r.entries()) out.set(s, v);
    return out;
}

enum class PdMethod { dims, betti };

/// Classical persistence diagram as segment multiplicities. `dims` reads the
/// ranks of the birth-death route (diagonal included); `betti` uses the
/// alternating sum of persistent Betti numbers (diagonal is 0).
inline SegmentFunction classical_pd(const Filtration& f, int q, PdMethod method, double tol = kDefaultTol,
                                    unsigned threads = 1) {
    const int n = f.n();
    SegmentFunction out;
    if (method == PdMethod::dims) {
        const SegmentDiagram zb = zb_diagram(f, q, tol, threads);
        const SegmentDiagram g = prhi(zb, false, true, threads);
        const SegmentFunction expect = mobius_inverse_int(dims(zb), n, OrderTag::product);
        for (const auto& s : segments(n, OrderTag::product)) {
            const long long m = value_at(expect, s);
            if (m < 0) throw NumericalRankError(s, n, "negative Mobius multiplicity " + std::to_string(m));
            if (m != g.dim(s))
                throw NumericalRankError(s, n, "rank of inverted entry (" + std::to_string(g.dim(s)) +
                                                   ") differs from Mobius multiplicity (" + std::to_string(m) + ")");
            if (m != 0) out[s] = m;
        }
        return out;
    }
    std::vector<std::vector<long long>> beta(static_cast<std::size_t>(n + 1),
                                             std::vector<long long>(static_cast<std::size_t>(n + 2), 0));
    std::vector<Subspace> z(static_cast<std::size_t>(n + 1)), b(static_cast<std::size_t>(n + 1));
    for (int i = 1; i <= n; ++i) {
        z[i] = cycles_at(f, q, i, tol);
        b[i] = boundaries_at(f, q, i, tol);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) beta[i][j] = z[i].rank() - intersect(z[i], b[j]).rank();
    for (const auto& s : segments(n, OrderTag::reverse_inclusion)) {
        const int i = s.b, j = s.d;
        const long long m = s.is_infinite(n) ? beta[i][n] - beta[i - 1][n]
                                             : beta[i][j - 1] - beta[i - 1][j - 1] + beta[i - 1][j] - beta[i][j];
        if (m < 0) throw NumericalRankError(s, n, "negative persistence multiplicity " + std::to_string(m));
        if (m != 0) out[s] = m;
    }
    return out;
}

/// Largest mutual-projection residual between two diagrams over their shared
/// domain (+inf on a rank mismatch).
inline double max_residual(const SegmentDiagram& a, const SegmentDiagram& b, bool off_diagonal_only = false) {
    if (!(a.poset() == b.poset()) || a.ambient() != b.ambient())
        throw std::invalid_argument("max_residual: diagrams live on different domains");
    double worst = 0.0;
    for (const auto& s : segments(a.n(), OrderTag::product)) {
        if (off_diagonal_only && s.is_diagonal()) continue;
        worst = std::max(worst, residual(a.at(s), b.at(s)));
    }
    return worst;
}

/// True iff z ∈ ZB(seg) and z ∉ Σ_{I <× seg} ZB(I).
inline bool lifetime_check(const Vec& z, const Filtration& f, int q, const Segment& seg, double tol = kDefaultTol,
                           double check_tol = kCheckTol) {
    const double norm = z.norm();
    if (norm == 0.0) throw std::invalid_argument("lifetime_check: zero chain");
    if (z.size() != f.complex().count(q)) throw std::invalid_argument("lifetime_check: chain has wrong length");
    if (!is_valid_segment(seg, f.n(), OrderTag::product)) throw std::invalid_argument("lifetime_check: bad segment");
    const SegmentDiagram zb = zb_diagram(f, q, tol);
    if (zb.at(seg).distance(z) > check_tol * norm) return false;
    std::vector<Subspace> below;
    for (const auto& s : zb.domain())
        if (s != seg && leq_product(s, seg)) below.push_back(zb.at(s));
    return sum(below, zb.ambient(), tol).distance(z) > check_tol * norm;
}

inline SegmentDiagram add(const SegmentDiagram& a, const SegmentDiagram& b) {
    if (!(a.poset() == b.poset()) || a.ambient() != b.ambient() || a.order() != b.order())
        throw std::invalid_argument("add: diagrams live on different domains");
    SegmentDiagram out = a;
    for (const auto& [s, v] : b.entries()) out.set(s, sum(out.at(s), v));
    return out;
}

/// (f, ζ) is transversity-preserving from M to N: ζ is transversal to N and
/// the pushforward of M along the left adjoint is Möbius-equivalent to N + ζ.
inline bool check_transversity_morphism(const SegmentDiagram& m, const SegmentDiagram& n, const GaloisConnection& conn,
                                        const SegmentDiagram& zeta, double check_tol = kCheckTol) {
    if (!check_galois(conn)) throw std::invalid_argument("check_transversity_morphism: invalid Galois connection");
    for (const auto& [s, v] : zeta.entries())
        if (!s.is_diagonal()) throw std::invalid_argument("check_transversity_morphism: zeta is not diagonal");
    if (!families_transversal(zeta.family(), n.family())) return false;
    return mobius_equivalent(pushforward(conn.left, m), add(n, zeta), check_tol);
}

}  // namespace gpd
