#pragma once

#include "gpd/invariants.hpp"
#include "gpd/parallel.hpp"
#include "gpd/poset.hpp"
#include "gpd/segment_diagram.hpp"

#include <stdexcept>
#include <vector>

namespace gpd {

namespace detail {

inline Subspace prhi_entry_fast(const SegmentDiagram& d, const Segment& s) {
    const int n = d.n(), i = s.b;
    std::vector<Subspace> below;
    if (s.is_diagonal()) {
        if (i > 1) below.push_back(d.at({i - 1, i}));
    } else if (s.is_infinite(n)) {
        if (i > 1) below.push_back(d.at({i - 1, n + 1}));
        below.push_back(d.at({i, n}));
    } else {
        if (i > 1) below.push_back(d.at({i - 1, s.d}));
        below.push_back(d.at({i, s.d - 1}));
    }
    return ominus(d.at(s), sum(below, d.ambient(), d.tol()));
}

inline Subspace prhi_entry_literal(const SegmentDiagram& d, const Segment& s) {
    const int n = d.n(), i = s.b;
    const Subspace zero = Subspace::zero(d.ambient(), d.tol());
    if (s.is_diagonal()) return i == 1 ? d.at(s) : ominus(d.at(s), d.at({i - 1, i}));
    const int below = s.is_infinite(n) ? n : s.d - 1;
    const Subspace here = ominus(d.at(s), d.at({i, below}));
    const Subspace left = i == 1 ? zero : ominus(d.at({i - 1, s.d}), d.at({i - 1, below}));
    return ominus(here, left);
}

inline Subspace rhi_entry(const SegmentDiagram& l, const Segment& s) {
    const int n = l.n(), i = s.b;
    const Subspace zero = Subspace::zero(l.ambient(), l.tol());
    if (s.is_infinite(n)) return i == 1 ? l.at(s) : ominus(l.at(s), l.at({i - 1, n + 1}));
    const Subspace here = ominus(l.at(s), l.at({i, s.d + 1}));
    const Subspace left = i == 1 ? zero : ominus(l.at({i - 1, s.d}), l.at({i - 1, s.d + 1}));
    return ominus(here, left);
}

}  // namespace detail

/// ×-linear orthogonal inversion. The default form is
/// D(I) ⊖ (D(left of I) + D(below I)); `literal` selects the four-term form.
inline SegmentDiagram prhi(const SegmentDiagram& d, bool literal = false, bool check = true, unsigned threads = 1) {
    if (d.order() != OrderTag::product) throw std::invalid_argument("prhi: diagram must be product-ordered");
    if (check)
        if (auto why = intersection_monotone_violation(d))
            throw std::invalid_argument("prhi: input is not intersection-monotone: " + *why);
    const auto segs = d.domain();
    std::vector<Subspace> vals(segs.size());
    parallel_for(segs.size(), threads, [&](std::size_t k) {
        vals[k] = literal ? detail::prhi_entry_literal(d, segs[k]) : detail::prhi_entry_fast(d, segs[k]);
    });
    SegmentDiagram out(d.poset(), OrderTag::product, d.ambient(), d.tol());
    for (std::size_t k = 0; k < segs.size(); ++k) out.set(segs[k], std::move(vals[k]));
    return out;
}

/// ⊇-linear orthogonal inversion, four-term form.
inline SegmentDiagram rhi(const SegmentDiagram& l, unsigned threads = 1) {
    if (l.order() != OrderTag::reverse_inclusion)
        throw std::invalid_argument("rhi: diagram must be ordered by reverse inclusion");
    const auto segs = l.domain();
    std::vector<Subspace> vals(segs.size());
    parallel_for(segs.size(), threads, [&](std::size_t k) { vals[k] = detail::rhi_entry(l, segs[k]); });
    SegmentDiagram out(l.poset(), OrderTag::reverse_inclusion, l.ambient(), l.tol());
    for (std::size_t k = 0; k < segs.size(); ++k) out.set(segs[k], std::move(vals[k]));
    return out;
}

inline bool is_order_preserving(const FinitePoset& r, const std::vector<Subspace>& f, double check_tol = kCheckTol) {
    for (int a = 0; a < r.size(); ++a)
        for (int b = 0; b < r.size(); ++b)
            if (r.lt(a, b) && f[a].residual_in(f[b]) > check_tol) return false;
    return true;
}

/// r ↦ F(r) ⊖ Σ_{r' < r} F(r').
inline std::vector<Subspace> goi(const FinitePoset& r, const std::vector<Subspace>& f, Index ambient,
                                 double tol = kDefaultTol) {
    if (static_cast<int>(f.size()) != r.size()) throw std::invalid_argument("goi: size mismatch");
    if (!is_order_preserving(r, f)) throw std::invalid_argument("goi: input is not order-preserving");
    std::vector<Subspace> out;
    for (int a = 0; a < r.size(); ++a) {
        std::vector<Subspace> below;
        for (int b = 0; b < r.size(); ++b)
            if (r.lt(b, a)) below.push_back(f[b]);
        out.push_back(ominus(f[a], sum(below, ambient, tol)));
    }
    return out;
}

inline SegmentDiagram goi(const SegmentDiagram& d) {
    const auto segs = d.domain();
    std::vector<Subspace> vals;
    for (const auto& s : segs) vals.push_back(d.at(s));
    const auto res = goi(FinitePoset::of_segments(segs, d.order()), vals, d.ambient(), d.tol());
    SegmentDiagram out(d.poset(), d.order(), d.ambient(), d.tol());
    for (std::size_t k = 0; k < segs.size(); ++k) out.set(segs[k], res[k]);
    return out;
}

/// Σ_{p' ≤ p} m(p').
inline std::vector<Subspace> downset_sums(const FinitePoset& p, const std::vector<Subspace>& m, Index ambient,
                                          double tol = kDefaultTol) {
    std::vector<Subspace> out;
    for (int a = 0; a < p.size(); ++a) {
        std::vector<Subspace> below;
        for (int b = 0; b < p.size(); ++b)
            if (p.le(b, a)) below.push_back(m[b]);
        out.push_back(sum(below, ambient, tol));
    }
    return out;
}

inline SegmentDiagram downset_sums(const SegmentDiagram& m) {
    SegmentDiagram out(m.poset(), m.order(), m.ambient(), m.tol());
    for (const auto& s : m.domain()) {
        std::vector<Subspace> below;
        for (const auto& [t, v] : m.entries())
            if (leq(m.order(), t, s)) below.push_back(v);
        out.set(s, sum(below, m.ambient(), m.tol()));
    }
    return out;
}

inline bool is_monoidal_inverse(const FinitePoset& p, const std::vector<Subspace>& mprime,
                                const std::vector<Subspace>& m, Index ambient, double check_tol = kCheckTol) {
    const auto acc = downset_sums(p, mprime, ambient);
    for (int a = 0; a < p.size(); ++a)
        if (!equal(acc[a], m[a], check_tol)) return false;
    return true;
}

inline bool mobius_equivalent(const FinitePoset& p, const std::vector<Subspace>& m1,
                              const std::vector<Subspace>& m2, Index ambient, double check_tol = kCheckTol) {
    return is_monoidal_inverse(p, m1, downset_sums(p, m2, ambient), ambient, check_tol);
}

/// Σ_{I ≤ J} m'(I) = m(J) for every J in the shared domain.
inline bool is_monoidal_inverse(const SegmentDiagram& mprime, const SegmentDiagram& m, double check_tol = kCheckTol) {
    if (!(mprime.poset() == m.poset()) || mprime.order() != m.order() || mprime.ambient() != m.ambient())
        throw std::invalid_argument("is_monoidal_inverse: diagrams live on different domains");
    const auto acc = downset_sums(mprime);
    for (const auto& s : m.domain())
        if (!equal(acc.at(s), m.at(s), check_tol)) return false;
    return true;
}

inline bool mobius_equivalent(const SegmentDiagram& m1, const SegmentDiagram& m2, double check_tol = kCheckTol) {
    return is_monoidal_inverse(m1, downset_sums(m2), check_tol);
}

/// Unique x with Σ_{p' ≤ p} x(p') = m(p), solved in a linear extension.
inline std::vector<long long> generic_mobius_inverse(const FinitePoset& p, const std::vector<long long>& m) {
    if (static_cast<int>(m.size()) != p.size()) throw std::invalid_argument("generic_mobius_inverse: size mismatch");
    std::vector<long long> x(m.size(), 0);
    for (int a : p.linear_extension()) {
        long long v = m[a];
        for (int b = 0; b < p.size(); ++b)
            if (p.lt(b, a)) v -= x[b];
        x[a] = v;
    }
    return x;
}

inline std::vector<long long> zeta_accumulate(const FinitePoset& p, const std::vector<long long>& x) {
    std::vector<long long> out(x.size(), 0);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.le(b, a)) out[a] += x[b];
    return out;
}

/// Closed-form Möbius inverse on Seg(P) (product) or Seg(P) minus the diagonal
/// (reverse inclusion), with m((ℓ_0,·)) = 0 and (ℓ_i,ℓ_{n+1}) = (ℓ_i,∞).
inline SegmentFunction mobius_inverse_int(const SegmentFunction& m, int n, OrderTag order) {
    auto at = [&](int b, int d) -> long long { return b < 1 ? 0 : value_at(m, {b, d}); };
    SegmentFunction out;
    for (const auto& s : segments(n, order)) {
        const int i = s.b, j = s.d;
        long long v = 0;
        if (order == OrderTag::product) {
            if (s.is_diagonal())
                v = at(i, i) - at(i - 1, i);
            else if (s.is_infinite(n))
                v = at(i, n + 1) - at(i, n) + at(i - 1, n) - at(i - 1, n + 1);
            else
                v = at(i, j) - at(i, j - 1) + at(i - 1, j - 1) - at(i - 1, j);
        } else {
            if (s.is_infinite(n))
                v = at(i, n + 1) - at(i - 1, n + 1);
            else
                v = at(i, j) - at(i, j + 1) + at(i - 1, j + 1) - at(i - 1, j);
        }
        if (v != 0) out[s] = v;
    }
    return out;
}

}  // namespace gpd
