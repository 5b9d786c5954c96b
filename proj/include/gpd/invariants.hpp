#pragma once

#include "gpd/filtration.hpp"
#include "gpd/parallel.hpp"
#include "gpd/segment_diagram.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <string>
#include <vector>

namespace gpd {

/// Tolerance for subspace comparisons in checks (containment, equality).
inline constexpr double kCheckTol = 1e-6;

/// Z_q(K_i) inside C_q^K; K_0 is empty.
inline Subspace cycles_at(const Filtration& f, int q, int i, double tol = kDefaultTol) {
    const auto& k = f.complex();
    return cycles_on(boundary_matrix(k, q), f.present(q, i), tol);
}

/// B_q(K_i) inside C_q^K.
inline Subspace boundaries_at(const Filtration& f, int q, int i, double tol = kDefaultTol) {
    const auto& k = f.complex();
    return boundaries_on(boundary_matrix(k, q + 1), f.present(q + 1, i), tol);
}

/// ZB_q((b,d)) = Z_q(K_b) ∩ B_q(K_d); ZB_q((b,∞)) = Z_q(K_b).
inline Subspace birth_death_space(const Filtration& f, int q, const Segment& s, double tol = kDefaultTol) {
    if (!is_valid_segment(s, f.n(), OrderTag::product)) throw std::invalid_argument("invalid segment");
    Subspace z = cycles_at(f, q, s.b, tol);
    if (s.is_infinite(f.n())) return z;
    return intersect(z, boundaries_at(f, q, s.d, tol));
}

/// Rank of H_q(K_i) -> H_q(K_j).
inline long long persistent_betti(const Filtration& f, int q, int i, int j, double tol = kDefaultTol) {
    if (i < 1 || i > j || j > f.n()) throw std::invalid_argument("persistent_betti: need 1 <= i <= j <= n");
    Subspace z = cycles_at(f, q, i, tol);
    return z.rank() - intersect(z, boundaries_at(f, q, j, tol)).rank();
}

/// Restricted boundary ∂^{K_j,K_i}_{q+1} as a matrix from an orthonormal basis
/// of C_{q+1}^{K_j,K_i} into the coordinates of C_q^{K_i}.
inline Mat restricted_up_boundary(const Filtration& f, int q, int i, int j, double tol = kDefaultTol) {
    const auto& k = f.complex();
    const Mat d = boundary_matrix(k, q + 1);
    const auto cols = f.present(q + 1, j);
    const auto rows_in = f.present(q, i);
    std::vector<char> inside(static_cast<std::size_t>(k.count(q)), 0);
    for (int r : rows_in) inside[r] = 1;
    std::vector<int> rows_out;
    for (int r = 0; r < k.count(q); ++r)
        if (!inside[r]) rows_out.push_back(r);

    Mat dc = select_columns(d, cols);
    Mat constraint(static_cast<Index>(rows_out.size()), dc.cols());
    for (std::size_t r = 0; r < rows_out.size(); ++r) constraint.row(static_cast<Index>(r)) = dc.row(rows_out[r]);
    Subspace allowed = null_space(constraint, tol);
    Mat image = dc * allowed.basis();
    Mat out(static_cast<Index>(rows_in.size()), image.cols());
    for (std::size_t r = 0; r < rows_in.size(); ++r) out.row(static_cast<Index>(r)) = image.row(rows_in[r]);
    return out;
}

/// Δ_q^{K_i,K_j} on C_q^{K_i}, in the coordinates of f.present(q, i).
inline Mat persistent_laplacian(const Filtration& f, int q, int i, int j, double tol = kDefaultTol) {
    if (i < 1 || i > j || j > f.n()) throw std::invalid_argument("persistent_laplacian: need 1 <= i <= j <= n");
    const Mat up = restricted_up_boundary(f, q, i, j, tol);
    const Mat down = select_columns(boundary_matrix(f.complex(), q), f.present(q, i));
    return up * up.transpose() + down.transpose() * down;
}

/// ker Δ_q^{K_i,K_j} = Z_q(K_i) ∩ Im(∂^{K_j,K_i}_{q+1})^⊥, inside C_q^K.
inline Subspace persistent_laplacian_kernel(const Filtration& f, int q, int i, int j, double tol = kDefaultTol) {
    const Index ambient = f.complex().count(q);
    const Mat up = restricted_up_boundary(f, q, i, j, tol);
    Subspace image = embed(span(up, tol), f.present(q, i), ambient);
    return ominus(cycles_at(f, q, i, tol), image);
}

/// ker Δ_q^{K_i,K_j} from an eigendecomposition; eigenvalues at most
/// tol * max(λ_max, 1) count as zero.
inline Subspace persistent_laplacian_kernel_eigen(const Filtration& f, int q, int i, int j,
                                                  double tol = kDefaultTol) {
    const Index ambient = f.complex().count(q);
    const auto rows = f.present(q, i);
    if (rows.empty()) return Subspace::zero(ambient, tol);
    Eigen::SelfAdjointEigenSolver<Mat> eig(persistent_laplacian(f, q, i, j, tol));
    const auto& ev = eig.eigenvalues();
    const double thr = tol * std::max(ev.maxCoeff(), 1.0);
    std::vector<Index> zero;
    for (Index k = 0; k < ev.size(); ++k)
        if (ev(k) <= thr) zero.push_back(k);
    Mat b(ev.size(), static_cast<Index>(zero.size()));
    for (std::size_t c = 0; c < zero.size(); ++c) b.col(static_cast<Index>(c)) = eig.eigenvectors().col(zero[c]);
    return embed(span(b, tol), rows, ambient);
}

/// LK_q((i,j)) = ker Δ^{K_i,K_{j-1}}; LK_q((i,∞)) = ker Δ^{K_i,K_n}.
/// With eigen_check the eigen route is compared and a mismatch throws.
inline Subspace laplacian_kernel(const Filtration& f, int q, const Segment& s, double tol = kDefaultTol,
                                 bool eigen_check = false) {
    if (!is_valid_segment(s, f.n(), OrderTag::reverse_inclusion))
        throw std::invalid_argument("laplacian_kernel: segment " + s.str(f.n()) + " is diagonal or invalid");
    const int j = s.is_infinite(f.n()) ? f.n() : s.d - 1;
    Subspace out = persistent_laplacian_kernel(f, q, s.b, j, tol);
    if (eigen_check) {
        Subspace alt = persistent_laplacian_kernel_eigen(f, q, s.b, j, tol);
        if (!equal(out, alt, kCheckTol))
            throw std::runtime_error("laplacian kernel routes disagree at " + s.str(f.n()));
    }
    return out;
}

inline SegmentDiagram zb_diagram(const Filtration& f, int q, double tol = kDefaultTol, unsigned threads = 1) {
    const int n = f.n();
    const Index ambient = f.complex().count(q);
    std::vector<Subspace> z(static_cast<std::size_t>(n + 1)), b(static_cast<std::size_t>(n + 1));
    parallel_for(static_cast<std::size_t>(2 * n), threads, [&](std::size_t k) {
        const int i = static_cast<int>(k / 2) + 1;
        if (k % 2 == 0)
            z[i] = cycles_at(f, q, i, tol);
        else
            b[i] = boundaries_at(f, q, i, tol);
    });
    const auto segs = segments(n, OrderTag::product);
    std::vector<Subspace> vals(segs.size());
    parallel_for(segs.size(), threads, [&](std::size_t k) {
        const Segment& s = segs[k];
        vals[k] = s.is_infinite(n) ? z[s.b] : intersect(z[s.b], b[s.d]);
    });
    SegmentDiagram out(f.poset(), OrderTag::product, ambient, tol);
    for (std::size_t k = 0; k < segs.size(); ++k) out.set(segs[k], std::move(vals[k]));
    return out;
}

inline SegmentDiagram lk_diagram(const Filtration& f, int q, double tol = kDefaultTol, unsigned threads = 1,
                                 bool eigen_check = false) {
    const auto segs = segments(f.n(), OrderTag::reverse_inclusion);
    std::vector<Subspace> vals(segs.size());
    parallel_for(segs.size(), threads,
                 [&](std::size_t k) { vals[k] = laplacian_kernel(f, q, segs[k], tol, eigen_check); });
    SegmentDiagram out(f.poset(), OrderTag::reverse_inclusion, f.complex().count(q), tol);
    for (std::size_t k = 0; k < segs.size(); ++k) out.set(segs[k], std::move(vals[k]));
    return out;
}

/// First violated condition of intersection-monotonicity, if any.
inline std::optional<std::string> intersection_monotone_violation(const SegmentDiagram& d,
                                                                  double check_tol = kCheckTol) {
    if (d.order() != OrderTag::product) return std::string("diagram is not product-ordered");
    const int n = d.n();
    for (const auto& s : d.domain()) {
        const Subspace v = d.at(s);
        if (s.b + 1 <= std::min(s.d, n) && v.residual_in(d.at({s.b + 1, s.d})) > check_tol)
            return "order-preservation fails at " + s.str(n) + " -> " + Segment{s.b + 1, s.d}.str(n);
        if (s.d <= n && v.residual_in(d.at({s.b, s.d + 1})) > check_tol)
            return "order-preservation fails at " + s.str(n) + " -> " + Segment{s.b, s.d + 1}.str(n);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const Subspace meet = intersect(d.at({i + 1, j}), d.at({i, j + 1}));
            if (!equal(meet, d.at({i, j}), check_tol))
                return "intersection condition fails at " + Segment{i, j}.str(n);
        }
    return std::nullopt;
}

inline bool check_intersection_monotone(const SegmentDiagram& d, double check_tol = kCheckTol) {
    return !intersection_monotone_violation(d, check_tol).has_value();
}

}  // namespace gpd
