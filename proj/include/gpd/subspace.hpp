#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpd {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-9;

/// Linear subspace of R^d stored as a d x r matrix with orthonormal columns.
class Subspace {
public:
    Subspace() : basis_(0, 0), tol_(kDefaultTol) {}
    explicit Subspace(Index ambient, double tol = kDefaultTol) : basis_(ambient, 0), tol_(tol) {}

    /// Wraps a basis that is already orthonormal. No checks beyond shape.
    static Subspace from_orthonormal(Mat basis, double tol = kDefaultTol) {
        Subspace s;
        s.basis_ = std::move(basis);
        s.tol_ = tol;
        return s;
    }

    static Subspace zero(Index ambient, double tol = kDefaultTol) { return Subspace(ambient, tol); }

    static Subspace full(Index ambient, double tol = kDefaultTol) {
        return from_orthonormal(Mat::Identity(ambient, ambient), tol);
    }

    Index ambient() const { return basis_.rows(); }
    Index rank() const { return basis_.cols(); }
    bool is_zero() const { return basis_.cols() == 0; }
    double tol() const { return tol_; }
    const Mat& basis() const { return basis_; }
    Vec vector(Index k) const { return basis_.col(k); }

    Vec project(const Vec& v) const {
        if (v.size() != ambient()) throw std::invalid_argument("project: dimension mismatch");
        if (is_zero()) return Vec::Zero(ambient());
        return basis_ * (basis_.transpose() * v);
    }

    /// Distance from v to this subspace.
    double distance(const Vec& v) const { return (v - project(v)).norm(); }

    bool contains(const Vec& v) const { return distance(v) <= tol_ * (1.0 + v.norm()); }

    bool contains(const Subspace& other) const {
        for (Index k = 0; k < other.rank(); ++k)
            if (distance(other.basis_.col(k)) > tol_ * 2.0) return false;
        return true;
    }

    /// max_k ||(I - P) b_k|| over this basis, relative to other.
    double residual_in(const Subspace& other) const {
        double r = 0.0;
        for (Index k = 0; k < rank(); ++k) r = std::max(r, other.distance(basis_.col(k)));
        return r;
    }

    /// max_{u,v} |<u,v>| over basis pairs.
    double max_inner(const Subspace& other) const {
        if (is_zero() || other.is_zero()) return 0.0;
        return (basis_.transpose() * other.basis_).cwiseAbs().maxCoeff();
    }

    /// ||B^T B - I||_max
    double orthonormality_error() const {
        if (is_zero()) return 0.0;
        Mat g = basis_.transpose() * basis_;
        g.diagonal().array() -= 1.0;
        return g.cwiseAbs().maxCoeff();
    }

private:
    Mat basis_;
    double tol_;
};

namespace detail {

inline void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument(std::string(op) + ": ambient dimension mismatch (" +
                                    std::to_string(a.ambient()) + " vs " + std::to_string(b.ambient()) + ")");
}

inline double joint_tol(const Subspace& a, const Subspace& b) { return std::max(a.tol(), b.tol()); }

}  // namespace detail

/// Modified Gram-Schmidt with one re-orthogonalization pass. A vector is
/// dropped when its residual norm is at most tol * (1 + input norm).
inline Subspace orthonormalize_columns(const Mat& vectors, double tol = kDefaultTol) {
    const Index d = vectors.rows();
    Mat q(d, std::min<Index>(d, vectors.cols()));
    Index r = 0;
    for (Index c = 0; c < vectors.cols() && r < d; ++c) {
        Vec v = vectors.col(c);
        const double input = v.norm();
        for (int pass = 0; pass < 2; ++pass)
            for (Index k = 0; k < r; ++k) v -= q.col(k).dot(v) * q.col(k);
        const double res = v.norm();
        if (res <= tol * (1.0 + input)) continue;
        q.col(r++) = v / res;
    }
    return Subspace::from_orthonormal(q.leftCols(r), tol);
}

inline Subspace orthonormalize(const std::vector<Vec>& vectors, Index ambient, double tol = kDefaultTol) {
    Mat m(ambient, static_cast<Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != ambient) throw std::invalid_argument("orthonormalize: dimension mismatch");
        m.col(static_cast<Index>(k)) = vectors[k];
    }
    return orthonormalize_columns(m, tol);
}

inline Subspace orthonormalize(const std::vector<Vec>& vectors, double tol = kDefaultTol) {
    if (vectors.empty()) throw std::invalid_argument("orthonormalize: no vectors and no ambient dimension");
    return orthonormalize(vectors, vectors.front().size(), tol);
}

inline Subspace span(const Mat& columns, double tol = kDefaultTol) { return orthonormalize_columns(columns, tol); }

/// Null space of m as a subspace of R^{m.cols()}. Singular values at most
/// tol * max(1, sigma_max) count as zero.
inline Subspace null_space(const Mat& m, double tol = kDefaultTol) {
    const Index n = m.cols();
    if (n == 0) return Subspace::zero(0, tol);
    if (m.rows() == 0 || m.isZero(0.0)) return Subspace::full(n, tol);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thr = tol * std::max(1.0, sv(0));
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > thr) ++rank;
    Mat v = svd.matrixV().rightCols(n - rank);
    return orthonormalize_columns(v, tol);
}

/// Zero-pads s into R^ambient, placing coordinate k at row rows[k].
inline Subspace embed(const Subspace& s, const std::vector<int>& rows, Index ambient) {
    if (static_cast<Index>(rows.size()) != s.ambient()) throw std::invalid_argument("embed: row map size mismatch");
    Mat b = Mat::Zero(ambient, s.rank());
    for (std::size_t k = 0; k < rows.size(); ++k) b.row(rows[k]) = s.basis().row(static_cast<Index>(k));
    return Subspace::from_orthonormal(std::move(b), s.tol());
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    detail::require_same_ambient(a, b, "sum");
    Mat m(a.ambient(), a.rank() + b.rank());
    m << a.basis(), b.basis();
    return orthonormalize_columns(m, detail::joint_tol(a, b));
}

inline Subspace sum(const std::vector<Subspace>& family, Index ambient, double tol = kDefaultTol) {
    Index cols = 0;
    for (const auto& s : family) {
        if (s.ambient() != ambient) throw std::invalid_argument("sum: ambient dimension mismatch");
        cols += s.rank();
        tol = std::max(tol, s.tol());
    }
    Mat m(ambient, cols);
    Index at = 0;
    for (const auto& s : family) {
        m.middleCols(at, s.rank()) = s.basis();
        at += s.rank();
    }
    return orthonormalize_columns(m, tol);
}

inline Subspace operator+(const Subspace& a, const Subspace& b) { return sum(a, b); }

inline Subspace& operator+=(Subspace& a, const Subspace& b) {
    a = sum(a, b);
    return a;
}

/// A ∩ B from the null space of [A | B].
inline Subspace intersect(const Subspace& a, const Subspace& b) {
    detail::require_same_ambient(a, b, "intersect");
    const double tol = detail::joint_tol(a, b);
    if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient(), tol);
    Mat m(a.ambient(), a.rank() + b.rank());
    m << a.basis(), b.basis();
    Subspace ns = null_space(m, tol);
    Mat vecs = a.basis() * ns.basis().topRows(a.rank());
    return orthonormalize_columns(vecs, tol);
}

inline Subspace orthocomplement(const Subspace& a) {
    const Index d = a.ambient();
    if (a.is_zero()) return Subspace::full(d, a.tol());
    if (a.rank() >= d) return Subspace::zero(d, a.tol());
    Eigen::HouseholderQR<Mat> qr(a.basis());
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    return Subspace::from_orthonormal(q.rightCols(d - a.rank()), a.tol());
}

/// A ⊖ B = A ∩ B⊥
inline Subspace ominus(const Subspace& a, const Subspace& b) {
    detail::require_same_ambient(a, b, "ominus");
    if (a.is_zero()) return Subspace::zero(a.ambient(), detail::joint_tol(a, b));
    if (b.is_zero()) return Subspace::from_orthonormal(a.basis(), detail::joint_tol(a, b));
    return intersect(a, orthocomplement(b));
}

inline Vec project(const Vec& v, const Subspace& a) { return a.project(v); }

/// Span of the projections of w's basis onto a.
inline Subspace project(const Subspace& w, const Subspace& a) {
    detail::require_same_ambient(w, a, "project");
    if (a.is_zero() || w.is_zero()) return Subspace::zero(a.ambient(), detail::joint_tol(w, a));
    Mat p = a.basis() * (a.basis().transpose() * w.basis());
    return orthonormalize_columns(p, detail::joint_tol(w, a));
}

/// Largest mutual-projection residual; +inf when ranks differ.
inline double residual(const Subspace& a, const Subspace& b) {
    detail::require_same_ambient(a, b, "residual");
    if (a.rank() != b.rank()) return INFINITY;
    return std::max(a.residual_in(b), b.residual_in(a));
}

inline bool equal(const Subspace& a, const Subspace& b, double tol) { return residual(a, b) <= tol; }

inline bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient() == b.ambient() && equal(a, b, detail::joint_tol(a, b));
}

inline bool is_transverse(const std::vector<Subspace>& family) {
    if (family.empty()) return true;
    const Index d = family.front().ambient();
    Index total = 0;
    for (const auto& s : family) total += s.rank();
    if (total > d) return false;
    return sum(family, d, family.front().tol()).rank() == total;
}

inline bool families_transversal(const std::vector<Subspace>& f, const std::vector<Subspace>& g) {
    std::vector<Subspace> all(f);
    all.insert(all.end(), g.begin(), g.end());
    if (!all.empty())
        for (const auto& s : all) detail::require_same_ambient(all.front(), s, "families_transversal");
    return is_transverse(all);
}

}  // namespace gpd
