#include "support.hpp"

#include <gtest/gtest.h>

using namespace gpd;
using namespace gpd::testing;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }
Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec e(Index d, Index k) { return Vec::Unit(d, k); }

Subspace sp(std::vector<Vec> vs) { return orthonormalize(vs); }

}  // namespace

TEST(Orthonormalize, KeepsOrthonormalInput) {
    Subspace s = sp({e(3, 0), e(3, 1)});
    EXPECT_EQ(s.rank(), 2);
    EXPECT_TRUE(s.contains(e(3, 0)));
    EXPECT_TRUE(s.contains(e(3, 1)));
    EXPECT_FALSE(s.contains(e(3, 2)));
}

TEST(Orthonormalize, DropsDuplicate) { EXPECT_EQ(sp({e(3, 0), e(3, 0)}).rank(), 1); }

TEST(Orthonormalize, HandGramSchmidt) {
    Subspace s = sp({v3(1, 1, 0), v3(1, 0, 0)});
    ASSERT_EQ(s.rank(), 2);
    const Vec second = s.vector(1);
    EXPECT_NEAR(std::abs(second.dot(v3(1, -1, 0) / std::sqrt(2.0))), 1.0, 1e-12);
    EXPECT_LE(s.orthonormality_error(), 1e-12);
}

TEST(Orthonormalize, RejectsLengthMismatch) {
    EXPECT_THROW(orthonormalize(std::vector<Vec>{e(3, 0), e(2, 0)}, Index{3}), std::invalid_argument);
}

TEST(Sum, Examples) {
    EXPECT_EQ(sum(sp({e(3, 0)}), sp({e(3, 1)})), sp({e(3, 0), e(3, 1)}));
    Subspace a = sp({v3(1, 2, 3)});
    EXPECT_EQ(sum(a, Subspace::zero(3)), a);
    Subspace s = sum(sp({v2(1, 1)}), sp({v2(1, -1)}));
    EXPECT_EQ(s.rank(), exact_rank((Mat(2, 2) << 1, 1, 1, -1).finished()));
    EXPECT_EQ(s, Subspace::full(2));
    EXPECT_THROW(sum(Subspace::zero(2), Subspace::zero(3)), std::invalid_argument);
}

TEST(Intersect, Examples) {
    EXPECT_EQ(intersect(sp({e(3, 0), e(3, 1)}), sp({e(3, 1), e(3, 2)})), sp({e(3, 1)}));
    Subspace a = sp({v3(1, 2, 3), v3(0, 1, -1)});
    EXPECT_EQ(intersect(a, a), a);
    // Null space of [1 1; 1 0] is trivial.
    EXPECT_EQ(exact_rank((Mat(2, 2) << 1, 1, 1, 0).finished()), 2);
    EXPECT_TRUE(intersect(sp({v2(1, 1)}), sp({e(2, 0)})).is_zero());
    EXPECT_THROW(intersect(Subspace::zero(2), Subspace::zero(3)), std::invalid_argument);
}

TEST(Ominus, Examples) {
    Subspace a = sp({e(3, 0), e(3, 1)});
    EXPECT_EQ(ominus(a, sp({e(3, 0)})), sp({e(3, 1)}));
    EXPECT_EQ(ominus(a, Subspace::zero(3)), a);
    EXPECT_TRUE(ominus(a, a).is_zero());
    // Brute force: x = αe1 + βe2 with ⟨x, e1+e3⟩ = α = 0.
    Subspace r = ominus(a, sp({v3(1, 0, 1)}));
    EXPECT_EQ(r, sp({e(3, 1)}));
}

TEST(Orthocomplement, Examples) {
    EXPECT_EQ(orthocomplement(Subspace::zero(3)), Subspace::full(3));
    EXPECT_TRUE(orthocomplement(Subspace::full(3)).is_zero());
    EXPECT_EQ(orthocomplement(sp({v2(1, 1)})), sp({v2(1, -1)}));
}

TEST(Project, Examples) {
    Subspace a = sp({e(3, 0)});
    EXPECT_LE((project(e(3, 0), a) - e(3, 0)).norm(), 1e-15);
    EXPECT_LE(project(e(3, 1), a).norm(), 1e-15);
    EXPECT_LE((project(v3(1, 1, 0), a) - e(3, 0)).norm(), 1e-15);
}

TEST(Transverse, Examples) {
    EXPECT_TRUE(is_transverse({sp({e(3, 0)}), sp({e(3, 1)})}));
    EXPECT_FALSE(is_transverse({sp({e(3, 0)}), sp({e(3, 0)})}));
    Mat m = (Mat(3, 3) << 1, 0, 1, 1, 1, 0, 0, 1, 1).finished();
    EXPECT_EQ(exact_rank(m), 3);
    EXPECT_TRUE(is_transverse({sp({m.col(0)}), sp({m.col(1)}), sp({m.col(2)})}));
    EXPECT_TRUE(families_transversal({sp({e(3, 0)})}, {sp({e(3, 1)})}));
    EXPECT_FALSE(families_transversal({sp({e(3, 0)})}, {sp({e(3, 0)})}));
    EXPECT_TRUE(is_transverse({}));
}

TEST(Subspace, EqualityIgnoresBasis) {
    Subspace a = sp({v3(1, 1, 0), v3(0, 1, 1)});
    Subspace b = sp({v3(1, 2, 1), v3(1, 0, -1)});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sp({e(3, 0), e(3, 1)}));
}

TEST(Subspace, ZeroIsDByZero) {
    Subspace z = Subspace::zero(4);
    EXPECT_EQ(z.basis().rows(), 4);
    EXPECT_EQ(z.basis().cols(), 0);
    EXPECT_TRUE(sum(z, z).is_zero());
    EXPECT_TRUE(intersect(z, Subspace::full(4)).is_zero());
    EXPECT_TRUE(ominus(z, z).is_zero());
}

class SubspaceProperties : public ::testing::Test {
protected:
    Rng rng{20241};
    Subspace pick(Index d) { return random_subspace(rng, d, uniform(rng, 0, static_cast<int>(d))); }
};

TEST_F(SubspaceProperties, DimensionFormula) {
    for (int t = 0; t < 300; ++t) {
        const Index d = uniform(rng, 1, 7);
        Subspace a = pick(d), b = pick(d);
        EXPECT_EQ(sum(a, b).rank() + intersect(a, b).rank(), a.rank() + b.rank());
    }
}

TEST_F(SubspaceProperties, OminusOfSubspaceDropsDimension) {
    for (int t = 0; t < 300; ++t) {
        const Index d = uniform(rng, 1, 7);
        Subspace a = pick(d);
        Subspace b = span(a.basis() * random_matrix(rng, a.rank(), uniform(rng, 0, static_cast<int>(a.rank()))));
        Subspace r = ominus(a, b);
        EXPECT_EQ(r.rank(), a.rank() - b.rank());
        EXPECT_LE(r.max_inner(b), 1e-9);
        EXPECT_LE(r.orthonormality_error(), 1e-9);
    }
}

// ((A⊖B) ⊖ (C⊖(B∩C))) = A ⊖ (B+C) for B, C ⊆ A.
TEST_F(SubspaceProperties, OrthogonalInclusionExclusion) {
    for (int t = 0; t < 300; ++t) {
        const Index d = uniform(rng, 1, 7);
        Subspace a = pick(d);
        Subspace b = span(a.basis() * random_matrix(rng, a.rank(), uniform(rng, 0, static_cast<int>(a.rank()))));
        Subspace c = span(a.basis() * random_matrix(rng, a.rank(), uniform(rng, 0, static_cast<int>(a.rank()))));
        Subspace lhs = ominus(ominus(a, b), ominus(c, intersect(b, c)));
        EXPECT_LE(residual(lhs, ominus(a, sum(b, c))), 1e-8);
    }
}

// Shared B∩C so that the intersection is not generically zero.
TEST_F(SubspaceProperties, OrthogonalInclusionExclusionOverlapping) {
    for (int t = 0; t < 300; ++t) {
        const Index d = uniform(rng, 3, 8);
        Mat a_basis = random_matrix(rng, d, uniform(rng, 3, static_cast<int>(d)));
        Subspace a = span(a_basis);
        Mat shared = a.basis() * random_matrix(rng, a.rank(), 1);
        Subspace b = span((Mat(d, 2) << shared, a.basis() * random_matrix(rng, a.rank(), 1)).finished());
        Subspace c = span((Mat(d, 2) << shared, a.basis() * random_matrix(rng, a.rank(), 1)).finished());
        ASSERT_GE(intersect(b, c).rank(), 1);
        Subspace lhs = ominus(ominus(a, b), ominus(c, intersect(b, c)));
        EXPECT_LE(residual(lhs, ominus(a, sum(b, c))), 1e-8);
    }
}

// (A⊖C)⊖(A⊖B) = B⊖C for C ⊆ B ⊆ A.
TEST_F(SubspaceProperties, Cancellation) {
    for (int t = 0; t < 300; ++t) {
        const Index d = uniform(rng, 1, 7);
        Subspace a = pick(d);
        Subspace b = span(a.basis() * random_matrix(rng, a.rank(), uniform(rng, 0, static_cast<int>(a.rank()))));
        Subspace c = span(b.basis() * random_matrix(rng, b.rank(), uniform(rng, 0, static_cast<int>(b.rank()))));
        EXPECT_LE(residual(ominus(ominus(a, c), ominus(a, b)), ominus(b, c)), 1e-8);
    }
}

// W₁⊖W₂ = W₁ ⊖ proj_{W₁}(W₂).
TEST_F(SubspaceProperties, MinusProjection) {
    for (int t = 0; t < 300; ++t) {
        const Index d = uniform(rng, 1, 7);
        Subspace w1 = pick(d), w2 = pick(d);
        EXPECT_LE(residual(ominus(w1, w2), ominus(w1, project(w2, w1))), 1e-8);
    }
}

// B⊥ ∩ (C ∩ (B∩C)⊥)⊥ = B⊥ ∩ C⊥.
TEST_F(SubspaceProperties, PerpIdentity) {
    for (int t = 0; t < 300; ++t) {
        const Index d = uniform(rng, 1, 7);
        Subspace b = pick(d), c = pick(d);
        Subspace lhs = intersect(orthocomplement(b), orthocomplement(ominus(c, intersect(b, c))));
        EXPECT_LE(residual(lhs, intersect(orthocomplement(b), orthocomplement(c))), 1e-8);
    }
}

TEST_F(SubspaceProperties, SubfamiliesOfTransversalFamiliesAreTransversal) {
    for (int t = 0; t < 200; ++t) {
        const Index d = uniform(rng, 2, 9);
        std::vector<Subspace> f, g;
        Index used = 0;
        while (used < d) {
            const Index r = std::min<Index>(uniform(rng, 1, 2), d - used);
            (uniform(rng, 0, 1) ? f : g).push_back(random_subspace(rng, d, r));
            used += r;
        }
        ASSERT_TRUE(families_transversal(f, g));
        std::vector<Subspace> fs, gs;
        for (const auto& s : f)
            if (uniform(rng, 0, 1)) fs.push_back(s);
        for (const auto& s : g)
            if (uniform(rng, 0, 1)) gs.push_back(s);
        EXPECT_TRUE(families_transversal(fs, gs));
        EXPECT_TRUE(is_transverse(fs));
    }
}

TEST_F(SubspaceProperties, ProjectionIsIdempotentWithOrthogonalResidual) {
    for (int t = 0; t < 200; ++t) {
        const Index d = uniform(rng, 1, 7);
        Subspace a = pick(d);
        Vec v = random_vector(rng, d);
        Vec p = project(v, a);
        EXPECT_LE((project(p, a) - p).norm(), 1e-12 * (1 + v.norm()));
        EXPECT_LE((a.basis().transpose() * (v - p)).norm(), 1e-12 * (1 + v.norm()));
    }
}

TEST_F(SubspaceProperties, NullSpaceMatchesExactRank) {
    std::uniform_int_distribution<int> small(-2, 2);
    for (int t = 0; t < 200; ++t) {
        const Index r = uniform(rng, 1, 6), c = uniform(rng, 1, 6);
        Mat m(r, c);
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < c; ++j) m(i, j) = small(rng);
        Subspace k = null_space(m);
        EXPECT_EQ(k.rank(), c - exact_rank(m));
        EXPECT_LE((m * k.basis()).norm(), 1e-9);
    }
}
