#include "pgl/core.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace pgl;

TEST(OrthonormalRange, ReducesRankDeficientSpan) {
    Mat A(3, 3);
    A << cxd(1), cxd(2), cxd(3), cxd(2), cxd(4), cxd(6), cxd(0), cxd(0), cxd(1);
    const Mat Q = orthonormal_range(A);
    ASSERT_EQ(Q.cols(), 2);
    const Mat gram = Q.adjoint() * Q;
    EXPECT_LT(max_norm(Mat(gram - Mat::Identity(2, 2))), 1e-12);
    // Original columns must be reproducible from Q.
    for (int j = 0; j < 3; ++j) EXPECT_LT(membership_residual(Q, A.col(j)), 1e-12);
}

TEST(Nullspace, ComplementsRankAndAnnihilates) {
    Mat A(2, 4);
    A << cxd(1), cxd(0), cxd(1), cxd(0), cxd(0), cxd(1), cxd(0), cxd(1);
    const Mat N = nullspace(A);
    ASSERT_EQ(N.cols(), 2);
    EXPECT_LT(max_norm(Mat(A * N)), 1e-12);
}

TEST(Nullspace, ZeroMatrixGivesIdentityBasis) {
    const Mat N = nullspace(Mat::Zero(3, 3));
    ASSERT_EQ(N.cols(), 3);
    EXPECT_LT(span_distance(N, Mat::Identity(3, 3)), 1e-14);
}

TEST(IntersectSpans, PlanesInR3MeetInALine) {
    Mat A(3, 2), B(3, 2);
    A << cxd(1), cxd(0), cxd(0), cxd(1), cxd(0), cxd(0);  // xy-plane
    B << cxd(1), cxd(0), cxd(0), cxd(0), cxd(0), cxd(1);  // xz-plane
    const Mat I = intersect_spans(A, B);
    ASSERT_EQ(I.cols(), 1);
    CVec e1 = CVec::Zero(3);
    e1(0) = cxd(1);
    EXPECT_LT(span_distance(I, e1), 1e-12);
}

TEST(SpanDistance, DetectsDifferentSpans) {
    Mat A(2, 1), B(2, 1);
    A << cxd(1), cxd(0);
    B << cxd(0), cxd(1);
    EXPECT_GT(span_distance(A, B), 0.4);
    EXPECT_LT(span_distance(A, A), 1e-15);
}

TEST(MinNormSolve, RecoversLeastSquaresSolution) {
    Mat A(2, 3);
    A << cxd(1), cxd(0), cxd(0), cxd(0), cxd(1), cxd(0);
    CVec b(2);
    b << cxd(3), cxd(4);
    const CVec x = min_norm_solve(A, b);
    EXPECT_NEAR(std::abs(x(0)), 3.0, 1e-12);
    EXPECT_NEAR(std::abs(x(1)), 4.0, 1e-12);
    EXPECT_NEAR(std::abs(x(2)), 0.0, 1e-12);  // minimal norm kills the kernel part
}

TEST(NumericalRank, UsesScaledThreshold) {
    Mat A = Mat::Identity(4, 4);
    A(3, 3) = cxd(1e-16);
    EXPECT_EQ(numerical_rank(A), 3);
    A(3, 3) = cxd(1e-3);
    EXPECT_EQ(numerical_rank(A), 4);
}

TEST(Rng, DeterministicAcrossConstructions) {
    Rng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsAreIndependent) {
    Rng a(42, 0), b(42, 1);
    int agree = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++agree;
    EXPECT_EQ(agree, 0);
}

TEST(Rng, ForkIsStableAndDisjoint) {
    Rng root(9, 0);
    Rng c1 = root.fork(1);
    Rng c1_again = Rng(9, 0).fork(1);
    EXPECT_EQ(c1.next_u64(), c1_again.next_u64());
    Rng c2 = root.fork(2);
    std::set<uint64_t> seen;
    for (int i = 0; i < 32; ++i) seen.insert(c1.next_u64());
    for (int i = 0; i < 32; ++i) EXPECT_EQ(seen.count(c2.next_u64()), 0u);
}

TEST(Rng, UniformAndNormalInRange) {
    Rng rng(123, 0);
    double sum = 0.0, sumsq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double g = rng.normal();
        sum += g;
        sumsq += g * g;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.05);
    EXPECT_NEAR(sumsq / n, 1.0, 0.05);
}

TEST(Rng, UnitaryIsUnitaryAndDeterministic) {
    Rng rng(7, 3);
    const Mat U = rng.unitary(4);
    EXPECT_LT(max_norm(Mat(U.adjoint() * U - Mat::Identity(4, 4))), 1e-12);
    Rng rng2(7, 3);
    EXPECT_LT(max_norm(Mat(U - rng2.unitary(4))), 1e-15);
}

TEST(Rng, OrthogonalIsOrthogonal) {
    Rng rng(11, 0);
    const RMat Q = rng.orthogonal(5);
    EXPECT_LT(max_norm(RMat(Q.transpose() * Q - RMat::Identity(5, 5))), 1e-12);
}

TEST(Rel, RelativeResidualScales) {
    EXPECT_DOUBLE_EQ(rel(2.0, 0.0), 2.0);
    EXPECT_NEAR(rel(2.0, 999.0), 2.0 / 1000.0, 1e-15);
}

TEST(ToReal, RejectsGenuinelyComplexInput) {
    Mat A(1, 1);
    A(0, 0) = cxd(1.0, 0.5);
    EXPECT_THROW(to_real(A), std::invalid_argument);
    A(0, 0) = cxd(1.0, 1e-15);
    EXPECT_NO_THROW(to_real(A));
}
