#include "pgl/operator_groupoid.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace pgl {
namespace {

Mat graded_conditioning(Rng& rng, int n, double cond) {
    const Mat a = rng.cgaussian(n, n);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat sigma = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        sigma(i, i) = cxd(std::pow(cond, -double(i) / std::max(1, n - 1)), 0.0);
    return svd.matrixU() * sigma * svd.matrixV().adjoint();
}

Mat random_rank(Rng& rng, int n, int r) {
    if (r == 0) return Mat::Zero(n, n);
    return Mat(rng.cgaussian(n, r) * rng.cgaussian(r, n));
}

Mat random_projection(Rng& rng, int n, int r) {
    const Mat base = orthonormal_range(rng.cgaussian(n, r));
    return base * base.adjoint();
}

TEST(AlgebraSpec, ValidationMembershipAndUnit) {
    EXPECT_THROW(StarAlgebraSpec(0, {1}), std::invalid_argument);
    EXPECT_THROW(StarAlgebraSpec(3, {2, 2}), std::invalid_argument);
    EXPECT_THROW(StarAlgebraSpec(3, {0}), std::invalid_argument);

    const StarAlgebraSpec full = StarAlgebraSpec::full(3);
    Rng rng(3u);
    EXPECT_LE(full.membership(rng.cgaussian(3, 3)), 1e-15);

    const StarAlgebraSpec blocks(4, {2, 2});
    Mat x = Mat::Zero(4, 4);
    x.topLeftCorner(2, 2) = rng.cgaussian(2, 2);
    x.bottomRightCorner(2, 2) = rng.cgaussian(2, 2);
    EXPECT_LE(blocks.membership(x), 1e-15);
    x(0, 3) = cxd(0.5, 0.0);
    EXPECT_GE(blocks.membership(x), 1e-2);
    EXPECT_THROW(OperatorElement(blocks, x), std::invalid_argument);

    const StarAlgebraSpec padded(3, {2});
    Mat expected_unit = Mat::Zero(3, 3);
    expected_unit(0, 0) = cxd(1, 0);
    expected_unit(1, 1) = cxd(1, 0);
    EXPECT_EQ(max_norm(Mat(padded.unit() - expected_unit)), 0.0);
}

TEST(Polar, HandOracleNilpotentMatrix) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(2);
    Mat x = Mat::Zero(2, 2);
    x(0, 1) = cxd(2, 0);
    const OperatorElement e(spec, x);

    Mat u_expected = Mat::Zero(2, 2);
    u_expected(0, 1) = cxd(1, 0);
    Mat mod_expected = Mat::Zero(2, 2);
    mod_expected(1, 1) = cxd(2, 0);
    EXPECT_LE(max_norm(Mat(e.u - u_expected)), 1e-14);
    EXPECT_LE(max_norm(Mat(e.modulus - mod_expected)), 1e-14);
    EXPECT_LE(max_norm(Mat(e.p - Mat(mod_expected / 2.0))), 1e-14);  // diag(0,1)
    Mat q_expected = Mat::Zero(2, 2);
    q_expected(0, 0) = cxd(1, 0);
    EXPECT_LE(max_norm(Mat(e.q - q_expected)), 1e-14);

    const OperatorElement inv = op_invert(e);
    Mat i_expected = Mat::Zero(2, 2);
    i_expected(1, 0) = cxd(0.5, 0.0);
    EXPECT_LE(max_norm(Mat(inv.x - i_expected)), 1e-14);
    EXPECT_LE(max_norm(Mat(Mat(e.x * inv.x) - q_expected)), 1e-14);
}

TEST(Polar, UnitaryAndZeroEdgeCases) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(3);
    Rng rng(5u);
    const Mat g = orthonormal_range(rng.cgaussian(3, 3));
    ASSERT_EQ(g.cols(), 3);
    const OperatorElement e(spec, g);
    EXPECT_LE(max_norm(Mat(e.u - g)), 1e-12);
    EXPECT_LE(max_norm(Mat(e.modulus - Mat::Identity(3, 3))), 1e-12);
    EXPECT_LE(max_norm(Mat(e.p - Mat::Identity(3, 3))), 1e-12);
    EXPECT_LE(max_norm(Mat(e.q - Mat::Identity(3, 3))), 1e-12);
    const OperatorElement inv = op_invert(e);
    EXPECT_LE(max_norm(Mat(inv.x - g.adjoint())), 1e-12);

    const OperatorElement zero(spec, Mat::Zero(3, 3));
    EXPECT_EQ(max_norm(zero.u), 0.0);
    EXPECT_EQ(max_norm(zero.p), 0.0);
    EXPECT_EQ(max_norm(zero.q), 0.0);
    const OperatorElement zero_inv = op_invert(zero);
    EXPECT_EQ(max_norm(zero_inv.x), 0.0);
}

TEST(Polar, ReconstructionAcrossConditionNumbers) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(4);
    Rng rng(7u);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double cond = std::pow(10.0, 8.0 * (trial % 5) / 4.0);
        const OperatorElement e(spec, graded_conditioning(rng, 4, cond));
        worst = std::max(worst, e.reconstruction_residual());
        EXPECT_LE(e.isometry_residual(), 1e-12);
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(Polar, BlockStructurePreservedThroughDegenerateSpectra) {
    // Equal singular values across blocks: the polar factors must still stay
    // block-diagonal because u = x (x^*x)^{+1/2} is basis-independent.
    const StarAlgebraSpec spec(4, {2, 2});
    Rng rng(11u);
    Mat x = Mat::Zero(4, 4);
    const Mat u1 = orthonormal_range(rng.cgaussian(2, 2));
    const Mat u2 = orthonormal_range(rng.cgaussian(2, 2));
    x.topLeftCorner(2, 2) = u1;  // both blocks have all singular values = 1
    x.bottomRightCorner(2, 2) = u2;
    const OperatorElement e(spec, x);
    EXPECT_LE(spec.membership(e.u), 1e-12);
    EXPECT_LE(spec.membership(e.modulus), 1e-12);
    EXPECT_LE(spec.membership(e.p), 1e-12);
}

TEST(Groupoid, UnitLawsAndComposableRankOnePair) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(3);
    Rng rng(13u);
    const OperatorElement x(spec, random_rank(rng, 3, 2));
    const OperatorElement unit_s(spec, x.p);
    const OperatorElement unit_t(spec, x.q);
    EXPECT_LE(max_norm(Mat(op_multiply(x, unit_s).x - x.x)), 1e-12);
    EXPECT_LE(max_norm(Mat(op_multiply(unit_t, x).x - x.x)), 1e-12);

    // Composable rank-1 pair via a shared middle projection.
    const Mat v = rng.cgaussian(3, 1);
    const Mat w = rng.cgaussian(3, 1);
    const Mat z = rng.cgaussian(3, 1);
    const OperatorElement y1(spec, Mat(v * w.adjoint()));
    const OperatorElement y2(spec, Mat((w / w.norm()) * z.adjoint()));
    ASSERT_LE(op_composability_residual(y1, y2), 1e-12);
    const OperatorElement prod = op_multiply(y1, y2);
    EXPECT_EQ(numerical_rank(prod.x), 1);
    EXPECT_LE(max_norm(Mat(prod.p - y2.p)), 1e-12);
    EXPECT_LE(max_norm(Mat(prod.q - y1.q)), 1e-12);
}

TEST(Groupoid, NonComposablePairsAreRejectedWithResidual) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(3);
    Rng rng(17u);
    const OperatorElement x(spec, random_rank(rng, 3, 1));
    const OperatorElement y(spec, random_rank(rng, 3, 2));
    try {
        op_multiply(x, y);
        FAIL() << "rank-mismatched pair accepted";
    } catch (const NonComposableError& e) {
        EXPECT_GT(e.residual, 1e-2);
    }
}

TEST(Groupoid, AxiomsOnSeededTrials) {
    Rng rng(19u);
    for (const StarAlgebraSpec& spec : {StarAlgebraSpec::full(3), StarAlgebraSpec(4, {2, 2})}) {
        for (int trial = 0; trial < 100; ++trial) {
            Mat raw = Mat::Zero(spec.n, spec.n);
            for (int b = 0; b < spec.block_count(); ++b) {
                const int off = spec.block_offset(b);
                const int sz = spec.block_sizes[static_cast<size_t>(b)];
                const int r = trial % (sz + 1);
                raw.block(off, off, sz, sz) = random_rank(rng, sz, r);
            }
            const OperatorElement x(spec, raw);
            const OperatorElement ix = op_invert(x);
            EXPECT_LE(max_norm(Mat(op_multiply(x, ix).x - x.q)), 1e-9);
            EXPECT_LE(max_norm(Mat(op_multiply(ix, x).x - x.p)), 1e-9);
            EXPECT_LE(max_norm(Mat(op_invert(ix).x - x.x)), 1e-9);
        }
    }
}

TEST(Groupoid, AssociativityOnComposableTriples) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(4);
    Rng rng(23u);
    for (int trial = 0; trial < 100; ++trial) {
        const int r = 1 + trial % 3;
        // Three partial isometries chained through shared projections.
        const Mat p1 = random_projection(rng, 4, r);
        const Mat p2 = random_projection(rng, 4, r);
        const Mat p3 = random_projection(rng, 4, r);
        const Mat p4 = random_projection(rng, 4, r);
        const MvnResult w12 = mvn_equivalent(spec, ProjectionElement(spec, p1),
                                             ProjectionElement(spec, p2));
        const MvnResult w23 = mvn_equivalent(spec, ProjectionElement(spec, p2),
                                             ProjectionElement(spec, p3));
        const MvnResult w34 = mvn_equivalent(spec, ProjectionElement(spec, p3),
                                             ProjectionElement(spec, p4));
        ASSERT_TRUE(w12.equivalent && w23.equivalent && w34.equivalent);
        const OperatorElement g1(spec, w12.witness);
        const OperatorElement g2(spec, w23.witness);
        const OperatorElement g3(spec, w34.witness);
        ASSERT_LE(op_composability_residual(g1, g2), 1e-10);
        ASSERT_LE(op_composability_residual(g2, g3), 1e-10);
        const Mat lhs = op_multiply(op_multiply(g1, g2), g3).x;
        const Mat rhs = op_multiply(g1, op_multiply(g2, g3)).x;
        EXPECT_LE(max_norm(Mat(lhs - rhs)), 1e-9);
    }
}

TEST(Groupoid, PartialIsometriesFormAWideSubgroupoid) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(4);
    Rng rng(29u);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int r = 1 + trial % 3;
        const MvnResult w12 =
            mvn_equivalent(spec, ProjectionElement(spec, random_projection(rng, 4, r)),
                           ProjectionElement(spec, random_projection(rng, 4, r)));
        const MvnResult w23 =
            mvn_equivalent(spec, ProjectionElement(spec, Mat(w12.witness.adjoint() * w12.witness)),
                           ProjectionElement(spec, random_projection(rng, 4, r)));
        const OperatorElement g1(spec, w12.witness);
        const OperatorElement g2(spec, w23.witness);
        const OperatorElement prod = op_multiply(g1, g2);
        worst = std::max(worst, partial_isometry_residual(prod));
        worst = std::max(worst, partial_isometry_residual(op_invert(g1)));
    }
    EXPECT_LE(worst, 1e-10);
    // Wide: every unit (projection) is itself a partial isometry.
    const OperatorElement unit(spec, random_projection(rng, 4, 2));
    EXPECT_LE(partial_isometry_residual(unit), 1e-12);
}

TEST(Projections, SnappingReportsAdjustmentAndRejectsFarInput) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(3);
    Rng rng(31u);
    const Mat clean = random_projection(rng, 3, 2);
    const ProjectionElement exact(spec, clean);
    EXPECT_LE(exact.adjustment, 1e-12);
    EXPECT_LE(exact.idempotency_residual(), 1e-12);
    EXPECT_LE(exact.hermiticity_residual(), 1e-12);
    EXPECT_EQ(exact.rank(), 2);

    const Mat bumped = clean + 1e-8 * rng.cgaussian(3, 3);
    const ProjectionElement snapped(spec, bumped);
    EXPECT_GE(snapped.adjustment, 1e-10);
    EXPECT_LE(snapped.adjustment, 1e-6);
    EXPECT_LE(snapped.idempotency_residual(), 1e-13);

    EXPECT_THROW(ProjectionElement(spec, Mat(0.5 * Mat::Identity(3, 3))),
                 std::invalid_argument);
}

TEST(Mvn, RankObstructionAndWitnessRelations) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(3);
    Rng rng(37u);
    const ProjectionElement p1(spec, random_projection(rng, 3, 1));
    const ProjectionElement p2(spec, random_projection(rng, 3, 2));
    EXPECT_FALSE(mvn_equivalent(spec, p1, p2).equivalent);

    const MvnResult self = mvn_equivalent(spec, p2, p2);
    EXPECT_TRUE(self.equivalent);
    EXPECT_LE(self.witness_residual, 1e-12);

    const StarAlgebraSpec spec4 = StarAlgebraSpec::full(4);
    const ProjectionElement a(spec4, random_projection(rng, 4, 2));
    const ProjectionElement b(spec4, random_projection(rng, 4, 2));
    const MvnResult m = mvn_equivalent(spec4, a, b);
    ASSERT_TRUE(m.equivalent);
    EXPECT_LE(m.witness_residual, 1e-12);
    EXPECT_LE(max_norm(Mat(m.witness * m.witness.adjoint() - a.p)), 1e-12);
    EXPECT_LE(max_norm(Mat(m.witness.adjoint() * m.witness - b.p)), 1e-12);
}

TEST(Mvn, BlockAlgebraSeparatesEqualTotalRank) {
    const StarAlgebraSpec spec(4, {2, 2});
    Mat p = Mat::Zero(4, 4);
    p(0, 0) = cxd(1, 0);  // rank vector (1, 0)
    Mat q = Mat::Zero(4, 4);
    q(2, 2) = cxd(1, 0);  // rank vector (0, 1)
    const MvnResult m = mvn_equivalent(spec, ProjectionElement(spec, p),
                                       ProjectionElement(spec, q));
    EXPECT_FALSE(m.equivalent);
    EXPECT_EQ(m.ranks_p, (std::vector<int>{1, 0}));
    EXPECT_EQ(m.ranks_q, (std::vector<int>{0, 1}));
}

TEST(Orbits, PartitionMatchesRankClasses) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(3);
    Rng rng(41u);
    {
        std::vector<OperatorElement> invertibles;
        for (int i = 0; i < 5; ++i)
            invertibles.push_back(OperatorElement(spec, graded_conditioning(rng, 3, 10.0)));
        const PartitionReport rep = orbit_partition(spec, invertibles);
        EXPECT_EQ(rep.classes.size(), 1u);
        EXPECT_TRUE(rep.within_classes_equivalent);
    }
    {
        std::vector<OperatorElement> mixed;
        mixed.push_back(OperatorElement(spec, random_rank(rng, 3, 1)));
        mixed.push_back(OperatorElement(spec, random_rank(rng, 3, 1)));
        mixed.push_back(OperatorElement(spec, random_rank(rng, 3, 2)));
        const PartitionReport rep = orbit_partition(spec, mixed);
        ASSERT_EQ(rep.classes.size(), 2u);
        EXPECT_EQ(rep.classes[0].members.size(), 2u);
        EXPECT_EQ(rep.classes[1].members.size(), 1u);
        EXPECT_TRUE(rep.within_classes_equivalent);
        EXPECT_TRUE(rep.across_classes_distinct);
        EXPECT_LE(rep.worst_witness_residual, 1e-10);
    }
}

TEST(Orbits, ExhaustiveRankEnumerationUpToFour) {
    Rng rng(43u);
    for (int n = 1; n <= 4; ++n) {
        const StarAlgebraSpec spec = StarAlgebraSpec::full(n);
        std::vector<OperatorElement> sample;
        for (int r = 0; r <= n; ++r)
            for (int copy = 0; copy < 2; ++copy)
                sample.push_back(OperatorElement(spec, random_rank(rng, n, r)));
        const PartitionReport rep = orbit_partition(spec, sample);
        EXPECT_EQ(rep.classes.size(), static_cast<size_t>(n + 1));
        EXPECT_TRUE(rep.within_classes_equivalent);
        EXPECT_TRUE(rep.across_classes_distinct);
        for (const OrbitClass& cls : rep.classes) EXPECT_EQ(cls.members.size(), 2u);
    }
}

TEST(Orbits, BlockAlgebraDistinguishesRankVectors) {
    const StarAlgebraSpec spec(4, {2, 2});
    Rng rng(47u);
    auto block_element = [&](int r1, int r2) {
        Mat x = Mat::Zero(4, 4);
        x.topLeftCorner(2, 2) = random_rank(rng, 2, r1);
        x.bottomRightCorner(2, 2) = random_rank(rng, 2, r2);
        return OperatorElement(spec, x);
    };
    const std::vector<OperatorElement> sample = {block_element(1, 0), block_element(0, 1),
                                                 block_element(1, 0), block_element(1, 1)};
    const PartitionReport rep = orbit_partition(spec, sample);
    ASSERT_EQ(rep.classes.size(), 3u);
    EXPECT_EQ(rep.classes[0].rank_vector, (std::vector<int>{1, 0}));
    EXPECT_EQ(rep.classes[1].rank_vector, (std::vector<int>{0, 1}));
    EXPECT_EQ(rep.classes[0].members, (std::vector<int>{0, 2}));
    EXPECT_TRUE(rep.across_classes_distinct);
}

TEST(Schatten, FrozenOraclesAndChain) {
    Mat d = Mat::Zero(3, 3);
    d(0, 0) = cxd(1, 0);
    d(1, 1) = cxd(2, 0);
    d(2, 2) = cxd(3, 0);
    EXPECT_NEAR(schatten_norm(d, 1.0), 6.0, 1e-13);
    EXPECT_NEAR(schatten_norm(d, 2.0), std::sqrt(14.0), 1e-13);
    EXPECT_NEAR(schatten_norm(d, 4.0), std::pow(98.0, 0.25), 1e-13);
    EXPECT_NEAR(schatten_norm(d, kSchattenInf), 3.0, 1e-14);

    for (int n = 2; n <= 4; ++n)
        EXPECT_NEAR(schatten_norm(Mat::Identity(n, n), 1.7), std::pow(double(n), 1.0 / 1.7),
                    1e-13);

    Rng rng(53u);
    const Mat r1 = random_rank(rng, 4, 1);
    const double s1 = schatten_norm(r1, kSchattenInf);
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0})
        EXPECT_NEAR(schatten_norm(r1, p), s1, 1e-12 * (1.0 + s1));

    EXPECT_THROW(schatten_norm(r1, 0.5), std::invalid_argument);

    for (int trial = 0; trial < 25; ++trial) {
        const NormChainReport rep = norm_chain_report(rng.cgaussian(4, 4), 1.3, 5.0);
        EXPECT_TRUE(rep.chain_ok);
        EXPECT_LE(rep.trace_abs, rep.norm_1 * (1.0 + 1e-13));
    }
    EXPECT_THROW(norm_chain_report(r1, 2.5, 4.0), std::invalid_argument);
}

TEST(PairSubPoisson, FullUnitChartAndDegenerateCases) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(2);
    const ProjectionElement unit(spec, Mat::Identity(2, 2));
    const PairSubPoissonReport rep = pair_groupoid_subpoisson_check(spec, unit, 5, 61u);
    EXPECT_EQ(rep.chart_dim, 8);
    EXPECT_FALSE(rep.degenerate);
    EXPECT_TRUE(rep.graph_coisotropic);
    EXPECT_TRUE(rep.graph_lagrangian);
    EXPECT_LE(rep.coisotropy_residual, 1e-9);
    EXPECT_LE(rep.lagrangian_residual, 1e-9);
    EXPECT_LE(rep.anchor_diagram_residual, 1e-12);

    const ProjectionElement zero(spec, Mat::Zero(2, 2));
    const PairSubPoissonReport degenerate = pair_groupoid_subpoisson_check(spec, zero, 5, 67u);
    EXPECT_TRUE(degenerate.degenerate);
    EXPECT_EQ(degenerate.chart_dim, 0);
    EXPECT_TRUE(degenerate.graph_coisotropic);
}

TEST(PairSubPoisson, RankOneChartAndBlockAlgebra) {
    const StarAlgebraSpec spec = StarAlgebraSpec::full(2);
    Rng rng(71u);
    const ProjectionElement p0(spec, random_projection(rng, 2, 1));
    const PairSubPoissonReport rep = pair_groupoid_subpoisson_check(spec, p0, 50, 73u);
    EXPECT_EQ(rep.chart_dim, 4);
    EXPECT_TRUE(rep.graph_coisotropic);
    EXPECT_TRUE(rep.graph_lagrangian);
    EXPECT_LE(rep.coisotropy_residual, 1e-9);
    EXPECT_LE(rep.anchor_diagram_residual, 1e-12);

    const StarAlgebraSpec blocks(4, {2, 2});
    const ProjectionElement bu(blocks, blocks.unit());
    const PairSubPoissonReport brep = pair_groupoid_subpoisson_check(blocks, bu, 3, 79u);
    EXPECT_EQ(brep.chart_dim, 16);
    EXPECT_TRUE(brep.graph_coisotropic);
    EXPECT_TRUE(brep.graph_lagrangian);
}

}  // namespace
}  // namespace pgl
