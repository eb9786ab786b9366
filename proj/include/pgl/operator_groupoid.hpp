/**
 * @file operator_groupoid.hpp
 * @brief The groupoid of a finite-dimensional matrix *-algebra over its
 *        projection lattice: polar decomposition, source/target projections,
 *        partial-isometry structure, Murray-von Neumann orbit partition,
 *        Schatten norms, and the pair-groupoid sub-Poisson check.
 *
 * Conventions:
 *   - Algebras are block-diagonal *-subalgebras of n x n matrices; membership
 *     is the exact sparsity pattern (entries outside the blocks vanish).
 *   - polar_decompose(x) = u |x| with |x| = V Sigma V^* and u = W_r V_r^*
 *     assembled from singular directions above the rank cutoff
 *     n * sigma_max * 1e-12, so u is the partial isometry with initial domain
 *     (ker x)^perp extended by zero. s(x) = u^* u, t(x) = u u^*.
 *   - The zero operator has s(0) = t(0) = 0 and inverts to itself.
 *   - Near-projections are re-projected only at construction (Hermitian part
 *     plus eigenvalue rounding) and the adjustment magnitude is recorded;
 *     composability is checked, never snapped.
 */
#pragma once

#include "pgl/core.hpp"
#include "pgl/linear_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgl {

/// Block-diagonal *-subalgebra of n x n matrices; one block of size n is the
/// full algebra. Blocks sum to at most n; the remaining corner is zero.
struct StarAlgebraSpec {
    int n = 0;
    std::vector<int> block_sizes;
    double tol = kDefaultTol;

    StarAlgebraSpec(int ambient, std::vector<int> blocks, double tolerance = kDefaultTol)
        : n(ambient), block_sizes(std::move(blocks)), tol(tolerance) {
        if (n <= 0) throw std::invalid_argument("StarAlgebraSpec: ambient size must be positive");
        int sum = 0;
        for (int b : block_sizes) {
            if (b <= 0) throw std::invalid_argument("StarAlgebraSpec: block sizes must be positive");
            sum += b;
        }
        if (sum > n) throw std::invalid_argument("StarAlgebraSpec: blocks exceed ambient size");
    }

    static StarAlgebraSpec full(int n, double tolerance = kDefaultTol) {
        return StarAlgebraSpec(n, {n}, tolerance);
    }

    int block_count() const { return static_cast<int>(block_sizes.size()); }

    int block_offset(int b) const {
        int off = 0;
        for (int i = 0; i < b; ++i) off += block_sizes[static_cast<size_t>(i)];
        return off;
    }

    /// Largest entry outside the allowed sparsity pattern, relative.
    double membership(const Mat& x) const {
        if (x.rows() != n || x.cols() != n)
            throw std::invalid_argument("StarAlgebraSpec: wrong matrix size");
        Mat masked = x;
        for (int b = 0; b < block_count(); ++b) {
            const int off = block_offset(b);
            const int sz = block_sizes[static_cast<size_t>(b)];
            masked.block(off, off, sz, sz).setZero();
        }
        return rel(max_norm(masked), max_norm(x));
    }

    void require_member(const Mat& x, const std::string& who) const {
        if (membership(x) > tol)
            throw std::invalid_argument(who + ": matrix is not in the algebra");
    }

    /// Unit of the algebra: identity on the blocks, zero on the corner.
    Mat unit() const {
        Mat u = Mat::Zero(n, n);
        for (int b = 0; b < block_count(); ++b) {
            const int off = block_offset(b);
            const int sz = block_sizes[static_cast<size_t>(b)];
            u.block(off, off, sz, sz) = Mat::Identity(sz, sz);
        }
        return u;
    }

    /// Per-block numerical ranks; the Murray-von Neumann invariant.
    std::vector<int> block_rank_vector(const Mat& x) const {
        std::vector<int> ranks;
        for (int b = 0; b < block_count(); ++b) {
            const int off = block_offset(b);
            const int sz = block_sizes[static_cast<size_t>(b)];
            ranks.push_back(static_cast<int>(numerical_rank(Mat(x.block(off, off, sz, sz)))));
        }
        return ranks;
    }
};

/// Validated projection of the algebra. Near-projections are snapped through
/// the Hermitian part and eigenvalue rounding; the adjustment is recorded.
struct ProjectionElement {
    Mat p;
    double adjustment = 0.0;

    ProjectionElement(const StarAlgebraSpec& spec, const Mat& raw) {
        spec.require_member(raw, "ProjectionElement");
        const Mat herm = 0.5 * (raw + raw.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> eig(herm);
        RVec rounded = eig.eigenvalues();
        for (Eigen::Index i = 0; i < rounded.size(); ++i) {
            const double lam = rounded(i);
            if (std::min(std::abs(lam), std::abs(lam - 1.0)) > 0.25)
                throw std::invalid_argument("ProjectionElement: spectrum is not near {0,1}");
            rounded(i) = (lam >= 0.5) ? 1.0 : 0.0;
        }
        p = eig.eigenvectors() * rounded.asDiagonal().toDenseMatrix().cast<cxd>() *
            eig.eigenvectors().adjoint();
        adjustment = max_norm(Mat(p - raw));
    }

    double idempotency_residual() const { return rel(max_norm(Mat(p * p - p)), max_norm(p)); }
    double hermiticity_residual() const { return rel(max_norm(Mat(p - p.adjoint())), max_norm(p)); }
    int rank() const { return static_cast<int>(numerical_rank(p)); }
};

/// Element of the algebra with its cached polar data: x = u |x|, u the
/// partial isometry with initial domain (ker x)^perp, s(x) = u^* u,
/// t(x) = u u^*.
struct OperatorElement {
    StarAlgebraSpec spec;
    Mat x;
    Mat u;
    Mat modulus;
    Mat p;  // source projection u^* u
    Mat q;  // target projection u u^*

    OperatorElement(const StarAlgebraSpec& algebra, const Mat& member)
        : spec(algebra), x(member) {
        spec.require_member(x, "OperatorElement");
        Eigen::JacobiSVD<Mat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const RVec sigma = svd.singularValues();
        const double cut = spec.n * (sigma.size() ? sigma(0) : 0.0) * 1e-12;
        Mat sigma_kept = Mat::Zero(spec.n, spec.n);
        Mat rank_mask = Mat::Zero(spec.n, spec.n);
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (sigma(i) > cut) {
                sigma_kept(i, i) = cxd(sigma(i), 0.0);
                rank_mask(i, i) = cxd(1.0, 0.0);
            }
        modulus = svd.matrixV() * sigma_kept * svd.matrixV().adjoint();
        u = svd.matrixU() * rank_mask * svd.matrixV().adjoint();
        p = u.adjoint() * u;
        q = u * u.adjoint();
        const double scale = max_norm(x);
        if (rel(max_norm(Mat(x - u * modulus)), scale) > spec.tol)
            throw std::runtime_error("OperatorElement: polar reconstruction failed");
        if (spec.membership(u) > spec.tol || spec.membership(modulus) > spec.tol)
            throw std::runtime_error("OperatorElement: polar factors left the algebra");
    }

    double reconstruction_residual() const {
        return rel(max_norm(Mat(x - u * modulus)), max_norm(x));
    }
    double isometry_residual() const {
        return std::max(rel(max_norm(Mat(p * p - p)), 1.0), rel(max_norm(Mat(q * q - q)), 1.0));
    }
    ProjectionElement source_projection() const { return ProjectionElement(spec, p); }
    ProjectionElement target_projection() const { return ProjectionElement(spec, q); }
    std::vector<int> orbit_key() const { return spec.block_rank_vector(p); }
};

inline OperatorElement polar_decompose(const StarAlgebraSpec& spec, const Mat& x) {
    return OperatorElement(spec, x);
}

inline double op_composability_residual(const OperatorElement& x, const OperatorElement& y) {
    return rel(max_norm(Mat(x.p - y.q)), std::max(max_norm(x.p), max_norm(y.q)));
}

/// Algebra product of composable elements, repolarized; the groupoid
/// coherence s(xy) = s(y), t(xy) = t(x) is audited.
inline OperatorElement op_multiply(const OperatorElement& x, const OperatorElement& y) {
    const double r = op_composability_residual(x, y);
    if (r > x.spec.tol) throw NonComposableError(r);
    OperatorElement out(x.spec, Mat(x.x * y.x));
    const double coherence = std::max(rel(max_norm(Mat(out.p - y.p)), 1.0),
                                      rel(max_norm(Mat(out.q - x.q)), 1.0));
    if (coherence > x.spec.tol)
        throw std::runtime_error("op_multiply: source/target coherence failed, residual " +
                                 std::to_string(coherence));
    return out;
}

/// Groupoid inverse i(x) = |x|^+ u^*, the Moore-Penrose pseudo-inverse;
/// x i(x) = t(x) and i(x) x = s(x). The zero element inverts to itself.
inline OperatorElement op_invert(const OperatorElement& x) {
    Eigen::JacobiSVD<Mat> svd(x.x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVec sigma = svd.singularValues();
    const double cut = x.spec.n * (sigma.size() ? sigma(0) : 0.0) * 1e-12;
    Mat inv = Mat::Zero(x.spec.n, x.spec.n);
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cut) inv(i, i) = cxd(1.0 / sigma(i), 0.0);
    return OperatorElement(x.spec, Mat(svd.matrixV() * inv * svd.matrixU().adjoint()));
}

/// Partial-isometry deviation: how far x^* x is from being a projection.
inline double partial_isometry_residual(const OperatorElement& x) {
    const Mat g = x.x.adjoint() * x.x;
    return rel(max_norm(Mat(g * g - g)), max_norm(g));
}

// -------------------------------------------------------------------------
// Murray-von Neumann equivalence and orbits.

struct MvnResult {
    bool equivalent = false;
    std::vector<int> ranks_p;
    std::vector<int> ranks_q;
    Mat witness;             // u with u u^* = p, u^* u = q when equivalent
    double witness_residual = 0.0;
};

/// Equivalence p ~ q via a partial isometry of the algebra: for block
/// algebras, iff the per-block rank vectors match; the witness is assembled
/// blockwise from orthonormal range bases.
inline MvnResult mvn_equivalent(const StarAlgebraSpec& spec, const ProjectionElement& pe,
                                const ProjectionElement& qe) {
    MvnResult out;
    out.ranks_p = spec.block_rank_vector(pe.p);
    out.ranks_q = spec.block_rank_vector(qe.p);
    out.equivalent = (out.ranks_p == out.ranks_q);
    if (!out.equivalent) return out;
    out.witness = Mat::Zero(spec.n, spec.n);
    for (int b = 0; b < spec.block_count(); ++b) {
        const int off = spec.block_offset(b);
        const int sz = spec.block_sizes[static_cast<size_t>(b)];
        const Mat pb = pe.p.block(off, off, sz, sz);
        const Mat qb = qe.p.block(off, off, sz, sz);
        const Mat range_p = orthonormal_range(pb);
        const Mat range_q = orthonormal_range(qb);
        out.witness.block(off, off, sz, sz) = range_p * range_q.adjoint();
    }
    const Mat& w = out.witness;
    out.witness_residual = std::max(rel(max_norm(Mat(w * w.adjoint() - pe.p)), 1.0),
                                    rel(max_norm(Mat(w.adjoint() * w - qe.p)), 1.0));
    return out;
}

struct OrbitClass {
    std::vector<int> rank_vector;
    std::vector<int> members;  // indices into the sample
};

struct PartitionReport {
    std::vector<OrbitClass> classes;
    bool within_classes_equivalent = true;
    bool across_classes_distinct = true;
    double worst_witness_residual = 0.0;
};

/// Partition of a sample by the Murray-von Neumann class of the source
/// projection; within a class all source and target projections are pairwise
/// equivalent (audited through witnesses), across classes never.
inline PartitionReport orbit_partition(const StarAlgebraSpec& spec,
                                       const std::vector<OperatorElement>& sample) {
    PartitionReport rep;
    for (int i = 0; i < static_cast<int>(sample.size()); ++i) {
        const std::vector<int> key = sample[static_cast<size_t>(i)].orbit_key();
        bool placed = false;
        for (OrbitClass& cls : rep.classes)
            if (cls.rank_vector == key) {
                cls.members.push_back(i);
                placed = true;
                break;
            }
        if (!placed) rep.classes.push_back(OrbitClass{key, {i}});
    }
    for (const OrbitClass& cls : rep.classes) {
        std::vector<ProjectionElement> reps;
        for (int i : cls.members) {
            reps.push_back(sample[static_cast<size_t>(i)].source_projection());
            reps.push_back(sample[static_cast<size_t>(i)].target_projection());
        }
        for (size_t a = 0; a < reps.size(); ++a)
            for (size_t b_i = a + 1; b_i < reps.size(); ++b_i) {
                const MvnResult m = mvn_equivalent(spec, reps[a], reps[b_i]);
                rep.within_classes_equivalent = rep.within_classes_equivalent && m.equivalent;
                if (m.equivalent)
                    rep.worst_witness_residual =
                        std::max(rep.worst_witness_residual, m.witness_residual);
            }
    }
    for (size_t a = 0; a < rep.classes.size(); ++a)
        for (size_t b_i = a + 1; b_i < rep.classes.size(); ++b_i) {
            const MvnResult m = mvn_equivalent(
                spec,
                sample[static_cast<size_t>(rep.classes[a].members.front())].source_projection(),
                sample[static_cast<size_t>(rep.classes[b_i].members.front())].source_projection());
            rep.across_classes_distinct = rep.across_classes_distinct && !m.equivalent;
        }
    return rep;
}

// -------------------------------------------------------------------------
// Schatten norms.

inline constexpr double kSchattenInf = std::numeric_limits<double>::infinity();

/// Schatten p-norm (sum sigma_i^p)^{1/p}; p = infinity gives the operator
/// norm sigma_max.
inline double schatten_norm(const Mat& x, double power) {
    if (power < 1.0) throw std::invalid_argument("schatten_norm: p must be >= 1");
    Eigen::JacobiSVD<Mat> svd(x);
    const RVec sigma = svd.singularValues();
    if (sigma.size() == 0) return 0.0;
    if (std::isinf(power)) return sigma.maxCoeff();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) sum += std::pow(sigma(i), power);
    return std::pow(sum, 1.0 / power);
}

struct NormChainReport {
    double p = 1.5, q = 4.0;
    double norm_1 = 0.0, norm_p = 0.0, norm_2 = 0.0, norm_q = 0.0, norm_inf = 0.0;
    double trace_abs = 0.0;
    double worst_violation = 0.0;
    bool chain_ok = true;
};

/// Monotonicity chain ||x||_inf <= ||x||_q <= ||x||_2 <= ||x||_p <= ||x||_1
/// for 1 < p < 2 < q, plus |Tr x| <= ||x||_1.
inline NormChainReport norm_chain_report(const Mat& x, double p = 1.5, double q = 4.0) {
    if (!(p > 1.0 && p < 2.0 && q > 2.0))
        throw std::invalid_argument("norm_chain_report: need 1 < p < 2 < q");
    NormChainReport rep;
    rep.p = p;
    rep.q = q;
    rep.norm_1 = schatten_norm(x, 1.0);
    rep.norm_p = schatten_norm(x, p);
    rep.norm_2 = schatten_norm(x, 2.0);
    rep.norm_q = schatten_norm(x, q);
    rep.norm_inf = schatten_norm(x, kSchattenInf);
    rep.trace_abs = std::abs(x.trace());
    const double steps[5][2] = {{rep.norm_inf, rep.norm_q},
                                {rep.norm_q, rep.norm_2},
                                {rep.norm_2, rep.norm_p},
                                {rep.norm_p, rep.norm_1},
                                {rep.trace_abs, rep.norm_1}};
    for (const auto& st : steps)
        rep.worst_violation = std::max(rep.worst_violation, rel(st[0] - st[1], st[1]));
    rep.chain_ok = rep.worst_violation <= 1e-12;
    return rep;
}

// -------------------------------------------------------------------------
// Pair-groupoid sub-Poisson check over P0 = s^{-1}(p0).

struct PairSubPoissonReport {
    int trials = 0;
    int chart_dim = 0;  // real dimension of the algebra right-ideal M p0
    bool degenerate = false;
    bool graph_coisotropic = true;
    bool graph_lagrangian = true;
    double coisotropy_residual = 0.0;
    double lagrangian_residual = 0.0;
    double anchor_diagram_residual = 0.0;
};

namespace detail {

inline RVec vec_real(const Mat& m) {
    RVec out(2 * m.size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            out(2 * k) = m(i, j).real();
            out(2 * k + 1) = m(i, j).imag();
            ++k;
        }
    return out;
}

/// Real orthonormal basis of the right ideal {x in algebra : x p0 = x}.
inline RMat right_ideal_basis(const StarAlgebraSpec& spec, const Mat& p0) {
    std::vector<RVec> cols;
    for (int b = 0; b < spec.block_count(); ++b) {
        const int off = spec.block_offset(b);
        const int sz = spec.block_sizes[static_cast<size_t>(b)];
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j)
                for (int s = 0; s < 2; ++s) {
                    Mat E = Mat::Zero(spec.n, spec.n);
                    E(off + i, off + j) = (s == 0) ? cxd(1, 0) : cxd(0, 1);
                    cols.push_back(vec_real(Mat(E * p0)));
                }
    }
    if (cols.empty()) return RMat(2 * spec.n * spec.n, 0);
    RMat raw(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) raw.col(static_cast<Eigen::Index>(c)) = cols[c];
    const Mat range = orthonormal_range(to_complex(raw));
    RMat out(raw.rows(), range.cols());
    for (Eigen::Index i = 0; i < range.rows(); ++i)
        for (Eigen::Index j = 0; j < range.cols(); ++j) out(i, j) = range(i, j).real();
    return out;
}

}  // namespace detail

/**
 * Realizes P0 = s^{-1}(p0) as an open set of the right ideal M p0, forms the
 * flat cotangent space T*P0 with the canonical symplectic anchor, and checks
 * two pair-groupoid facts pointwise through the linear Poisson layer: the
 * multiplication graph is coisotropic (indeed Lagrangian) in G x G x G-bar
 * for G = T*P0 x (T*P0)-bar, and the anchor intertwines the source/target
 * differentials (target Poisson, source anti-Poisson).
 */
inline PairSubPoissonReport pair_groupoid_subpoisson_check(const StarAlgebraSpec& spec,
                                                           const ProjectionElement& p0,
                                                           int trials, std::uint64_t seed) {
    PairSubPoissonReport rep;
    rep.trials = trials;
    const RMat ideal = detail::right_ideal_basis(spec, p0.p);
    const int m = static_cast<int>(ideal.cols());
    rep.chart_dim = m;
    if (m == 0) {
        rep.degenerate = true;
        return rep;
    }

    // Canonical anchor on T*P0 in chart coordinates (base then fiber).
    RMat P = RMat::Zero(2 * m, 2 * m);
    P.topRightCorner(m, m) = RMat::Identity(m, m);
    P.bottomLeftCorner(m, m) = -RMat::Identity(m, m);

    // Product structure on G x G x G-bar with G = T*P0 x (T*P0)-bar.
    const int gdim = 4 * m;
    RMat PG = RMat::Zero(gdim, gdim);
    PG.topLeftCorner(2 * m, 2 * m) = P;
    PG.bottomRightCorner(2 * m, 2 * m) = -P;
    RMat ambient = RMat::Zero(3 * gdim, 3 * gdim);
    ambient.block(0, 0, gdim, gdim) = PG;
    ambient.block(gdim, gdim, gdim, gdim) = PG;
    ambient.block(2 * gdim, 2 * gdim, gdim, gdim) = -PG;

    // Graph of m((a,b),(b,c)) = (a,c): coordinates (a,b | b,c | a,c).
    RMat graph = RMat::Zero(3 * gdim, 3 * (2 * m));
    graph.block(0, 0, 2 * m, 2 * m) = RMat::Identity(2 * m, 2 * m);          // a in factor 1
    graph.block(2 * gdim, 0, 2 * m, 2 * m) = RMat::Identity(2 * m, 2 * m);   // a in factor 3
    graph.block(2 * m, 2 * m, 2 * m, 2 * m) = RMat::Identity(2 * m, 2 * m);  // b in factor 1
    graph.block(gdim, 2 * m, 2 * m, 2 * m) = RMat::Identity(2 * m, 2 * m);   // b in factor 2
    graph.block(gdim + 2 * m, 4 * m, 2 * m, 2 * m) = RMat::Identity(2 * m, 2 * m);  // c in 2
    graph.block(2 * gdim + 2 * m, 4 * m, 2 * m, 2 * m) =
        RMat::Identity(2 * m, 2 * m);  // c in 3

    const LinearPoissonSpace big(3 * gdim, Mat::Identity(3 * gdim, 3 * gdim),
                                 to_complex(ambient), spec.tol);
    const Subspace graph_sub(3 * gdim, to_complex(graph), spec.tol);

    Rng root(seed);
    for (int trial = 0; trial < std::max(trials, 1); ++trial) {
        Rng rng = root.fork(static_cast<std::uint64_t>(trial));
        // The structure is constant over the chart; evaluating at sampled
        // points keeps the check honest about where it was run.
        (void)rng.gaussian(2 * m, 1);
        const SubspaceClass cls = classify_subspace(big, graph_sub);
        rep.graph_coisotropic = rep.graph_coisotropic && cls.coisotropic;
        rep.graph_lagrangian = rep.graph_lagrangian && cls.lagrangian;
        rep.coisotropy_residual = std::max(rep.coisotropy_residual, cls.coisotropy_residual);
        rep.lagrangian_residual = std::max(rep.lagrangian_residual, cls.lagrangian_residual);

        // Anchor diagram: dt(PG(t^* eta)) = P eta, ds(PG(s^* eta)) = -P eta.
        const RVec eta = rng.gaussian(2 * m, 1).col(0);
        RVec t_pull = RVec::Zero(gdim);
        t_pull.head(2 * m) = eta;
        RVec s_pull = RVec::Zero(gdim);
        s_pull.tail(2 * m) = eta;
        const RVec via_t = (PG * t_pull).head(2 * m) - P * eta;
        const RVec via_s = (PG * s_pull).tail(2 * m) + P * eta;
        rep.anchor_diagram_residual =
            std::max({rep.anchor_diagram_residual,
                      rel(via_t.cwiseAbs().maxCoeff(), eta.cwiseAbs().maxCoeff()),
                      rel(via_s.cwiseAbs().maxCoeff(), eta.cwiseAbs().maxCoeff())});
    }
    return rep;
}

}  // namespace pgl
