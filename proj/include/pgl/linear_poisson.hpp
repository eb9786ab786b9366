/**
 * @file linear_poisson.hpp
 * @brief Finite-dimensional linear partial Poisson spaces: subspace calculus
 *        (annihilators, P-orthogonals), isotropy classification, Poisson
 *        morphism tests, and linear Poisson relations with composition.
 *
 * Model: a triple (E-flat, E, P). E = R^d (or C^d, bilinear pairings), E-flat
 * is the row span of an explicit functional basis B (k x d), and the anchor
 * P (d x k) maps E-flat coordinates to E. Skewness of the pairing Gram
 * G = B P is the defining invariant: <w1, P w2> = -<w2, P w1>.
 *
 * Sign pins used throughout the library:
 *   Omega_P(alpha, beta) = <alpha, P beta>, and the induced bracket satisfies
 *   {x1, x2} = +1 on the standard symplectic plane.
 */
#pragma once

#include "pgl/core.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace pgl {

/// Exact linear subspace, stored as an orthonormal column basis.
struct Subspace {
    int ambient_dim = 0;
    Mat span;  // ambient_dim x dim(), orthonormal columns
    double tol = kDefaultTol;

    Subspace() = default;

    /// Reduces an arbitrary spanning set to an orthonormal basis on construction.
    Subspace(int ambient, const Mat& raw_span, double tolerance = kDefaultTol)
        : ambient_dim(ambient), tol(tolerance) {
        if (raw_span.size() != 0 && raw_span.rows() != ambient)
            throw std::invalid_argument("Subspace: span rows must equal ambient_dim");
        span = (raw_span.size() == 0) ? Mat(ambient, 0) : orthonormal_range(raw_span);
    }

    static Subspace full(int ambient, double tolerance = kDefaultTol) {
        return Subspace(ambient, Mat::Identity(ambient, ambient), tolerance);
    }

    static Subspace zero(int ambient, double tolerance = kDefaultTol) {
        return Subspace(ambient, Mat(ambient, 0), tolerance);
    }

    int dim() const { return static_cast<int>(span.cols()); }

    /// Relative projection residual of v; membership iff <= tol.
    double membership(const CVec& v) const { return membership_residual(span, v); }

    bool contains(const CVec& v) const { return membership(v) <= tol; }
};

/// Finite model of a partial linear Poisson space (E-flat, E, P).
struct LinearPoissonSpace {
    int dim_E = 0;
    Mat flat_basis;  // k x dim_E, rows span E-flat (independent, validated)
    Mat anchor;      // dim_E x k, E-flat coordinates -> E
    double tol = kDefaultTol;

    LinearPoissonSpace() = default;

    LinearPoissonSpace(int dim, Mat B, Mat P, double tolerance = kDefaultTol)
        : dim_E(dim), flat_basis(std::move(B)), anchor(std::move(P)), tol(tolerance) {
        if (flat_basis.cols() != dim_E)
            throw std::invalid_argument("LinearPoissonSpace: flat_basis must have dim_E columns");
        if (anchor.rows() != dim_E || anchor.cols() != flat_basis.rows())
            throw std::invalid_argument("LinearPoissonSpace: anchor must be dim_E x k");
        if (numerical_rank(flat_basis) != flat_basis.rows())
            throw std::invalid_argument("LinearPoissonSpace: flat_basis rows must be independent");
        if (skewness_residual() > tol)
            throw std::invalid_argument("LinearPoissonSpace: pairing Gram B*P is not skew");
    }

    int flat_dim() const { return static_cast<int>(flat_basis.rows()); }

    /// Pairing Gram G = B P with G(i,j) = <beta_i, P beta_j>; skew.
    Mat gram() const { return flat_basis * anchor; }

    double skewness_residual() const {
        const Mat G = flat_basis * anchor;
        if (G.size() == 0) return 0.0;
        return rel(max_norm(Mat(G + G.transpose())), max_norm(G));
    }

    /// Symplectic iff the anchor is a bijection E-flat-coords -> E.
    bool symplectic() const {
        return flat_dim() == dim_E && numerical_rank(anchor) == dim_E;
    }

    /// Ambient span of E-flat (columns = functionals as covectors).
    Mat flat_ambient() const { return orthonormal_range(flat_basis.transpose()); }
};

/// Linear relation between two spaces, stored through its graph subspace.
struct LinearRelation {
    int dim_1 = 0;
    int dim_2 = 0;
    Subspace graph;  // subspace of the product, ambient dim_1 + dim_2

    LinearRelation() = default;

    LinearRelation(int d1, int d2, Subspace g) : dim_1(d1), dim_2(d2), graph(std::move(g)) {
        if (graph.ambient_dim != dim_1 + dim_2)
            throw std::invalid_argument("LinearRelation: graph ambient must be dim_1 + dim_2");
    }

    /// Graph of a linear map phi : E1 -> E2 as a relation.
    static LinearRelation graph_of(const Mat& phi, double tol = kDefaultTol) {
        const int d1 = static_cast<int>(phi.cols());
        const int d2 = static_cast<int>(phi.rows());
        Mat cols(d1 + d2, d1);
        cols.topRows(d1) = Mat::Identity(d1, d1);
        cols.bottomRows(d2) = phi;
        return LinearRelation(d1, d2, Subspace(d1 + d2, cols, tol));
    }
};

/// Annihilator {alpha in the full dual : alpha(u) = 0 for all u in F}.
inline Subspace annihilator(const Subspace& F) {
    return Subspace(F.ambient_dim, nullspace(F.span.transpose()), F.tol);
}

/**
 * F^0 = annihilator(F) ∩ E-flat, returned in E-flat coordinates
 * (an ambient-dim-k subspace; coordinates taken against the rows of B).
 */
inline Subspace zero_space(const LinearPoissonSpace& S, const Subspace& F) {
    if (F.ambient_dim != S.dim_E)
        throw std::invalid_argument("zero_space: F must live in E");
    const Mat ann = nullspace(F.span.transpose());
    const Mat inter = intersect_spans(ann, S.flat_basis.transpose());
    if (inter.cols() == 0) return Subspace::zero(S.flat_dim(), S.tol);
    // Coordinates a solving B^T a = alpha, column by column.
    Mat coords(S.flat_dim(), inter.cols());
    for (Eigen::Index j = 0; j < inter.cols(); ++j)
        coords.col(j) = min_norm_solve(S.flat_basis.transpose(), inter.col(j));
    return Subspace(S.flat_dim(), coords, S.tol);
}

/// F^{perp_P} = P(F^0), as a subspace of E.
inline Subspace perp_P(const LinearPoissonSpace& S, const Subspace& F) {
    const Subspace F0 = zero_space(S, F);
    if (F0.dim() == 0) return Subspace::zero(S.dim_E, S.tol);
    return Subspace(S.dim_E, S.anchor * F0.span, S.tol);
}

/**
 * A^{perp_P} = {w in E-flat : <w, P alpha> = 0 for all alpha in A}, with A and
 * the result in E-flat coordinates. Always contains ker P.
 */
inline Subspace orth_flat(const LinearPoissonSpace& S, const Subspace& A) {
    if (A.ambient_dim != S.flat_dim())
        throw std::invalid_argument("orth_flat: A must be given in E-flat coordinates");
    if (A.dim() == 0) return Subspace::full(S.flat_dim(), S.tol);
    const Mat G = S.gram();
    const Mat M = (G * A.span).transpose();  // rows: a -> <., P a> functionals
    return Subspace(S.flat_dim(), nullspace(M), S.tol);
}

/// Isotropy classification of a subspace F of E.
struct SubspaceClass {
    bool coisotropic = false;
    bool lagrangian = false;
    double coisotropy_residual = 0.0;  // max |<w1, P w2>| over F^0 basis pairs, relative
    double lagrangian_residual = 0.0;  // span gap between P(F^0) and F
};

inline SubspaceClass classify_subspace(const LinearPoissonSpace& S, const Subspace& F) {
    SubspaceClass out;
    const Subspace F0 = zero_space(S, F);
    const Mat G = S.gram();
    const double scale = max_norm(G);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < F0.span.cols(); ++i)
        for (Eigen::Index j = 0; j < F0.span.cols(); ++j) {
            const cxd v = (F0.span.col(i).transpose() * G * F0.span.col(j))(0, 0);
            worst = std::max(worst, std::abs(v));
        }
    out.coisotropy_residual = rel(worst, scale);
    out.coisotropic = out.coisotropy_residual <= S.tol;

    const Subspace PF0 = (F0.dim() == 0) ? Subspace::zero(S.dim_E, S.tol)
                                         : Subspace(S.dim_E, S.anchor * F0.span, S.tol);
    out.lagrangian_residual = span_distance(PF0.span, F.span);
    out.lagrangian = out.lagrangian_residual <= S.tol;
    return out;
}

/// Product space with anchor (P1, sign * P2) and E-flat = E1-flat x E2-flat.
inline LinearPoissonSpace product_space(const LinearPoissonSpace& S1,
                                        const LinearPoissonSpace& S2, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("product_space: sign must be +1 or -1");
    const int d = S1.dim_E + S2.dim_E;
    const int k = S1.flat_dim() + S2.flat_dim();
    Mat B = Mat::Zero(k, d);
    B.topLeftCorner(S1.flat_dim(), S1.dim_E) = S1.flat_basis;
    B.bottomRightCorner(S2.flat_dim(), S2.dim_E) = S2.flat_basis;
    Mat P = Mat::Zero(d, k);
    P.topLeftCorner(S1.dim_E, S1.flat_dim()) = S1.anchor;
    P.bottomRightCorner(S2.dim_E, S2.flat_dim()) = static_cast<double>(sign) * S2.anchor;
    return LinearPoissonSpace(d, B, P, std::max(S1.tol, S2.tol));
}

/// Poisson-morphism test report for a linear map phi : E1 -> E2.
struct MorphismReport {
    double pullback_residual = 0.0;  // phi*(E2-flat) ⊆ E1-flat violation
    double anchor_residual = 0.0;    // |P2 -+ phi P1 phi*| relative, in flat coordinates
    bool pullback_ok = false;
    bool morphism = false;
};

/**
 * Checks phi* (E2-flat) ⊆ E1-flat first (separate residual), then the anchor
 * condition P2 = phi ∘ P1 ∘ phi* (or P2 = -phi P1 phi* when anti) expressed in
 * the two E-flat coordinate systems.
 */
inline MorphismReport is_poisson_morphism(const LinearPoissonSpace& S1,
                                          const LinearPoissonSpace& S2, const Mat& phi,
                                          bool anti = false) {
    if (phi.rows() != S2.dim_E || phi.cols() != S1.dim_E)
        throw std::invalid_argument("is_poisson_morphism: phi must map E1 -> E2");
    MorphismReport out;

    // Pullback functionals phi^T B2^T, tested against the ambient span of E1-flat.
    const Mat pulled = phi.transpose() * S2.flat_basis.transpose();  // d1 x k2
    const Mat flat1 = S1.flat_ambient();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < pulled.cols(); ++j)
        worst = std::max(worst, membership_residual(flat1, pulled.col(j)));
    out.pullback_residual = worst;
    out.pullback_ok = worst <= std::max(S1.tol, S2.tol);

    // Coordinates of the pullbacks against B1 (minimal-norm lift; exact when
    // the pullback condition holds).
    Mat C(S1.flat_dim(), pulled.cols());
    for (Eigen::Index j = 0; j < pulled.cols(); ++j)
        C.col(j) = min_norm_solve(S1.flat_basis.transpose(), pulled.col(j));

    const Mat M = phi * S1.anchor * C;  // d2 x k2
    const Mat target = anti ? Mat(-S2.anchor) : S2.anchor;
    const double scale =
        std::max(max_norm(S2.anchor), max_norm(phi) * max_norm(S1.anchor) * max_norm(phi));
    out.anchor_residual = rel(max_norm(Mat(target - M)), scale);
    out.morphism = out.pullback_ok && out.anchor_residual <= std::max(S1.tol, S2.tol);
    return out;
}

/**
 * Composition S ∘ R of linear relations R : E1 -> E2, S : E2 -> E3, computed
 * as the projection onto coordinates (1,3) of (R x S) ∩ (E1 x Δ2 x E3).
 */
inline LinearRelation relation_compose(const LinearRelation& R, const LinearRelation& Sr) {
    if (R.dim_2 != Sr.dim_1)
        throw std::invalid_argument("relation_compose: middle dimensions must match");
    const Mat R1 = R.graph.span.topRows(R.dim_1);
    const Mat R2 = R.graph.span.bottomRows(R.dim_2);
    const Mat S1 = Sr.graph.span.topRows(Sr.dim_1);
    const Mat S2 = Sr.graph.span.bottomRows(Sr.dim_2);
    Mat match(R.dim_2, R.graph.dim() + Sr.graph.dim());
    match << R2, -S1;
    const Mat N = nullspace(match);
    Mat cols(R.dim_1 + Sr.dim_2, N.cols());
    if (N.cols() > 0) {
        cols.topRows(R.dim_1) = R1 * N.topRows(R.graph.dim());
        cols.bottomRows(Sr.dim_2) = S2 * N.bottomRows(Sr.graph.dim());
    }
    const double tol = std::max(R.graph.tol, Sr.graph.tol);
    return LinearRelation(R.dim_1, Sr.dim_2, Subspace(R.dim_1 + Sr.dim_2, cols, tol));
}

/// Thrown when an operation requires a coisotropic input and the check fails.
struct NotCoisotropicError : std::runtime_error {
    double residual;
    explicit NotCoisotropicError(const std::string& what, double r)
        : std::runtime_error(what + " (violating residual " + std::to_string(r) + ")"),
          residual(r) {}
};

/// Image of a coisotropic subspace under a Poisson relation, with certificate.
struct RelationImage {
    Subspace image;
    SubspaceClass certificate;
};

/**
 * R(C) = {y : (x,y) in R, x in C}. Pre-checks that C is coisotropic in S1 and
 * that R's graph is coisotropic in E1 x E2^- (refusal on violation); the
 * output is classified in S2 and returned with its certificate.
 */
inline RelationImage relation_apply(const LinearPoissonSpace& S1, const LinearPoissonSpace& S2,
                                    const LinearRelation& R, const Subspace& C) {
    if (R.dim_1 != S1.dim_E || R.dim_2 != S2.dim_E)
        throw std::invalid_argument("relation_apply: relation endpoints must match the spaces");
    if (C.ambient_dim != S1.dim_E)
        throw std::invalid_argument("relation_apply: C must live in E1");
    const SubspaceClass c_class = classify_subspace(S1, C);
    if (!c_class.coisotropic)
        throw NotCoisotropicError("relation_apply: C is not coisotropic", c_class.coisotropy_residual);
    const LinearPoissonSpace prod = product_space(S1, S2, -1);
    const SubspaceClass r_class = classify_subspace(prod, R.graph);
    if (!r_class.coisotropic)
        throw NotCoisotropicError("relation_apply: R is not a Poisson relation", r_class.coisotropy_residual);

    const Mat R1 = R.graph.span.topRows(R.dim_1);
    const Mat R2 = R.graph.span.bottomRows(R.dim_2);
    Mat match(R.dim_1, R.graph.dim() + C.dim());
    match << R1, -C.span;
    const Mat N = nullspace(match);
    Mat cols(R.dim_2, N.cols());
    if (N.cols() > 0) cols = R2 * N.topRows(R.graph.dim());
    RelationImage out;
    out.image = Subspace(S2.dim_E, cols, std::max(S1.tol, S2.tol));
    out.certificate = classify_subspace(S2, out.image);
    return out;
}

/// Leaf 2-form value with the preimage-independence audit.
struct LeafFormValue {
    double value = 0.0;
    double independence_residual = 0.0;  // recomputation with a shifted preimage
};

/**
 * omega_N(u, v) = <alpha, v> for any alpha with P(alpha) = u; both u and v must
 * lie in image(P) (minimal-norm preimages, validated). Well-definedness is
 * re-verified by shifting alpha by a kernel element of P.
 */
inline LeafFormValue leaf_form(const LinearPoissonSpace& S, const CVec& u, const CVec& v) {
    const double scale = std::max({max_norm(S.anchor), u.cwiseAbs().maxCoeff(), v.cwiseAbs().maxCoeff()});
    const CVec alpha = min_norm_solve(S.anchor, u);
    const double ru = rel((S.anchor * alpha - u).cwiseAbs().maxCoeff(), scale);
    if (ru > S.tol)
        throw std::invalid_argument("leaf_form: u is not in the image of the anchor");
    const CVec beta = min_norm_solve(S.anchor, v);
    const double rv = rel((S.anchor * beta - v).cwiseAbs().maxCoeff(), scale);
    if (rv > S.tol)
        throw std::invalid_argument("leaf_form: v is not in the image of the anchor");

    const auto pair_with = [&](const CVec& a) {
        return ((S.flat_basis.transpose() * a).transpose() * v)(0, 0);
    };
    const cxd val = pair_with(alpha);
    LeafFormValue out;
    out.value = val.real();

    const Mat ker = nullspace(S.anchor);
    if (ker.cols() > 0) {
        CVec shift = CVec::Zero(S.flat_dim());
        for (Eigen::Index j = 0; j < ker.cols(); ++j) shift += ker.col(j);
        const cxd val2 = pair_with(CVec(alpha + shift));
        out.independence_residual = rel(std::abs(val2 - val), std::abs(val) + scale);
    }
    return out;
}

}  // namespace pgl
