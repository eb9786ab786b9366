/**
 * @file generators.hpp
 * @brief Seeded random instances shared by the test suites and the CLI:
 *        Poisson spaces (symplectic and degenerate), morphism/relation
 *        batteries, and Jacobi-valid Lie structure constants.
 */
#pragma once

#include "pgl/core.hpp"
#include "pgl/linear_poisson.hpp"
#include "pgl/poisson_jet.hpp"
#include "pgl/structure_constants.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgl {

/// Random invertible real matrix with unit-scale entries and bounded condition.
inline RMat random_invertible(Rng& rng, int n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        RMat A = rng.gaussian(n, n);
        Eigen::JacobiSVD<RMat> svd(A);
        const double smin = svd.singularValues()(n - 1);
        const double smax = svd.singularValues()(0);
        if (smin > 1e-3 * smax) return A;
    }
    throw std::runtime_error("random_invertible: persistent ill-conditioning");
}

/// Random real skew matrix.
inline RMat random_skew(Rng& rng, int n) {
    RMat A = rng.gaussian(n, n);
    return 0.5 * (A - A.transpose());
}

/// Random invertible real skew matrix (n must be even).
inline RMat random_invertible_skew(Rng& rng, int n) {
    if (n % 2 != 0) throw std::invalid_argument("random_invertible_skew: n must be even");
    for (int attempt = 0; attempt < 64; ++attempt) {
        RMat S = random_skew(rng, n);
        if (numerical_rank(to_complex(S)) == n && std::abs(S.determinant()) > 1e-6) return S;
    }
    throw std::runtime_error("random_invertible_skew: persistent degeneracy");
}

/**
 * Random symplectic linear Poisson space of even dimension d: E-flat is the
 * full dual in a random orthonormal functional basis B, and the anchor
 * P = B^T S with S invertible skew (so G = B P = S).
 */
inline LinearPoissonSpace random_symplectic_space(Rng& rng, int d, double tol = kDefaultTol) {
    const RMat B = rng.orthogonal(d);
    const RMat S = random_invertible_skew(rng, d);
    return LinearPoissonSpace(d, to_complex(B), to_complex(RMat(B.transpose() * S)), tol);
}

/**
 * Random (generally degenerate) space: k functionals out of d, anchor
 * P = B^T S + (I - B^T B) Y with S skew k x k; the second term lies in the
 * ambient complement of E-flat, so G = B P = S remains skew.
 */
inline LinearPoissonSpace random_space(Rng& rng, int d, int k, double tol = kDefaultTol) {
    if (k > d) throw std::invalid_argument("random_space: k must be <= d");
    const RMat Bfull = rng.orthogonal(d);
    const RMat B = Bfull.topRows(k);
    const RMat S = random_skew(rng, k);
    const RMat Y = rng.gaussian(d, k);
    const RMat P = B.transpose() * S + (RMat::Identity(d, d) - B.transpose() * B) * Y;
    return LinearPoissonSpace(d, to_complex(B), to_complex(P), tol);
}

/// Random subspace of dimension m inside R^d (coordinates of its span i.i.d.).
inline Subspace random_subspace(Rng& rng, int d, int m, double tol = kDefaultTol) {
    return Subspace(d, to_complex(rng.gaussian(d, m)), tol);
}

/// A full-dual space (B orthonormal d x d) together with its skew Gram.
struct FullDualSpace {
    LinearPoissonSpace space;
    RMat B;
    RMat S;  // Gram in the B basis
};

inline FullDualSpace random_full_dual_space(Rng& rng, int d, double tol = kDefaultTol) {
    FullDualSpace out;
    out.B = rng.orthogonal(d);
    out.S = random_skew(rng, d);
    out.space = LinearPoissonSpace(d, to_complex(out.B), to_complex(RMat(out.B.transpose() * out.S)), tol);
    return out;
}

/// A matched morphism instance: phi with P2 = phi Pi1 phi^T pushed forward.
struct MorphismInstance {
    LinearPoissonSpace source;
    LinearPoissonSpace target;
    RMat phi;
};

/**
 * Random Poisson morphism battery member: the source is a random full-dual
 * space, phi : E1 -> E2 is a random matrix, and the target carries the
 * pushforward bivector Pi2 = phi Pi1 phi^T (ambient-skew by construction);
 * sign = -1 produces an anti-morphism pair instead.
 */
inline MorphismInstance random_morphism_instance(Rng& rng, int d1, int d2, int sign = 1,
                                                 double tol = kDefaultTol) {
    MorphismInstance out;
    const FullDualSpace fd = random_full_dual_space(rng, d1, tol);
    out.source = fd.space;
    out.phi = rng.gaussian(d2, d1);
    const RMat Pi1 = fd.B.transpose() * fd.S * fd.B;  // ambient bivector of the source
    const RMat Pi2 = static_cast<double>(sign) * out.phi * Pi1 * out.phi.transpose();
    const RMat B2 = rng.orthogonal(d2);
    out.target = LinearPoissonSpace(d2, to_complex(B2), to_complex(RMat(Pi2 * B2.transpose())), tol);
    return out;
}

/// Corrupts the target anchor with a random ambient skew perturbation.
inline MorphismInstance random_non_morphism_instance(Rng& rng, int d1, int d2,
                                                     double magnitude = 0.1,
                                                     double tol = kDefaultTol) {
    MorphismInstance out = random_morphism_instance(rng, d1, d2, 1, tol);
    const RMat delta = magnitude * random_skew(rng, d2);
    const Mat B2 = out.target.flat_basis;
    const Mat P2 = out.target.anchor + to_complex(delta) * B2.transpose();
    out.target = LinearPoissonSpace(d2, B2, P2, tol);
    return out;
}

/// Random coisotropic subspace of S: preimage of a random subspace under a
/// symplectic-leaf construction — here, sum of a random isotropic piece and
/// its P-orthogonal complement is avoided in favor of the direct recipe:
/// take F = perp of a random subspace of ker-extended flat, then certify.
inline Subspace random_coisotropic(Rng& rng, const LinearPoissonSpace& S, int tries = 64) {
    // span{P(V)} + W for random V ⊆ E-flat-coords and any complement piece is
    // not automatically coisotropic; instead use F = (V)^{perp_P} with V
    // isotropic: in a full-dual symplectic space, perp_P of an isotropic
    // subspace is coisotropic. General recipe: start from a random subspace C0
    // and grow it by P(C0^0) until the classification certifies.
    for (int t = 0; t < tries; ++t) {
        const int m = 1 + rng.below(S.dim_E);
        Subspace F = random_subspace(rng, S.dim_E, m, S.tol);
        for (int grow = 0; grow < S.dim_E + 1; ++grow) {
            const SubspaceClass cls = classify_subspace(S, F);
            if (cls.coisotropic) return F;
            const Subspace Fp = perp_P(S, F);
            Mat joined(S.dim_E, F.span.cols() + Fp.span.cols());
            joined << F.span, Fp.span;
            F = Subspace(S.dim_E, joined, S.tol);
        }
    }
    throw std::runtime_error("random_coisotropic: failed to certify");
}

/// Jacobi-valid structure constants: block sums of classical algebras in a
/// random conjugated basis.
inline StructureConstants random_structure_constants(Rng& rng, int dim) {
    using namespace algebras;
    StructureConstants base(0);
    auto append = [&base](const StructureConstants& blk) { base = direct_sum(base, blk); };
    int remaining = dim;
    while (remaining > 0) {
        const int pick = static_cast<int>(rng.below(6));
        if (remaining >= 3 && pick == 0) { append(so3()); remaining -= 3; }
        else if (remaining >= 3 && pick == 1) { append(heisenberg3()); remaining -= 3; }
        else if (remaining >= 3 && pick == 2) { append(sl2()); remaining -= 3; }
        else if (remaining >= 3 && pick == 3) { append(e2()); remaining -= 3; }
        else if (remaining >= 2 && pick == 4) { append(aff1()); remaining -= 2; }
        else { append(abelian(1)); remaining -= 1; }
    }
    const RMat T = random_invertible(rng, dim);
    return base.conjugated(T);
}

/// Poisson bivector field: Lie-Poisson structure of a random Jacobi-valid
/// algebra (linear entries, exact jets).
inline BivectorField random_poisson_bivector(Rng& rng, int dim) {
    return lie_poisson_bivector(random_structure_constants(rng, dim));
}

/// Bivector field with random linear-plus-quadratic entries, rejected until
/// the Jacobi defect at an audit point is decisively nonzero (>= floor).
inline BivectorField random_non_poisson_bivector(Rng& rng, int dim, double floor = 1e-2) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        // Entry data for i < j: constant + linear + quadratic coefficients.
        struct EntryPoly {
            double c0;
            RVec c1;
            RMat c2;  // symmetric
        };
        std::vector<std::vector<EntryPoly>> data(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            data[static_cast<size_t>(i)].resize(static_cast<size_t>(dim));
            for (int j = i + 1; j < dim; ++j) {
                EntryPoly p;
                p.c0 = rng.uniform(-1.0, 1.0);
                p.c1 = rng.gaussian(dim, 1).col(0);
                const RMat q = rng.gaussian(dim, dim);
                p.c2 = 0.5 * (q + q.transpose());
                data[static_cast<size_t>(i)][static_cast<size_t>(j)] = p;
            }
        }
        BivectorField W;
        W.dim = dim;
        W.flat_rows = RMat::Identity(dim, dim);
        W.entry = [dim, data = std::move(data)](int i, int j, const RVec& x) {
            if (i == j) return Jet2::constant(0.0, dim);
            const double sign = (i < j) ? 1.0 : -1.0;
            const auto& p = data[static_cast<size_t>(std::min(i, j))][static_cast<size_t>(std::max(i, j))];
            Jet2 e = Jet2::constant(p.c0, dim);
            e.v += p.c1.dot(x) + x.dot(p.c2 * x);
            e.g = p.c1 + 2.0 * (p.c2 * x);
            e.h = 2.0 * p.c2;
            return sign * e;
        };
        // Audit the Jacobi defect at a few points on coordinate triples.
        double defect = 0.0;
        for (int probe = 0; probe < 3; ++probe) {
            const RVec x = rng.gaussian(dim, 1).col(0);
            for (int a = 0; a < dim && defect < floor; ++a)
                for (int b = a + 1; b < dim && defect < floor; ++b)
                    for (int c = b + 1; c < dim && defect < floor; ++c)
                        defect = std::max(defect,
                                          std::abs(jacobiator(W, ScalarField::coordinate(dim, a),
                                                              ScalarField::coordinate(dim, b),
                                                              ScalarField::coordinate(dim, c), x)));
            if (defect >= floor) break;
        }
        if (defect >= floor) return W;
    }
    throw std::runtime_error("random_non_poisson_bivector: rejection sampling failed");
}

}  // namespace pgl
