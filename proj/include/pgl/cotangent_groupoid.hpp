/**
 * @file cotangent_groupoid.hpp
 * @brief The symplectic groupoid T*G over g* for a matrix Lie group G:
 *        structure maps in left trivialization, the canonical symplectic form,
 *        the KKS anchor and form on g*, stabilizer subalgebras, GL(n,C)
 *        adjoint-orbit forms, and a theorem suite (axioms, multiplicativity of
 *        omega, fiber orthogonality, Lagrangian sections, dual pair).
 *
 * Conventions:
 *   - Points are stored in left trivialization (g, xi) with xi the left
 *     momentum, a real functional-value vector against the algebra basis
 *     under <xi, X> = Re Tr(xi_mat^* X); the Riesz representative xi_mat is
 *     derived, never stored.
 *   - ct_source(g, xi) = xi and ct_target(g, xi) = xi . Ad_{g^-1}; the product
 *     keeps the second factor's covector, m((g,xi),(h,eta)) = (gh, eta),
 *     defined when source(p) = target(q). This is the unique assignment for
 *     which p . invert(p) = unit(target(p)) and invert(p) . p =
 *     unit(source(p)) both hold.
 *   - canonical_form takes tangents in the *right* package (X = right
 *     velocity g'g^-1, eta = velocity of the right momentum) and evaluates
 *     <eta1, X2> - <eta2, X1> + <rho, [X1, X2]> with rho = ct_target(p).
 *     Equivalently, in the left package the bracket term enters with a minus
 *     sign; the two describe the same 2-form.
 */
#pragma once

#include "pgl/core.hpp"
#include "pgl/jet.hpp"
#include "pgl/linear_poisson.hpp"
#include "pgl/poisson_jet.hpp"
#include "pgl/structure_constants.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgl {

/// Finite presentation of a matrix Lie group: ambient size, a real basis of
/// the Lie algebra, and a membership residual for group elements. Closure of
/// the basis under commutator is validated at construction and the structure
/// constants are extracted once.
struct MatrixLieGroupSpec {
    int n = 0;
    std::vector<Mat> basis;
    std::function<double(const Mat&)> membership;
    std::string name;
    double tol = kDefaultTol;

    RMat gram;
    RMat gram_inv;
    StructureConstants constants{0};
    double closure_residual = 0.0;

    MatrixLieGroupSpec(std::vector<Mat> algebra_basis,
                       std::function<double(const Mat&)> membership_residual,
                       std::string name_tag, double tolerance = kDefaultTol)
        : basis(std::move(algebra_basis)),
          membership(std::move(membership_residual)),
          name(std::move(name_tag)),
          tol(tolerance),
          constants(static_cast<int>(basis.size())) {
        if (basis.empty()) throw std::invalid_argument("MatrixLieGroupSpec: empty basis");
        n = static_cast<int>(basis.front().rows());
        const int d = dim();
        for (const Mat& b : basis)
            if (b.rows() != n || b.cols() != n)
                throw std::invalid_argument("MatrixLieGroupSpec: basis sizes differ");
        gram.resize(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                gram(i, j) =
                    (basis[static_cast<size_t>(i)].adjoint() * basis[static_cast<size_t>(j)])
                        .trace()
                        .real();
        Eigen::FullPivLU<RMat> lu(gram);
        if (lu.rank() != d)
            throw std::invalid_argument("MatrixLieGroupSpec: basis not independent");
        gram_inv = lu.inverse();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Mat br = bracket(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
                const RVec c = expand(br);
                const double r = rel(max_norm(Mat(br - element(c))), max_norm(br));
                closure_residual = std::max(closure_residual, r);
                for (int k = 0; k < d; ++k) constants.at(i, j, k) = c(k);
            }
        if (closure_residual > tol)
            throw std::invalid_argument("MatrixLieGroupSpec: basis not closed under commutator");
    }

    int dim() const { return static_cast<int>(basis.size()); }

    static Mat bracket(const Mat& a, const Mat& b) { return a * b - b * a; }

    /// Coefficients of the orthogonal projection of M onto span(basis) in the
    /// Re Tr(A^* B) inner product; exact for M in the span.
    RVec expand(const Mat& M) const {
        const int d = dim();
        RVec b(d);
        for (int i = 0; i < d; ++i)
            b(i) = (basis[static_cast<size_t>(i)].adjoint() * M).trace().real();
        return gram_inv * b;
    }

    Mat element(const RVec& coeffs) const {
        Mat out = Mat::Zero(n, n);
        for (int k = 0; k < dim(); ++k) out += cxd(coeffs(k), 0.0) * basis[static_cast<size_t>(k)];
        return out;
    }

    /// Riesz representative of the functional-value vector xi.
    Mat riesz(const RVec& xi) const { return element(gram_inv * xi); }

    /// <xi, M> extended to arbitrary matrices through the Riesz representative.
    double pair_dual(const RVec& xi, const Mat& M) const {
        const int d = dim();
        RVec b(d);
        for (int i = 0; i < d; ++i)
            b(i) = (basis[static_cast<size_t>(i)].adjoint() * M).trace().real();
        return (gram_inv * xi).dot(b);
    }
};

namespace groups {

inline double unitary_membership(const Mat& g) {
    return max_norm(Mat(g * g.adjoint() - Mat::Identity(g.rows(), g.cols())));
}

inline double special_unitary_membership(const Mat& g) {
    return unitary_membership(g) + std::abs(g.determinant() - cxd(1.0, 0.0));
}

inline double general_linear_membership(const Mat& g) {
    Eigen::JacobiSVD<Mat> svd(g);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    return (smin <= 1e-12 * smax) ? 1.0 : 0.0;
}

inline double real_general_linear_membership(const Mat& g) {
    double im = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) im = std::max(im, std::abs(g(i, j).imag()));
    return im + general_linear_membership(g);
}

inline double special_orthogonal_membership(const Mat& g) {
    double im = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) im = std::max(im, std::abs(g(i, j).imag()));
    return im + unitary_membership(g);
}

inline double diagonal_torus_membership(const Mat& g) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            if (i != j) off = std::max(off, std::abs(g(i, j)));
    return off + unitary_membership(g);
}

inline std::function<double(const Mat&)> membership_by_name(const std::string& name) {
    if (name == "unitary") return unitary_membership;
    if (name == "special-unitary") return special_unitary_membership;
    if (name == "general-linear") return general_linear_membership;
    if (name == "real-general-linear") return real_general_linear_membership;
    if (name == "special-orthogonal") return special_orthogonal_membership;
    if (name == "diagonal-torus") return diagonal_torus_membership;
    throw std::invalid_argument("membership_by_name: unknown membership '" + name + "'");
}

inline MatrixLieGroupSpec special_unitary2(double tol = kDefaultTol) {
    std::vector<Mat> b(3, Mat::Zero(2, 2));
    b[0] << cxd(0, 1), cxd(0, 0), cxd(0, 0), cxd(0, -1);
    b[1] << cxd(0, 0), cxd(1, 0), cxd(-1, 0), cxd(0, 0);
    b[2] << cxd(0, 0), cxd(0, 1), cxd(0, 1), cxd(0, 0);
    return MatrixLieGroupSpec(std::move(b), special_unitary_membership, "special-unitary", tol);
}

inline MatrixLieGroupSpec unitary(int n, double tol = kDefaultTol) {
    std::vector<Mat> b;
    for (int p = 0; p < n; ++p) {
        Mat D = Mat::Zero(n, n);
        D(p, p) = cxd(0.0, 1.0);
        b.push_back(D);
    }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            Mat A = Mat::Zero(n, n);
            A(p, q) = cxd(1.0, 0.0);
            A(q, p) = cxd(-1.0, 0.0);
            b.push_back(A);
            Mat S = Mat::Zero(n, n);
            S(p, q) = cxd(0.0, 1.0);
            S(q, p) = cxd(0.0, 1.0);
            b.push_back(S);
        }
    return MatrixLieGroupSpec(std::move(b), unitary_membership, "unitary", tol);
}

inline MatrixLieGroupSpec so3(double tol = kDefaultTol) {
    std::vector<Mat> b(3, Mat::Zero(3, 3));
    b[0](1, 2) = cxd(-1, 0);
    b[0](2, 1) = cxd(1, 0);
    b[1](0, 2) = cxd(1, 0);
    b[1](2, 0) = cxd(-1, 0);
    b[2](0, 1) = cxd(-1, 0);
    b[2](1, 0) = cxd(1, 0);
    return MatrixLieGroupSpec(std::move(b), special_orthogonal_membership, "special-orthogonal",
                              tol);
}

inline MatrixLieGroupSpec general_linear_real2(double tol = kDefaultTol) {
    std::vector<Mat> b;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Mat E = Mat::Zero(2, 2);
            E(i, j) = cxd(1.0, 0.0);
            b.push_back(E);
        }
    return MatrixLieGroupSpec(std::move(b), real_general_linear_membership, "real-general-linear",
                              tol);
}

/// Abelian example: the torus of diagonal unitaries.
inline MatrixLieGroupSpec diagonal_torus(int n, double tol = kDefaultTol) {
    std::vector<Mat> b;
    for (int p = 0; p < n; ++p) {
        Mat D = Mat::Zero(n, n);
        D(p, p) = cxd(0.0, 1.0);
        b.push_back(D);
    }
    return MatrixLieGroupSpec(std::move(b), diagonal_torus_membership, "diagonal-torus", tol);
}

}  // namespace groups

/// Point of T*G in left trivialization: group matrix plus the left-momentum
/// functional values against the algebra basis.
struct CotangentPoint {
    Mat g;
    RVec xi;
};

inline RVec ct_source(const MatrixLieGroupSpec& G, const CotangentPoint& p) {
    (void)G;
    return p.xi;
}

/// Coadjoint transport: target_k = <xi, g^-1 X_k g>.
inline RVec ct_target(const MatrixLieGroupSpec& G, const CotangentPoint& p) {
    const Mat gi = p.g.inverse();
    const Mat rep = G.riesz(p.xi);
    RVec out(G.dim());
    for (int k = 0; k < G.dim(); ++k)
        out(k) = (rep.adjoint() * gi * G.basis[static_cast<size_t>(k)] * p.g).trace().real();
    return out;
}

inline CotangentPoint ct_unit(const MatrixLieGroupSpec& G, const RVec& xi) {
    return {Mat::Identity(G.n, G.n), xi};
}

inline CotangentPoint ct_invert(const MatrixLieGroupSpec& G, const CotangentPoint& p) {
    return {p.g.inverse(), ct_target(G, p)};
}

inline double composability_residual(const MatrixLieGroupSpec& G, const CotangentPoint& p,
                                     const CotangentPoint& q) {
    const RVec diff = ct_source(G, p) - ct_target(G, q);
    const double scale =
        std::max(p.xi.cwiseAbs().maxCoeff(), q.xi.cwiseAbs().maxCoeff());
    return rel(diff.cwiseAbs().maxCoeff(), scale);
}

inline CotangentPoint ct_multiply(const MatrixLieGroupSpec& G, const CotangentPoint& p,
                                  const CotangentPoint& q) {
    const double r = composability_residual(G, p, q);
    if (r > G.tol) throw NonComposableError(r);
    return {p.g * q.g, q.xi};
}

/// Tangent vector of T*G in the right package: eta is the velocity of the
/// right momentum (functional values), x the right-trivialized group velocity.
struct CtTangent {
    RVec eta;
    Mat x;
};

inline double canonical_form(const MatrixLieGroupSpec& G, const CotangentPoint& p,
                             const CtTangent& t1, const CtTangent& t2) {
    const RVec rho = ct_target(G, p);
    return G.pair_dual(t1.eta, t2.x) - G.pair_dual(t2.eta, t1.x) +
           G.pair_dual(rho, MatrixLieGroupSpec::bracket(t1.x, t2.x));
}

/// The 2d x 2d matrix of the canonical form in the right-package frame
/// (d group directions from the algebra basis, then d dual directions).
inline RMat canonical_form_matrix(const MatrixLieGroupSpec& G, const CotangentPoint& p) {
    const int d = G.dim();
    const RVec rho = ct_target(G, p);
    RMat omega = RMat::Zero(2 * d, 2 * d);
    for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k) {
            omega(m, k) = G.pair_dual(rho, MatrixLieGroupSpec::bracket(
                                               G.basis[static_cast<size_t>(m)],
                                               G.basis[static_cast<size_t>(k)]));
            omega(d + m, k) = (m == k) ? 1.0 : 0.0;
            omega(m, d + k) = (m == k) ? -1.0 : 0.0;
        }
    return omega;
}

/// The tangent space at p as a linear Poisson (symplectic) space: full dual
/// basis, anchor = inverse of the canonical-form matrix.
inline LinearPoissonSpace tangent_poisson_space(const MatrixLieGroupSpec& G,
                                                const CotangentPoint& p) {
    const RMat omega = canonical_form_matrix(G, p);
    const int m = static_cast<int>(omega.rows());
    return LinearPoissonSpace(m, Mat::Identity(m, m), to_complex(RMat(omega.inverse())), G.tol);
}

// -------------------------------------------------------------------------
// KKS structure on g*.

/// ad*_X xi, in functional values: out_k = <xi, [X, X_k]>.
inline RVec kks_anchor(const MatrixLieGroupSpec& G, const RVec& xi, const Mat& X) {
    RVec out(G.dim());
    for (int k = 0; k < G.dim(); ++k)
        out(k) = G.pair_dual(xi, MatrixLieGroupSpec::bracket(X, G.basis[static_cast<size_t>(k)]));
    return out;
}

inline double kks_form(const MatrixLieGroupSpec& G, const RVec& xi, const Mat& X, const Mat& Y) {
    return G.pair_dual(xi, MatrixLieGroupSpec::bracket(X, Y));
}

/// The Lie-Poisson bivector on g* built from the extracted structure
/// constants; entries agree with kks_form on basis pairs.
inline BivectorField kks_bivector(const MatrixLieGroupSpec& G) {
    return lie_poisson_bivector(G.constants, G.tol);
}

struct StabilizerResult {
    Subspace space;
    double closure_residual = 0.0;
};

namespace detail {

/// Orthonormal basis of the real right nullspace of a real matrix.
inline RMat real_nullspace(const RMat& A) {
    Eigen::JacobiSVD<RMat> svd(A, Eigen::ComputeFullV);
    const int r = static_cast<int>(numerical_rank(to_complex(A)));
    return svd.matrixV().rightCols(A.cols() - r);
}

}  // namespace detail

/// ker(ad*_. xi) = {X : ad*_X xi = 0}, with its commutator-closure residual.
inline StabilizerResult stabilizer_algebra(const MatrixLieGroupSpec& G, const RVec& xi) {
    const int d = G.dim();
    RMat N(d, d);
    for (int j = 0; j < d; ++j)
        N.col(j) = kks_anchor(G, xi, G.basis[static_cast<size_t>(j)]);
    const RMat null = detail::real_nullspace(N);
    StabilizerResult out;
    out.space = Subspace(d, to_complex(null), G.tol);
    for (Eigen::Index a = 0; a < null.cols(); ++a)
        for (Eigen::Index b = 0; b < null.cols(); ++b) {
            const Mat br = MatrixLieGroupSpec::bracket(G.element(null.col(a)),
                                                       G.element(null.col(b)));
            const RVec c = G.expand(br);
            out.closure_residual =
                std::max(out.closure_residual, out.space.membership(to_complex(c)));
        }
    return out;
}

// -------------------------------------------------------------------------
// GL(n,C) adjoint-orbit form.

/// Orbit tangent data at A = g J g^-1: the curve velocities (g', A') of
/// A(t) = g(t) J g(t)^-1 with g(0) = g.
struct OrbitTangent {
    Mat gdot;
    Mat adot;
};

/// KKS orbit form under the trace pairing: Tr(g'_1 g^-1 A'_2), which equals
/// -Tr(g'_2 g^-1 A'_1) whenever the tangent data is consistent; the real part
/// of the averaged pair is returned and the equality is enforced.
inline double gl_orbit_form(const Mat& g, const Mat& A, const OrbitTangent& t1,
                            const OrbitTangent& t2, double tol = kDefaultTol) {
    const Mat gi = g.inverse();
    for (const OrbitTangent* t : {&t1, &t2}) {
        const Mat v = t->gdot * gi;
        const Mat expected = v * A - A * v;
        const double scale = max_norm(t->adot) + max_norm(A) * max_norm(v);
        if (rel(max_norm(Mat(t->adot - expected)), scale) > tol)
            throw std::invalid_argument("gl_orbit_form: inconsistent tangent data");
    }
    const cxd e1 = (t1.gdot * gi * t2.adot).trace();
    const cxd e2 = -(t2.gdot * gi * t1.adot).trace();
    const double scale = std::max(std::abs(e1), std::abs(e2));
    if (rel(std::abs(e1 - e2), scale) > tol)
        throw std::runtime_error("gl_orbit_form: trace expressions disagree");
    return 0.5 * (e1 + e2).real();
}

// -------------------------------------------------------------------------
// Chart differentials of the structure maps, assembled through jets.

namespace detail {

/// Complex scalar jet: a pair of real second-order jets.
struct JC {
    Jet2 re, im;
};

inline JC jc_const(const cxd& z, int dim) {
    return {Jet2::constant(z.real(), dim), Jet2::constant(z.imag(), dim)};
}

inline JC operator+(const JC& a, const JC& b) { return {a.re + b.re, a.im + b.im}; }
inline JC operator-(const JC& a, const JC& b) { return {a.re - b.re, a.im - b.im}; }
inline JC operator*(const JC& a, const JC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline JC jc_conj(const JC& a) { return {a.re, -a.im}; }

using JMat = std::vector<std::vector<JC>>;

inline JMat jmat_zero(int n, int dim) {
    return JMat(static_cast<size_t>(n),
                std::vector<JC>(static_cast<size_t>(n), jc_const(cxd(0, 0), dim)));
}

inline JMat jmat_const(const Mat& M, int dim) {
    const int n = static_cast<int>(M.rows());
    JMat out = jmat_zero(n, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            jc_const(M(i, j), dim);
    return out;
}

inline JMat jmat_mul(const JMat& A, const JMat& B) {
    const size_t n = A.size();
    JMat out = jmat_zero(static_cast<int>(n), static_cast<int>(A[0][0].re.dim()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            JC acc = jc_const(cxd(0, 0), A[0][0].re.dim());
            for (size_t k = 0; k < n; ++k) acc = acc + A[i][k] * B[k][j];
            out[i][j] = acc;
        }
    return out;
}

inline JMat jmat_add(const JMat& A, const JMat& B, double sb = 1.0) {
    const size_t n = A.size();
    JMat out = A;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out[i][j] = {A[i][j].re + B[i][j].re * sb, A[i][j].im + B[i][j].im * sb};
    return out;
}

/// Jets of the target components over the chart z = (x, w) centered at
/// (g0, xi0): the chart point is (exp(sum x_m X_m) g0, xi0 + w), and jets are
/// exact through second order at z = 0.
inline std::vector<Jet2> target_jets(const MatrixLieGroupSpec& G, const CotangentPoint& p0) {
    const int d = G.dim();
    const int vars = 2 * d;
    // A(x) = sum_m x_m X_m as linear jets.
    JMat A = jmat_zero(G.n, vars);
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
            Jet2 re = Jet2::constant(0.0, vars), im = Jet2::constant(0.0, vars);
            for (int m = 0; m < d; ++m) {
                const cxd e = G.basis[static_cast<size_t>(m)](i, j);
                re.g(m) += e.real();
                im.g(m) += e.imag();
            }
            A[static_cast<size_t>(i)][static_cast<size_t>(j)] = {re, im};
        }
    // exp(+-A) around the center: value of A is zero, so the cubic and higher
    // terms carry no first- or second-order content.
    const JMat A2 = jmat_mul(A, A);
    JMat Ep = jmat_const(Mat::Identity(G.n, G.n), vars);
    Ep = jmat_add(Ep, A, 1.0);
    Ep = jmat_add(Ep, A2, 0.5);
    JMat Em = jmat_const(Mat::Identity(G.n, G.n), vars);
    Em = jmat_add(Em, A, -1.0);
    Em = jmat_add(Em, A2, 0.5);

    const JMat g0 = jmat_const(p0.g, vars);
    const JMat g0i = jmat_const(p0.g.inverse(), vars);

    // Riesz representative of xi0 + w: coefficients c = gram_inv (xi0 + w).
    JMat R = jmat_zero(G.n, vars);
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
            Jet2 re = Jet2::constant(0.0, vars), im = Jet2::constant(0.0, vars);
            for (int m = 0; m < d; ++m) {
                const cxd e = G.basis[static_cast<size_t>(m)](i, j);
                const double c0 = (G.gram_inv.row(m) * p0.xi)(0);
                re.v += c0 * e.real();
                im.v += c0 * e.imag();
                for (int k = 0; k < d; ++k) {
                    re.g(d + k) += G.gram_inv(m, k) * e.real();
                    im.g(d + k) += G.gram_inv(m, k) * e.imag();
                }
            }
            R[static_cast<size_t>(i)][static_cast<size_t>(j)] = {re, im};
        }

    std::vector<Jet2> out;
    out.reserve(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        // t_k = Re Tr(R^* g0^-1 exp(-A) X_k exp(A) g0).
        const JMat inner = jmat_mul(
            g0i, jmat_mul(Em, jmat_mul(jmat_const(G.basis[static_cast<size_t>(k)], vars),
                                       jmat_mul(Ep, g0))));
        Jet2 tr = Jet2::constant(0.0, vars);
        for (int i = 0; i < G.n; ++i) {
            JC acc = jc_const(cxd(0, 0), vars);
            for (int j = 0; j < G.n; ++j)
                acc = acc + jc_conj(R[static_cast<size_t>(j)][static_cast<size_t>(i)]) *
                                inner[static_cast<size_t>(j)][static_cast<size_t>(i)];
            tr = tr + acc.re;
        }
        out.push_back(tr);
    }
    return out;
}

/// Jacobian of the target map in the chart at p0: d rows, 2d columns.
inline RMat target_jacobian(const MatrixLieGroupSpec& G, const CotangentPoint& p0) {
    const std::vector<Jet2> jets = target_jets(G, p0);
    RMat J(G.dim(), 2 * G.dim());
    for (int k = 0; k < G.dim(); ++k) J.row(k) = jets[static_cast<size_t>(k)].g.transpose();
    return J;
}

/// Jacobian of the source map in the same chart, assembled from coordinate
/// jets: [0 | I].
inline RMat source_jacobian(const MatrixLieGroupSpec& G) {
    const int d = G.dim();
    RMat J(d, 2 * d);
    for (int k = 0; k < d; ++k)
        J.row(k) = ScalarField::coordinate(2 * d, d + k)(RVec::Zero(2 * d)).g.transpose();
    return J;
}

/// Canonical-form value on chart tangents: the group part of a chart tangent
/// is a right velocity, and its dual-package eta is the target differential
/// applied to the tangent.
inline double chart_form(const MatrixLieGroupSpec& G, const CotangentPoint& p, const RMat& Jt,
                         const RVec& u, const RVec& v) {
    const int d = G.dim();
    const CtTangent tu{Jt * u, G.element(u.head(d))};
    const CtTangent tv{Jt * v, G.element(v.head(d))};
    return canonical_form(G, p, tu, tv);
}

}  // namespace detail

// -------------------------------------------------------------------------
// Theorem suite.

struct CotangentReport {
    int trials = 0;
    double membership = 0.0;
    double axioms = 0.0;
    double omega_multiplicativity = 0.0;
    double fiber_orthogonality = 0.0;
    double zero_section_lagrangian = 0.0;
    bool zero_section_ok = true;
    double dual_pair = 0.0;
    double units_coisotropy = 0.0;
    bool units_ok = true;

    double worst() const {
        return std::max({membership, axioms, omega_multiplicativity, fiber_orthogonality,
                         zero_section_lagrangian, dual_pair, units_coisotropy});
    }
};

namespace detail {

inline Mat random_group_element(const MatrixLieGroupSpec& G, Rng& rng, double scale = 0.7) {
    return Mat((scale * G.element(rng.gaussian(G.dim(), 1).col(0))).exp());
}

inline double point_distance(const CotangentPoint& a, const CotangentPoint& b) {
    const double gm = max_norm(Mat(a.g - b.g));
    const double xm = (a.xi - b.xi).cwiseAbs().maxCoeff();
    const double scale = std::max(max_norm(a.g), a.xi.cwiseAbs().maxCoeff());
    return rel(std::max(gm, xm), scale);
}

/// Exact derivative of the target along a curve with right velocity u and
/// covector velocity w: d/dt <xi, Ad_{g^-1} X_k> = <w, Ad_{g^-1} X_k>
/// - <xi, Ad_{g^-1} [u, X_k]>.
inline RVec target_velocity(const MatrixLieGroupSpec& G, const CotangentPoint& p, const Mat& u,
                            const RVec& w) {
    const Mat gi = p.g.inverse();
    const Mat rw = G.riesz(w);
    const Mat rx = G.riesz(p.xi);
    RVec out(G.dim());
    for (int k = 0; k < G.dim(); ++k) {
        const Mat& Xk = G.basis[static_cast<size_t>(k)];
        const Mat ad = gi * Xk * p.g;
        const Mat adbr = gi * MatrixLieGroupSpec::bracket(u, Xk) * p.g;
        out(k) = (rw.adjoint() * ad).trace().real() - (rx.adjoint() * adbr).trace().real();
    }
    return out;
}

}  // namespace detail

/**
 * Runs the theorem families at random samples: (a) groupoid axioms on
 * composable tuples; (b) multiplicativity of the canonical form on tangents
 * to the multiplication graph; (c) source/target fiber orthogonality with
 * fiber tangents taken from nullspaces of the jet-assembled differentials;
 * (d) Lagrangianity of the zero section; (e) vanishing of dual-pair brackets
 * {s*f1, t*f2}; (f) coisotropy of the unit section. Trials fork per-index
 * seeds and merge max residuals deterministically.
 */
inline CotangentReport verify_symplectic_groupoid(const MatrixLieGroupSpec& G, int trials,
                                                  std::uint64_t seed) {
    CotangentReport rep;
    rep.trials = trials;
    const int d = G.dim();
    Rng root(seed);

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.fork(static_cast<std::uint64_t>(trial));

        rep.membership =
            std::max(rep.membership, G.membership(detail::random_group_element(G, rng)));

        // (a) axioms on a composable triple.
        const CotangentPoint r{detail::random_group_element(G, rng), rng.gaussian(d, 1).col(0)};
        const CotangentPoint q{detail::random_group_element(G, rng), ct_target(G, r)};
        const CotangentPoint p{detail::random_group_element(G, rng), ct_target(G, q)};
        const CotangentPoint pq_r = ct_multiply(G, ct_multiply(G, p, q), r);
        const CotangentPoint p_qr = ct_multiply(G, p, ct_multiply(G, q, r));
        rep.axioms = std::max(rep.axioms, detail::point_distance(pq_r, p_qr));
        rep.axioms = std::max(
            rep.axioms,
            detail::point_distance(ct_multiply(G, p, ct_unit(G, ct_source(G, p))), p));
        rep.axioms = std::max(
            rep.axioms,
            detail::point_distance(ct_multiply(G, ct_unit(G, ct_target(G, p)), p), p));
        rep.axioms = std::max(rep.axioms,
                              detail::point_distance(ct_multiply(G, p, ct_invert(G, p)),
                                                     ct_unit(G, ct_target(G, p))));
        rep.axioms = std::max(rep.axioms,
                              detail::point_distance(ct_multiply(G, ct_invert(G, p), p),
                                                     ct_unit(G, ct_source(G, p))));

        // (b) multiplicativity of omega on two tangents to the graph of m.
        {
            CtTangent tp[2], tq[2], tr[2];
            const CotangentPoint prod = ct_multiply(G, p, q);
            for (int s = 0; s < 2; ++s) {
                const Mat up = G.element(rng.gaussian(d, 1).col(0));
                const Mat uq = G.element(rng.gaussian(d, 1).col(0));
                const RVec w = rng.gaussian(d, 1).col(0);
                const RVec dxi_p = detail::target_velocity(G, q, uq, w);
                tq[s] = CtTangent{dxi_p, uq};
                tp[s] = CtTangent{detail::target_velocity(G, p, up, dxi_p), up};
                tr[s] = CtTangent{
                    detail::target_velocity(G, prod, up + p.g * uq * p.g.inverse(), w),
                    up + p.g * uq * p.g.inverse()};
            }
            const double lhs = canonical_form(G, p, tp[0], tp[1]) +
                               canonical_form(G, q, tq[0], tq[1]);
            const double rhs = canonical_form(G, prod, tr[0], tr[1]);
            rep.omega_multiplicativity =
                std::max(rep.omega_multiplicativity, rel(std::abs(lhs - rhs), std::abs(rhs)));
        }

        // (c) fiber orthogonality at p.
        {
            const RMat Jt = detail::target_jacobian(G, p);
            const RMat Js = detail::source_jacobian(G);
            const RMat Ns = detail::real_nullspace(Js);
            const RMat Nt = detail::real_nullspace(Jt);
            for (int s = 0; s < 2; ++s) {
                const RVec u = Ns * rng.gaussian(static_cast<int>(Ns.cols()), 1).col(0);
                const RVec v = Nt * rng.gaussian(static_cast<int>(Nt.cols()), 1).col(0);
                const double w = detail::chart_form(G, p, Jt, u, v);
                rep.fiber_orthogonality =
                    std::max(rep.fiber_orthogonality,
                             std::abs(w) / (1.0 + u.norm() * v.norm()));
            }
        }

        // (d) zero section is Lagrangian.
        {
            const CotangentPoint z{p.g, RVec::Zero(d)};
            const LinearPoissonSpace T = tangent_poisson_space(G, z);
            RMat F = RMat::Zero(2 * d, d);
            F.topRows(d) = RMat::Identity(d, d);
            const SubspaceClass c = classify_subspace(T, Subspace(2 * d, to_complex(F), G.tol));
            rep.zero_section_ok = rep.zero_section_ok && c.lagrangian;
            rep.zero_section_lagrangian =
                std::max(rep.zero_section_lagrangian, c.lagrangian_residual);
        }

        // (e) dual pair: {s*f1, t*f2} = 0 in the chart at p.
        {
            const RMat Jt = detail::target_jacobian(G, p);
            const RMat Js = detail::source_jacobian(G);
            RMat omega_chart(2 * d, 2 * d);
            for (int a = 0; a < 2 * d; ++a)
                for (int b = 0; b < 2 * d; ++b)
                    omega_chart(a, b) = detail::chart_form(G, p, Jt, RVec(RMat::Identity(2 * d, 2 * d).col(a)),
                                                           RVec(RMat::Identity(2 * d, 2 * d).col(b)));
            const RMat poisson = omega_chart.inverse();
            const RVec a = rng.gaussian(d, 1).col(0);
            const RVec b = rng.gaussian(d, 1).col(0);
            const RVec g1 = Js.transpose() * a;
            const RVec g2 = Jt.transpose() * b;
            const double br = g1.dot(poisson * g2);
            rep.dual_pair = std::max(rep.dual_pair, std::abs(br) / (1.0 + a.norm() * b.norm()));
        }

        // (f) unit section is coisotropic.
        {
            const CotangentPoint u0{Mat::Identity(G.n, G.n), rng.gaussian(d, 1).col(0)};
            const LinearPoissonSpace T = tangent_poisson_space(G, u0);
            RMat F = RMat::Zero(2 * d, d);
            F.bottomRows(d) = RMat::Identity(d, d);
            const SubspaceClass c = classify_subspace(T, Subspace(2 * d, to_complex(F), G.tol));
            rep.units_ok = rep.units_ok && c.coisotropic;
            rep.units_coisotropy = std::max(rep.units_coisotropy, c.coisotropy_residual);
        }
    }
    return rep;
}

}  // namespace pgl
