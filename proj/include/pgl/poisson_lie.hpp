/**
 * @file poisson_lie.hpp
 * @brief The multiplicative Poisson structure on U(n) from the Iwasawa split
 *        gl(n,C) = u(n) + b(n): the tensor Lambda_R, its group and algebra
 *        1-cocycle identities, the derived bracket on the dual side, and
 *        level-stable brackets on the ascending tower U(n) in U(n+1).
 *
 * Conventions:
 *   - The pairing is <A, B> = Im Tr(AB); b(n) is identified with the dual of
 *     u(n) through it, and dual elements are stored as b(n) matrices with a
 *     side tag.
 *   - Lambda_R(g)(a1, a2) = Im Tr(p2(Ad_{g^-1} a1) p1(Ad_{g^-1} a2)), with
 *     p1/p2 the Iwasawa projections onto u(n)/b(n).
 *   - The coadjoint action on the b(n) side is Ad*_g = p2 after Ad_{g^-1};
 *     infinitesimally ad*_x = -p2([x, .]).
 *   - Derivatives through Ad_{exp(-tx)} use the exact rule
 *     d/dt Ad_{exp(-tx)} a |_0 = -[x, a]; finite differences appear only as
 *     audit oracles in the tests.
 */
#pragma once

#include "pgl/core.hpp"
#include "pgl/jet.hpp"
#include "pgl/poisson_jet.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pgl {

/// Thrown when an algebra/dual element is passed on the wrong side of the
/// Iwasawa split.
struct WrongSideError : std::invalid_argument {
    explicit WrongSideError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown by tower_bracket when the scalar-field family is not compatible
/// with level promotion at the evaluation point.
struct IncompatibleFamilyError : std::runtime_error {
    explicit IncompatibleFamilyError(const std::string& what) : std::runtime_error(what) {}
};

enum class Side { unitary, borel };

/// Iwasawa decomposition A = K + B with K skew-Hermitian and B upper
/// triangular with real diagonal; closed form, exact.
struct IwasawaSplit {
    Mat k;
    Mat b;
};

inline IwasawaSplit iwasawa_project(const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("iwasawa_project: matrix not square");
    const int n = static_cast<int>(A.rows());
    IwasawaSplit out{Mat::Zero(n, n), Mat::Zero(n, n)};
    for (int i = 0; i < n; ++i) {
        out.k(i, i) = cxd(0.0, A(i, i).imag());
        out.b(i, i) = cxd(A(i, i).real(), 0.0);
        for (int j = 0; j < i; ++j) {
            out.k(i, j) = A(i, j);
            out.k(j, i) = -std::conj(A(i, j));
            out.b(j, i) = A(j, i) + std::conj(A(i, j));
        }
    }
    return out;
}

/// Projection onto u(n) along b(n).
inline Mat p1(const Mat& A) { return iwasawa_project(A).k; }

/// Projection onto b(n) along u(n).
inline Mat p2(const Mat& A) { return iwasawa_project(A).b; }

/// The duality pairing <A, B> = Im Tr(AB).
inline double flat_pairing(const Mat& A, const Mat& B) { return (A * B).trace().imag(); }

/// Element of U(n); unitarity is validated at construction.
struct GroupElement {
    int n = 0;
    Mat mat;
    double tol = kDefaultTol;

    GroupElement(Mat m, double tolerance = kDefaultTol)
        : n(static_cast<int>(m.rows())), mat(std::move(m)), tol(tolerance) {
        if (mat.rows() != mat.cols())
            throw std::invalid_argument("GroupElement: matrix not square");
        const double r = max_norm(Mat(mat * mat.adjoint() - Mat::Identity(n, n)));
        if (r > tol)
            throw std::invalid_argument("GroupElement: unitarity residual " + std::to_string(r));
    }

    static GroupElement identity(int n, double tolerance = kDefaultTol) {
        return GroupElement(Mat::Identity(n, n), tolerance);
    }

    GroupElement inverse() const { return GroupElement(mat.adjoint(), tol); }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        if (a.n != b.n) throw std::invalid_argument("GroupElement: size mismatch");
        return GroupElement(a.mat * b.mat, std::max(a.tol, b.tol));
    }
};

/// Element of u(n) or of its dual realized as b(n), tagged by side; the side
/// invariant is validated at construction.
struct AlgebraElement {
    int n = 0;
    Mat mat;
    Side side = Side::unitary;
    double tol = kDefaultTol;

    AlgebraElement(Mat m, Side s, double tolerance = kDefaultTol)
        : n(static_cast<int>(m.rows())), mat(std::move(m)), side(s), tol(tolerance) {
        if (mat.rows() != mat.cols())
            throw std::invalid_argument("AlgebraElement: matrix not square");
        const double scale = max_norm(mat);
        double r = 0.0;
        if (side == Side::unitary) {
            r = max_norm(Mat(mat + mat.adjoint()));
        } else {
            for (int i = 0; i < n; ++i) {
                r = std::max(r, std::abs(mat(i, i).imag()));
                for (int j = 0; j < i; ++j) r = std::max(r, std::abs(mat(i, j)));
            }
        }
        if (rel(r, scale) > tol)
            throw std::invalid_argument("AlgebraElement: side residual " + std::to_string(r));
    }

    static AlgebraElement unitary_side(Mat m, double tolerance = kDefaultTol) {
        return AlgebraElement(std::move(m), Side::unitary, tolerance);
    }
    static AlgebraElement borel_side(Mat m, double tolerance = kDefaultTol) {
        return AlgebraElement(std::move(m), Side::borel, tolerance);
    }
};

namespace detail {

inline void require_side(const AlgebraElement& a, Side s, const char* where) {
    if (a.side != s)
        throw WrongSideError(std::string(where) + ": element on the wrong side of the split");
}

}  // namespace detail

/// Basis of u(n): for each p the diagonal i E_pp, then for p < q the pair
/// E_pq - E_qp and i(E_pq + E_qp). Size n^2.
inline std::vector<Mat> unitary_basis(int n) {
    std::vector<Mat> out;
    out.reserve(static_cast<size_t>(n * n));
    for (int p = 0; p < n; ++p) {
        Mat D = Mat::Zero(n, n);
        D(p, p) = cxd(0.0, 1.0);
        out.push_back(D);
    }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            Mat A = Mat::Zero(n, n);
            A(p, q) = cxd(1.0, 0.0);
            A(q, p) = cxd(-1.0, 0.0);
            out.push_back(A);
            Mat S = Mat::Zero(n, n);
            S(p, q) = cxd(0.0, 1.0);
            S(q, p) = cxd(0.0, 1.0);
            out.push_back(S);
        }
    return out;
}

/// Basis of b(n): for each p the diagonal E_pp, then for p < q the pair E_pq
/// and i E_pq. Size n^2.
inline std::vector<Mat> borel_basis(int n) {
    std::vector<Mat> out;
    out.reserve(static_cast<size_t>(n * n));
    for (int p = 0; p < n; ++p) {
        Mat D = Mat::Zero(n, n);
        D(p, p) = cxd(1.0, 0.0);
        out.push_back(D);
    }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            Mat E = Mat::Zero(n, n);
            E(p, q) = cxd(1.0, 0.0);
            out.push_back(E);
            Mat F = Mat::Zero(n, n);
            F(p, q) = cxd(0.0, 1.0);
            out.push_back(F);
        }
    return out;
}

/// Coordinates of a skew-Hermitian matrix in unitary_basis(n), read off the
/// entries exactly.
inline RVec unitary_coords(const Mat& x) {
    const int n = static_cast<int>(x.rows());
    RVec c(n * n);
    int idx = 0;
    for (int p = 0; p < n; ++p) c(idx++) = x(p, p).imag();
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            c(idx++) = x(p, q).real();
            c(idx++) = x(p, q).imag();
        }
    return c;
}

/// The b(n) element beta with <beta, X_k> = v_k against unitary_basis(n).
inline Mat borel_from_functional(int n, const RVec& v) {
    const std::vector<Mat> ub = unitary_basis(n);
    const std::vector<Mat> bb = borel_basis(n);
    const int d = n * n;
    RMat gram(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            gram(k, l) = flat_pairing(bb[static_cast<size_t>(l)], ub[static_cast<size_t>(k)]);
    const RVec c = gram.fullPivLu().solve(v);
    Mat out = Mat::Zero(n, n);
    for (int l = 0; l < d; ++l) out += cxd(c(l), 0.0) * bb[static_cast<size_t>(l)];
    return out;
}

/// Lambda_R(g)(a1, a2) = Im Tr(p2(Ad_{g^-1} a1) p1(Ad_{g^-1} a2)).
inline double lambda_R(const GroupElement& g, const AlgebraElement& a1,
                       const AlgebraElement& a2) {
    detail::require_side(a1, Side::borel, "lambda_R");
    detail::require_side(a2, Side::borel, "lambda_R");
    if (a1.n != g.n || a2.n != g.n) throw std::invalid_argument("lambda_R: size mismatch");
    const Mat c1 = g.mat.adjoint() * a1.mat * g.mat;
    const Mat c2 = g.mat.adjoint() * a2.mat * g.mat;
    return flat_pairing(p2(c1), p1(c2));
}

/// Coadjoint action on the b(n) side: Ad*_g a = p2(Ad_{g^-1} a).
inline AlgebraElement coadjoint(const GroupElement& g, const AlgebraElement& a) {
    detail::require_side(a, Side::borel, "coadjoint");
    return AlgebraElement::borel_side(p2(g.mat.adjoint() * a.mat * g.mat), a.tol);
}

/// Infinitesimal coadjoint action: ad*_x a = -p2([x, a]) for x in u(n).
inline AlgebraElement coadjoint_inf(const AlgebraElement& x, const AlgebraElement& a) {
    detail::require_side(x, Side::unitary, "coadjoint_inf");
    detail::require_side(a, Side::borel, "coadjoint_inf");
    return AlgebraElement::borel_side(-p2(x.mat * a.mat - a.mat * x.mat), a.tol);
}

/// Commutator on the u(n) side.
inline AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
    detail::require_side(x, Side::unitary, "commutator");
    detail::require_side(y, Side::unitary, "commutator");
    return AlgebraElement::unitary_side(x.mat * y.mat - y.mat * x.mat, std::max(x.tol, y.tol));
}

/// Group 1-cocycle defect
/// |Lambda_R(gh)(a1,a2) - Lambda_R(g)(a1,a2) - Lambda_R(h)(Ad*_g a1, Ad*_g a2)|.
inline double multiplicativity_residual(const GroupElement& g, const GroupElement& h,
                                        const AlgebraElement& a1, const AlgebraElement& a2) {
    const double lhs = lambda_R(g * h, a1, a2);
    const double rhs = lambda_R(g, a1, a2) + lambda_R(h, coadjoint(g, a1), coadjoint(g, a2));
    return std::abs(lhs - rhs);
}

/// T_e Lambda_R(x)(a1, a2) = d/dt Lambda_R(exp(tx))(a1, a2) |_0, evaluated by
/// the exact rule: only the p1 factor survives at t = 0, giving
/// -Im Tr(a1 p1([x, a2])).
inline double cocycle_derivative(const AlgebraElement& x, const AlgebraElement& a1,
                                 const AlgebraElement& a2) {
    detail::require_side(x, Side::unitary, "cocycle_derivative");
    detail::require_side(a1, Side::borel, "cocycle_derivative");
    detail::require_side(a2, Side::borel, "cocycle_derivative");
    const Mat br = x.mat * a2.mat - a2.mat * x.mat;
    return -flat_pairing(a1.mat, p1(br));
}

/// Algebra 1-cocycle defect of T_e Lambda_R:
/// |T_e Lambda_R([x,y])(a1,a2) - T_e Lambda_R(y)(ad*_x a1, a2)
///  - T_e Lambda_R(y)(a1, ad*_x a2) + T_e Lambda_R(x)(ad*_y a1, a2)
///  + T_e Lambda_R(x)(a1, ad*_y a2)|.
inline double cocycle_algebra_residual(const AlgebraElement& x, const AlgebraElement& y,
                                       const AlgebraElement& a1, const AlgebraElement& a2) {
    const double lhs = cocycle_derivative(commutator(x, y), a1, a2);
    const double rhs = cocycle_derivative(y, coadjoint_inf(x, a1), a2) +
                       cocycle_derivative(y, a1, coadjoint_inf(x, a2)) -
                       cocycle_derivative(x, coadjoint_inf(y, a1), a2) -
                       cocycle_derivative(x, a1, coadjoint_inf(y, a2));
    return std::abs(lhs - rhs);
}

/// The derived bracket [a1, a2]_P on the b(n) side: the evaluation map
/// x -> T_e Lambda_R(x)(a1, a2) together with the b(n) element representing
/// it through the pairing.
struct DerivedBracket {
    int n = 0;
    std::function<double(const AlgebraElement&)> pair;
    AlgebraElement element;
};

inline DerivedBracket derived_bracket(const AlgebraElement& a1, const AlgebraElement& a2) {
    detail::require_side(a1, Side::borel, "derived_bracket");
    detail::require_side(a2, Side::borel, "derived_bracket");
    const int n = a1.n;
    const std::vector<Mat> ub = unitary_basis(n);
    RVec v(n * n);
    for (int m = 0; m < n * n; ++m)
        v(m) = cocycle_derivative(AlgebraElement::unitary_side(ub[static_cast<size_t>(m)]), a1, a2);
    AlgebraElement elem = AlgebraElement::borel_side(borel_from_functional(n, v), a1.tol);
    DerivedBracket out{n, {}, elem};
    const AlgebraElement b1 = a1, b2 = a2;
    out.pair = [b1, b2](const AlgebraElement& x) { return cocycle_derivative(x, b1, b2); };
    return out;
}

/**
 * First-order model of the Poisson bivector in the right-translated
 * exponential chart xi -> exp(xi . X) g0, expressed in the unitary_basis
 * coordinates. The entry jets carry the exact value and gradient at the chart
 * center xi = 0 (assembled from the cocycle identity, the infinitesimal
 * coadjoint action, and the first-order expansion of the chart's
 * right-logarithmic differential); evaluate jacobiator and friends at the
 * origin.
 */
inline BivectorField exp_chart_bivector(const GroupElement& g0) {
    const int n = g0.n;
    const int d = n * n;
    const std::vector<Mat> ub = unitary_basis(n);

    // Structure constants of u(n): [X_m, X_j] = sum_k lam(m,j,k) X_k.
    std::vector<RMat> lam(static_cast<size_t>(d), RMat::Zero(d, d));  // lam[k](m,j)
    for (int m = 0; m < d; ++m)
        for (int j = 0; j < d; ++j) {
            const Mat br = ub[static_cast<size_t>(m)] * ub[static_cast<size_t>(j)] -
                           ub[static_cast<size_t>(j)] * ub[static_cast<size_t>(m)];
            const RVec c = unitary_coords(br);
            for (int k = 0; k < d; ++k) lam[static_cast<size_t>(k)](m, j) = c(k);
        }

    // beta_k = the b(n) element dual to X_k; d_beta[m][k] = the first-order
    // correction of the chart differential, dual to the functional
    // X_j -> -lam(m,j,k)/2.
    std::vector<AlgebraElement> beta;
    beta.reserve(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        RVec e = RVec::Zero(d);
        e(k) = 1.0;
        beta.push_back(AlgebraElement::borel_side(borel_from_functional(n, e)));
    }
    std::vector<std::vector<AlgebraElement>> d_beta(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k) {
            RVec v(d);
            for (int j = 0; j < d; ++j) v(j) = -0.5 * lam[static_cast<size_t>(k)](m, j);
            d_beta[static_cast<size_t>(m)].push_back(
                AlgebraElement::borel_side(borel_from_functional(n, v)));
        }

    RMat W0 = RMat::Zero(d, d);
    std::vector<RMat> dW(static_cast<size_t>(d), RMat::Zero(d, d));
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            W0(k, l) = lambda_R(g0, beta[static_cast<size_t>(k)], beta[static_cast<size_t>(l)]);
            for (int m = 0; m < d; ++m) {
                const AlgebraElement xm = AlgebraElement::unitary_side(ub[static_cast<size_t>(m)]);
                double val =
                    cocycle_derivative(xm, beta[static_cast<size_t>(k)],
                                       beta[static_cast<size_t>(l)]) +
                    lambda_R(g0, coadjoint_inf(xm, beta[static_cast<size_t>(k)]),
                             beta[static_cast<size_t>(l)]) +
                    lambda_R(g0, beta[static_cast<size_t>(k)],
                             coadjoint_inf(xm, beta[static_cast<size_t>(l)])) +
                    lambda_R(g0, d_beta[static_cast<size_t>(m)][static_cast<size_t>(k)],
                             beta[static_cast<size_t>(l)]) +
                    lambda_R(g0, beta[static_cast<size_t>(k)],
                             d_beta[static_cast<size_t>(m)][static_cast<size_t>(l)]);
                dW[static_cast<size_t>(m)](k, l) = val;
            }
        }

    BivectorField out;
    out.dim = d;
    out.flat_rows = RMat::Identity(d, d);
    out.tol = kDefaultTol;
    out.entry = [W0, dW, d](int i, int j, const RVec& x) {
        Jet2 e = Jet2::constant(W0(i, j), d);
        for (int m = 0; m < d; ++m) {
            e.v += x(m) * dW[static_cast<size_t>(m)](i, j);
            e.g(m) = dW[static_cast<size_t>(m)](i, j);
        }
        return e;
    };
    return out;
}

// -------------------------------------------------------------------------
// The ascending tower U(n) in U(n+1) in ...

/// Block-diagonal promotion: groups pad with the identity, algebra/dual
/// elements pad with zero.
inline GroupElement promote(const GroupElement& g, int level) {
    if (level < g.n) throw std::invalid_argument("promote: level below element size");
    Mat m = Mat::Identity(level, level);
    m.topLeftCorner(g.n, g.n) = g.mat;
    return GroupElement(m, g.tol);
}

inline AlgebraElement promote(const AlgebraElement& a, int level) {
    if (level < a.n) throw std::invalid_argument("promote: level below element size");
    Mat m = Mat::Zero(level, level);
    m.topLeftCorner(a.n, a.n) = a.mat;
    return AlgebraElement(m, a.side, a.tol);
}

inline GroupElement restrict_to(const GroupElement& g, int level) {
    if (level > g.n) throw std::invalid_argument("restrict_to: level above element size");
    return GroupElement(g.mat.topLeftCorner(level, level), g.tol);
}

inline AlgebraElement restrict_to(const AlgebraElement& a, int level) {
    if (level > a.n) throw std::invalid_argument("restrict_to: level above element size");
    return AlgebraElement(a.mat.topLeftCorner(level, level), a.side, a.tol);
}

/// Payload at a fixed level of the ascending tower.
struct TowerElement {
    int level = 0;
    std::variant<GroupElement, AlgebraElement> payload;

    explicit TowerElement(GroupElement g) : level(g.n), payload(std::move(g)) {}
    explicit TowerElement(AlgebraElement a) : level(a.n), payload(std::move(a)) {}

    static TowerElement group(GroupElement g) { return TowerElement(std::move(g)); }
    static TowerElement algebra(AlgebraElement a) { return TowerElement(std::move(a)); }
};

inline TowerElement promote(const TowerElement& e, int level) {
    if (std::holds_alternative<GroupElement>(e.payload))
        return TowerElement::group(promote(std::get<GroupElement>(e.payload), level));
    return TowerElement::algebra(promote(std::get<AlgebraElement>(e.payload), level));
}

/// Real chart coordinates of an n x n complex matrix: row-major, real part
/// then imaginary part per entry; dimension 2 n^2.
inline RVec pack_matrix_point(const Mat& m) {
    const int n = static_cast<int>(m.rows());
    RVec out(2 * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out(2 * (i * n + j)) = m(i, j).real();
            out(2 * (i * n + j) + 1) = m(i, j).imag();
        }
    return out;
}

/// A scalar field defined level-wise on the tower: at_level(n) is a field on
/// the 2 n^2 packed matrix coordinates.
struct TowerScalarField {
    std::function<ScalarField(int)> at_level;
};

/// The field reading off one matrix entry's real or imaginary part, defined
/// uniformly at every level containing the entry.
inline TowerScalarField entry_field(int i, int j, bool imaginary) {
    TowerScalarField f;
    f.at_level = [i, j, imaginary](int n) {
        if (i >= n || j >= n) throw std::invalid_argument("entry_field: level too small");
        return ScalarField::coordinate(2 * n * n, 2 * (i * n + j) + (imaginary ? 1 : 0));
    };
    return f;
}

inline TowerScalarField constant_family(double c) {
    TowerScalarField f;
    f.at_level = [c](int n) { return ScalarField::constant(2 * n * n, c); };
    return f;
}

/**
 * The Poisson bracket {f, g} at promote(elem, level), computed through
 * Lambda_R and the right-logarithmic differentials: <df(u), x> is read off
 * the chart gradient along t -> exp(tx) u, reconstructed as a b(level)
 * element, and the two reconstructions are paired by Lambda_R. The value is
 * stable across admissible levels.
 */
inline double tower_bracket(const TowerScalarField& f, const TowerScalarField& g,
                            const TowerElement& elem, int level) {
    if (!std::holds_alternative<GroupElement>(elem.payload))
        throw std::invalid_argument("tower_bracket: group payload required");
    const GroupElement& base = std::get<GroupElement>(elem.payload);
    if (level < elem.level) throw std::invalid_argument("tower_bracket: level below element");
    const GroupElement u = promote(base, level);
    const RVec x = pack_matrix_point(u.mat);
    const RVec x0 = pack_matrix_point(base.mat);

    const ScalarField fk = f.at_level(level);
    const ScalarField gk = g.at_level(level);
    const Jet2 fj = fk(x);
    const Jet2 gj = gk(x);
    const double f0 = f.at_level(elem.level)(x0).v;
    const double g0 = g.at_level(elem.level)(x0).v;
    if (rel(std::abs(fj.v - f0), std::abs(f0)) > base.tol)
        throw IncompatibleFamilyError("tower_bracket: first field family breaks promotion");
    if (rel(std::abs(gj.v - g0), std::abs(g0)) > base.tol)
        throw IncompatibleFamilyError("tower_bracket: second field family breaks promotion");

    const std::vector<Mat> ub = unitary_basis(level);
    const int d = level * level;
    RVec vf(d), vg(d);
    for (int m = 0; m < d; ++m) {
        const RVec dir = pack_matrix_point(ub[static_cast<size_t>(m)] * u.mat);
        vf(m) = fj.g.dot(dir);
        vg(m) = gj.g.dot(dir);
    }
    const AlgebraElement df = AlgebraElement::borel_side(borel_from_functional(level, vf));
    const AlgebraElement dg = AlgebraElement::borel_side(borel_from_functional(level, vg));
    return lambda_R(u, df, dg);
}

}  // namespace pgl
