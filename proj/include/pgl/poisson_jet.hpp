/**
 * @file poisson_jet.hpp
 * @brief Pointwise Poisson calculus on a global chart of R^d via second-order
 *        jet arithmetic: brackets, Hamiltonian fields, the Koszul bracket on
 *        one-forms, Schouten and Jacobi residuals, the bialgebroid identity,
 *        and Lie-Poisson structures on duals of Lie algebras.
 *
 * Conventions (fixed across the library):
 *   - A bivector field is given by its matrix W(x) in a constant functional
 *     frame: W_ij(x) = Lambda(beta_i, beta_j)(x), skew.
 *   - {f, g} = a_f^T W a_g with a_f = B grad f (so {x1, x2} = +1 for the
 *     standard plane W_12 = +1); equivalently {f, g} = <dg, P df>.
 *   - The anchor realizes P(alpha) = -B^T W a_alpha, hence X_f = P(df)
 *     satisfies {f, g} = X_f(g).
 *
 * Derivative discipline: every formula below needs at most the exact value
 * and gradient of intermediate expressions. Jet2::partial truncates the
 * Hessian, so results are exact wherever only value/gradient of partials is
 * consumed — which is everywhere in this module.
 */
#pragma once

#include "pgl/core.hpp"
#include "pgl/jet.hpp"
#include "pgl/structure_constants.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pgl {

/// Thrown when a differential or one-form escapes the flat row space.
struct FlatEscapeError : std::runtime_error {
    double residual;
    explicit FlatEscapeError(const std::string& what, double r)
        : std::runtime_error(what + " (escape residual " + std::to_string(r) + ")"),
          residual(r) {}
};

/// Pointwise evaluation payload of a bivector field: the skew matrix and its
/// first partial derivatives.
struct BivectorEval {
    RMat lambda;                // k x k skew
    std::vector<RMat> dlambda;  // dlambda[l](i,j) = d/dx_l Lambda_ij, length d
};

/**
 * Bivector field on a global chart of R^d in a constant flat frame. Entries
 * are full second-order jets so that derived expressions (Schouten brackets,
 * bialgebroid residuals) keep exact gradients.
 */
struct BivectorField {
    int dim = 0;        // chart dimension d
    RMat flat_rows;     // k x d, orthonormal rows spanning the flat frame
    double tol = kDefaultTol;
    std::function<Jet2(int, int, const RVec&)> entry;  // W_ij as a Jet2 in x

    int flat_dim() const { return static_cast<int>(flat_rows.rows()); }

    Jet2 entry_jet(int i, int j, const RVec& x) const { return entry(i, j, x); }

    /// Assembled (Lambda, dLambda) at x.
    BivectorEval eval(const RVec& x) const {
        const int k = flat_dim();
        BivectorEval out;
        out.lambda = RMat::Zero(k, k);
        out.dlambda.assign(static_cast<size_t>(dim), RMat::Zero(k, k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const Jet2 e = entry(i, j, x);
                out.lambda(i, j) = e.v;
                for (int l = 0; l < dim; ++l) out.dlambda[static_cast<size_t>(l)](i, j) = e.g(l);
            }
        return out;
    }

    double skewness_residual(const RVec& x) const {
        const BivectorEval e = eval(x);
        return rel(max_norm(RMat(e.lambda + e.lambda.transpose())), max_norm(e.lambda));
    }

    /// Constant bivector on the full flat frame (flat_rows = identity).
    static BivectorField constant(const RMat& W, double tolerance = kDefaultTol) {
        if (rel(max_norm(RMat(W + W.transpose())), max_norm(W)) > 1e-12)
            throw std::invalid_argument("BivectorField::constant: matrix not antisymmetric");
        const int d = static_cast<int>(W.rows());
        BivectorField out;
        out.dim = d;
        out.flat_rows = RMat::Identity(d, d);
        out.tol = tolerance;
        out.entry = [W, d](int i, int j, const RVec&) {
            Jet2 e = Jet2::constant(W(i, j), d);
            return e;
        };
        return out;
    }
};

namespace detail {

/// Flat coordinates (against the rows of B) of a one-form's component jets,
/// with the escape check on values.
inline std::vector<Jet2> flat_coords(const BivectorField& W, const std::vector<Jet2>& components,
                                     const char* what) {
    const int d = W.dim;
    const int k = W.flat_dim();
    RVec vals(d);
    for (int j = 0; j < d; ++j) vals(j) = components[static_cast<size_t>(j)].v;
    const RVec proj = W.flat_rows.transpose() * (W.flat_rows * vals);
    const double escape = rel((vals - proj).cwiseAbs().maxCoeff(), vals.cwiseAbs().maxCoeff());
    if (escape > W.tol) throw FlatEscapeError(std::string(what) + " escapes the flat frame", escape);
    std::vector<Jet2> out;
    out.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        Jet2 acc = Jet2::constant(0.0, d);
        for (int j = 0; j < d; ++j) acc = acc + W.flat_rows(i, j) * components[static_cast<size_t>(j)];
        out.push_back(acc);
    }
    return out;
}

/// Component jets of a one-form field at x.
inline std::vector<Jet2> form_jets(const OneFormField& alpha, const RVec& x) { return alpha(x); }

/// Component jets of a vector field at x.
inline std::vector<Jet2> field_jets(const VectorField& X, const RVec& x) { return X(x); }

/// Differential of a scalar field as component jets (value/gradient exact).
inline std::vector<Jet2> differential_jets(const ScalarField& f, const RVec& x) {
    const Jet2 F = f.eval(x);
    std::vector<Jet2> out;
    out.reserve(static_cast<size_t>(f.dim));
    for (int j = 0; j < f.dim; ++j) out.push_back(partial(F, j));
    return out;
}

/// Anchor field P(alpha) = -B^T W a as component jets (value/gradient exact,
/// Hessian exact when the inputs carry exact Hessians).
inline std::vector<Jet2> anchor_jets(const BivectorField& W, const std::vector<Jet2>& a,
                                     const RVec& x) {
    const int d = W.dim;
    const int k = W.flat_dim();
    std::vector<Jet2> out(static_cast<size_t>(d), Jet2::constant(0.0, d));
    for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m) {
            const Jet2 term = W.entry_jet(l, m, x) * a[static_cast<size_t>(m)];
            for (int i = 0; i < d; ++i) {
                if (W.flat_rows(l, i) != 0.0)
                    out[static_cast<size_t>(i)] = out[static_cast<size_t>(i)] - W.flat_rows(l, i) * term;
            }
        }
    return out;
}

/// (L_X beta)_j = sum_i X_i d_i beta_j + beta_i d_j X_i, as jets.
inline std::vector<Jet2> lie_derivative_form(const std::vector<Jet2>& X,
                                             const std::vector<Jet2>& beta) {
    const int d = static_cast<int>(X.size());
    std::vector<Jet2> out;
    out.reserve(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        Jet2 acc = Jet2::constant(0.0, d);
        for (int i = 0; i < d; ++i)
            acc = acc + X[static_cast<size_t>(i)] * partial(beta[static_cast<size_t>(j)], i) +
                  beta[static_cast<size_t>(i)] * partial(X[static_cast<size_t>(i)], j);
        out.push_back(acc);
    }
    return out;
}

/// <alpha, X> = sum_i alpha_i X_i as a jet.
inline Jet2 pairing_jet(const std::vector<Jet2>& alpha, const std::vector<Jet2>& X) {
    const int d = static_cast<int>(alpha.size());
    Jet2 acc = Jet2::constant(0.0, alpha.empty() ? 0 : alpha[0].dim());
    for (int i = 0; i < d; ++i) acc = acc + alpha[static_cast<size_t>(i)] * X[static_cast<size_t>(i)];
    return acc;
}

/// {f, g} = a_f^T W a_g as a jet (value and gradient exact).
inline Jet2 bracket_jet(const BivectorField& W, const std::vector<Jet2>& a_f,
                        const std::vector<Jet2>& a_g, const RVec& x) {
    const int k = W.flat_dim();
    Jet2 acc = Jet2::constant(0.0, W.dim);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            acc = acc + a_f[static_cast<size_t>(i)] * W.entry_jet(i, j, x) * a_g[static_cast<size_t>(j)];
    return acc;
}

/// Koszul bracket [alpha, beta]_P component jets:
/// L_{P(alpha)} beta - L_{P(beta)} alpha - d Lambda(alpha, beta), with
/// Lambda(alpha, beta) = a_alpha^T W a_beta (= {f, g} on differentials, which
/// forces [df, dg]_P = d{f, g}).
inline std::vector<Jet2> koszul_jets(const BivectorField& W, const std::vector<Jet2>& alpha,
                                     const std::vector<Jet2>& beta, const RVec& x) {
    const std::vector<Jet2> a = flat_coords(W, alpha, "koszul: alpha");
    const std::vector<Jet2> b = flat_coords(W, beta, "koszul: beta");
    const std::vector<Jet2> Pa = anchor_jets(W, a, x);
    const std::vector<Jet2> Pb = anchor_jets(W, b, x);
    const std::vector<Jet2> t1 = lie_derivative_form(Pa, beta);
    const std::vector<Jet2> t2 = lie_derivative_form(Pb, alpha);
    const Jet2 s = bracket_jet(W, a, b, x);
    std::vector<Jet2> out;
    out.reserve(static_cast<size_t>(W.dim));
    for (int j = 0; j < W.dim; ++j)
        out.push_back(t1[static_cast<size_t>(j)] - t2[static_cast<size_t>(j)] - partial(s, j));
    return out;
}

/// d_P X (alpha, beta) = P(alpha)<beta,X> - P(beta)<alpha,X> - <[alpha,beta]_P, X>
/// as a jet (value and gradient exact).
inline Jet2 dP_jet(const BivectorField& W, const std::vector<Jet2>& Xj,
                   const std::vector<Jet2>& alpha, const std::vector<Jet2>& beta, const RVec& x) {
    const std::vector<Jet2> a = flat_coords(W, alpha, "dP: alpha");
    const std::vector<Jet2> b = flat_coords(W, beta, "dP: beta");
    const std::vector<Jet2> Pa = anchor_jets(W, a, x);
    const std::vector<Jet2> Pb = anchor_jets(W, b, x);
    const Jet2 bX = pairing_jet(beta, Xj);
    const Jet2 aX = pairing_jet(alpha, Xj);
    Jet2 acc = Jet2::constant(0.0, W.dim);
    for (int i = 0; i < W.dim; ++i)
        acc = acc + Pa[static_cast<size_t>(i)] * partial(bX, i) - Pb[static_cast<size_t>(i)] * partial(aX, i);
    const std::vector<Jet2> kos = koszul_jets(W, alpha, beta, x);
    return acc - pairing_jet(kos, Xj);
}

/// Lie bracket of vector fields, [X, Y]_i = sum_j X_j d_j Y_i - Y_j d_j X_i.
inline std::vector<Jet2> field_bracket_jets(const std::vector<Jet2>& X,
                                            const std::vector<Jet2>& Y) {
    const int d = static_cast<int>(X.size());
    std::vector<Jet2> out;
    out.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        Jet2 acc = Jet2::constant(0.0, d);
        for (int j = 0; j < d; ++j)
            acc = acc + X[static_cast<size_t>(j)] * partial(Y[static_cast<size_t>(i)], j) -
                  Y[static_cast<size_t>(j)] * partial(X[static_cast<size_t>(i)], j);
        out.push_back(acc);
    }
    return out;
}

}  // namespace detail

/// {f, g}(x) = <dg, P df>(x); antisymmetric, Leibniz.
inline double bracket(const BivectorField& W, const ScalarField& f, const ScalarField& g,
                      const RVec& x) {
    const std::vector<Jet2> a_f =
        detail::flat_coords(W, detail::differential_jets(f, x), "bracket: df");
    const std::vector<Jet2> a_g =
        detail::flat_coords(W, detail::differential_jets(g, x), "bracket: dg");
    return detail::bracket_jet(W, a_f, a_g, x).v;
}

/// X_f(x) = P(df)(x); satisfies {f, g} = X_f(g).
inline RVec hamiltonian_field(const BivectorField& W, const ScalarField& f, const RVec& x) {
    const std::vector<Jet2> a_f =
        detail::flat_coords(W, detail::differential_jets(f, x), "hamiltonian_field: df");
    const std::vector<Jet2> X = detail::anchor_jets(W, a_f, x);
    RVec out(W.dim);
    for (int i = 0; i < W.dim; ++i) out(i) = X[static_cast<size_t>(i)].v;
    return out;
}

/// Koszul bracket [alpha, beta]_P(x) as a covector (chart components).
inline RVec koszul_bracket(const BivectorField& W, const OneFormField& alpha,
                           const OneFormField& beta, const RVec& x) {
    const std::vector<Jet2> kos =
        detail::koszul_jets(W, detail::form_jets(alpha, x), detail::form_jets(beta, x), x);
    RVec out(W.dim);
    for (int j = 0; j < W.dim; ++j) out(j) = kos[static_cast<size_t>(j)].v;
    return out;
}

/**
 * [Lambda, Lambda](sigma1, sigma2, sigma3)(x) = <sigma3, [P,P](sigma2, sigma1)>
 * with [P,P](s1, s2) = P([s1, s2]_P) - [P s1, P s2]; vanishes for all triples
 * iff W is Poisson.
 */
inline double schouten_residual(const BivectorField& W, const OneFormField& sigma1,
                                const OneFormField& sigma2, const OneFormField& sigma3,
                                const RVec& x) {
    const std::vector<Jet2> s1 = detail::form_jets(sigma2, x);  // first slot of [P,P]
    const std::vector<Jet2> s2 = detail::form_jets(sigma1, x);  // second slot
    const std::vector<Jet2> kos = detail::koszul_jets(W, s1, s2, x);
    const std::vector<Jet2> a_kos = detail::flat_coords(W, kos, "schouten: [s1,s2]_P");
    const std::vector<Jet2> P_kos = detail::anchor_jets(W, a_kos, x);

    const std::vector<Jet2> a1 = detail::flat_coords(W, s1, "schouten: sigma2");
    const std::vector<Jet2> a2 = detail::flat_coords(W, s2, "schouten: sigma1");
    const std::vector<Jet2> P1 = detail::anchor_jets(W, a1, x);
    const std::vector<Jet2> P2 = detail::anchor_jets(W, a2, x);
    const std::vector<Jet2> lie = detail::field_bracket_jets(P1, P2);

    const std::vector<Jet2> s3 = detail::form_jets(sigma3, x);
    double acc = 0.0;
    for (int i = 0; i < W.dim; ++i)
        acc += s3[static_cast<size_t>(i)].v *
               (P_kos[static_cast<size_t>(i)].v - lie[static_cast<size_t>(i)].v);
    return acc;
}

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}} at x.
inline double jacobiator(const BivectorField& W, const ScalarField& f, const ScalarField& g,
                         const ScalarField& h, const RVec& x) {
    const std::vector<Jet2> a_f =
        detail::flat_coords(W, detail::differential_jets(f, x), "jacobiator: df");
    const std::vector<Jet2> a_g =
        detail::flat_coords(W, detail::differential_jets(g, x), "jacobiator: dg");
    const std::vector<Jet2> a_h =
        detail::flat_coords(W, detail::differential_jets(h, x), "jacobiator: dh");

    const auto outer = [&](const std::vector<Jet2>& a_out, const Jet2& inner) {
        // Only the inner value/gradient are trusted; rebuild its flat coords.
        std::vector<Jet2> inner_diff;
        inner_diff.reserve(static_cast<size_t>(W.dim));
        for (int j = 0; j < W.dim; ++j) inner_diff.push_back(partial(inner, j));
        const std::vector<Jet2> a_in = detail::flat_coords(W, inner_diff, "jacobiator: inner");
        return detail::bracket_jet(W, a_out, a_in, x).v;
    };
    const Jet2 gh = detail::bracket_jet(W, a_g, a_h, x);
    const Jet2 hf = detail::bracket_jet(W, a_h, a_f, x);
    const Jet2 fg = detail::bracket_jet(W, a_f, a_g, x);
    return outer(a_f, gh) + outer(a_g, hf) + outer(a_h, fg);
}

/// d_P X (alpha, beta)(x).
inline double dP_vector_field(const BivectorField& W, const VectorField& X,
                              const OneFormField& alpha, const OneFormField& beta,
                              const RVec& x) {
    return detail::dP_jet(W, detail::field_jets(X, x), detail::form_jets(alpha, x),
                          detail::form_jets(beta, x), x)
        .v;
}

/**
 * d_P[X,Y](alpha, beta) - (L_X d_P Y - L_Y d_P X)(alpha, beta) at x, where
 * (L_X C)(alpha, beta) = X(C(alpha, beta)) - C(L_X alpha, beta) - C(alpha, L_X beta).
 * Vanishes when W is Poisson.
 */
inline double bialgebroid_residual(const BivectorField& W, const VectorField& X,
                                   const VectorField& Y, const OneFormField& alpha,
                                   const OneFormField& beta, const RVec& x) {
    const std::vector<Jet2> Xj = detail::field_jets(X, x);
    const std::vector<Jet2> Yj = detail::field_jets(Y, x);
    const std::vector<Jet2> al = detail::form_jets(alpha, x);
    const std::vector<Jet2> be = detail::form_jets(beta, x);

    const std::vector<Jet2> XY = detail::field_bracket_jets(Xj, Yj);
    const double term1 = detail::dP_jet(W, XY, al, be, x).v;

    const auto lie_of_dP = [&](const std::vector<Jet2>& A, const std::vector<Jet2>& B) {
        // (L_A d_P B)(alpha, beta).
        const Jet2 c = detail::dP_jet(W, B, al, be, x);
        double acc = 0.0;
        for (int i = 0; i < W.dim; ++i) acc += A[static_cast<size_t>(i)].v * c.g(i);
        const std::vector<Jet2> lie_al = detail::lie_derivative_form(A, al);
        const std::vector<Jet2> lie_be = detail::lie_derivative_form(A, be);
        acc -= detail::dP_jet(W, B, lie_al, be, x).v;
        acc -= detail::dP_jet(W, B, al, lie_be, x).v;
        return acc;
    };
    const double term2 = lie_of_dP(Xj, Yj);
    const double term3 = lie_of_dP(Yj, Xj);
    return term1 - (term2 - term3);
}

/**
 * Linear (Lie-Poisson) bivector on the dual of a Lie algebra:
 * Lambda_ij(xi) = sum_k c_ij^k xi_k. Structure constants are validated
 * (antisymmetry and Jacobi) and rejected otherwise. Coordinate-linear
 * functions then satisfy {Phi_a, Phi_b} = Phi_{[a,b]}.
 */
inline BivectorField lie_poisson_bivector(const StructureConstants& sc,
                                          double tolerance = kDefaultTol) {
    if (sc.antisymmetry_residual() > 1e-12)
        throw std::invalid_argument("lie_poisson_bivector: constants not antisymmetric");
    if (sc.jacobi_residual() > 1e-10)
        throw std::invalid_argument("lie_poisson_bivector: constants violate the Jacobi identity");
    BivectorField out;
    out.dim = sc.dim;
    out.flat_rows = RMat::Identity(sc.dim, sc.dim);
    out.tol = tolerance;
    const StructureConstants c = sc;
    out.entry = [c](int i, int j, const RVec& xi) {
        Jet2 e = Jet2::constant(0.0, c.dim);
        for (int k = 0; k < c.dim; ++k) {
            e.v += c.at(i, j, k) * xi(k);
            e.g(k) = c.at(i, j, k);
        }
        return e;
    };
    return out;
}

}  // namespace pgl
