/**
 * @file jet.hpp
 * @brief Forward second-order jet scalar: value, gradient, Hessian, with exact
 *        propagation through arithmetic (sum/product/chain rules).
 *
 * Jets make bracket and Schouten residuals derivative-exact to machine
 * precision; central finite differences are kept in the test suite only as an
 * audit oracle.
 *
 * partial() exposes first derivatives of a jet as a new jet. Its value and
 * gradient are exact, but its Hessian would need third derivatives of the
 * source and is therefore zeroed: any expression built through partial() is
 * trusted to first order only, which is all the nested-bracket formulas use.
 */
#pragma once

#include "pgl/core.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace pgl {

struct Jet2 {
    double v = 0.0;
    RVec g;
    RMat h;

    Jet2() = default;
    Jet2(double value, RVec grad, RMat hess)
        : v(value), g(std::move(grad)), h(std::move(hess)) {}

    static Jet2 constant(double c, int dim) {
        return Jet2(c, RVec::Zero(dim), RMat::Zero(dim, dim));
    }

    /// Coordinate function x_i seeded at value x.
    static Jet2 variable(double x, int i, int dim) {
        RVec g = RVec::Zero(dim);
        g(i) = 1.0;
        return Jet2(x, std::move(g), RMat::Zero(dim, dim));
    }

    int dim() const { return static_cast<int>(g.size()); }

    Jet2 operator-() const { return Jet2(-v, -g, -h); }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return Jet2(a.v + b.v, a.g + b.g, a.h + b.h); }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return Jet2(a.v - b.v, a.g - b.g, a.h - b.h); }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return Jet2(a.v * b.v,
                a.v * b.g + b.v * a.g,
                a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose());
}

inline Jet2 operator+(const Jet2& a, double c) { return Jet2(a.v + c, a.g, a.h); }
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }
inline Jet2 operator-(const Jet2& a, double c) { return Jet2(a.v - c, a.g, a.h); }
inline Jet2 operator-(double c, const Jet2& a) { return Jet2(c - a.v, -a.g, -a.h); }
inline Jet2 operator*(const Jet2& a, double c) { return Jet2(a.v * c, a.g * c, a.h * c); }
inline Jet2 operator*(double c, const Jet2& a) { return a * c; }
inline Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }

/// Chain rule through a univariate map given f(u), f'(u), f''(u).
inline Jet2 chain(const Jet2& u, double f, double df, double ddf) {
    return Jet2(f, df * u.g, df * u.h + ddf * u.g * u.g.transpose());
}

/// Reciprocal 1/u (u.v must be nonzero).
inline Jet2 inverse(const Jet2& u) {
    const double iv = 1.0 / u.v;
    return chain(u, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inverse(b); }
inline Jet2 operator/(double c, const Jet2& b) { return inverse(b) * c; }

/// Integer power by repeated multiplication (exact rules).
inline Jet2 pow_i(const Jet2& u, int k) {
    Jet2 r = Jet2::constant(1.0, u.dim());
    for (int i = 0; i < k; ++i) r = r * u;
    return r;
}

/**
 * First derivative d_i f as a jet. Exact to first order; the Hessian slot is
 * zeroed (it would require third derivatives of f).
 */
inline Jet2 partial(const Jet2& f, int i) {
    return Jet2(f.g(i), f.h.row(i).transpose(), RMat::Zero(f.dim(), f.dim()));
}

/// Scalar field on R^d evaluated in jets.
struct ScalarField {
    int dim = 0;
    std::function<Jet2(const RVec&)> eval;

    Jet2 operator()(const RVec& x) const { return eval(x); }

    static ScalarField constant(int dim, double c) {
        return {dim, [dim, c](const RVec&) { return Jet2::constant(c, dim); }};
    }

    /// Coordinate x_i.
    static ScalarField coordinate(int dim, int i) {
        return {dim, [dim, i](const RVec& x) { return Jet2::variable(x(i), i, dim); }};
    }

    /// Linear functional c . x.
    static ScalarField linear(const RVec& c) {
        const int dim = static_cast<int>(c.size());
        return {dim, [dim, c](const RVec& x) {
                    Jet2 r = Jet2::constant(0.0, dim);
                    for (int i = 0; i < dim; ++i) r = r + Jet2::variable(x(i), i, dim) * c(i);
                    return r;
                }};
    }

    /// Polynomial sum of terms (exponent vector, coefficient).
    static ScalarField polynomial(int dim, std::vector<std::pair<std::vector<int>, double>> terms) {
        return {dim, [dim, terms = std::move(terms)](const RVec& x) {
                    Jet2 r = Jet2::constant(0.0, dim);
                    for (const auto& [expo, coeff] : terms) {
                        Jet2 m = Jet2::constant(coeff, dim);
                        for (int i = 0; i < dim; ++i)
                            if (expo[static_cast<size_t>(i)] > 0)
                                m = m * pow_i(Jet2::variable(x(i), i, dim), expo[static_cast<size_t>(i)]);
                        r = r + m;
                    }
                    return r;
                }};
    }
};

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return {a.dim, [ea = a.eval, eb = b.eval](const RVec& x) { return ea(x) + eb(x); }};
}

inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return {a.dim, [ea = a.eval, eb = b.eval](const RVec& x) { return ea(x) * eb(x); }};
}

/// Vector field on R^d (d jet components).
struct VectorField {
    int dim = 0;
    std::function<std::vector<Jet2>(const RVec&)> eval;

    std::vector<Jet2> operator()(const RVec& x) const { return eval(x); }

    static VectorField constant(int dim, const RVec& v) {
        return {dim, [dim, v](const RVec&) {
                    std::vector<Jet2> out;
                    out.reserve(dim);
                    for (int i = 0; i < dim; ++i) out.push_back(Jet2::constant(v(i), dim));
                    return out;
                }};
    }

    /// One scalar field per component.
    static VectorField from_components(std::vector<ScalarField> comps) {
        const int dim = comps.empty() ? 0 : comps.front().dim;
        return {dim, [comps = std::move(comps)](const RVec& x) {
                    std::vector<Jet2> out;
                    out.reserve(comps.size());
                    for (const auto& c : comps) out.push_back(c(x));
                    return out;
                }};
    }

    /// Linear field x -> A x.
    static VectorField linear(const RMat& A) {
        const int dim = static_cast<int>(A.cols());
        return {dim, [dim, A](const RVec& x) {
                    std::vector<Jet2> out;
                    out.reserve(A.rows());
                    for (int i = 0; i < A.rows(); ++i) {
                        Jet2 c = Jet2::constant(0.0, dim);
                        for (int j = 0; j < dim; ++j)
                            c = c + Jet2::variable(x(j), j, dim) * A(i, j);
                        out.push_back(c);
                    }
                    return out;
                }};
    }
};

/// One-form field on R^d (d covector jet components).
struct OneFormField {
    int dim = 0;
    std::function<std::vector<Jet2>(const RVec&)> eval;

    std::vector<Jet2> operator()(const RVec& x) const { return eval(x); }

    static OneFormField constant(int dim, const RVec& w) {
        return {dim, VectorField::constant(dim, w).eval};
    }

    /// One scalar field per component.
    static OneFormField from_components(std::vector<ScalarField> comps) {
        return {comps.empty() ? 0 : comps.front().dim,
                VectorField::from_components(std::move(comps)).eval};
    }

    /// Exact differential df of a scalar field (components are partial()-jets).
    static OneFormField differential(const ScalarField& f) {
        const int dim = f.dim;
        auto ev = f.eval;
        return {dim, [dim, ev](const RVec& x) {
                    const Jet2 fx = ev(x);
                    std::vector<Jet2> out;
                    out.reserve(dim);
                    for (int i = 0; i < dim; ++i) out.push_back(partial(fx, i));
                    return out;
                }};
    }
};

}  // namespace pgl
