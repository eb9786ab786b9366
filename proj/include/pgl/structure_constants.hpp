/**
 * @file structure_constants.hpp
 * @brief Structure-constant tensors of finite-dimensional real Lie algebras,
 *        with antisymmetry/Jacobi validation, basis changes, and a small
 *        library of classical algebras for building block sums.
 */
#pragma once

#include "pgl/core.hpp"

#include <vector>

namespace pgl {

/// Structure constants c_ij^k of a finite-dimensional real Lie algebra,
/// [e_i, e_j] = sum_k c_ij^k e_k, stored as one skew matrix per output index.
struct StructureConstants {
    int dim = 0;
    std::vector<RMat> c;  // c[k](i,j) = c_ij^k

    StructureConstants() = default;
    explicit StructureConstants(int d) : dim(d), c(d, RMat::Zero(d, d)) {}

    double& at(int i, int j, int k) { return c[static_cast<size_t>(k)](i, j); }
    double at(int i, int j, int k) const { return c[static_cast<size_t>(k)](i, j); }

    /// Coordinates of [X, Y].
    RVec bracket(const RVec& X, const RVec& Y) const {
        RVec out = RVec::Zero(dim);
        for (int k = 0; k < dim; ++k) out(k) = X.transpose() * c[static_cast<size_t>(k)] * Y;
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& ck : c) m = std::max(m, ck.size() ? ck.cwiseAbs().maxCoeff() : 0.0);
        return m;
    }

    /// Max violation of antisymmetry in (i, j), relative.
    double antisymmetry_residual() const {
        double worst = 0.0;
        for (const auto& ck : c) worst = std::max(worst, max_norm(RMat(ck + ck.transpose())));
        return rel(worst, max_abs());
    }

    /// Max violation of the Jacobi identity over all index triples, relative.
    double jacobi_residual() const {
        double worst = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    for (int l = 0; l < dim; ++l) {
                        double s = 0.0;
                        for (int m = 0; m < dim; ++m)
                            s += at(i, j, m) * at(m, k, l) + at(j, k, m) * at(m, i, l) +
                                 at(k, i, m) * at(m, j, l);
                        worst = std::max(worst, std::abs(s));
                    }
        const double scale = max_abs();
        return rel(worst, scale * scale);
    }

    /// Change of basis e'_i = sum_a T(a,i) e_a (T invertible, columns = new basis).
    StructureConstants conjugated(const RMat& T) const {
        const RMat Tinv = T.inverse();
        StructureConstants out(dim);
        for (int k = 0; k < dim; ++k) {
            RMat ck = RMat::Zero(dim, dim);
            for (int c_old = 0; c_old < dim; ++c_old)
                ck += Tinv(k, c_old) * RMat(T.transpose() * c[static_cast<size_t>(c_old)] * T);
            out.c[static_cast<size_t>(k)] = ck;
        }
        return out;
    }
};

namespace algebras {

inline StructureConstants abelian(int d) { return StructureConstants(d); }

/// [e1, e2] = e3.
inline StructureConstants heisenberg3() {
    StructureConstants s(3);
    s.at(0, 1, 2) = 1.0;
    s.at(1, 0, 2) = -1.0;
    return s;
}

/// [e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2.
inline StructureConstants so3() {
    StructureConstants s(3);
    const int idx[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const auto& t : idx) {
        s.at(t[0], t[1], t[2]) = 1.0;
        s.at(t[1], t[0], t[2]) = -1.0;
    }
    return s;
}

/// Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline StructureConstants sl2() {
    StructureConstants s(3);
    s.at(0, 1, 1) = 2.0;
    s.at(1, 0, 1) = -2.0;
    s.at(0, 2, 2) = -2.0;
    s.at(2, 0, 2) = 2.0;
    s.at(1, 2, 0) = 1.0;
    s.at(2, 1, 0) = -1.0;
    return s;
}

/// 2-dimensional non-abelian: [e1, e2] = e2.
inline StructureConstants aff1() {
    StructureConstants s(2);
    s.at(0, 1, 1) = 1.0;
    s.at(1, 0, 1) = -1.0;
    return s;
}

/// Euclidean algebra e(2): [e1, e2] = e3, [e1, e3] = -e2, [e2, e3] = 0.
inline StructureConstants e2() {
    StructureConstants s(3);
    s.at(0, 1, 2) = 1.0;
    s.at(1, 0, 2) = -1.0;
    s.at(0, 2, 1) = -1.0;
    s.at(2, 0, 1) = 1.0;
    return s;
}

/// Direct sum (block diagonal in the basis).
inline StructureConstants direct_sum(const StructureConstants& a, const StructureConstants& b) {
    StructureConstants s(a.dim + b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) s.at(i, j, k) = a.at(i, j, k);
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            for (int k = 0; k < b.dim; ++k)
                s.at(a.dim + i, a.dim + j, a.dim + k) = b.at(i, j, k);
    return s;
}

}  // namespace algebras

}  // namespace pgl
