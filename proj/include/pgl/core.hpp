/**
 * @file core.hpp
 * @brief Shared numerical kit: dense types, rank-revealing subspace helpers,
 *        relative residuals, and the seeded counter-based random stream.
 *
 * Conventions used across the library:
 *  - Subspaces are handled as matrices whose columns form an orthonormal basis.
 *  - Rank decisions use the singular-value cutoff max(m,n) * sigma_max * 1e-12.
 *  - Residuals are reported relative: r / (1 + scale), scale derived from the
 *    max-norms of the operands, so checks are scale-free.
 *  - Duality pairings are bilinear (plain transpose); Hermitian adjoints are
 *    used only for orthonormalization and metric projections.
 */
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgl {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Thrown by groupoid multiplications when the source/target matching
/// residual exceeds tolerance; pairs are rejected, never snapped.
struct NonComposableError : std::invalid_argument {
    double residual = 0.0;
    explicit NonComposableError(double r)
        : std::invalid_argument("multiplication: pair not composable, mismatch residual " +
                                std::to_string(r)),
          residual(r) {}
};

/// Relative residual r / (1 + scale).
inline double rel(double r, double scale) { return r / (1.0 + scale); }

/// Max-norm of a matrix; 0 for empty matrices.
inline double max_norm(const Mat& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_norm(const RMat& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Singular-value cutoff separating numerical range from numerical kernel.
inline double rank_threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * sigma_max * 1e-12;
}

/// Orthonormal basis of the column span of A (d x r, r = numerical rank).
inline Mat orthonormal_range(const Mat& A) {
    if (A.cols() == 0 || A.rows() == 0 || max_norm(A) == 0.0)
        return Mat(A.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = rank_threshold(A.rows(), A.cols(), sv(0));
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the right nullspace {x : Ax = 0} (cols(A) x nullity).
inline Mat nullspace(const Mat& A) {
    if (A.cols() == 0) return Mat(0, 0);
    if (A.rows() == 0 || max_norm(A) == 0.0)
        return Mat::Identity(A.cols(), A.cols());
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = rank_threshold(A.rows(), A.cols(), sv(0));
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return svd.matrixV().rightCols(A.cols() - r);
}

/// Orthonormal basis of range(A) ∩ range(B); inputs need not be orthonormal.
inline Mat intersect_spans(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows())
        throw std::invalid_argument("intersect_spans: ambient dimension mismatch");
    const Mat Ao = orthonormal_range(A);
    const Mat Bo = orthonormal_range(B);
    if (Ao.cols() == 0 || Bo.cols() == 0) return Mat(A.rows(), 0);
    Mat stacked(A.rows(), Ao.cols() + Bo.cols());
    stacked << Ao, -Bo;
    const Mat N = nullspace(stacked);
    if (N.cols() == 0) return Mat(A.rows(), 0);
    return orthonormal_range(Ao * N.topRows(Ao.cols()));
}

/// Metric projection residual of v onto an orthonormal column span, relative.
inline double membership_residual(const Mat& basis, const CVec& v) {
    const double nv = v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
    if (basis.cols() == 0) return rel(nv, nv);
    const CVec r = v - basis * (basis.adjoint() * v);
    return rel(r.cwiseAbs().maxCoeff(), nv);
}

/// Two-sided subspace gap: max relative projection residual of either basis
/// against the other span. Zero iff the spans coincide numerically.
inline double span_distance(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows())
        throw std::invalid_argument("span_distance: ambient dimension mismatch");
    double d = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        d = std::max(d, membership_residual(B, A.col(j)));
    for (Eigen::Index j = 0; j < B.cols(); ++j)
        d = std::max(d, membership_residual(A, B.col(j)));
    return d;
}

/// Minimal-norm least-squares solution of Ax = b.
inline CVec min_norm_solve(const Mat& A, const CVec& b) {
    if (A.cols() == 0) return CVec(0);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(Eigen::NumTraits<double>::epsilon() * static_cast<double>(std::max(A.rows(), A.cols())));
    return svd.solve(b);
}

/// Numerical rank with the shared cutoff.
inline Eigen::Index numerical_rank(const Mat& A) {
    if (A.size() == 0 || max_norm(A) == 0.0) return 0;
    Eigen::JacobiSVD<Mat> svd(A);
    const auto& sv = svd.singularValues();
    const double cut = rank_threshold(A.rows(), A.cols(), sv(0));
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return r;
}

/// Real matrices promoted to the complex kit.
inline Mat to_complex(const RMat& a) { return a.cast<cxd>(); }

/// Real part extraction with a guard against accidental imaginary content.
inline RMat to_real(const Mat& a, double tol = 1e-9) {
    if (a.size() != 0 && a.imag().cwiseAbs().maxCoeff() > tol * (1.0 + max_norm(a)))
        throw std::invalid_argument("to_real: non-negligible imaginary part");
    return a.real();
}

/**
 * Deterministic 64-bit counter-based stream (SplitMix64 mixing).
 *
 * A stream is identified by (seed, stream). Draw k of stream s from seed q is
 * a pure function of (q, s, k), so trial batches can be sharded arbitrarily
 * and still reproduce bit-identical reports.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix(seed ^ mix(0x5851F42D4C957F2DULL + stream))), counter_(0) {}

    /// Substream derived from this stream's identity and a tag.
    Rng fork(std::uint64_t tag) const { return Rng(base_, 0x9E3779B97F4A7C15ULL ^ tag); }

    std::uint64_t next_u64() { return mix(base_ + 0x9E3779B97F4A7C15ULL * (++counter_)); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached state; two draws per call).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Complex standard normal (unit total variance).
    cxd cnormal() {
        const double re = normal();
        const double im = normal();
        return cxd(re, im) / std::sqrt(2.0);
    }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    RMat gaussian(Eigen::Index rows, Eigen::Index cols) {
        RMat m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
        return m;
    }

    Mat cgaussian(Eigen::Index rows, Eigen::Index cols) {
        Mat m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cnormal();
        return m;
    }

    /// Haar-like unitary: QR of a complex Gaussian with the triangular factor's
    /// diagonal normalized to positive reals.
    Mat unitary(Eigen::Index n) {
        const Mat g = cgaussian(n, n);
        Eigen::HouseholderQR<Mat> qr(g);
        Mat q = qr.householderQ();
        const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index j = 0; j < n; ++j) {
            const cxd d = r(j, j);
            const double a = std::abs(d);
            q.col(j) *= (a == 0.0) ? cxd(1, 0) : d / a;
        }
        return q;
    }

    /// Random orthogonal real matrix (QR of a real Gaussian, sign-normalized).
    RMat orthogonal(Eigen::Index n) {
        const RMat g = gaussian(n, n);
        Eigen::HouseholderQR<RMat> qr(g);
        RMat q = qr.householderQ();
        const RMat r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index j = 0; j < n; ++j)
            if (r(j, j) < 0) q.col(j) = -q.col(j);
        return q;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
    std::uint64_t counter_;
};

}  // namespace pgl
