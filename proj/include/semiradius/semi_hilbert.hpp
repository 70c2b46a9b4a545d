#pragma once
//
// The semi-Hilbertian structure induced by a positive semidefinite A:
// <x, y>_A = <Ax, y>, the A-seminorms, the Douglas range test for
// A-adjointability and the A-adjoint T# = A^+ T* A.
//

#include "semiradius/core_linalg.hpp"

#include <algorithm>
#include <memory>

namespace semiradius {

///
/// A with its spectral data. Built only through psd_decompose(); immutable
/// afterwards.
///
/// The columns of `range_basis` are the eigenvectors of A whose eigenvalues
/// exceed the rank cutoff, and `range_eigenvalues` holds those eigenvalues in
/// ascending order. Together they give the compressed picture used by the
/// radius scan: an operator T is represented on range(A) by
/// L^{1/2} U_r* T U_r L^{-1/2}.
///
template <typename Real> struct PsdContext {
    Eigen::Index dim = 0;
    Matrix<Real> a;
    HermEig<Real> eig;
    Eigen::Index rank = 0;
    Real lambda_max = 0;
    Real cutoff = 0;
    Matrix<Real> sqrt_a;
    Matrix<Real> pinv_a;
    Matrix<Real> pinv_sqrt_a;
    Matrix<Real> proj;
    Matrix<Real> range_basis;
    RealVector<Real> range_eigenvalues;
    TolerancePolicy<Real> tol;
};

template <typename Real> using ContextPtr = std::shared_ptr<const PsdContext<Real>>;

template <typename Real>
ContextPtr<Real> psd_decompose(const Matrix<Real>& a_raw,
                               const TolerancePolicy<Real>& tol = TolerancePolicy<Real>{}) {
    tol.validate();
    require_square(a_raw);
    require_finite(a_raw);

    const Real raw_norm = spectral_norm<Real>(a_raw);
    const Real skew = spectral_norm<Real>(Matrix<Real>(a_raw - a_raw.adjoint()));
    if (skew > tol.check_rel_tol * raw_norm)
        throw Error(ErrorKind::not_hermitian,
                    "||A - A*|| = " + std::to_string(double(skew)) + " exceeds tolerance");

    auto ctx = std::make_shared<PsdContext<Real>>();
    ctx->tol = tol;
    ctx->dim = a_raw.rows();
    ctx->a = hermitian_part<Real>(a_raw);
    ctx->eig = hermitian_eig<Real>(ctx->a);

    const auto& lam = ctx->eig.eigenvalues;
    const auto& u = ctx->eig.eigenvectors;
    const Eigen::Index n = ctx->dim;
    const Real top = lam(n - 1);
    const Real bottom = lam(0);
    const Real scale = std::max(top, Real(0));
    if (bottom < Real(0) && bottom < -tol.rank_rel_tol * scale)
        throw Error(ErrorKind::not_psd,
                    "smallest eigenvalue " + std::to_string(double(bottom)) + " is materially negative");

    ctx->lambda_max = scale;
    ctx->cutoff = tol.rank_rel_tol * scale;

    RealVector<Real> sq(n), inv(n), inv_sq(n), ind(n);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Real l = std::max(lam(i), Real(0));
        const bool kept = scale > Real(0) && l > ctx->cutoff;
        sq(i) = std::sqrt(l);
        inv(i) = kept ? Real(1) / l : Real(0);
        inv_sq(i) = kept ? Real(1) / std::sqrt(l) : Real(0);
        ind(i) = kept ? Real(1) : Real(0);
        rank += kept ? 1 : 0;
    }
    ctx->rank = rank;

    auto rebuild = [&](const RealVector<Real>& d) -> Matrix<Real> {
        Matrix<Real> m = u * d.template cast<Complex<Real>>().asDiagonal() * u.adjoint();
        return hermitian_part<Real>(m);
    };
    ctx->sqrt_a = rebuild(sq);
    ctx->pinv_a = rebuild(inv);
    ctx->pinv_sqrt_a = rebuild(inv_sq);
    ctx->proj = rebuild(ind);

    // eigenvalues ascend, so the kept ones are the trailing `rank` columns
    ctx->range_basis = u.rightCols(rank);
    ctx->range_eigenvalues = lam.tail(rank);
    return ctx;
}

namespace detail {

template <typename Real> void require_dim(const PsdContext<Real>& ctx, Eigen::Index rows, Eigen::Index cols) {
    if (rows != ctx.dim || cols != ctx.dim)
        throw Error(ErrorKind::dimension_mismatch,
                    "expected " + std::to_string(ctx.dim) + "x" + std::to_string(ctx.dim) + ", got " +
                        std::to_string(rows) + "x" + std::to_string(cols));
}

template <typename Real> void require_len(const PsdContext<Real>& ctx, Eigen::Index len) {
    if (len != ctx.dim)
        throw Error(ErrorKind::dimension_mismatch,
                    "vector length " + std::to_string(len) + " != " + std::to_string(ctx.dim));
}

} // namespace detail

/// <x, y>_A = y* A x
template <typename Real>
Complex<Real> a_inner(const PsdContext<Real>& ctx, const Vector<Real>& x, const Vector<Real>& y) {
    detail::require_len(ctx, x.size());
    detail::require_len(ctx, y.size());
    return y.dot(ctx.a * x);
}

template <typename Real> Real a_norm_vec(const PsdContext<Real>& ctx, const Vector<Real>& x) {
    detail::require_len(ctx, x.size());
    // ||A^{1/2} x|| avoids the cancellation in sqrt(x* A x)
    return (ctx.sqrt_a * x).norm();
}

///
/// Douglas test R(T*A) in R(A), relative to max(||T*A||, lambda_max(A)).
///
template <typename Real> bool is_adjointable(const PsdContext<Real>& ctx, const Matrix<Real>& t) {
    detail::require_dim(ctx, t.rows(), t.cols());
    require_finite(t);
    const Matrix<Real> tsa = t.adjoint() * ctx.a;
    const Matrix<Real> off = tsa - ctx.proj * tsa;
    const Real scale = std::max(spectral_norm<Real>(tsa), ctx.lambda_max);
    return spectral_norm<Real>(off) <= ctx.tol.check_rel_tol * scale;
}

template <typename Real> bool is_a_selfadjoint(const PsdContext<Real>& ctx, const Matrix<Real>& t) {
    detail::require_dim(ctx, t.rows(), t.cols());
    require_finite(t);
    const Matrix<Real> at = ctx.a * t;
    const Real scale = std::max(spectral_norm<Real>(at), ctx.lambda_max);
    return spectral_norm<Real>(Matrix<Real>(at - at.adjoint())) <= ctx.tol.check_rel_tol * scale;
}

/// A^+ M* A, with no adjointability check.
template <typename Real> Matrix<Real> a_sharp(const PsdContext<Real>& ctx, const Matrix<Real>& m) {
    return ctx.pinv_a * m.adjoint() * ctx.a;
}

template <typename Real> Matrix<Real> re_a(const PsdContext<Real>& ctx, const Matrix<Real>& m) {
    return (m + a_sharp(ctx, m)) / Real(2);
}

template <typename Real> Matrix<Real> im_a(const PsdContext<Real>& ctx, const Matrix<Real>& m) {
    return (m - a_sharp(ctx, m)) / Complex<Real>(0, 2);
}

/// sigma_max(A^{1/2} M (A^{1/2})^+), i.e. ||M||_A for any M in B_A(H).
template <typename Real> Real a_seminorm(const PsdContext<Real>& ctx, const Matrix<Real>& m) {
    detail::require_dim(ctx, m.rows(), m.cols());
    if (ctx.rank == 0)
        return Real(0);
    return spectral_norm<Real>(Matrix<Real>(ctx.sqrt_a * m * ctx.pinv_sqrt_a));
}

/// L^{1/2} U_r* M U_r L^{-1/2}; an r x r matrix whose spectral norm and
/// numerical radius equal ||M||_A and w_A(M) for M in B_A(H).
template <typename Real> Matrix<Real> compress(const PsdContext<Real>& ctx, const Matrix<Real>& m) {
    detail::require_dim(ctx, m.rows(), m.cols());
    const Eigen::Index r = ctx.rank;
    if (r == 0)
        return Matrix<Real>(0, 0);
    RealVector<Real> s = ctx.range_eigenvalues.cwiseSqrt();
    RealVector<Real> si = s.cwiseInverse();
    return s.template cast<Complex<Real>>().asDiagonal() * (ctx.range_basis.adjoint() * m * ctx.range_basis) *
           si.template cast<Complex<Real>>().asDiagonal();
}

///
/// An operator T bound to a context, with its A-adjoint and A-Cartesian parts
/// cached. `t == re_a + i im_a` holds by construction.
///
template <typename Real> struct AOperator {
    ContextPtr<Real> ctx;
    Matrix<Real> t;
    bool adjointable = false;
    Matrix<Real> sharp;
    Matrix<Real> re_a;
    Matrix<Real> im_a;
    Matrix<Real> compressed;
};

template <typename Real> AOperator<Real> make_a_operator(ContextPtr<Real> ctx, const Matrix<Real>& t) {
    if (!ctx)
        throw Error(ErrorKind::invalid_argument, "null context");
    detail::require_dim(*ctx, t.rows(), t.cols());
    if (!is_adjointable(*ctx, t))
        throw Error(ErrorKind::not_adjointable, "R(T*A) is not contained in R(A)");

    AOperator<Real> op;
    op.t = t;
    op.adjointable = true;
    op.sharp = a_sharp(*ctx, t);
    op.re_a = (t + op.sharp) / Real(2);
    op.im_a = (t - op.sharp) / Complex<Real>(0, 2);
    op.compressed = compress(*ctx, t);
    op.ctx = std::move(ctx);
    return op;
}

template <typename Real> Real op_seminorm(const AOperator<Real>& op) {
    return a_seminorm(*op.ctx, op.t);
}

template <typename Real> Real op_seminorm(const PsdContext<Real>& ctx, const AOperator<Real>& op) {
    if (&ctx != op.ctx.get())
        throw Error(ErrorKind::context_mismatch, "operator bound to a different context");
    return op_seminorm(op);
}

/// ||T# T + T T#||_A
template <typename Real> Real sharp_sum_seminorm(const AOperator<Real>& op) {
    return a_seminorm(*op.ctx, Matrix<Real>(op.sharp * op.t + op.t * op.sharp));
}

template <typename Real> void require_same_context(const AOperator<Real>& a, const AOperator<Real>& b) {
    if (a.ctx.get() != b.ctx.get())
        throw Error(ErrorKind::context_mismatch, "operators are bound to different contexts");
}

} // namespace semiradius
