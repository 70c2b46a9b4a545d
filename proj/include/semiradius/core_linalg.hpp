#pragma once
//
// Dense complex primitives with an explicit tolerance policy.
//
// Everything is templated on the real scalar type; the complex entry type is
// std::complex<Real>. Norms come from dense decompositions, never from
// iterative estimates.
//

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace semiradius {

template <typename Real> using Complex = std::complex<Real>;
template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real> using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real> using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using MatrixXcd = Matrix<double>;
using VectorXcd = Vector<double>;

enum class ErrorKind {
    not_square,
    non_finite,
    dimension_mismatch,
    not_hermitian,
    not_psd,
    not_adjointable,
    context_mismatch,
    rank_zero,
    invalid_argument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::not_square: return "not_square";
    case ErrorKind::non_finite: return "non_finite";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::not_hermitian: return "not_hermitian";
    case ErrorKind::not_psd: return "not_psd";
    case ErrorKind::not_adjointable: return "not_adjointable";
    case ErrorKind::context_mismatch: return "context_mismatch";
    case ErrorKind::rank_zero: return "rank_zero";
    case ErrorKind::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

///
/// Relative tolerances used throughout.
///
///   rank_rel_tol      eigenvalues at or below rank_rel_tol * lambda_max count as zero
///   check_rel_tol     an inequality holds if slack >= -check_rel_tol * scale
///   equality_rel_tol  an inequality is tight if |slack| <= equality_rel_tol * scale
///
template <typename Real> struct TolerancePolicy {
    Real rank_rel_tol = Real(1e-10);
    Real check_rel_tol = Real(1e-8);
    Real equality_rel_tol = Real(1e-6);

    void validate() const {
        auto in_unit = [](Real v) { return v > Real(0) && v < Real(1); };
        if (!in_unit(rank_rel_tol) || !in_unit(check_rel_tol) || !in_unit(equality_rel_tol))
            throw Error(ErrorKind::invalid_argument, "tolerances must lie in (0, 1)");
    }
};

template <typename Real> struct HermEig {
    RealVector<Real> eigenvalues; // ascending
    Matrix<Real> eigenvectors;    // orthonormal columns
};

template <typename Derived> bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const auto z = m(i, j);
            if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z)))
                return false;
        }
    return true;
}

template <typename Derived> void require_finite(const Eigen::MatrixBase<Derived>& m) {
    if (!all_finite(m))
        throw Error(ErrorKind::non_finite, "matrix has NaN or Inf entries");
}

template <typename Derived> void require_square(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw Error(ErrorKind::not_square, "expected a non-empty square matrix, got " +
                                               std::to_string(m.rows()) + "x" +
                                               std::to_string(m.cols()));
}

template <typename Real> Matrix<Real> hermitian_part(const Matrix<Real>& m) {
    return (m + m.adjoint()) / Real(2);
}

///
/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (M + M*)/2 first, so small anti-Hermitian noise is discarded.
///
template <typename Real> HermEig<Real> hermitian_eig(const Matrix<Real>& m) {
    require_square(m);
    require_finite(m);
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(hermitian_part<Real>(m));
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::invalid_argument, "Hermitian eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// Largest singular value; 0 for the zero (or empty) matrix.
template <typename Real> Real spectral_norm(const Matrix<Real>& m) {
    require_finite(m);
    if (m.size() == 0)
        return Real(0);
    Eigen::JacobiSVD<Matrix<Real>> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : Real(0);
}

/// max |lambda| of a Hermitian matrix, eigenvalues only.
template <typename Real> Real hermitian_abs_max(const Matrix<Real>& h) {
    if (h.size() == 0)
        return Real(0);
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

} // namespace semiradius
