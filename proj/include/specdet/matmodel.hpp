#pragma once

// Finite models of a tracial algebra: n x n complex matrices with the
// normalized trace τ = (1/n) tr. Decompositions are computed once at
// construction; every step function derived from an operator reads the
// same cached spectrum.

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "specdet/stepfn.hpp"

namespace specdet {

using CMatrix = Eigen::MatrixXcd;

class MatrixOperator {
public:
    explicit MatrixOperator(CMatrix entries);

    static MatrixOperator identity(std::size_t n);
    static MatrixOperator diagonal(std::span<const double> diag);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    const CMatrix& entries() const noexcept { return entries_; }

    /// max |A - A†| entry is within 1e-12 * ||A|| (absolute floor 1e-300).
    bool is_self_adjoint() const noexcept { return self_adjoint_; }
    double hermiticity_defect() const noexcept { return defect_; }

    /// Singular values, nonincreasing. For self-adjoint operators these are
    /// the sorted |eigenvalues| of the cached eigendecomposition.
    std::span<const double> singular_values() const noexcept { return singular_; }

    /// Eigenvalues, nonincreasing; throws std::logic_error unless self-adjoint.
    std::span<const double> eigenvalues() const;
    /// Columns are eigenvectors in the order of eigenvalues().
    const CMatrix& eigenvectors() const;

    /// Operator norm.
    double norm() const noexcept { return singular_.empty() ? 0.0 : singular_.front(); }
    std::complex<double> tau() const;

    MatrixOperator adjoint() const;

private:
    CMatrix entries_;
    std::vector<double> singular_;
    std::vector<double> eigen_;
    CMatrix eigvecs_;
    double defect_ = 0.0;
    bool self_adjoint_ = false;
};

MatrixOperator operator+(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator operator-(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator operator*(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator operator*(double c, const MatrixOperator& a);

/// μ(A): k-th cell holds the k-th largest singular value; right-continuous.
MonotoneStepFn mu(const MatrixOperator& a);

/// λ(A) for self-adjoint A: k-th cell holds the k-th largest eigenvalue.
MonotoneStepFn lambda(const MatrixOperator& a);

/// μ(A₊) and μ(A₋) read off the cached eigenvalues of self-adjoint A.
MonotoneStepFn mu_positive_part(const MatrixOperator& a);
MonotoneStepFn mu_negative_part(const MatrixOperator& a);

/// c = inf{s : λ(s) <= b}, d = sup{s : λ(s) >= a} for a nonincreasing λ,
/// so that τ(1_[a,b](A)) = d - c and τ(A 1_[a,b](A)) = ∫_c^d λ.
std::pair<double, double> spectral_window(const MonotoneStepFn& lam, double a, double b);

/// f(T) = V f(Λ) V† for self-adjoint T.
MatrixOperator functional_calculus(const MatrixOperator& t, const std::function<double(double)>& f);

MatrixOperator positive_part(const MatrixOperator& t);
MatrixOperator negative_part(const MatrixOperator& t);
MatrixOperator exp_sa(const MatrixOperator& t);
/// Throws DomainError unless T is positive definite.
MatrixOperator log_sa(const MatrixOperator& t);
/// Spectral projection 1_[a,b](T), closed interval.
MatrixOperator spectral_projection(const MatrixOperator& t, double a, double b);
/// 1_[0,c](|T|) for self-adjoint T, decided on the cached eigenvalues.
MatrixOperator abs_spectral_projection(const MatrixOperator& t, double c);

/// |A| = (A†A)^{1/2}.
MatrixOperator polar_abs(const MatrixOperator& a);

/// T₀ = min{T₊, c} - min{T₋, c}: eigenvalues clipped to [-c, c].
MatrixOperator truncate_at_level(const MatrixOperator& t, double c);

/// Δ_τ(A) = (∏ σ_k)^{1/n}; 0 iff A is singular.
double fk_det(const MatrixOperator& a);

/// exp(τ(log(|A| + ε))) = exp((1/n) Σ log(σ_k + ε)), ε > 0.
double fk_det_eps(const MatrixOperator& a, double eps);

/// Numerical kernel test: some σ_k <= n * DBL_EPSILON * σ_max (or A = 0).
bool has_kernel(const MatrixOperator& a);

enum class Ensemble {
    IidComplexGaussian,   // entries with E|a_ij|^2 = scale^2 / n
    HermitianGaussian,    // (G + G†)/√2, exactly self-adjoint
    DiagonalSpectrum,     // diag(spectrum)
    HaarUnitaryConjugate, // U diag(spectrum) U†
};

struct EnsembleSpec {
    Ensemble kind = Ensemble::IidComplexGaussian;
    std::size_t n = 1;
    double scale = 1.0;
    std::uint64_t seed = 0;
    /// Prescribed spectrum for the diagonal and Haar-conjugate kinds; when
    /// empty, n values are drawn uniformly from [-scale, scale].
    std::vector<double> spectrum;
};

MatrixOperator sample(const EnsembleSpec& spec);

/// Haar-distributed unitary: QR of a Ginibre matrix with phase correction.
MatrixOperator haar_unitary(std::size_t n, std::uint64_t seed);

/// Positive semidefinite G G† for a Ginibre G.
MatrixOperator sample_positive(std::size_t n, double scale, std::uint64_t seed);

/// Text format: first line n, then n rows of n "re,im" pairs, 17 significant digits.
void write_matrix(std::ostream& os, const MatrixOperator& a);
MatrixOperator read_matrix(std::istream& is);

} // namespace specdet
