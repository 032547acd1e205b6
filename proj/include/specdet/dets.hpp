#pragma once

// The determinant det_φ(X) = exp(φ(log|X|)) with its two zero branches, on
// matrix models and on spectral profiles.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specdet/matmodel.hpp"
#include "specdet/spaces.hpp"
#include "specdet/traces.hpp"

namespace specdet {

enum class DetBranch {
    Regular = 1,         // trivial kernel, log₋ μ ∈ E
    LogMinusOutside = 2, // trivial kernel, log₋ μ ∉ E
    Kernel = 3,          // nontrivial kernel
};

struct DetResult {
    double value = 0.0;
    DetBranch branch = DetBranch::Kernel;
};

/// A positive operator known through μ: a matrix (reduced to |A|) or a profile.
class DetInput {
public:
    static DetInput matrix(MatrixOperator a);
    static DetInput profile(SpectralProfile f);

    bool is_matrix() const noexcept { return std::holds_alternative<MatrixOperator>(x_); }
    const MatrixOperator& as_matrix() const { return std::get<MatrixOperator>(x_); }
    const SpectralProfile& as_profile() const { return std::get<SpectralProfile>(x_); }
    std::string describe() const;

private:
    explicit DetInput(std::variant<MatrixOperator, SpectralProfile> x) : x_(std::move(x)) {}
    std::variant<MatrixOperator, SpectralProfile> x_;
};

/// Throws std::invalid_argument when X ∉ E_log, Undecidable when membership
/// cannot be decided, and propagates NonConvergent from φ.
DetResult det_phi(const DetInput& x, const TraceFunctional& phi, const SymmetricSpace& e);

struct MultiplicativityReport {
    double det_ab = 0.0;
    double det_a = 0.0;
    double det_b = 0.0;
    double rel_error = 0.0; // |det(AB) - det(A)det(B)| / det(A)det(B), 0 when both sides vanish
};

/// Integral-kind φ only.
MultiplicativityReport det_multiplicativity_check(const MatrixOperator& a, const MatrixOperator& b,
                                                  const TraceFunctional& phi);

/// Pointwise product of commuting positive operators with registered closed
/// forms: exp(h)·exp(-h flip) = 1, exp(h₁)exp(h₂) = exp(h₁+h₂) within one
/// family, power·power. Anything else throws Unsupported.
SpectralProfile commuting_profile_product(const SpectralProfile& f, const SpectralProfile& g);

struct EpsLimitReport {
    DetResult det;
    std::vector<double> sequence;     // det_φ(|X| + 2^{-k}), k = 4..30
    std::optional<double> eps_limit; // empty when the last 5 terms spread beyond 1e-6
};

EpsLimitReport eps_limit_comparison(const DetInput& x, const TraceFunctional& phi, const SymmetricSpace& e);

struct EneFReport {
    double det_psi = 0.0; // on F, where T is a member
    double det_phi = 0.0; // on E, where T is not
    DetBranch branch_psi = DetBranch::Regular;
    DetBranch branch_phi = DetBranch::Regular;
};

/// X = e^{-T}; requires T ∈ F and T ∉ E, certified by the membership oracle.
EneFReport proposition_EneF_scenario(const SymmetricSpace& e, const SymmetricSpace& f, const SpectralProfile& t,
                                     const TraceFunctional& psi = TraceFunctional::integral(1.0),
                                     const TraceFunctional& phi = TraceFunctional::integral(1.0));

} // namespace specdet
