#pragma once

// Positive rearrangement-invariant functionals on (0,1), and their action on
// matrix models through μ of the positive and negative parts.

#include <string>
#include <string_view>
#include <vector>

#include "specdet/matmodel.hpp"
#include "specdet/spaces.hpp"
#include "specdet/stepfn.hpp"

namespace specdet {

/// Dyadic points t_k = 2^{-k}, k = k_min..k_max. The limit is accepted when
/// the last `window` values lie within `tol` of each other.
struct LimitScheme {
    int k_min = 8;
    int k_max = 40;
    double tol = 1e-6;
    int window = 5;
};

class TraceFunctional {
public:
    enum class Kind { Integral, Singular };

    /// f -> c ∫_0^1 f, c >= 0.
    static TraceFunctional integral(double c = 1.0);
    /// lim (1/ψ(t)) ∫_0^t f* along the dyadic scheme. Only ψ = 1/(2 - log t)
    /// is accepted, since the scheme needs ψ(2t)/ψ(t) -> 1.
    static TraceFunctional singular(ConcaveWeight psi = ConcaveWeight::log_weight(), LimitScheme scheme = {});

    /// `integral:<c>` or `singular:psi-log`.
    static TraceFunctional parse(std::string_view spec);

    Kind kind() const noexcept { return kind_; }
    double coefficient() const noexcept { return c_; }
    const ConcaveWeight& weight() const noexcept { return psi_; }
    const LimitScheme& scheme() const noexcept { return scheme_; }
    std::string name() const;

private:
    TraceFunctional(Kind k, double c, ConcaveWeight psi, LimitScheme s)
        : kind_(k), c_(c), psi_(psi), scheme_(s) {}
    Kind kind_;
    double c_;
    ConcaveWeight psi_;
    LimitScheme scheme_;
};

/// g(t_k) = (1/ψ(t_k)) ∫_0^{t_k} f for k = k_min..k_max.
std::vector<double> dyadic_sequence(const TraceFunctional& phi, const SpectralProfile& f);
std::vector<double> dyadic_sequence(const TraceFunctional& phi, const GridFn& f);

/// φ(f). With `signed_input`, f may change sign and is evaluated as
/// φ(f₊*) - φ(f₋*); otherwise negative values are rejected. The singular kind
/// vanishes on bounded inputs, so every grid function evaluates to 0.
double eval_functional(const TraceFunctional& phi, const GridFn& f, bool signed_input = false);

/// φ(f) for a nonnegative profile. Singular kind: the analytic limit when the
/// tail class certifies one, else the dyadic rule; throws NonConvergent when
/// the sequence does not settle and Divergent when f is not integrable.
double eval_functional(const TraceFunctional& phi, const SpectralProfile& f);

/// φ(μ(A₊)) - φ(μ(A₋)) for self-adjoint A. Matrix-scale traces are multiples
/// of τ, so the singular kind is rejected here.
double eval_on_operator(const TraceFunctional& phi, const MatrixOperator& a);

} // namespace specdet
