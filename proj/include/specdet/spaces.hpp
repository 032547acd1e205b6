#pragma once

// Calkin function spaces and the closed-form spectral profiles used to model
// unbounded affiliated operators through their singular value function.
//
// Membership of an unbounded profile is never decided by sampling: each
// profile carries a tail class at 0 and the oracle applies the integrability
// rule for that class, returning Undecidable when no rule matches.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "specdet/stepfn.hpp"

namespace specdet {

/// Behaviour of μ(t) as t -> 0.
struct TailAt0 {
    enum class Class {
        Bounded,
        Power,    // μ(t) ~ C t^{-a} log(e/t)^b
        ExpPower, // log μ(t) ~ C t^{-a} log(e/t)^b
        Unknown,
    };
    Class cls = Class::Unknown;
    double a = 0.0;
    double b = 0.0;

    static TailAt0 bounded() { return {Class::Bounded}; }
    static TailAt0 power(double a, double b) { return {Class::Power, a, b}; }
    static TailAt0 exp_power(double a, double b) { return {Class::ExpPower, a, b}; }
    static TailAt0 unknown() { return {Class::Unknown}; }
};

/// Behaviour of μ(t) as t -> 1.
struct TailAt1 {
    enum class Class { PositiveLimit, DecaysToZero, VanishesOnInterval };
    Class cls = Class::DecaysToZero;
    double value = 0.0; // the limit, or the length of the vanishing interval

    static TailAt1 positive_limit(double v) { return {Class::PositiveLimit, v}; }
    static TailAt1 decays() { return {Class::DecaysToZero, 0.0}; }
    static TailAt1 vanishes(double kappa) { return {Class::VanishesOnInterval, kappa}; }
};

class SpectralProfile;
using ProfilePtr = std::shared_ptr<const SpectralProfile>;

namespace shape {
/// scale · t^{-a} · log(e/t)^b on (0, 1-kernel), zero after.
struct Power {
    double a, b, scale, kernel;
};
/// scale · ψ'(t) for ψ(t) = 1/(2 - log t).
struct PsiPrime {
    double scale;
};
/// exp(h(t)); canonical realization is the function itself.
struct ExpOf {
    ProfilePtr inner;
};
/// exp(-h(1-t)), the rearrangement of exp(-h(t)).
struct ExpNegFlip {
    ProfilePtr inner;
};
/// μ + ε.
struct Shifted {
    ProfilePtr inner;
    double eps;
};
/// log₊ μ.
struct LogPlusOf {
    ProfilePtr inner;
};
/// (log₋ μ)*(t) = log₋ μ(1-t).
struct LogMinusOf {
    ProfilePtr inner;
};
/// log(1 + μ).
struct Log1pOf {
    ProfilePtr inner;
};
struct Custom {
    std::string name;
    std::function<double(double)> eval;
    TailAt0 tail0;
    TailAt1 tail1;
    double kernel;
    std::function<double(double)> primitive; // ∫_0^t, may be empty
};
} // namespace shape

using Shape = std::variant<shape::Power, shape::PsiPrime, shape::ExpOf, shape::ExpNegFlip, shape::Shifted,
                           shape::LogPlusOf, shape::LogMinusOf, shape::Log1pOf, shape::Custom>;

/// A nonincreasing, nonnegative function on (0,1) with tail descriptors:
/// the function-level model of μ(T) for a positive affiliated T.
class SpectralProfile {
public:
    static SpectralProfile power(double a, double b, double scale = 1.0, double kernel = 0.0);
    static SpectralProfile constant(double c);
    static SpectralProfile zero();
    /// μ = 1 on (0, mass), 0 after: a projection of trace `mass`.
    static SpectralProfile projection(double mass);
    static SpectralProfile psi_prime(double scale = 1.0);
    static SpectralProfile exp_of(const SpectralProfile& h);
    static SpectralProfile exp_neg_flip(const SpectralProfile& h);
    static SpectralProfile shifted(const SpectralProfile& h, double eps);
    static SpectralProfile custom(std::string name, std::function<double(double)> eval, TailAt0 tail0,
                                  TailAt1 tail1, double kernel = 0.0,
                                  std::function<double(double)> primitive = {});

    double operator()(double t) const;

    TailAt0 tail_at_0() const;
    TailAt1 tail_at_1() const;
    double kernel_mass() const;
    bool is_zero() const;

    /// lim_{t->0} μ(t) for bounded tails.
    std::optional<double> limit_at_0() const;

    /// ∫_0^t μ from a registered antiderivative, if one exists.
    std::optional<double> primitive(double t) const;

    /// ∫_a^b μ: registered antiderivative, else tanh-sinh quadrature at relative
    /// tolerance 1e-10. Throws Divergent when a = 0 and the tail is not integrable.
    double integral(double a, double b) const;

    std::string describe() const;
    const Shape& shape() const noexcept { return shape_; }

private:
    friend SpectralProfile log_plus(const SpectralProfile&);
    friend SpectralProfile log_minus(const SpectralProfile&);
    friend SpectralProfile log1p_of(const SpectralProfile&);

    explicit SpectralProfile(Shape s);
    void audit() const;

    Shape shape_;
};

/// log₊ ∘ μ, nonincreasing.
SpectralProfile log_plus(const SpectralProfile& f);
/// Decreasing rearrangement of log₋ ∘ μ. Throws std::domain_error when μ has a kernel.
SpectralProfile log_minus(const SpectralProfile& f);
/// log(1 + μ).
SpectralProfile log1p_of(const SpectralProfile& f);

/// Concave increasing ψ with ψ(0+) = 0.
struct ConcaveWeight {
    enum class Kind {
        Log,   // 1 / (2 - log t)
        Power, // t^alpha, 0 < alpha <= 1
    };
    Kind kind = Kind::Log;
    double alpha = 1.0;

    static ConcaveWeight log_weight() { return {Kind::Log, 1.0}; }
    static ConcaveWeight power_weight(double alpha);

    double operator()(double t) const;
    double derivative(double t) const;
    std::string name() const;
};

/// Checks ψ(0+) = 0, monotone increase and concavity on a 64-point log grid.
bool audit_weight(const ConcaveWeight& psi);

class SymmetricSpace {
public:
    enum class Kind { Lp, Linf, Llog, Marcinkiewicz };

    static SymmetricSpace lp(double p);
    static SymmetricSpace linf();
    static SymmetricSpace llog();
    static SymmetricSpace marcinkiewicz(ConcaveWeight psi);

    /// l1, l2, lp:<p>, linf, llog, marcinkiewicz, marcinkiewicz:psi-log,
    /// marcinkiewicz:power:<alpha>.
    static SymmetricSpace parse(std::string_view spec);

    Kind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }
    const ConcaveWeight& weight() const noexcept { return psi_; }
    std::string name() const;

private:
    SymmetricSpace(Kind k, double p, ConcaveWeight psi) : kind_(k), p_(p), psi_(psi) {}
    Kind kind_;
    double p_;
    ConcaveWeight psi_;
};

enum class Membership { Member, NotMember, Undecidable };

std::string_view to_string(Membership m);

/// Decides f* ∈ E from the tail class of a profile.
Membership membership(const SymmetricSpace& e, const TailAt0& tail);
Membership membership(const SymmetricSpace& e, const SpectralProfile& f);
/// Grid functions are bounded, so always members.
Membership membership(const SymmetricSpace& e, const GridFn& f);

/// T ∈ E_log iff log₊ μ(T) ∈ E.
Membership elog_membership(const SymmetricSpace& e, const SpectralProfile& f);
Membership elog_membership(const SymmetricSpace& e, const GridFn& f);

/// (1/ψ(t)) ∫_0^t f*(s) ds.
double marcinkiewicz_functional(const ConcaveWeight& psi, const GridFn& f, double t);
double marcinkiewicz_functional(const ConcaveWeight& psi, const SpectralProfile& f, double t);

/// `name=<id> kind=<builtin|power> a=<float> b=<float> kernel=<float> scale=<float>`,
/// or a bare builtin name. Builtins: psi-prime, exp-neg-psi-prime-flip, power,
/// exp-power, exp-neg-power-flip.
SpectralProfile parse_profile_spec(std::string_view line);

} // namespace specdet
