#include "specdet/dets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

constexpr int kEpsKMin = 4;
constexpr int kEpsKMax = 30;
constexpr int kEpsWindow = 5;
constexpr double kEpsTol = 1e-6;

bool same_shape(const SpectralProfile& f, const SpectralProfile& g)
{
    const Shape& a = f.shape();
    const Shape& b = g.shape();
    if (a.index() != b.index())
        return false;
    if (const auto* p = std::get_if<shape::Power>(&a)) {
        const auto& q = std::get<shape::Power>(b);
        return p->a == q.a && p->b == q.b && p->scale == q.scale && p->kernel == q.kernel;
    }
    if (const auto* p = std::get_if<shape::PsiPrime>(&a))
        return p->scale == std::get<shape::PsiPrime>(b).scale;
    if (const auto* p = std::get_if<shape::ExpOf>(&a))
        return same_shape(*p->inner, *std::get<shape::ExpOf>(b).inner);
    if (const auto* p = std::get_if<shape::ExpNegFlip>(&a))
        return same_shape(*p->inner, *std::get<shape::ExpNegFlip>(b).inner);
    return false;
}

// h₁ + h₂ within one family; the sum of two realizations over the same
// abelian subalgebra.
SpectralProfile add_exponents(const SpectralProfile& h1, const SpectralProfile& h2)
{
    const auto* p1 = std::get_if<shape::Power>(&h1.shape());
    const auto* p2 = std::get_if<shape::Power>(&h2.shape());
    if (p1 && p2 && p1->a == p2->a && p1->b == p2->b && p1->kernel == 0.0 && p2->kernel == 0.0)
        return SpectralProfile::power(p1->a, p1->b, p1->scale + p2->scale);
    const auto* s1 = std::get_if<shape::PsiPrime>(&h1.shape());
    const auto* s2 = std::get_if<shape::PsiPrime>(&h2.shape());
    if (s1 && s2)
        return SpectralProfile::psi_prime(s1->scale + s2->scale);
    throw Unsupported("no closed form registered for " + h1.describe() + " + " + h2.describe());
}

Membership decided(Membership m, const std::string& what)
{
    if (m == Membership::Undecidable)
        throw Undecidable(what);
    return m;
}

DetResult det_matrix(const MatrixOperator& a, const TraceFunctional& phi)
{
    if (phi.kind() != TraceFunctional::Kind::Integral)
        throw std::invalid_argument("det_phi: matrix-scale traces are multiples of tau; "
                                    "use a profile input for singular traces");
    if (has_kernel(a))
        return {0.0, DetBranch::Kernel};
    const GridFn log_mu = pointwise_map(mu(a), UnaryMap{UnaryOp::Log});
    return {std::exp(eval_functional(phi, log_mu, true)), DetBranch::Regular};
}

DetResult det_profile(const SpectralProfile& f, const TraceFunctional& phi, const SymmetricSpace& e)
{
    const Membership in_elog =
        decided(elog_membership(e, f), "cannot decide whether " + f.describe() + " lies in " + e.name() + "_log");
    if (in_elog == Membership::NotMember)
        throw std::invalid_argument("det_phi: " + f.describe() + " is not in " + e.name() + "_log");
    if (f.kernel_mass() > 0.0 || f.is_zero())
        return {0.0, DetBranch::Kernel};

    const SpectralProfile lm = log_minus(f);
    const Membership lm_in = decided(membership(e, lm), "cannot decide whether (log- mu)* = " + lm.describe() +
                                                             " lies in " + e.name());
    if (lm_in == Membership::NotMember)
        return {0.0, DetBranch::LogMinusOutside};

    const double value = eval_functional(phi, log_plus(f)) - eval_functional(phi, lm);
    return {std::exp(value), DetBranch::Regular};
}

std::optional<double> settled(const std::vector<double>& seq)
{
    if (seq.size() < static_cast<std::size_t>(kEpsWindow))
        return std::nullopt;
    const auto [lo, hi] = std::minmax_element(seq.end() - kEpsWindow, seq.end());
    if (!std::isfinite(*lo) || !std::isfinite(*hi) || *hi - *lo > kEpsTol)
        return std::nullopt;
    return seq.back();
}

} // namespace

DetInput DetInput::matrix(MatrixOperator a) { return DetInput(std::move(a)); }

DetInput DetInput::profile(SpectralProfile f) { return DetInput(std::move(f)); }

std::string DetInput::describe() const
{
    if (is_matrix())
        return "matrix(n=" + std::to_string(as_matrix().dim()) + ")";
    return as_profile().describe();
}

DetResult det_phi(const DetInput& x, const TraceFunctional& phi, const SymmetricSpace& e)
{
    if (x.is_matrix())
        return det_matrix(x.as_matrix(), phi);
    return det_profile(x.as_profile(), phi, e);
}

MultiplicativityReport det_multiplicativity_check(const MatrixOperator& a, const MatrixOperator& b,
                                                  const TraceFunctional& phi)
{
    if (phi.kind() != TraceFunctional::Kind::Integral)
        throw std::invalid_argument("det_multiplicativity_check: integral traces only");
    MultiplicativityReport r;
    r.det_a = det_matrix(a, phi).value;
    r.det_b = det_matrix(b, phi).value;
    r.det_ab = det_matrix(a * b, phi).value;
    const double prod = r.det_a * r.det_b;
    if (prod == 0.0)
        r.rel_error = r.det_ab == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else
        r.rel_error = std::abs(r.det_ab - prod) / prod;
    return r;
}

SpectralProfile commuting_profile_product(const SpectralProfile& f, const SpectralProfile& g)
{
    const Shape& a = f.shape();
    const Shape& b = g.shape();

    const auto* ea = std::get_if<shape::ExpOf>(&a);
    const auto* eb = std::get_if<shape::ExpOf>(&b);
    const auto* na = std::get_if<shape::ExpNegFlip>(&a);
    const auto* nb = std::get_if<shape::ExpNegFlip>(&b);

    if ((ea && nb && same_shape(*ea->inner, *nb->inner)) || (na && eb && same_shape(*na->inner, *eb->inner)))
        return SpectralProfile::constant(1.0);
    if (ea && eb)
        return SpectralProfile::exp_of(add_exponents(*ea->inner, *eb->inner));
    if (na && nb)
        return SpectralProfile::exp_neg_flip(add_exponents(*na->inner, *nb->inner));

    const auto* pa = std::get_if<shape::Power>(&a);
    const auto* pb = std::get_if<shape::Power>(&b);
    if (pa && pb)
        return SpectralProfile::power(pa->a + pb->a, pa->b + pb->b, pa->scale * pb->scale,
                                      std::max(pa->kernel, pb->kernel));

    throw Unsupported("no closed form registered for the product " + f.describe() + " * " + g.describe());
}

EpsLimitReport eps_limit_comparison(const DetInput& x, const TraceFunctional& phi, const SymmetricSpace& e)
{
    EpsLimitReport r;
    r.det = det_phi(x, phi, e);
    for (int k = kEpsKMin; k <= kEpsKMax; ++k) {
        const double eps = std::ldexp(1.0, -k);
        if (x.is_matrix()) {
            const MatrixOperator shifted = polar_abs(x.as_matrix()) + eps * MatrixOperator::identity(x.as_matrix().dim());
            r.sequence.push_back(det_matrix(shifted, phi).value);
        } else {
            r.sequence.push_back(det_profile(SpectralProfile::shifted(x.as_profile(), eps), phi, e).value);
        }
    }
    r.eps_limit = settled(r.sequence);
    return r;
}

EneFReport proposition_EneF_scenario(const SymmetricSpace& e, const SymmetricSpace& f, const SpectralProfile& t,
                                     const TraceFunctional& psi, const TraceFunctional& phi)
{
    const Membership in_f = membership(f, t);
    const Membership in_e = membership(e, t);
    if (in_f != Membership::Member)
        throw std::invalid_argument("scenario: " + t.describe() + " is not certified in " + f.name() + " (" +
                                    std::string(to_string(in_f)) + ")");
    if (in_e != Membership::NotMember)
        throw std::invalid_argument("scenario: " + t.describe() + " is not certified outside " + e.name() + " (" +
                                    std::string(to_string(in_e)) + ")");

    const DetInput x = DetInput::profile(SpectralProfile::exp_neg_flip(t));
    const DetResult on_f = det_phi(x, psi, f);
    const DetResult on_e = det_phi(x, phi, e);
    return {on_f.value, on_e.value, on_f.branch, on_e.branch};
}

} // namespace specdet
