#include "specdet/traces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

// The dyadic value is ~ sup f · t/ψ(t), far from 0 even at t = 2^-40, so
// vanishing limits are taken from the tail class instead of the sequence.
bool certified_zero(const TailAt0& tail)
{
    switch (tail.cls) {
    case TailAt0::Class::Bounded: return true;
    case TailAt0::Class::Power: return tail.a < 1.0 || (tail.a == 1.0 && tail.b < -2.0);
    default: return false;
    }
}

double settle(const std::vector<double>& seq, const LimitScheme& s, const std::string& what)
{
    const auto w = static_cast<std::size_t>(s.window);
    if (seq.size() < w)
        throw NonConvergent(what + ": dyadic sequence shorter than the acceptance window");
    const auto tail_begin = seq.end() - static_cast<std::ptrdiff_t>(w);
    const auto [lo, hi] = std::minmax_element(tail_begin, seq.end());
    if (!std::isfinite(*lo) || !std::isfinite(*hi) || *hi - *lo > s.tol) {
        std::ostringstream os;
        os << what << ": dyadic sequence did not settle (last " << w << " values spread " << (*hi - *lo)
           << " > " << s.tol << ")";
        throw NonConvergent(os.str());
    }
    return seq.back();
}

void require_nonnegative(const GridFn& f)
{
    for (std::size_t k = 0; k < f.cells(); ++k)
        if (f.cell(k) < 0.0)
            throw std::invalid_argument("eval_functional: negative value in cell " + std::to_string(k) +
                                        " of an unsigned input");
}

} // namespace

TraceFunctional TraceFunctional::integral(double c)
{
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("integral trace: coefficient must be finite and nonnegative");
    return {Kind::Integral, c, ConcaveWeight::log_weight(), {}};
}

TraceFunctional TraceFunctional::singular(ConcaveWeight psi, LimitScheme scheme)
{
    if (psi.kind != ConcaveWeight::Kind::Log)
        throw std::invalid_argument("singular trace: only the psi-log weight is supported");
    if (scheme.k_min < 1 || scheme.k_max < scheme.k_min || scheme.window < 2 ||
        scheme.window > scheme.k_max - scheme.k_min + 1 || !(scheme.tol > 0.0))
        throw std::invalid_argument("singular trace: invalid limit scheme");
    return {Kind::Singular, 0.0, psi, scheme};
}

TraceFunctional TraceFunctional::parse(std::string_view spec)
{
    const std::string s(spec);
    if (s == "singular:psi-log")
        return singular();
    if (s.rfind("integral:", 0) == 0) {
        const std::string num = s.substr(9);
        std::size_t used = 0;
        double c = 0.0;
        try {
            c = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != num.size())
            throw std::invalid_argument("trace '" + s + "': coefficient is not a number");
        return integral(c);
    }
    throw std::invalid_argument("unknown trace '" + s + "' (expected integral:<c> or singular:psi-log)");
}

std::string TraceFunctional::name() const
{
    if (kind_ == Kind::Singular)
        return "singular:" + psi_.name();
    std::ostringstream os;
    os << "integral:" << c_;
    return os.str();
}

std::vector<double> dyadic_sequence(const TraceFunctional& phi, const SpectralProfile& f)
{
    const LimitScheme& s = phi.scheme();
    std::vector<double> out;
    for (int k = s.k_min; k <= s.k_max; ++k) {
        const double t = std::ldexp(1.0, -k);
        out.push_back(f.integral(0.0, t) / phi.weight()(t));
    }
    return out;
}

std::vector<double> dyadic_sequence(const TraceFunctional& phi, const GridFn& f)
{
    const LimitScheme& s = phi.scheme();
    const MonotoneStepFn fs = decreasing_rearrangement(f);
    std::vector<double> out;
    for (int k = s.k_min; k <= s.k_max; ++k) {
        const double t = std::ldexp(1.0, -k);
        out.push_back(integrate(fs, 0.0, t) / phi.weight()(t));
    }
    return out;
}

double eval_functional(const TraceFunctional& phi, const GridFn& f, bool signed_input)
{
    if (!signed_input)
        require_nonnegative(f);
    if (phi.kind() == TraceFunctional::Kind::Singular)
        return 0.0;
    if (!signed_input)
        return phi.coefficient() * integrate(f);
    const GridFn pos = pointwise_map(f, UnaryMap{UnaryOp::PositivePart});
    const GridFn neg = pointwise_map(f, UnaryMap{UnaryOp::NegativePart});
    return phi.coefficient() * integrate(decreasing_rearrangement(pos)) -
           phi.coefficient() * integrate(decreasing_rearrangement(neg));
}

double eval_functional(const TraceFunctional& phi, const SpectralProfile& f)
{
    if (phi.kind() == TraceFunctional::Kind::Integral)
        return phi.coefficient() * f.integral(0.0, 1.0);

    const TailAt0 tail = f.tail_at_0();
    if (certified_zero(tail))
        return 0.0;
    if (tail.cls == TailAt0::Class::Power && (tail.a > 1.0 || (tail.a == 1.0 && tail.b >= -1.0)))
        throw Divergent("singular trace: " + f.describe() + " is not integrable at 0");
    return settle(dyadic_sequence(phi, f), phi.scheme(), "singular trace of " + f.describe());
}

double eval_on_operator(const TraceFunctional& phi, const MatrixOperator& a)
{
    if (!a.is_self_adjoint())
        throw std::invalid_argument("eval_on_operator: operator is not self-adjoint");
    if (phi.kind() != TraceFunctional::Kind::Integral)
        throw std::invalid_argument("eval_on_operator: matrix-scale traces are multiples of tau; "
                                    "singular traces act on profiles only");
    return eval_functional(phi, mu_positive_part(a)) - eval_functional(phi, mu_negative_part(a));
}

} // namespace specdet
