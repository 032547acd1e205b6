#include "specdet/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

constexpr double kQuadratureTol = 1e-10;
constexpr double kBoundaryTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_e_over(double t) { return 1.0 - std::log(t); }

double psi_log(double t) { return 1.0 / (2.0 - std::log(t)); }

double psi_log_prime(double t)
{
    const double l = 2.0 - std::log(t);
    return 1.0 / (t * l * l);
}

// 64 log-spaced points in (0, 1).
std::vector<double> audit_grid()
{
    std::vector<double> g(64);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double frac = static_cast<double>(63 - i) / 63.0;
        g[i] = 0.999 * std::pow(1e-12, frac);
    }
    return g;
}

bool is_unbounded(const TailAt0& t) { return t.cls != TailAt0::Class::Bounded; }

double limit_at_1(const SpectralProfile& p)
{
    const TailAt1 t = p.tail_at_1();
    return t.cls == TailAt1::Class::PositiveLimit ? t.value : 0.0;
}

bool close(double x, double y) { return std::abs(x - y) <= kBoundaryTol * std::max(1.0, std::abs(y)); }

} // namespace

SpectralProfile::SpectralProfile(Shape s) : shape_(std::move(s))
{
    audit();
}

void SpectralProfile::audit() const
{
    double prev = std::numeric_limits<double>::infinity();
    for (double t : audit_grid()) {
        const double v = (*this)(t);
        if (std::isnan(v) || v < 0.0)
            throw std::invalid_argument("SpectralProfile " + describe() + ": negative or NaN value at t=" +
                                        std::to_string(t));
        if (v > prev * (1.0 + 1e-12) + 1e-300)
            throw std::invalid_argument("SpectralProfile " + describe() + ": not nonincreasing near t=" +
                                        std::to_string(t));
        prev = v;
    }
    const double k = kernel_mass();
    if (!(k >= 0.0 && k < 1.0))
        throw std::invalid_argument("SpectralProfile " + describe() + ": kernel mass must lie in [0, 1)");
}

SpectralProfile SpectralProfile::power(double a, double b, double scale, double kernel)
{
    if (!(a >= 0.0) || a + std::min(b, 0.0) < 0.0)
        throw std::invalid_argument("power profile: need a >= 0 and a + min(b, 0) >= 0 for monotonicity");
    if (!(scale >= 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("power profile: scale must be finite and nonnegative");
    if (!(kernel >= 0.0 && kernel < 1.0))
        throw std::invalid_argument("power profile: kernel must lie in [0, 1)");
    return SpectralProfile(shape::Power{a, b, scale, kernel});
}

SpectralProfile SpectralProfile::constant(double c) { return power(0.0, 0.0, c, 0.0); }

SpectralProfile SpectralProfile::zero() { return power(0.0, 0.0, 0.0, 0.0); }

SpectralProfile SpectralProfile::projection(double mass)
{
    if (!(mass > 0.0 && mass <= 1.0))
        throw std::invalid_argument("projection profile: mass must lie in (0, 1]");
    return power(0.0, 0.0, 1.0, 1.0 - mass);
}

SpectralProfile SpectralProfile::psi_prime(double scale)
{
    if (!(scale >= 0.0))
        throw std::invalid_argument("psi-prime profile: scale must be nonnegative");
    return SpectralProfile(shape::PsiPrime{scale});
}

SpectralProfile SpectralProfile::exp_of(const SpectralProfile& h)
{
    if (h.kernel_mass() > 0.0)
        throw std::invalid_argument("exp_of: inner profile must not vanish on an interval");
    return SpectralProfile(shape::ExpOf{std::make_shared<const SpectralProfile>(h)});
}

SpectralProfile SpectralProfile::exp_neg_flip(const SpectralProfile& h)
{
    return SpectralProfile(shape::ExpNegFlip{std::make_shared<const SpectralProfile>(h)});
}

SpectralProfile SpectralProfile::shifted(const SpectralProfile& h, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("shifted: eps must be positive");
    return SpectralProfile(shape::Shifted{std::make_shared<const SpectralProfile>(h), eps});
}

SpectralProfile SpectralProfile::custom(std::string name, std::function<double(double)> eval, TailAt0 tail0,
                                        TailAt1 tail1, double kernel, std::function<double(double)> primitive)
{
    if (!eval)
        throw std::invalid_argument("custom profile: evaluator required");
    return SpectralProfile(
        shape::Custom{std::move(name), std::move(eval), tail0, tail1, kernel, std::move(primitive)});
}

double SpectralProfile::operator()(double t) const
{
    return std::visit(
        overloaded{
            [t](const shape::Power& s) {
                if (s.scale == 0.0 || t > 1.0 - s.kernel)
                    return 0.0;
                double v = s.scale;
                if (s.a != 0.0)
                    v *= std::pow(t, -s.a);
                if (s.b != 0.0)
                    v *= std::pow(log_e_over(t), s.b);
                return v;
            },
            [t](const shape::PsiPrime& s) { return s.scale * psi_log_prime(t); },
            [t](const shape::ExpOf& s) { return std::exp((*s.inner)(t)); },
            [t](const shape::ExpNegFlip& s) { return std::exp(-(*s.inner)(1.0 - t)); },
            [t](const shape::Shifted& s) { return (*s.inner)(t) + s.eps; },
            [t](const shape::LogPlusOf& s) {
                const double v = (*s.inner)(t);
                return v > 1.0 ? std::log(v) : 0.0;
            },
            [t](const shape::LogMinusOf& s) {
                const double v = (*s.inner)(1.0 - t);
                return v < 1.0 ? -std::log(v) : 0.0;
            },
            [t](const shape::Log1pOf& s) { return std::log1p((*s.inner)(t)); },
            [t](const shape::Custom& s) { return s.eval(t); },
        },
        shape_);
}

TailAt0 SpectralProfile::tail_at_0() const
{
    return std::visit(
        overloaded{
            [](const shape::Power& s) {
                if (s.scale == 0.0 || (s.a == 0.0 && s.b <= 0.0))
                    return TailAt0::bounded();
                return TailAt0::power(s.a, s.b);
            },
            [](const shape::PsiPrime& s) {
                return s.scale == 0.0 ? TailAt0::bounded() : TailAt0::power(1.0, -2.0);
            },
            [](const shape::ExpOf& s) {
                const TailAt0 in = s.inner->tail_at_0();
                switch (in.cls) {
                case TailAt0::Class::Bounded: return TailAt0::bounded();
                case TailAt0::Class::Power: return TailAt0::exp_power(in.a, in.b);
                default: return TailAt0::unknown();
                }
            },
            [](const shape::ExpNegFlip&) { return TailAt0::bounded(); },
            [](const shape::Shifted& s) { return s.inner->tail_at_0(); },
            [](const shape::LogPlusOf& s) {
                const TailAt0 in = s.inner->tail_at_0();
                switch (in.cls) {
                case TailAt0::Class::Bounded: return TailAt0::bounded();
                case TailAt0::Class::Power:
                    // log(t^{-a}) = a log(1/t): the log(e/t) class. a = 0 leaves log log.
                    return in.a > 0.0 ? TailAt0::power(0.0, 1.0) : TailAt0::unknown();
                case TailAt0::Class::ExpPower: return TailAt0::power(in.a, in.b);
                default: return TailAt0::unknown();
                }
            },
            [](const shape::LogMinusOf& s) {
                const TailAt1 in = s.inner->tail_at_1();
                return in.cls == TailAt1::Class::PositiveLimit ? TailAt0::bounded() : TailAt0::unknown();
            },
            [](const shape::Log1pOf& s) {
                const TailAt0 in = s.inner->tail_at_0();
                switch (in.cls) {
                case TailAt0::Class::Bounded: return TailAt0::bounded();
                case TailAt0::Class::Power: return in.a > 0.0 ? TailAt0::power(0.0, 1.0) : TailAt0::unknown();
                case TailAt0::Class::ExpPower: return TailAt0::power(in.a, in.b);
                default: return TailAt0::unknown();
                }
            },
            [](const shape::Custom& s) { return s.tail0; },
        },
        shape_);
}

TailAt1 SpectralProfile::tail_at_1() const
{
    auto positive_or_decay = [](double v) { return v > 0.0 ? TailAt1::positive_limit(v) : TailAt1::decays(); };
    return std::visit(
        overloaded{
            [](const shape::Power& s) {
                if (s.scale == 0.0)
                    return TailAt1::vanishes(1.0);
                if (s.kernel > 0.0)
                    return TailAt1::vanishes(s.kernel);
                return TailAt1::positive_limit(s.scale);
            },
            [](const shape::PsiPrime& s) {
                return s.scale == 0.0 ? TailAt1::vanishes(1.0) : TailAt1::positive_limit(s.scale / 4.0);
            },
            [](const shape::ExpOf& s) { return TailAt1::positive_limit(std::exp(limit_at_1(*s.inner))); },
            [](const shape::ExpNegFlip& s) {
                const auto h0 = s.inner->limit_at_0();
                return h0 ? TailAt1::positive_limit(std::exp(-*h0)) : TailAt1::decays();
            },
            [](const shape::Shifted& s) { return TailAt1::positive_limit(limit_at_1(*s.inner) + s.eps); },
            [&](const shape::LogPlusOf& s) {
                const double v = limit_at_1(*s.inner);
                return positive_or_decay(v > 1.0 ? std::log(v) : 0.0);
            },
            [&](const shape::LogMinusOf& s) {
                const auto h0 = s.inner->limit_at_0();
                if (!h0)
                    return TailAt1::decays();
                return positive_or_decay(*h0 < 1.0 ? -std::log(*h0) : 0.0);
            },
            [&](const shape::Log1pOf& s) { return positive_or_decay(std::log1p(limit_at_1(*s.inner))); },
            [](const shape::Custom& s) { return s.tail1; },
        },
        shape_);
}

double SpectralProfile::kernel_mass() const
{
    if (const auto* p = std::get_if<shape::Power>(&shape_))
        return p->kernel;
    if (const auto* c = std::get_if<shape::Custom>(&shape_))
        return c->kernel;
    return 0.0;
}

bool SpectralProfile::is_zero() const
{
    if (const auto* p = std::get_if<shape::Power>(&shape_))
        return p->scale == 0.0;
    if (const auto* p = std::get_if<shape::PsiPrime>(&shape_))
        return p->scale == 0.0;
    return false;
}

std::optional<double> SpectralProfile::limit_at_0() const
{
    if (is_unbounded(tail_at_0()))
        return std::nullopt;
    return std::visit(
        overloaded{
            [](const shape::Power& s) -> std::optional<double> { return s.scale; },
            [](const shape::PsiPrime&) -> std::optional<double> { return 0.0; },
            [](const shape::ExpOf& s) -> std::optional<double> {
                return std::exp(s.inner->limit_at_0().value_or(0.0));
            },
            [](const shape::ExpNegFlip& s) -> std::optional<double> {
                return std::exp(-limit_at_1(*s.inner));
            },
            [](const shape::Shifted& s) -> std::optional<double> {
                return s.inner->limit_at_0().value_or(0.0) + s.eps;
            },
            [](const shape::LogPlusOf& s) -> std::optional<double> {
                const double v = s.inner->limit_at_0().value_or(0.0);
                return v > 1.0 ? std::log(v) : 0.0;
            },
            [](const shape::LogMinusOf& s) -> std::optional<double> {
                const double v = limit_at_1(*s.inner);
                return v < 1.0 ? -std::log(v) : 0.0;
            },
            [](const shape::Log1pOf& s) -> std::optional<double> {
                return std::log1p(s.inner->limit_at_0().value_or(0.0));
            },
            [](const shape::Custom& s) -> std::optional<double> {
                return s.eval(std::numeric_limits<double>::min());
            },
        },
        shape_);
}

std::optional<double> SpectralProfile::primitive(double t) const
{
    return std::visit(
        overloaded{
            [t](const shape::Power& s) -> std::optional<double> {
                if (s.scale == 0.0)
                    return 0.0;
                if (s.b != 0.0 || s.a >= 1.0)
                    return std::nullopt;
                const double upper = std::min(t, 1.0 - s.kernel);
                return s.scale * std::pow(upper, 1.0 - s.a) / (1.0 - s.a);
            },
            [t](const shape::PsiPrime& s) -> std::optional<double> { return s.scale * psi_log(t); },
            [t](const shape::Shifted& s) -> std::optional<double> {
                const auto in = s.inner->primitive(t);
                if (!in)
                    return std::nullopt;
                return *in + s.eps * t;
            },
            [t](const shape::Custom& s) -> std::optional<double> {
                if (!s.primitive)
                    return std::nullopt;
                return s.primitive(t);
            },
            [](const auto&) -> std::optional<double> { return std::nullopt; },
        },
        shape_);
}

double SpectralProfile::integral(double a, double b) const
{
    if (!(0.0 <= a && a <= b && b <= 1.0))
        throw std::invalid_argument("SpectralProfile::integral: need 0 <= a <= b <= 1");
    if (a == b)
        return 0.0;
    if (a == 0.0) {
        const TailAt0 tail = tail_at_0();
        const bool diverges = tail.cls == TailAt0::Class::ExpPower ||
                              (tail.cls == TailAt0::Class::Power &&
                               (tail.a > 1.0 || (tail.a == 1.0 && tail.b >= -1.0)));
        if (diverges)
            throw Divergent("integral of " + describe() + " diverges at 0");
    }
    const auto pa = primitive(a);
    const auto pb = primitive(b);
    if (pa && pb)
        return *pb - *pa;

    const double upper = std::min(b, 1.0 - kernel_mass());
    if (upper <= a)
        return 0.0;
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [this](double t) { return (*this)(t); };
    return integrator.integrate(f, a, upper, kQuadratureTol);
}

std::string SpectralProfile::describe() const
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const shape::Power& s) {
                       os << "power(a=" << s.a << ",b=" << s.b << ",scale=" << s.scale << ",kernel=" << s.kernel
                          << ")";
                   },
                   [&](const shape::PsiPrime& s) { os << "psi-prime(scale=" << s.scale << ")"; },
                   [&](const shape::ExpOf& s) { os << "exp(" << s.inner->describe() << ")"; },
                   [&](const shape::ExpNegFlip& s) { os << "exp-neg-flip(" << s.inner->describe() << ")"; },
                   [&](const shape::Shifted& s) { os << "(" << s.inner->describe() << "+" << s.eps << ")"; },
                   [&](const shape::LogPlusOf& s) { os << "log+(" << s.inner->describe() << ")"; },
                   [&](const shape::LogMinusOf& s) { os << "log-*(" << s.inner->describe() << ")"; },
                   [&](const shape::Log1pOf& s) { os << "log1p(" << s.inner->describe() << ")"; },
                   [&](const shape::Custom& s) { os << s.name; },
               },
               shape_);
    return os.str();
}

SpectralProfile log_plus(const SpectralProfile& f)
{
    if (const auto* e = std::get_if<shape::ExpOf>(&f.shape()))
        return *e->inner;
    if (std::holds_alternative<shape::ExpNegFlip>(f.shape()))
        return SpectralProfile::zero();
    if (const auto* p = std::get_if<shape::Power>(&f.shape()); p && p->a == 0.0 && p->b == 0.0 && p->scale <= 1.0)
        return SpectralProfile::zero();
    return SpectralProfile(shape::LogPlusOf{std::make_shared<const SpectralProfile>(f)});
}

SpectralProfile log_minus(const SpectralProfile& f)
{
    if (f.kernel_mass() > 0.0 || f.is_zero())
        throw std::domain_error("log_minus: " + f.describe() + " has a kernel");
    if (const auto* e = std::get_if<shape::ExpNegFlip>(&f.shape()))
        return *e->inner;
    if (std::holds_alternative<shape::ExpOf>(f.shape()))
        return SpectralProfile::zero();
    if (const auto* p = std::get_if<shape::Power>(&f.shape()); p && p->scale >= 1.0)
        return SpectralProfile::zero();
    return SpectralProfile(shape::LogMinusOf{std::make_shared<const SpectralProfile>(f)});
}

SpectralProfile log1p_of(const SpectralProfile& f)
{
    return SpectralProfile(shape::Log1pOf{std::make_shared<const SpectralProfile>(f)});
}

ConcaveWeight ConcaveWeight::power_weight(double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("power weight: alpha must lie in (0, 1]");
    return {Kind::Power, alpha};
}

double ConcaveWeight::operator()(double t) const
{
    return kind == Kind::Log ? psi_log(t) : std::pow(t, alpha);
}

double ConcaveWeight::derivative(double t) const
{
    return kind == Kind::Log ? psi_log_prime(t) : alpha * std::pow(t, alpha - 1.0);
}

std::string ConcaveWeight::name() const
{
    if (kind == Kind::Log)
        return "psi-log";
    std::ostringstream os;
    os << "power:" << alpha;
    return os.str();
}

bool audit_weight(const ConcaveWeight& psi)
{
    const auto grid = audit_grid();
    if (!(psi(1e-300) < 1e-2))
        return false;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double x0 = grid[i - 1], x1 = grid[i], x2 = grid[i + 1];
        const double y0 = psi(x0), y1 = psi(x1), y2 = psi(x2);
        if (!(y0 < y1 && y1 < y2))
            return false;
        // Concavity: slopes of consecutive chords do not increase.
        const double s01 = (y1 - y0) / (x1 - x0);
        const double s12 = (y2 - y1) / (x2 - x1);
        if (s12 > s01 * (1.0 + 1e-9))
            return false;
    }
    return true;
}

SymmetricSpace SymmetricSpace::lp(double p)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("Lp: p must be positive and finite");
    return {Kind::Lp, p, ConcaveWeight::log_weight()};
}

SymmetricSpace SymmetricSpace::linf() { return {Kind::Linf, 0.0, ConcaveWeight::log_weight()}; }

SymmetricSpace SymmetricSpace::llog() { return {Kind::Llog, 0.0, ConcaveWeight::log_weight()}; }

SymmetricSpace SymmetricSpace::marcinkiewicz(ConcaveWeight psi)
{
    if (!audit_weight(psi))
        throw std::invalid_argument("Marcinkiewicz: weight " + psi.name() + " fails the concavity audit");
    return {Kind::Marcinkiewicz, 0.0, psi};
}

SymmetricSpace SymmetricSpace::parse(std::string_view spec)
{
    const std::string s(spec);
    auto number = [&](const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size())
            throw std::invalid_argument("unknown space '" + s + "'");
        return v;
    };
    if (s == "l1")
        return lp(1.0);
    if (s == "l2")
        return lp(2.0);
    if (s == "linf")
        return linf();
    if (s == "llog")
        return llog();
    if (s.rfind("lp:", 0) == 0)
        return lp(number(s.substr(3)));
    if (s == "marcinkiewicz" || s == "marcinkiewicz:psi-log")
        return marcinkiewicz(ConcaveWeight::log_weight());
    if (s.rfind("marcinkiewicz:power:", 0) == 0)
        return marcinkiewicz(ConcaveWeight::power_weight(number(s.substr(20))));
    throw std::invalid_argument("unknown space '" + s +
                                "' (expected l1, l2, lp:<p>, linf, llog, marcinkiewicz[:psi-log|:power:<alpha>])");
}

std::string SymmetricSpace::name() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::Lp:
        if (p_ == 1.0)
            os << "l1";
        else if (p_ == 2.0)
            os << "l2";
        else
            os << "lp:" << p_;
        break;
    case Kind::Linf: os << "linf"; break;
    case Kind::Llog: os << "llog"; break;
    case Kind::Marcinkiewicz: os << "marcinkiewicz:" << psi_.name(); break;
    }
    return os.str();
}

std::string_view to_string(Membership m)
{
    switch (m) {
    case Membership::Member: return "member";
    case Membership::NotMember: return "not-member";
    case Membership::Undecidable: return "undecidable";
    }
    return "undecidable";
}

Membership membership(const SymmetricSpace& e, const TailAt0& tail)
{
    using C = TailAt0::Class;
    using K = SymmetricSpace::Kind;
    constexpr auto yes = Membership::Member;
    constexpr auto no = Membership::NotMember;

    switch (tail.cls) {
    case C::Bounded: return yes;
    case C::Unknown: return Membership::Undecidable;
    case C::ExpPower:
        // Exponential growth beats every power; only L_log looks at log f.
        if (e.kind() == K::Llog)
            return membership(SymmetricSpace::lp(1.0), TailAt0::power(tail.a, tail.b));
        return no;
    case C::Power: break;
    }

    const double a = tail.a;
    const double b = tail.b;
    switch (e.kind()) {
    case K::Linf: return no;
    case K::Llog: return yes;
    case K::Lp: {
        const double pa = e.p() * a;
        if (close(pa, 1.0))
            return e.p() * b < -1.0 ? yes : no;
        return pa < 1.0 ? yes : no;
    }
    case K::Marcinkiewicz: {
        const ConcaveWeight& psi = e.weight();
        if (psi.kind == ConcaveWeight::Kind::Log) {
            // ∫_0^t s^{-a} log^b ~ t^{1-a} log^b for a < 1; for a = 1 it is
            // log(e/t)^{b+1}/(-b-1) and the ratio grows like log^{b+2}.
            if (close(a, 1.0))
                return b <= -2.0 ? yes : no;
            return a < 1.0 ? yes : no;
        }
        if (close(a, 1.0) || a > 1.0)
            return no;
        const double ex = 1.0 - a - psi.alpha;
        if (close(ex, 0.0))
            return b <= 0.0 ? yes : no;
        return ex > 0.0 ? yes : no;
    }
    }
    return Membership::Undecidable;
}

Membership membership(const SymmetricSpace& e, const SpectralProfile& f)
{
    return membership(e, f.tail_at_0());
}

Membership membership(const SymmetricSpace&, const GridFn&)
{
    return Membership::Member;
}

Membership elog_membership(const SymmetricSpace& e, const SpectralProfile& f)
{
    return membership(e, log_plus(f));
}

Membership elog_membership(const SymmetricSpace&, const GridFn&)
{
    return Membership::Member;
}

double marcinkiewicz_functional(const ConcaveWeight& psi, const GridFn& f, double t)
{
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("marcinkiewicz_functional: t must lie in (0, 1)");
    return integrate(decreasing_rearrangement(f), 0.0, t) / psi(t);
}

double marcinkiewicz_functional(const ConcaveWeight& psi, const SpectralProfile& f, double t)
{
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("marcinkiewicz_functional: t must lie in (0, 1)");
    return f.integral(0.0, t) / psi(t);
}

SpectralProfile parse_profile_spec(std::string_view line)
{
    std::istringstream is{std::string(line)};
    std::map<std::string, std::string> kv;
    std::string tok;
    std::vector<std::string> bare;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            bare.push_back(tok);
            continue;
        }
        const std::string key = tok.substr(0, eq);
        if (key != "name" && key != "kind" && key != "a" && key != "b" && key != "kernel" && key != "scale")
            throw std::invalid_argument("profile spec: unknown key '" + key + "'");
        kv[key] = tok.substr(eq + 1);
    }
    if (bare.size() == 1 && kv.empty())
        kv["name"] = bare.front();
    else if (!bare.empty())
        throw std::invalid_argument("profile spec: expected key=value tokens");
    if (!kv.count("name"))
        throw std::invalid_argument("profile spec: missing name=");

    auto num = [&](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        if (it == kv.end())
            return fallback;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != it->second.size())
            throw std::invalid_argument("profile spec: " + key + "='" + it->second + "' is not a number");
        return v;
    };
    const double a = num("a", 0.0);
    const double b = num("b", 0.0);
    const double scale = num("scale", 1.0);
    const double kernel = num("kernel", 0.0);

    const std::string name = kv["name"];
    const std::string kind = kv.count("kind") ? kv["kind"] : (name == "power" ? "power" : "builtin");
    if (kind == "power")
        return SpectralProfile::power(a, b, scale, kernel);
    if (kind != "builtin")
        throw std::invalid_argument("profile spec: kind must be builtin or power");

    if (name == "power")
        return SpectralProfile::power(a, b, scale, kernel);
    if (kernel != 0.0)
        throw std::invalid_argument("profile spec: kernel= applies only to power profiles");
    if (name == "psi-prime")
        return SpectralProfile::psi_prime(scale);
    if (name == "exp-neg-psi-prime-flip")
        return SpectralProfile::exp_neg_flip(SpectralProfile::psi_prime(scale));
    if (name == "exp-power")
        return SpectralProfile::exp_of(SpectralProfile::power(a, b, scale));
    if (name == "exp-neg-power-flip")
        return SpectralProfile::exp_neg_flip(SpectralProfile::power(a, b, scale));
    throw std::invalid_argument("profile spec: unknown builtin '" + name +
                                "' (psi-prime, exp-neg-psi-prime-flip, power, exp-power, exp-neg-power-flip)");
}

} // namespace specdet
