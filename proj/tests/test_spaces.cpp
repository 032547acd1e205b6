#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specdet/errors.hpp"
#include "specdet/spaces.hpp"

using namespace specdet;

namespace {

const auto kMember = Membership::Member;
const auto kNot = Membership::NotMember;

} // namespace

TEST_CASE("power rule for L_p")
{
    const auto l1 = SymmetricSpace::lp(1.0);
    const auto l2 = SymmetricSpace::lp(2.0);
    CHECK(membership(l2, SpectralProfile::power(0.5, 0.0)) == kNot);
    CHECK(membership(l1, SpectralProfile::power(0.5, 0.0)) == kMember);
    CHECK(membership(l2, SpectralProfile::power(0.4, 3.0)) == kMember);
    CHECK(membership(l1, TailAt0::power(1.0, -1.0)) == kNot);
    CHECK(membership(l1, TailAt0::power(1.0, -1.5)) == kMember);
    CHECK(membership(l2, SpectralProfile::power(0.75, 0.0)) == kNot);
    CHECK(membership(l1, SpectralProfile::power(0.75, 0.0)) == kMember);
    CHECK(membership(SymmetricSpace::linf(), SpectralProfile::power(0.1, 0.0)) == kNot);
    CHECK(membership(SymmetricSpace::linf(), SpectralProfile::constant(7.0)) == kMember);
    CHECK(membership(l2, GridFn({5.0, 1.0})) == kMember);
}

TEST_CASE("Marcinkiewicz membership")
{
    const auto mlog = SymmetricSpace::marcinkiewicz(ConcaveWeight::log_weight());
    CHECK(membership(mlog, SpectralProfile::psi_prime()) == kMember);
    CHECK(membership(mlog, TailAt0::power(1.0, -1.5)) == kNot);
    CHECK(membership(mlog, SpectralProfile::power(0.99, 5.0)) == kMember);
    CHECK(membership(mlog, SpectralProfile::power(1.2, 0.0)) == kNot);

    const auto mhalf = SymmetricSpace::marcinkiewicz(ConcaveWeight::power_weight(0.5));
    CHECK(membership(mhalf, SpectralProfile::power(0.5, 0.0)) == kMember);
    CHECK(membership(mhalf, SpectralProfile::power(0.5, 1.0)) == kNot);
    CHECK(membership(mhalf, SpectralProfile::power(0.4, 2.0)) == kMember);
    CHECK(membership(mhalf, SpectralProfile::power(0.6, 0.0)) == kNot);
}

TEST_CASE("E_log membership and the exponential tail class")
{
    const auto l1 = SymmetricSpace::lp(1.0);
    const auto e_sqrt = SpectralProfile::exp_of(SpectralProfile::power(0.5, 0.0));
    CHECK(e_sqrt.tail_at_0().cls == TailAt0::Class::ExpPower);
    CHECK(membership(l1, e_sqrt) == kNot);
    CHECK(elog_membership(l1, e_sqrt) == kMember);
    CHECK(membership(SymmetricSpace::llog(), e_sqrt) == kMember);

    const auto e_inv = SpectralProfile::exp_of(SpectralProfile::power(1.0, 0.0));
    CHECK(elog_membership(l1, e_inv) == kNot);
    CHECK(elog_membership(l1, SpectralProfile::power(3.0, 0.0)) == kMember);

    const auto odd = SpectralProfile::custom(
        "odd", [](double t) { return 1.0 / t; }, TailAt0::unknown(), TailAt1::positive_limit(1.0));
    CHECK(membership(l1, odd) == Membership::Undecidable);
}

TEST_CASE("structural log parts")
{
    const auto x = SpectralProfile::exp_neg_flip(SpectralProfile::psi_prime());
    CHECK(log_plus(x).is_zero());
    const auto lm = log_minus(x);
    CHECK(std::holds_alternative<shape::PsiPrime>(lm.shape()));
    CHECK_THROWS_AS(log_minus(SpectralProfile::projection(0.5)), std::domain_error);

    // The generic path agrees with the definition pointwise.
    const auto p = SpectralProfile::power(0.5, 0.0, 0.3);
    const auto lp = log_plus(p);
    const auto lmin = log_minus(p);
    for (double t : {0.001, 0.05, 0.2, 0.6, 0.95}) {
        const double v = p(t);
        CHECK(lp(t) == doctest::Approx(std::max(std::log(v), 0.0)));
        CHECK(lmin(t) == doctest::Approx(std::max(-std::log(p(1.0 - t)), 0.0)));
    }
    CHECK(lmin.tail_at_0().cls == TailAt0::Class::Bounded);
}

TEST_CASE("integrals against frozen high-precision values")
{
    // ∫_0^0.3 t^{-1/2}(1 - log t) dt, mpmath at 30 digits.
    CHECK(SpectralProfile::power(0.5, 1.0).integral(0.0, 0.3) ==
          doctest::Approx(4.60522147213513316387220473932).epsilon(1e-9));
    // ∫_0^1 exp(-ψ'(1-t)) dt.
    CHECK(SpectralProfile::exp_neg_flip(SpectralProfile::psi_prime()).integral(0.0, 1.0) ==
          doctest::Approx(0.709018584598947546663787856931).epsilon(1e-9));
    // ∫_0^1 log(1 + t^{-1/2}) dt = 1.
    CHECK(log1p_of(SpectralProfile::power(0.5, 0.0)).integral(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(SpectralProfile::power(0.75, 0.0).integral(0.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(SpectralProfile::projection(0.5).integral(0.0, 1.0) == doctest::Approx(0.5));
    CHECK(SpectralProfile::psi_prime().integral(0.0, 0.01) == doctest::Approx(1.0 / (2.0 - std::log(0.01))));
    CHECK_THROWS_AS(SpectralProfile::power(1.0, 0.0).integral(0.0, 0.5), Divergent);
}

TEST_CASE("Marcinkiewicz functional")
{
    const auto w = ConcaveWeight::log_weight();
    // (1/ψ(t)) ∫_0^t s^{-1/2} = 2√t (2 - log t) at t = 0.01.
    CHECK(marcinkiewicz_functional(w, SpectralProfile::power(0.5, 0.0), 0.01) ==
          doctest::Approx(1.32103403719761827360719658187).epsilon(1e-12));
    // ψ' has ratio exactly 1.
    for (double t : {1e-9, 1e-4, 0.3})
        CHECK(marcinkiewicz_functional(w, SpectralProfile::psi_prime(), t) == doctest::Approx(1.0).epsilon(1e-14));
    const GridFn g({4.0, 2.0});
    CHECK(marcinkiewicz_functional(w, g, 0.25) == doctest::Approx(1.0 / w(0.25)));
    CHECK_THROWS_AS(marcinkiewicz_functional(w, g, 0.0), std::invalid_argument);
}

TEST_CASE("weights and space parsing")
{
    CHECK(audit_weight(ConcaveWeight::log_weight()));
    CHECK(audit_weight(ConcaveWeight::power_weight(0.3)));
    CHECK_THROWS_AS(ConcaveWeight::power_weight(1.5), std::invalid_argument);

    CHECK(SymmetricSpace::parse("l2").p() == 2.0);
    CHECK(SymmetricSpace::parse("lp:3.5").p() == 3.5);
    CHECK(SymmetricSpace::parse("marcinkiewicz").kind() == SymmetricSpace::Kind::Marcinkiewicz);
    CHECK(SymmetricSpace::parse("marcinkiewicz:power:0.5").weight().alpha == 0.5);
    CHECK(SymmetricSpace::parse("llog").name() == "llog");
    CHECK_THROWS_AS(SymmetricSpace::parse("l3x"), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricSpace::parse("lp:abc"), std::invalid_argument);
}

TEST_CASE("profile validation and spec lines")
{
    CHECK_THROWS_AS(SpectralProfile::power(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralProfile::power(0.2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralProfile::custom("rising", [](double t) { return t; }, TailAt0::bounded(),
                                            TailAt1::positive_limit(1.0)),
                    std::invalid_argument);

    const auto p = parse_profile_spec("name=power kind=power a=0.75 b=0 kernel=0 scale=1");
    CHECK(p(0.5) == doctest::Approx(std::pow(0.5, -0.75)));
    const auto x = parse_profile_spec("exp-neg-psi-prime-flip");
    CHECK(std::holds_alternative<shape::ExpNegFlip>(x.shape()));
    const auto e = parse_profile_spec("name=exp-neg-power-flip a=0.75");
    CHECK(e(0.2) == doctest::Approx(std::exp(-std::pow(0.8, -0.75))));
    const auto k = parse_profile_spec("name=power a=0 b=0 kernel=0.5");
    CHECK(k.kernel_mass() == 0.5);
    CHECK(k(0.7) == 0.0);
    CHECK_THROWS_AS(parse_profile_spec("name=nope"), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile_spec("name=power colour=red"), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile_spec("name=psi-prime kernel=0.2"), std::invalid_argument);
}

TEST_CASE("tails at 1")
{
    CHECK(SpectralProfile::projection(0.25).tail_at_1().cls == TailAt1::Class::VanishesOnInterval);
    CHECK(SpectralProfile::psi_prime().tail_at_1().value == doctest::Approx(0.25));
    CHECK(SpectralProfile::exp_neg_flip(SpectralProfile::psi_prime()).tail_at_1().cls ==
          TailAt1::Class::DecaysToZero);
    const auto s = SpectralProfile::shifted(SpectralProfile::projection(0.5), 0.125);
    CHECK(s.tail_at_1().value == doctest::Approx(0.125));
    CHECK(s.kernel_mass() == 0.0);
}
