#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/LU>

#include "specdet/dets.hpp"
#include "specdet/errors.hpp"

using namespace specdet;

namespace {

MatrixOperator ginibre(std::size_t n, std::uint64_t seed)
{
    return sample({Ensemble::IidComplexGaussian, n, 1.0, seed, {}});
}

double lu_det_root(const MatrixOperator& a)
{
    const std::complex<double> d = Eigen::PartialPivLU<CMatrix>(a.entries()).determinant();
    return std::pow(std::abs(d), 1.0 / static_cast<double>(a.dim()));
}

const SymmetricSpace kL1 = SymmetricSpace::lp(1.0);
const SymmetricSpace kL2 = SymmetricSpace::lp(2.0);
const SymmetricSpace kMlog = SymmetricSpace::marcinkiewicz(ConcaveWeight::log_weight());

SpectralProfile example_profile() { return SpectralProfile::exp_neg_flip(SpectralProfile::psi_prime()); }

} // namespace

TEST_CASE("det of the identity is 1")
{
    for (double c : {0.0, 1.0, 2.5}) {
        const auto r = det_phi(DetInput::matrix(MatrixOperator::identity(4)), TraceFunctional::integral(c), kL1);
        CHECK(r.value == 1.0);
        CHECK(r.branch == DetBranch::Regular);
    }
    const auto one = DetInput::profile(SpectralProfile::constant(1.0));
    CHECK(det_phi(one, TraceFunctional::singular(), kMlog).value == 1.0);
    CHECK(det_phi(one, TraceFunctional::integral(1.0), kL2).value == 1.0);
}

TEST_CASE("singular trace on the exp(-psi'(1-t)) profile")
{
    const auto r = det_phi(DetInput::profile(example_profile()), TraceFunctional::singular(), kMlog);
    CHECK(r.branch == DetBranch::Regular);
    CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("zero branches")
{
    std::vector<double> d{2.0, 0.0, 1.0};
    const auto k = det_phi(DetInput::matrix(MatrixOperator::diagonal(d)), TraceFunctional::integral(1.0), kL1);
    CHECK(k.value == 0.0);
    CHECK(k.branch == DetBranch::Kernel);

    const auto proj = det_phi(DetInput::profile(SpectralProfile::projection(0.5)), TraceFunctional::singular(), kMlog);
    CHECK(proj.value == 0.0);
    CHECK(proj.branch == DetBranch::Kernel);

    const auto x = DetInput::profile(SpectralProfile::exp_neg_flip(SpectralProfile::power(0.75, 0.0)));
    const auto outside = det_phi(x, TraceFunctional::integral(1.0), kL2);
    CHECK(outside.value == 0.0);
    CHECK(outside.branch == DetBranch::LogMinusOutside);
}

TEST_CASE("inputs outside E_log or undecidable are refused")
{
    const auto big = DetInput::profile(SpectralProfile::exp_of(SpectralProfile::power(1.0, 0.0)));
    CHECK_THROWS_AS(det_phi(big, TraceFunctional::integral(1.0), kL1), std::invalid_argument);

    const auto odd = DetInput::profile(SpectralProfile::custom(
        "odd", [](double t) { return 1.0 + 1.0 / t; }, TailAt0::unknown(), TailAt1::positive_limit(2.0)));
    CHECK_THROWS_AS(det_phi(odd, TraceFunctional::integral(1.0), kL1), Undecidable);
    CHECK_THROWS_AS(det_phi(DetInput::matrix(MatrixOperator::identity(2)), TraceFunctional::singular(), kMlog),
                    std::invalid_argument);
}

TEST_CASE("matrix path")
{
    const auto tau = TraceFunctional::integral(1.0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto a = ginibre(16, 300 + s);
        const double d = det_phi(DetInput::matrix(a), tau, kL1).value;
        CHECK(d == doctest::Approx(lu_det_root(a)).epsilon(1e-10));
        CHECK(d == doctest::Approx(fk_det(a)).epsilon(1e-10));
        CHECK(det_phi(DetInput::matrix(polar_abs(a)), tau, kL1).value == doctest::Approx(d).epsilon(1e-10));

        const auto u = haar_unitary(16, 400 + s);
        const auto v = haar_unitary(16, 500 + s);
        CHECK(det_phi(DetInput::matrix(u * a * v), tau, kL1).value == doctest::Approx(d).epsilon(1e-10));

        const MatrixOperator inv(a.entries().inverse());
        CHECK(det_phi(DetInput::matrix(inv), tau, kL1).value == doctest::Approx(1.0 / d).epsilon(1e-9));
    }
}

TEST_CASE("multiplicativity at matrix scale")
{
    const std::vector<double> da{1.0, 4.0}, db{9.0, 1.0};
    const auto r = det_multiplicativity_check(MatrixOperator::diagonal(da), MatrixOperator::diagonal(db),
                                              TraceFunctional::integral(1.0));
    CHECK(r.det_ab == doctest::Approx(6.0));
    CHECK(r.det_a == doctest::Approx(2.0));
    CHECK(r.det_b == doctest::Approx(3.0));

    const auto zero_c = det_multiplicativity_check(ginibre(8, 1), ginibre(8, 2), TraceFunctional::integral(0.0));
    CHECK(zero_c.det_ab == 1.0);
    CHECK(zero_c.det_a * zero_c.det_b == 1.0);

    const auto a = ginibre(32, 11);
    const auto b = ginibre(32, 12);
    const auto g = det_multiplicativity_check(a, b, TraceFunctional::integral(1.0));
    CHECK(g.rel_error <= 1e-9);
    CHECK(g.det_ab == doctest::Approx(lu_det_root(a) * lu_det_root(b)).epsilon(1e-9));
}

TEST_CASE("commuting profile products")
{
    const auto h = SpectralProfile::power(0.5, 0.0);
    const auto f = SpectralProfile::exp_of(h);
    const auto inv = SpectralProfile::exp_neg_flip(h);
    const auto one = commuting_profile_product(f, inv);
    CHECK(det_phi(DetInput::profile(one), TraceFunctional::integral(1.0), kL1).value == 1.0);
    // det(f)·det(1/f) = e^{∫h} e^{-∫h} = 1 as well.
    const double df = det_phi(DetInput::profile(f), TraceFunctional::integral(1.0), kL1).value;
    const double dinv = det_phi(DetInput::profile(inv), TraceFunctional::integral(1.0), kL1).value;
    CHECK(df == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
    CHECK(df * dinv == doctest::Approx(1.0).epsilon(1e-12));

    const auto e = SpectralProfile::constant(std::exp(1.0));
    const auto e2 = commuting_profile_product(e, e);
    const auto tau = TraceFunctional::integral(1.0);
    const double de = det_phi(DetInput::profile(e), tau, kL1).value;
    CHECK(det_phi(DetInput::profile(e2), tau, kL1).value == doctest::Approx(de * de).epsilon(1e-12));

    const auto sq = commuting_profile_product(example_profile(), example_profile());
    const double dsq = det_phi(DetInput::profile(sq), TraceFunctional::singular(), kMlog).value;
    CHECK(dsq == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));

    CHECK_THROWS_AS(commuting_profile_product(f, SpectralProfile::psi_prime()), Unsupported);
}

TEST_CASE("eps-regularized comparison")
{
    const auto proj = eps_limit_comparison(DetInput::profile(SpectralProfile::projection(0.5)),
                                           TraceFunctional::singular(), kMlog);
    CHECK(proj.det.value == 0.0);
    REQUIRE(proj.eps_limit);
    CHECK(*proj.eps_limit == doctest::Approx(1.0).epsilon(1e-6));

    const auto inv = eps_limit_comparison(DetInput::profile(example_profile()), TraceFunctional::singular(), kMlog);
    CHECK(inv.det.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    REQUIRE(inv.eps_limit);
    CHECK(*inv.eps_limit == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(inv.sequence.size() == 27);

    const auto a = ginibre(12, 5);
    const auto m = eps_limit_comparison(DetInput::matrix(a), TraceFunctional::integral(1.0), kL1);
    REQUIRE(m.eps_limit);
    CHECK(*m.eps_limit == doctest::Approx(m.det.value).epsilon(1e-6));
    CHECK(m.det.value == doctest::Approx(fk_det(a)).epsilon(1e-10));
}

TEST_CASE("strictly larger space scenario")
{
    const auto r = proposition_EneF_scenario(kL2, kL1, SpectralProfile::power(0.75, 0.0));
    CHECK(r.det_psi == doctest::Approx(std::exp(-4.0)).epsilon(1e-9));
    CHECK(r.det_phi == 0.0);
    CHECK(r.branch_phi == DetBranch::LogMinusOutside);

    CHECK_THROWS_AS(proposition_EneF_scenario(kL2, kL1, SpectralProfile::constant(2.0)), std::invalid_argument);
    // t^{-1/2} sits on the L₂ boundary (p·a = 1, b = 0), so it is outside L₂ and a valid witness.
    const auto half = proposition_EneF_scenario(kL2, kL1, SpectralProfile::power(0.5, 0.0));
    CHECK(half.det_psi == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    CHECK(half.det_phi == 0.0);
    // t^{-1/4} lies in L₂: not a witness.
    CHECK_THROWS_AS(proposition_EneF_scenario(kL2, kL1, SpectralProfile::power(0.25, 0.0)), std::invalid_argument);
}
