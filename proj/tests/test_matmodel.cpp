#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "specdet/errors.hpp"
#include "specdet/matmodel.hpp"

using namespace specdet;

namespace {

MatrixOperator ginibre(std::size_t n, std::uint64_t seed)
{
    return sample({Ensemble::IidComplexGaussian, n, 1.0, seed, {}});
}

MatrixOperator hermitian(std::size_t n, std::uint64_t seed)
{
    return sample({Ensemble::HermitianGaussian, n, 1.0, seed, {}});
}

// |det A|^{1/n} through LU, a path that never touches singular values.
double lu_det_root(const MatrixOperator& a)
{
    const std::complex<double> d = Eigen::PartialPivLU<CMatrix>(a.entries()).determinant();
    return std::pow(std::abs(d), 1.0 / static_cast<double>(a.dim()));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("mu of simple operators")
{
    CHECK(mu(MatrixOperator::identity(3)) == GridFn::constant(1.0, 3));
    const std::vector<double> d{1.0, 3.0};
    const auto m = mu(MatrixOperator::diagonal(d));
    CHECK(m.cell(0) == 3.0);
    CHECK(m.cell(1) == 1.0);
}

TEST_CASE("mu is unitarily invariant")
{
    const auto a = ginibre(24, 5);
    const auto u = haar_unitary(24, 6);
    const auto v = haar_unitary(24, 7);
    const auto uav = u * a * v;
    const auto m1 = mu(a);
    const auto m2 = mu(uav);
    for (std::size_t k = 0; k < 24; ++k)
        CHECK(m2.cell(k) == doctest::Approx(m1.cell(k)).epsilon(1e-10));
}

TEST_CASE("lambda")
{
    const std::vector<double> d{1.0, -1.0};
    const auto l = lambda(MatrixOperator::diagonal(d));
    CHECK(l.cell(0) == 1.0);
    CHECK(l.cell(1) == -1.0);
    CHECK_THROWS_AS(lambda(ginibre(4, 1)), std::invalid_argument);

    const auto p = sample_positive(32, 1.0, 9);
    const auto lp = lambda(p);
    const auto mp = mu(p);
    for (std::size_t k = 0; k < 32; ++k)
        CHECK(std::abs(lp.cell(k) - mp.cell(k)) <= 1e-10);

    const auto h = hermitian(16, 3);
    const auto shifted = lambda(h + 2.5 * MatrixOperator::identity(16));
    for (std::size_t k = 0; k < 16; ++k)
        CHECK(shifted.cell(k) == doctest::Approx(lambda(h).cell(k) + 2.5).epsilon(1e-12));
}

TEST_CASE("spectral window matches the trace of the spectral projection")
{
    const auto h = hermitian(20, 4);
    const auto l = lambda(h);
    const double a = -0.5;
    const double b = 0.7;
    const auto [c, d] = spectral_window(l, a, b);
    const double proj_tau = spectral_projection(h, a, b).tau().real();
    CHECK(d - c == doctest::Approx(proj_tau).epsilon(1e-12));
}

TEST_CASE("truncation at a level")
{
    const std::vector<double> d{3.0, -2.0};
    const auto t = MatrixOperator::diagonal(d);
    const auto t0 = truncate_at_level(t, 1.0);
    CHECK(t0.entries()(0, 0).real() == 1.0);
    CHECK(t0.entries()(1, 1).real() == -1.0);
    CHECK(max_abs_diff(truncate_at_level(t, 5.0).entries(), t.entries()) <= 1e-14);
    CHECK_THROWS_AS(truncate_at_level(t, -1.0), std::invalid_argument);

    // With c = μ(t,T), the singular value at index floor(nt) of T - T₀ vanishes.
    const auto h = hermitian(32, 8);
    const auto mh = mu(h);
    for (std::size_t k = 1; k < 32; ++k) {
        const double x = static_cast<double>(k) / 32.0;
        const auto diff = mu(h - truncate_at_level(h, mh(x)));
        CHECK(diff(x) <= 1e-12);
    }
}

TEST_CASE("Fuglede-Kadison determinant")
{
    CHECK(fk_det(MatrixOperator::identity(5)) == doctest::Approx(1.0));
    const std::vector<double> d{1.0, 4.0};
    CHECK(fk_det(MatrixOperator::diagonal(d)) == doctest::Approx(2.0));

    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = ginibre(16, 100 + s);
        const auto b = ginibre(16, 200 + s);
        CHECK(fk_det(a) == doctest::Approx(lu_det_root(a)).epsilon(1e-10));
        const double rel = std::abs(fk_det(a * b) - fk_det(a) * fk_det(b)) / (fk_det(a) * fk_det(b));
        CHECK(rel <= 1e-9);
    }
    std::vector<double> z{1.0, 0.0, 2.0};
    CHECK(fk_det(MatrixOperator::diagonal(z)) == 0.0);
    CHECK(has_kernel(MatrixOperator::diagonal(z)));
    CHECK_FALSE(has_kernel(MatrixOperator::identity(3)));
}

TEST_CASE("eps-regularized determinant")
{
    const auto zero = MatrixOperator(CMatrix::Zero(4, 4));
    CHECK(fk_det_eps(zero, 0.125) == doctest::Approx(0.125));
    CHECK_THROWS_AS(fk_det_eps(zero, 0.0), std::invalid_argument);

    // First order: Δ_ε - Δ = Δ · (ε/n) Σ 1/σ_k + O(ε²).
    const auto a = ginibre(12, 77);
    double inv_sum = 0.0;
    for (double s : a.singular_values())
        inv_sum += 1.0 / s;
    const double eps = 1e-7;
    const double first_order = fk_det(a) * eps * inv_sum / 12.0;
    CHECK(fk_det_eps(a, eps) - fk_det(a) == doctest::Approx(first_order).epsilon(1e-4));

    std::vector<double> d{2.0, 1.0, 0.0};
    const auto sing = MatrixOperator::diagonal(d);
    double prev = fk_det_eps(sing, 1.0);
    for (int k = 1; k <= 40; ++k) {
        const double cur = fk_det_eps(sing, std::ldexp(1.0, -k));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("ensembles are deterministic and well formed")
{
    CHECK(ginibre(8, 3).entries() == ginibre(8, 3).entries());
    const auto h = hermitian(16, 2);
    CHECK(h.hermiticity_defect() == 0.0);
    CHECK(h.is_self_adjoint());

    EnsembleSpec diag{Ensemble::DiagonalSpectrum, 2, 1.0, 0, {3.0, 1.0}};
    const auto m = mu(sample(diag));
    CHECK(m.cell(0) == 3.0);
    CHECK(m.cell(1) == 1.0);

    EnsembleSpec conj{Ensemble::HaarUnitaryConjugate, 6, 1.0, 4, {5, 4, 3, -2, -1, 0.5}};
    const auto l = lambda(sample(conj));
    const std::vector<double> want{5, 4, 3, 0.5, -1, -2};
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(l.cell(k) == doctest::Approx(want[k]).epsilon(1e-10));

    const auto u = haar_unitary(10, 1);
    CHECK(max_abs_diff(u.entries() * u.entries().adjoint(), CMatrix::Identity(10, 10)) <= 1e-12);
}

TEST_CASE("functional calculus")
{
    const auto zero = MatrixOperator(CMatrix::Zero(3, 3));
    CHECK(max_abs_diff(exp_sa(zero).entries(), CMatrix::Identity(3, 3)) == 0.0);

    const auto p = sample_positive(16, 1.0, 12) + 0.1 * MatrixOperator::identity(16);
    const auto round_trip = exp_sa(log_sa(p));
    CHECK(max_abs_diff(round_trip.entries(), p.entries()) <= 1e-9 * p.norm());
    CHECK_THROWS_AS(log_sa(hermitian(8, 1)), DomainError);

    const auto h = hermitian(16, 13);
    const auto tp = positive_part(h);
    const auto tm = negative_part(h);
    CHECK(max_abs_diff((tp - tm).entries(), h.entries()) <= 1e-10 * h.norm());
    CHECK((tp.entries() * tm.entries()).cwiseAbs().maxCoeff() <= 1e-10 * h.norm());

    const auto g = ginibre(10, 14);
    const auto abs_g = polar_abs(g);
    CHECK(max_abs_diff(abs_g.entries() * abs_g.entries(), g.entries().adjoint() * g.entries()) <= 1e-10);

    // τ(1_[0,μ(r,T)](|T|)) >= 1 - r.
    const auto mh = mu(h);
    for (std::size_t k = 1; k < 16; ++k) {
        const double r = static_cast<double>(k) / 16.0;
        CHECK(abs_spectral_projection(h, mh(r)).tau().real() >= 1.0 - r - 1e-12);
    }
}

TEST_CASE("matrix text format round trip")
{
    const auto a = ginibre(5, 21);
    std::stringstream ss;
    write_matrix(ss, a);
    CHECK(read_matrix(ss).entries() == a.entries());

    std::istringstream bad("2\n1,0 0,0\n0,0\n");
    CHECK_THROWS_AS(read_matrix(bad), std::invalid_argument);
    std::istringstream junk("2\n1,0 0,0 0,0 x,1\n");
    CHECK_THROWS_AS(read_matrix(junk), std::invalid_argument);
}
