#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specdet/verify.hpp"

using namespace specdet;

namespace {

MatrixOperator diag(std::vector<double> d) { return MatrixOperator::diagonal(d); }

MatrixOperator zeros(std::size_t n) { return MatrixOperator(CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))); }

MatrixOperator hermitian(std::size_t n, std::uint64_t seed)
{
    return sample({Ensemble::HermitianGaussian, n, 1.0, seed, {}});
}

double max_quantity(const CheckReport& r)
{
    double q = 0.0;
    for (const auto& s : r.samples)
        q = std::max(q, std::abs(s.quantity));
    return q;
}

} // namespace

TEST_CASE("trivial inputs collapse every check")
{
    const auto z = zeros(8);
    const auto t = hermitian(8, 1);
    CHECK(max_quantity(check_main_product_lemma(z, z)) == 0.0);
    CHECK(check_pointwise_product_bounds(t, -1.0 * t).pass);
    CHECK(check_majorization(sample_positive(8, 1.0, 2), z).worst_margin >= -1e-12);
    CHECK(max_quantity(check_sum_pos_bound(sample_positive(8, 1.0, 2), z)) <= 1e-12);
    CHECK(max_quantity(check_tpm_vanishing(sample_positive(8, 1.0, 3))) <= 1e-12);
    CHECK(max_quantity(check_sum_lemma_composite(t, z)) <= 1e-12);
    CHECK(max_quantity(check_commutator_criterion(z)) == 0.0);
    CHECK(check_standard_inequalities(t, z).pass);

    const auto one = MatrixOperator::identity(4);
    const auto std_one = check_standard_inequalities(one, one);
    CHECK(std_one.pass);
    CHECK(std_one.worst_margin == 0.0);
    const auto lc = check_log_closure(zeros(4), zeros(4));
    CHECK(lc.pass);
    CHECK(lc.worst_margin == 0.0);
}

TEST_CASE("commuting diagonal inputs")
{
    const auto t = diag({2.0, 0.5, -0.3, -1.0, -2.0, 1.5, 0.1, -0.7});
    const auto s = diag({1.0, 0.2, -0.5, -0.9, -3.0, 0.8, 0.0, -0.6});
    // Same eigenvector ordering: λ(T) + λ(S) = λ(T+S) and log μ(e^T e^S) is a
    // rearrangement of λ(T) + λ(S).
    CHECK(max_quantity(check_main_product_lemma(t, s)) <= 1e-12);
    CHECK(max_quantity(check_sum_lemma_composite(t, s)) <= 1e-12);
}

TEST_CASE("hand-enumerable cases")
{
    // μ(T+S) = [2,2], μT + μS = [4,0]: at t = 1/2 the integrals are 1, 2, 2.
    const auto m = check_majorization(diag({2.0, 0.0}), diag({0.0, 2.0}));
    REQUIRE(m.samples.size() == 1);
    CHECK(m.worst_margin == 0.0);
    CHECK(m.pass);

    // λ = [1,1,-1,-1], μ(1/4) = 1 so the projection is the identity:
    // τ(T) = 0 and Ψλ(1/4) = 0; margin 2.
    const auto c = check_commutator_criterion(diag({1.0, -1.0, 1.0, -1.0}));
    REQUIRE(c.samples.size() == 1);
    CHECK(c.samples[0].quantity == doctest::Approx(0.0));
    CHECK(c.samples[0].margin == doctest::Approx(2.0));

    // λ = [2,1,-1,-3]: λ - μ(T₊) + μ(T₋) = [3,1,-1,-3], Ψ of it at 1/4 is 0
    // and the threshold is 1/2.
    const auto tpm_op = diag({2.0, 1.0, -1.0, -3.0});
    CHECK(tpm_threshold(tpm_op) == 0.5);
    const auto v = check_tpm_vanishing(tpm_op);
    REQUIRE(v.samples.size() == 1);
    CHECK(v.samples[0].quantity <= 1e-15);
    CHECK(v.samples[0].bound == 0.0);
    CHECK(std::abs(psi_at(GridFn({1.0, -1.0}), 0.3)) <= 1e-15);
}

TEST_CASE("checks report violations they are given")
{
    // A non-unitary "conjugation" breaks the invariance row.
    const auto a = hermitian(6, 4);
    const auto not_unitary = 2.0 * MatrixOperator::identity(6);
    const auto r = check_trace_layer(a, not_unitary);
    CHECK_FALSE(r.pass);
    CHECK(r.violations >= 1);
    CHECK(r.worst_margin < 0.0);

    CHECK_THROWS_AS(check_majorization(hermitian(6, 1), hermitian(6, 2)), std::invalid_argument);
    CHECK_THROWS_AS(check_main_product_lemma(hermitian(6, 1), hermitian(4, 2)), std::invalid_argument);
}

TEST_CASE("seeded runs pass and are deterministic")
{
    SuiteConfig cfg;
    cfg.n = 24;
    cfg.trials = 6;
    cfg.seed = 7;
    const auto a = run_suite(cfg);
    const auto b = run_suite(cfg);
    REQUIRE(a.size() == suite_names().size());
    for (const auto& r : a) {
        INFO(r.check_name);
        CHECK(r.pass);
        CHECK(r.trials == 6);
    }
    CHECK(to_csv(a) == to_csv(b));
    CHECK(trial_seed(7, "sum-pos", 3) == trial_seed(7, "sum-pos", 3));
    CHECK(trial_seed(7, "sum-pos", 3) != trial_seed(7, "sum-pos", 4));
    CHECK(trial_seed(7, "sum-pos", 3) != trial_seed(7, "majorization", 3));
}

TEST_CASE("configuration errors")
{
    SuiteConfig cfg;
    cfg.trials = 0;
    CHECK(run_suite(cfg).empty());
    cfg.trials = 1;
    cfg.suites = {"nope"};
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
    cfg.suites = {"all"};
    cfg.n = 1;
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
    cfg.n = 513;
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
}

TEST_CASE("reports round trip through CSV and JSON")
{
    SuiteConfig cfg;
    cfg.suites = {"sum-pos", "commutator"};
    cfg.n = 16;
    cfg.trials = 3;
    const auto reports = run_suite(cfg);

    std::vector<std::string> names;
    const auto samples = parse_csv_samples(to_csv(reports), &names);
    std::size_t i = 0;
    for (const auto& r : reports)
        for (const auto& s : r.samples) {
            REQUIRE(i < samples.size());
            CHECK(names[i] == r.check_name);
            CHECK(samples[i] == s);
            ++i;
        }
    CHECK(i == samples.size());

    const auto back = reports_from_json(nlohmann::json::parse(to_json(reports).dump()));
    REQUIRE(back.size() == reports.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        CHECK(back[k].check_name == reports[k].check_name);
        CHECK(back[k].worst_margin == reports[k].worst_margin);
        CHECK(back[k].runtime_ms == reports[k].runtime_ms);
        CHECK(back[k].samples == reports[k].samples);
    }
    CHECK_THROWS_AS(parse_csv_samples("bad header\n"), std::invalid_argument);
}
