#pragma once

// One checker per inequality. Each evaluates the quantity and its bound along
// independent code paths and records one Sample per evaluation point.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "specdet/matmodel.hpp"

namespace specdet {

struct Sample {
    std::uint64_t seed = 0;
    std::size_t trial = 0;
    std::size_t n = 0;
    double t_or_r = 0.0;
    double quantity = 0.0;
    double bound = 0.0;
    double margin = 0.0; // bound - quantity; the side with the smaller slack for two-sided checks
    bool pass = true;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct CheckReport {
    std::string check_name;
    std::uint64_t seed = 0; // master seed for suite runs, the trial seed for single checks
    std::size_t trials = 0;
    std::size_t n = 0;
    double worst_margin = 0.0;
    std::size_t violations = 0;
    bool pass = true;
    double runtime_ms = 0.0;
    std::vector<Sample> samples;
};

/// Identifies the draw a check runs on, and an optional tolerance override.
/// The override replaces the relative factor r in tol = r·(1 + |bound|).
struct CheckContext {
    std::uint64_t seed = 0;
    std::size_t trial = 0;
    std::optional<double> tol;
};

/// |∫_{2t}^{1-2t} (log μ(e^T e^S) - λ(T) - λ(S))| <= 8t(μ(t,T) + μ(t,S)), grid t < 1/4.
CheckReport check_main_product_lemma(const MatrixOperator& t, const MatrixOperator& s, const CheckContext& ctx = {});

/// -μ̃((1-u)/2,T) - μ̃((1-u)/2,S) <= log μ(u, e^T e^S) <= μ(u/2,T) + μ(u/2,S)
/// at cell midpoints and interior nodes.
CheckReport check_pointwise_product_bounds(const MatrixOperator& t, const MatrixOperator& s,
                                           const CheckContext& ctx = {});

/// ∫_0^t μ(T+S) <= ∫_0^t (μ(T) + μ(S)) <= ∫_0^{2t} μ(T+S), grid t <= 1/2, T, S >= 0.
CheckReport check_majorization(const MatrixOperator& t, const MatrixOperator& s, const CheckContext& ctx = {});

/// |Ψ(μ(T+S) - μ(T) - μ(S))(t)| <= 4μ(t, T+S), grid t < 1/2, T, S >= 0.
CheckReport check_sum_pos_bound(const MatrixOperator& t, const MatrixOperator& s, const CheckContext& ctx = {});

/// Threshold below which Ψ(λ(T) - μ(T₊) + μ(T₋)) must vanish:
/// min(t₀, 1 - t₀, 1 - s₊, 1 - s₋) with t₀ = s₊ = τ(supp T₊), s₋ = τ(supp T₋).
double tpm_threshold(const MatrixOperator& t);

/// sup_t |Ψ(λ(T) - μ(T₊) + μ(T₋))(t)| over the grid.
double tpm_sup(const MatrixOperator& t);

/// Ψ(λ(T) - μ(T₊) + μ(T₋)) vanishes (1e-10) below tpm_threshold and is at
/// most ‖λ(T) - μ(T₊) + μ(T₋)‖∞ (1-2t)/t above it.
CheckReport check_tpm_vanishing(const MatrixOperator& t, const CheckContext& ctx = {});

/// |Ψ(λ(T) + λ(S) - λ(T+S))(t)| <= 16μ(t, A) + C, A = (T+S)₊ + T₋ + S₋,
/// C = sum of tpm_sup over T, S, T+S; grid t < 1/2.
CheckReport check_sum_lemma_composite(const MatrixOperator& t, const MatrixOperator& s,
                                      const CheckContext& ctx = {});

/// |(1/r) τ(1_{[0,μ(r,T)]}(|T|) T) - (Ψλ(T))(r)| <= 2μ(r,T), grid r < 1/2.
CheckReport check_commutator_criterion(const MatrixOperator& t, const CheckContext& ctx = {});

/// μ(s+t, A+B) <= μ(s,A) + μ(t,B) and μ(s+t, AB) <= μ(s,A)μ(t,B), grid s, t > 0,
/// s + t < 1; one sample per level s + t carrying the worst pair.
CheckReport check_standard_inequalities(const MatrixOperator& a, const MatrixOperator& b,
                                        const CheckContext& ctx = {});

/// log(1 + μ(A+B)) and log(1 + μ(AB)) <= log((1 + D₂μ(A))(1 + D₂μ(B))) cell-wise.
CheckReport check_log_closure(const MatrixOperator& a, const MatrixOperator& b, const CheckContext& ctx = {});

/// |Δ(AB) - Δ(A)Δ(B)| <= 1e-9 Δ(A)Δ(B).
CheckReport check_fk_multiplicativity(const MatrixOperator& a, const MatrixOperator& b,
                                      const CheckContext& ctx = {});

/// Invertible A: |Δ_ε(A) - Δ(A)| <= 1e-6 Δ(A) at ε = 2^-30. Singular B:
/// Δ_ε(B) decreases along ε = 2^-k, k = 4..40, and ends below 1e-6.
CheckReport check_fk_eps_limit(const MatrixOperator& invertible, const MatrixOperator& singular,
                               const CheckContext& ctx = {});

/// Integral(1) on A equals τ(A) (1e-12); φ(UAU†) = φ(A) (1e-10);
/// the singular trace vanishes on μ(A).
CheckReport check_trace_layer(const MatrixOperator& a, const MatrixOperator& u, const CheckContext& ctx = {});

struct SuiteConfig {
    std::vector<std::string> suites{"all"};
    std::size_t n = 64;
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::optional<double> tol;
};

/// Suite names in run order.
const std::vector<std::string>& suite_names();

/// Per-trial seed: splitmix64 mixing of the master seed, FNV-1a of the suite
/// name and the trial index.
std::uint64_t trial_seed(std::uint64_t master, std::string_view suite, std::size_t trial);

/// One aggregated report per selected suite; trials run concurrently and are
/// merged in trial order. Throws std::invalid_argument on an unknown suite or
/// n outside [2, 512].
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

/// CSV with header check_name,seed,trial,n,t_or_r,quantity,bound,margin,pass;
/// numbers at 17 significant digits.
std::string to_csv(const std::vector<CheckReport>& reports);
std::vector<Sample> parse_csv_samples(std::string_view csv, std::vector<std::string>* names = nullptr);

nlohmann::json to_json(const std::vector<CheckReport>& reports);
std::vector<CheckReport> reports_from_json(const nlohmann::json& j);

} // namespace specdet
