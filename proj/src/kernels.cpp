#include "specdet/kernels.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specdet::kernels {

int thread_cap()
{
    if (const char* env = std::getenv("SPECDET_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<int>(v);
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b,
                   std::span<const double> s, std::span<const double> p)
{
    if (a.size() != b.size() || a.size() != s.size() || a.size() != p.size())
        throw std::invalid_argument("standard_inequality_levels: grids differ in size");
}

LevelMargin level_margin(std::size_t m, std::span<const double> mu_a, std::span<const double> mu_b,
                         std::span<const double> mu_sum, std::span<const double> mu_prod)
{
    LevelMargin out;
    out.level = m;
    out.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < m; ++i) {
        const std::size_t j = m - i;
        const double add_bound = mu_a[i] + mu_b[j];
        const double mul_bound = mu_a[i] * mu_b[j];
        const double add_margin = add_bound - mu_sum[m];
        const double mul_margin = mul_bound - mu_prod[m];
        if (add_margin < out.margin) {
            out = {m, mu_sum[m], add_bound, add_margin};
        }
        if (mul_margin < out.margin) {
            out = {m, mu_prod[m], mul_bound, mul_margin};
        }
    }
    return out;
}

} // namespace

namespace serial {

std::vector<double> psi_nodes(const GridFn& f)
{
    const std::size_t n = f.cells();
    std::vector<double> out(n > 0 ? n - 1 : 0, 0.0);
    for (std::size_t k = 1; k < n; ++k)
        out[k - 1] = psi_at(f, static_cast<double>(k) / static_cast<double>(n));
    return out;
}

std::vector<LevelMargin> standard_inequality_levels(std::span<const double> mu_a,
                                                    std::span<const double> mu_b,
                                                    std::span<const double> mu_sum,
                                                    std::span<const double> mu_prod)
{
    check_lengths(mu_a, mu_b, mu_sum, mu_prod);
    const std::size_t n = mu_a.size();
    std::vector<LevelMargin> out;
    for (std::size_t m = 2; m < n; ++m)
        out.push_back(level_margin(m, mu_a, mu_b, mu_sum, mu_prod));
    return out;
}

} // namespace serial

namespace parallel {

std::vector<double> psi_nodes(const GridFn& f)
{
    const std::size_t n = f.cells();
    const auto v = f.values();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        prefix[k + 1] = prefix[k] + v[k];

    std::vector<double> out(n > 0 ? n - 1 : 0, 0.0);
    const auto last = static_cast<long>(n) - 1;
    // Ψf(k/n) = (1/t) ∫_{k/n}^{1-k/n} f = (prefix[n-k] - prefix[k]) / k, for 2k < n.
#pragma omp parallel for schedule(static) num_threads(thread_cap())
    for (long k = 1; k <= last; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (2 * ku < n)
            out[ku - 1] = (prefix[n - ku] - prefix[ku]) / static_cast<double>(ku);
    }
    return out;
}

std::vector<LevelMargin> standard_inequality_levels(std::span<const double> mu_a,
                                                    std::span<const double> mu_b,
                                                    std::span<const double> mu_sum,
                                                    std::span<const double> mu_prod)
{
    check_lengths(mu_a, mu_b, mu_sum, mu_prod);
    const std::size_t n = mu_a.size();
    if (n < 3)
        return {};
    std::vector<LevelMargin> out(n - 2);
    const auto levels = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_cap())
    for (long m = 2; m < levels; ++m)
        out[static_cast<std::size_t>(m) - 2] =
            level_margin(static_cast<std::size_t>(m), mu_a, mu_b, mu_sum, mu_prod);
    return out;
}

} // namespace parallel

} // namespace specdet::kernels
