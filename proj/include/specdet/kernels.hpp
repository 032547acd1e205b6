#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` that the tests compare against and the benchmarks time.

#include <cstddef>
#include <span>
#include <vector>

#include "specdet/stepfn.hpp"

namespace specdet::kernels {

/// Thread cap from SPECDET_THREADS (unset or invalid: OpenMP default).
int thread_cap();

/// Worst slack of the sum and product inequalities over all grid pairs (i, j), i, j >= 1, at one level i + j.
struct LevelMargin {
    std::size_t level = 0;    // i + j, so the point is s + t = level / n
    double quantity = 0.0;    // μ(s+t, X) for the worst pair
    double bound = 0.0;       // μ(s,A)+μ(t,B) or μ(s,A)·μ(t,B)
    double margin = 0.0;      // bound - quantity, minimum over pairs and both inequalities
};

namespace serial {

/// Ψf at nodes k/n, k = 1..n-1, each integral evaluated independently.
std::vector<double> psi_nodes(const GridFn& f);

/// Sum and product inequality slack per level, for singular values sorted descending.
std::vector<LevelMargin> standard_inequality_levels(std::span<const double> mu_a,
                                                    std::span<const double> mu_b,
                                                    std::span<const double> mu_sum,
                                                    std::span<const double> mu_prod);

} // namespace serial

namespace parallel {

/// Prefix-sum form of serial::psi_nodes, OpenMP over nodes.
std::vector<double> psi_nodes(const GridFn& f);

/// OpenMP over levels; identical arithmetic per pair as the serial version.
std::vector<LevelMargin> standard_inequality_levels(std::span<const double> mu_a,
                                                    std::span<const double> mu_b,
                                                    std::span<const double> mu_sum,
                                                    std::span<const double> mu_prod);

} // namespace parallel

} // namespace specdet::kernels
