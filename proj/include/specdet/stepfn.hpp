#pragma once

// Exact calculus of piecewise-constant functions on (0,1).
//
// A GridFn with n cells holds one value per cell ((k-1)/n, k/n). Integrals
// are sums of cell areas, so no quadrature error enters any check built on
// top of this header.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace specdet {

/// Which one-sided limit a step function takes at an interior cell boundary.
enum class Continuity { Right, Left };

class GridFn {
public:
    explicit GridFn(std::vector<double> values, Continuity conv = Continuity::Right);

    static GridFn constant(double c, std::size_t cells = 1);
    /// Samples `f` at cell midpoints.
    static GridFn sample(const std::function<double(double)>& f, std::size_t cells);

    std::size_t cells() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double cell(std::size_t k) const { return values_.at(k); }
    Continuity continuity() const noexcept { return conv_; }

    /// Value at t. Interior boundaries k/n resolve per the continuity flag;
    /// t <= 0 and t >= 1 clamp to the first and last cell.
    double operator()(double t) const;

    /// Index of the cell whose value `operator()(t)` returns.
    std::size_t cell_index(double t) const;

    /// Same function on a grid `factor` times finer.
    GridFn refine(std::size_t factor) const;

    bool is_nonincreasing() const noexcept;
    double sup_abs() const noexcept;

    friend bool operator==(const GridFn&, const GridFn&) = default;

protected:
    std::vector<double> values_;
    Continuity conv_;
};

/// Nonincreasing step function: the home of μ(A) and λ(A).
class MonotoneStepFn : public GridFn {
public:
    explicit MonotoneStepFn(std::vector<double> values, Continuity conv = Continuity::Right);
    explicit MonotoneStepFn(GridFn f);
};

MonotoneStepFn decreasing_rearrangement(const GridFn& f);

/// Same values, left-continuous convention: f~(x) = lim_{t -> x-} f(t).
MonotoneStepFn left_continuous_version(const MonotoneStepFn& f);

/// Exact integral over (a, b), 0 <= a <= b <= 1.
double integrate(const GridFn& f, double a, double b);
double integrate(const GridFn& f);

/// (Ψf)(t) = (1/t) ∫_t^{1-t} f for 0 < t < 1/2, and 0 for t >= 1/2.
double psi_at(const GridFn& f, double t);

/// Ψf at the grid nodes: cell k (0-based) carries (Ψf)((k+1)/n), under the
/// left-continuous convention, so evaluating the result at a node k/n is exact.
GridFn psi_transform(const GridFn& f);

/// (D₂f)(t) = f(t/2).
GridFn dilate2(const GridFn& f);

enum class UnaryOp {
    Log,
    LogPlus,  // max(log x, 0)
    LogMinus, // -min(log x, 0)
    Abs,
    Exp,
    MinConst, // min(x, c)
    Scale,    // c * x
    Shift,    // x + c
    Log1p,
    PositivePart,
    NegativePart,
};

struct UnaryMap {
    UnaryOp op;
    double c = 0.0;
};

enum class BinaryOp { Add, Sub, Mul };

/// Cell-wise map. Log/LogMinus of a nonpositive cell throws DomainError with
/// that cell's index; LogPlus of 0 is 0.
GridFn pointwise_map(const GridFn& f, UnaryMap map);

/// Cell-wise binary map; operands on different grids are refined to the
/// least common grid first. The result keeps `f`'s continuity flag.
GridFn pointwise_map(const GridFn& f, const GridFn& g, BinaryOp op);

GridFn operator+(const GridFn& f, const GridFn& g);
GridFn operator-(const GridFn& f, const GridFn& g);
GridFn operator*(const GridFn& f, const GridFn& g);
GridFn operator*(double c, const GridFn& f);

} // namespace specdet
