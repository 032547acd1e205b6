#include "specdet/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "specdet/errors.hpp"
#include "specdet/kernels.hpp"

namespace specdet {

namespace {

// Boundary snapping: t*n within a few ulps of an integer is that boundary.
bool near_integer(double x, double& r)
{
    r = std::nearbyint(x);
    return std::abs(x - r) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
}

} // namespace

GridFn::GridFn(std::vector<double> values, Continuity conv)
    : values_(std::move(values)), conv_(conv)
{
    if (values_.empty())
        throw std::invalid_argument("GridFn: need at least one cell");
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (!std::isfinite(values_[k]))
            throw std::invalid_argument("GridFn: non-finite value in cell " + std::to_string(k));
}

GridFn GridFn::constant(double c, std::size_t cells)
{
    return GridFn(std::vector<double>(cells, c));
}

GridFn GridFn::sample(const std::function<double(double)>& f, std::size_t cells)
{
    std::vector<double> v(cells);
    for (std::size_t k = 0; k < cells; ++k)
        v[k] = f((static_cast<double>(k) + 0.5) / static_cast<double>(cells));
    return GridFn(std::move(v));
}

std::size_t GridFn::cell_index(double t) const
{
    const std::size_t n = values_.size();
    const double x = t * static_cast<double>(n);
    if (x <= 0.0)
        return 0;
    if (x >= static_cast<double>(n))
        return n - 1;
    double r = 0.0;
    if (near_integer(x, r)) {
        const auto k = static_cast<std::size_t>(r);
        if (k == 0)
            return 0;
        if (k >= n)
            return n - 1;
        return conv_ == Continuity::Right ? k : k - 1;
    }
    return std::min(static_cast<std::size_t>(std::floor(x)), n - 1);
}

double GridFn::operator()(double t) const
{
    return values_[cell_index(t)];
}

GridFn GridFn::refine(std::size_t factor) const
{
    if (factor == 0)
        throw std::invalid_argument("GridFn::refine: factor must be positive");
    std::vector<double> v;
    v.reserve(values_.size() * factor);
    for (double x : values_)
        v.insert(v.end(), factor, x);
    return GridFn(std::move(v), conv_);
}

bool GridFn::is_nonincreasing() const noexcept
{
    return std::adjacent_find(values_.begin(), values_.end(), std::less<>{}) == values_.end();
}

double GridFn::sup_abs() const noexcept
{
    double m = 0.0;
    for (double x : values_)
        m = std::max(m, std::abs(x));
    return m;
}

MonotoneStepFn::MonotoneStepFn(std::vector<double> values, Continuity conv)
    : MonotoneStepFn(GridFn(std::move(values), conv))
{
}

MonotoneStepFn::MonotoneStepFn(GridFn f) : GridFn(std::move(f))
{
    if (!is_nonincreasing())
        throw std::invalid_argument("MonotoneStepFn: values must be nonincreasing");
}

MonotoneStepFn decreasing_rearrangement(const GridFn& f)
{
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v)
        x = std::abs(x);
    std::stable_sort(v.begin(), v.end(), std::greater<>{});
    return MonotoneStepFn(std::move(v), Continuity::Right);
}

MonotoneStepFn left_continuous_version(const MonotoneStepFn& f)
{
    return MonotoneStepFn(std::vector<double>(f.values().begin(), f.values().end()), Continuity::Left);
}

double integrate(const GridFn& f, double a, double b)
{
    if (!(a <= b))
        throw std::invalid_argument("integrate: need a <= b");
    if (a < 0.0 || b > 1.0)
        throw std::invalid_argument("integrate: limits must lie in [0, 1]");
    const std::size_t n = f.cells();
    const double dn = static_cast<double>(n);
    const double x = a * dn;
    const double y = b * dn;
    if (x == y)
        return 0.0;
    const auto first = std::min(static_cast<std::size_t>(std::floor(x)), n - 1);
    const auto last = std::min(static_cast<std::size_t>(std::ceil(y)), n);
    double sum = 0.0;
    for (std::size_t k = first; k < last; ++k) {
        const double lo = std::max(x, static_cast<double>(k));
        const double hi = std::min(y, static_cast<double>(k + 1));
        if (hi > lo)
            sum += f.cell(k) * (hi - lo);
    }
    return sum / dn;
}

double integrate(const GridFn& f)
{
    double sum = 0.0;
    for (double x : f.values())
        sum += x;
    return sum / static_cast<double>(f.cells());
}

double psi_at(const GridFn& f, double t)
{
    if (!(t > 0.0))
        throw std::invalid_argument("psi_at: t must be positive");
    if (t >= 0.5)
        return 0.0;
    return integrate(f, t, 1.0 - t) / t;
}

GridFn psi_transform(const GridFn& f)
{
    std::vector<double> nodes = kernels::parallel::psi_nodes(f);
    // nodes[k-1] = Ψf(k/n) for k = 1..n-1; the last node t = 1 gives 0.
    nodes.push_back(0.0);
    return GridFn(std::move(nodes), Continuity::Left);
}

GridFn dilate2(const GridFn& f)
{
    const std::size_t n = f.cells();
    std::vector<double> v(n);
    // Output cell j covers (j/n, (j+1)/n); t/2 then lies in input cell j/2.
    for (std::size_t j = 0; j < n; ++j)
        v[j] = f.cell(j / 2);
    return GridFn(std::move(v), f.continuity());
}

GridFn pointwise_map(const GridFn& f, UnaryMap map)
{
    std::vector<double> v(f.values().begin(), f.values().end());
    for (std::size_t k = 0; k < v.size(); ++k) {
        double& x = v[k];
        switch (map.op) {
        case UnaryOp::Log:
            if (!(x > 0.0))
                throw DomainError("log of nonpositive value in cell " + std::to_string(k), k);
            x = std::log(x);
            break;
        case UnaryOp::LogPlus:
            if (x < 0.0)
                throw DomainError("log+ of negative value in cell " + std::to_string(k), k);
            x = x > 1.0 ? std::log(x) : 0.0;
            break;
        case UnaryOp::LogMinus:
            if (!(x > 0.0))
                throw DomainError("log- of nonpositive value in cell " + std::to_string(k), k);
            x = x < 1.0 ? -std::log(x) : 0.0;
            break;
        case UnaryOp::Abs: x = std::abs(x); break;
        case UnaryOp::Exp: x = std::exp(x); break;
        case UnaryOp::MinConst: x = std::min(x, map.c); break;
        case UnaryOp::Scale: x = map.c * x; break;
        case UnaryOp::Shift: x = x + map.c; break;
        case UnaryOp::Log1p:
            if (x <= -1.0)
                throw DomainError("log1p of value <= -1 in cell " + std::to_string(k), k);
            x = std::log1p(x);
            break;
        case UnaryOp::PositivePart: x = std::max(x, 0.0); break;
        case UnaryOp::NegativePart: x = std::max(-x, 0.0); break;
        }
    }
    return GridFn(std::move(v), f.continuity());
}

GridFn pointwise_map(const GridFn& f, const GridFn& g, BinaryOp op)
{
    const std::size_t n = std::lcm(f.cells(), g.cells());
    const GridFn a = f.refine(n / f.cells());
    const GridFn b = g.refine(n / g.cells());
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        switch (op) {
        case BinaryOp::Add: v[k] = a.cell(k) + b.cell(k); break;
        case BinaryOp::Sub: v[k] = a.cell(k) - b.cell(k); break;
        case BinaryOp::Mul: v[k] = a.cell(k) * b.cell(k); break;
        }
    }
    return GridFn(std::move(v), f.continuity());
}

GridFn operator+(const GridFn& f, const GridFn& g) { return pointwise_map(f, g, BinaryOp::Add); }
GridFn operator-(const GridFn& f, const GridFn& g) { return pointwise_map(f, g, BinaryOp::Sub); }
GridFn operator*(const GridFn& f, const GridFn& g) { return pointwise_map(f, g, BinaryOp::Mul); }
GridFn operator*(double c, const GridFn& f) { return pointwise_map(f, {UnaryOp::Scale, c}); }

} // namespace specdet
