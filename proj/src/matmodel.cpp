#include "specdet/matmodel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

constexpr double kHermitianRelTol = 1e-12;
constexpr double kHermitianAbsFloor = 1e-300;

std::vector<std::size_t> descending_order(const Eigen::VectorXd& v)
{
    std::vector<std::size_t> idx(static_cast<std::size_t>(v.size()));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return v(static_cast<Eigen::Index>(i)) > v(static_cast<Eigen::Index>(j));
    });
    return idx;
}

// (M + M†)/2 is Hermitian bit-for-bit: each entry pair is formed by the
// same commutative additions.
CMatrix exact_hermitian(const CMatrix& m)
{
    CMatrix h = (m + m.adjoint()) * 0.5;
    return h;
}

std::complex<double> complex_normal(std::mt19937_64& rng, double sigma)
{
    std::normal_distribution<double> nd(0.0, sigma / std::sqrt(2.0));
    const double re = nd(rng);
    const double im = nd(rng);
    return {re, im};
}

CMatrix ginibre(std::size_t n, double scale, std::mt19937_64& rng)
{
    const auto m = static_cast<Eigen::Index>(n);
    CMatrix g(m, m);
    const double sigma = scale / std::sqrt(static_cast<double>(n));
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
            g(i, j) = complex_normal(rng, sigma);
    return g;
}

std::vector<double> spectrum_or_uniform(const EnsembleSpec& spec, std::mt19937_64& rng)
{
    if (!spec.spectrum.empty()) {
        if (spec.spectrum.size() != spec.n)
            throw std::invalid_argument("sample: spectrum length must equal n");
        return spec.spectrum;
    }
    std::uniform_real_distribution<double> ud(-spec.scale, spec.scale);
    std::vector<double> s(spec.n);
    for (double& x : s)
        x = ud(rng);
    return s;
}

CMatrix haar(std::size_t n, std::mt19937_64& rng)
{
    const CMatrix g = ginibre(n, 1.0, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const std::complex<double> d = r(k, k);
        const double a = std::abs(d);
        if (a > 0.0)
            q.col(k) *= d / a;
    }
    return q;
}

void require_self_adjoint(const MatrixOperator& t, const char* who)
{
    if (!t.is_self_adjoint())
        throw std::invalid_argument(std::string(who) + ": operator is not self-adjoint");
}

} // namespace

MatrixOperator::MatrixOperator(CMatrix entries) : entries_(std::move(entries))
{
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
        throw std::invalid_argument("MatrixOperator: need a nonempty square matrix");
    if (!entries_.allFinite())
        throw std::invalid_argument("MatrixOperator: non-finite entry");

    defect_ = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();

    std::vector<double> svd_values;
    double norm = 0.0;
    if (defect_ > 0.0) {
        Eigen::BDCSVD<CMatrix> svd(entries_);
        const Eigen::VectorXd& s = svd.singularValues();
        for (std::size_t i : descending_order(s))
            svd_values.push_back(s(static_cast<Eigen::Index>(i)));
        norm = svd_values.front();
    }
    self_adjoint_ = defect_ == 0.0 || defect_ <= std::max(kHermitianRelTol * norm, kHermitianAbsFloor);

    if (self_adjoint_) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("MatrixOperator: eigendecomposition failed");
        const Eigen::VectorXd& ev = es.eigenvalues();
        const auto order = descending_order(ev);
        eigvecs_.resize(entries_.rows(), entries_.cols());
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto src = static_cast<Eigen::Index>(order[k]);
            eigen_.push_back(ev(src));
            eigvecs_.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(src);
        }
        singular_.resize(eigen_.size());
        std::transform(eigen_.begin(), eigen_.end(), singular_.begin(), [](double x) { return std::abs(x); });
        std::stable_sort(singular_.begin(), singular_.end(), std::greater<>{});
    } else {
        singular_ = std::move(svd_values);
    }
}

MatrixOperator MatrixOperator::identity(std::size_t n)
{
    const auto m = static_cast<Eigen::Index>(n);
    return MatrixOperator(CMatrix::Identity(m, m));
}

MatrixOperator MatrixOperator::diagonal(std::span<const double> diag)
{
    const auto m = static_cast<Eigen::Index>(diag.size());
    CMatrix d = CMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
        d(k, k) = diag[static_cast<std::size_t>(k)];
    return MatrixOperator(std::move(d));
}

std::span<const double> MatrixOperator::eigenvalues() const
{
    if (!self_adjoint_)
        throw std::logic_error("eigenvalues: operator is not self-adjoint");
    return eigen_;
}

const CMatrix& MatrixOperator::eigenvectors() const
{
    if (!self_adjoint_)
        throw std::logic_error("eigenvectors: operator is not self-adjoint");
    return eigvecs_;
}

std::complex<double> MatrixOperator::tau() const
{
    return entries_.trace() / static_cast<double>(dim());
}

MatrixOperator MatrixOperator::adjoint() const
{
    return MatrixOperator(entries_.adjoint());
}

MatrixOperator operator+(const MatrixOperator& a, const MatrixOperator& b)
{
    return MatrixOperator(a.entries() + b.entries());
}

MatrixOperator operator-(const MatrixOperator& a, const MatrixOperator& b)
{
    return MatrixOperator(a.entries() - b.entries());
}

MatrixOperator operator*(const MatrixOperator& a, const MatrixOperator& b)
{
    return MatrixOperator(a.entries() * b.entries());
}

MatrixOperator operator*(double c, const MatrixOperator& a)
{
    return MatrixOperator(c * a.entries());
}

MonotoneStepFn mu(const MatrixOperator& a)
{
    const auto s = a.singular_values();
    return MonotoneStepFn(std::vector<double>(s.begin(), s.end()));
}

MonotoneStepFn lambda(const MatrixOperator& a)
{
    require_self_adjoint(a, "lambda");
    const auto e = a.eigenvalues();
    return MonotoneStepFn(std::vector<double>(e.begin(), e.end()));
}

MonotoneStepFn mu_positive_part(const MatrixOperator& a)
{
    require_self_adjoint(a, "mu_positive_part");
    std::vector<double> v;
    for (double x : a.eigenvalues())
        v.push_back(std::max(x, 0.0));
    return MonotoneStepFn(std::move(v));
}

MonotoneStepFn mu_negative_part(const MatrixOperator& a)
{
    require_self_adjoint(a, "mu_negative_part");
    const auto e = a.eigenvalues();
    std::vector<double> v;
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        v.push_back(std::max(-*it, 0.0));
    return MonotoneStepFn(std::move(v));
}

std::pair<double, double> spectral_window(const MonotoneStepFn& lam, double a, double b)
{
    const std::size_t n = lam.cells();
    const double dn = static_cast<double>(n);
    double c = 1.0;
    for (std::size_t k = 0; k < n; ++k)
        if (lam.cell(k) <= b) {
            c = static_cast<double>(k) / dn;
            break;
        }
    double d = 0.0;
    for (std::size_t k = n; k-- > 0;)
        if (lam.cell(k) >= a) {
            d = static_cast<double>(k + 1) / dn;
            break;
        }
    return {c, d};
}

MatrixOperator functional_calculus(const MatrixOperator& t, const std::function<double(double)>& f)
{
    require_self_adjoint(t, "functional_calculus");
    const auto e = t.eigenvalues();
    Eigen::VectorXd fv(static_cast<Eigen::Index>(e.size()));
    for (std::size_t k = 0; k < e.size(); ++k)
        fv(static_cast<Eigen::Index>(k)) = f(e[k]);
    const CMatrix& v = t.eigenvectors();
    return MatrixOperator(exact_hermitian(v * fv.asDiagonal() * v.adjoint()));
}

MatrixOperator positive_part(const MatrixOperator& t)
{
    return functional_calculus(t, [](double x) { return std::max(x, 0.0); });
}

MatrixOperator negative_part(const MatrixOperator& t)
{
    return functional_calculus(t, [](double x) { return std::max(-x, 0.0); });
}

MatrixOperator exp_sa(const MatrixOperator& t)
{
    return functional_calculus(t, [](double x) { return std::exp(x); });
}

MatrixOperator log_sa(const MatrixOperator& t)
{
    require_self_adjoint(t, "log_sa");
    const auto e = t.eigenvalues();
    for (std::size_t k = 0; k < e.size(); ++k)
        if (!(e[k] > 0.0))
            throw DomainError("log_sa: operator is not positive definite", k);
    return functional_calculus(t, [](double x) { return std::log(x); });
}

MatrixOperator spectral_projection(const MatrixOperator& t, double a, double b)
{
    return functional_calculus(t, [a, b](double x) { return (a <= x && x <= b) ? 1.0 : 0.0; });
}

MatrixOperator abs_spectral_projection(const MatrixOperator& t, double c)
{
    return functional_calculus(t, [c](double x) { return std::abs(x) <= c ? 1.0 : 0.0; });
}

MatrixOperator polar_abs(const MatrixOperator& a)
{
    Eigen::BDCSVD<CMatrix> svd(a.entries(), Eigen::ComputeThinV);
    const CMatrix& v = svd.matrixV();
    return MatrixOperator(exact_hermitian(v * svd.singularValues().asDiagonal() * v.adjoint()));
}

MatrixOperator truncate_at_level(const MatrixOperator& t, double c)
{
    if (!(c >= 0.0))
        throw std::invalid_argument("truncate_at_level: level must be nonnegative");
    return functional_calculus(t, [c](double x) { return std::clamp(x, -c, c); });
}

double fk_det(const MatrixOperator& a)
{
    double sum = 0.0;
    for (double s : a.singular_values()) {
        if (s == 0.0)
            return 0.0;
        sum += std::log(s);
    }
    return std::exp(sum / static_cast<double>(a.dim()));
}

double fk_det_eps(const MatrixOperator& a, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("fk_det_eps: eps must be positive");
    double sum = 0.0;
    for (double s : a.singular_values())
        sum += std::log(s + eps);
    return std::exp(sum / static_cast<double>(a.dim()));
}

bool has_kernel(const MatrixOperator& a)
{
    const auto s = a.singular_values();
    const double cutoff = static_cast<double>(a.dim()) * std::numeric_limits<double>::epsilon() * a.norm();
    return s.back() <= cutoff;
}

MatrixOperator sample(const EnsembleSpec& spec)
{
    if (spec.n < 1)
        throw std::invalid_argument("sample: n must be at least 1");
    if (!(spec.scale > 0.0))
        throw std::invalid_argument("sample: scale must be positive");
    std::mt19937_64 rng(spec.seed);
    switch (spec.kind) {
    case Ensemble::IidComplexGaussian:
        return MatrixOperator(ginibre(spec.n, spec.scale, rng));
    case Ensemble::HermitianGaussian: {
        const CMatrix g = ginibre(spec.n, spec.scale, rng);
        CMatrix h = (g + g.adjoint()) / std::sqrt(2.0);
        return MatrixOperator(std::move(h));
    }
    case Ensemble::DiagonalSpectrum: {
        const auto s = spectrum_or_uniform(spec, rng);
        return MatrixOperator::diagonal(s);
    }
    case Ensemble::HaarUnitaryConjugate: {
        const auto s = spectrum_or_uniform(spec, rng);
        const CMatrix u = haar(spec.n, rng);
        Eigen::VectorXd d(static_cast<Eigen::Index>(s.size()));
        for (std::size_t k = 0; k < s.size(); ++k)
            d(static_cast<Eigen::Index>(k)) = s[k];
        return MatrixOperator(exact_hermitian(u * d.asDiagonal() * u.adjoint()));
    }
    }
    throw std::invalid_argument("sample: unknown ensemble");
}

MatrixOperator haar_unitary(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return MatrixOperator(haar(n, rng));
}

MatrixOperator sample_positive(std::size_t n, double scale, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const CMatrix g = ginibre(n, scale, rng);
    return MatrixOperator(exact_hermitian(g * g.adjoint()));
}

void write_matrix(std::ostream& os, const MatrixOperator& a)
{
    const auto& m = a.entries();
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << m.rows() << '\n' << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0)
                os << ' ';
            os << m(i, j).real() << ',' << m(i, j).imag();
        }
        os << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

MatrixOperator read_matrix(std::istream& is)
{
    long long n = 0;
    if (!(is >> n) || n < 1)
        throw std::invalid_argument("read_matrix: first line must be a positive dimension");
    const auto m = static_cast<Eigen::Index>(n);
    CMatrix a(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            std::string tok;
            if (!(is >> tok))
                throw std::invalid_argument("read_matrix: expected " + std::to_string(n * n) + " entries");
            const auto comma = tok.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("read_matrix: entry '" + tok + "' is not re,im");
            try {
                std::size_t used_re = 0;
                std::size_t used_im = 0;
                const std::string re = tok.substr(0, comma);
                const std::string im = tok.substr(comma + 1);
                const double x = std::stod(re, &used_re);
                const double y = std::stod(im, &used_im);
                if (used_re != re.size() || used_im != im.size())
                    throw std::invalid_argument("trailing characters");
                a(i, j) = {x, y};
            } catch (const std::exception&) {
                throw std::invalid_argument("read_matrix: entry '" + tok + "' is not re,im");
            }
        }
    return MatrixOperator(std::move(a));
}

} // namespace specdet
