#include "specdet/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "specdet/kernels.hpp"
#include "specdet/stepfn.hpp"
#include "specdet/traces.hpp"

namespace specdet {

namespace {

constexpr double kDefaultRel = 1e-8;
constexpr double kMajorizationRel = 1e-10;
constexpr double kVanishingAbs = 1e-10;

class Recorder {
public:
    Recorder(std::string name, std::size_t n, const CheckContext& ctx, double default_rel)
        : ctx_(ctx), rel_(ctx.tol.value_or(default_rel)), start_(std::chrono::steady_clock::now())
    {
        rep_.check_name = std::move(name);
        rep_.seed = ctx.seed;
        rep_.trials = 1;
        rep_.n = n;
        rep_.worst_margin = std::numeric_limits<double>::infinity();
    }

    double rel() const { return rel_; }

    /// Records bound - quantity against tol = rel·(1 + |bound|).
    void add(double t, double quantity, double bound) { add_abs(t, quantity, bound, rel_ * (1.0 + std::abs(bound))); }

    void add_abs(double t, double quantity, double bound, double tol)
    {
        const double margin = bound - quantity;
        const bool ok = margin >= -tol;
        rep_.samples.push_back({ctx_.seed, ctx_.trial, rep_.n, t, quantity, bound, margin, ok});
        rep_.worst_margin = std::min(rep_.worst_margin, margin);
        if (!ok) {
            ++rep_.violations;
            rep_.pass = false;
        }
    }

    /// Two inequalities at one point; keeps the side with the smaller slack.
    void add_two_sided(double t, double lo, double q, double hi)
    {
        const double tol_lo = rel_ * (1.0 + std::abs(lo));
        const double tol_hi = rel_ * (1.0 + std::abs(hi));
        if (hi - q <= q - lo)
            add_abs(t, q, hi, tol_hi);
        else
            // lo <= q recorded as (-q) <= (-lo) so margin stays bound - quantity.
            add_abs(t, -q, -lo, tol_lo);
    }

    CheckReport finish()
    {
        if (rep_.samples.empty())
            rep_.worst_margin = 0.0;
        rep_.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        return std::move(rep_);
    }

private:
    CheckReport rep_;
    const CheckContext& ctx_;
    double rel_;
    std::chrono::steady_clock::time_point start_;
};

void require_same_dim(const MatrixOperator& a, const MatrixOperator& b, const char* who)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(who) + ": dimensions differ");
}

void require_sa(const MatrixOperator& a, const char* who)
{
    if (!a.is_self_adjoint())
        throw std::invalid_argument(std::string(who) + ": operator is not self-adjoint");
}

void require_psd(const MatrixOperator& a, const char* who)
{
    require_sa(a, who);
    const auto ev = a.eigenvalues();
    const double floor = -1e-12 * std::max(1.0, a.norm());
    if (!ev.empty() && ev.back() < floor)
        throw std::invalid_argument(std::string(who) + ": operator is not positive semidefinite");
}

double node(std::size_t k, std::size_t n) { return static_cast<double>(k) / static_cast<double>(n); }

GridFn log_mu_product_exp(const MatrixOperator& t, const MatrixOperator& s)
{
    return pointwise_map(mu(exp_sa(t) * exp_sa(s)), UnaryMap{UnaryOp::Log});
}

// Ψ(λ(T) - μ(T₊) + μ(T₋)); the parts go through functional calculus and a
// fresh decomposition, not the eigenvalues λ is read from.
std::vector<double> tpm_nodes(const MatrixOperator& t)
{
    const GridFn h = lambda(t) - mu(positive_part(t)) + mu(negative_part(t));
    return kernels::parallel::psi_nodes(h);
}

double tpm_sup_norm(const MatrixOperator& t)
{
    return (lambda(t) - mu(positive_part(t)) + mu(negative_part(t))).sup_abs();
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

CheckReport check_main_product_lemma(const MatrixOperator& t, const MatrixOperator& s, const CheckContext& ctx)
{
    require_same_dim(t, s, "main-product");
    require_sa(t, "main-product");
    require_sa(s, "main-product");
    const std::size_t n = t.dim();
    Recorder rec("main-product", n, ctx, kDefaultRel);

    const GridFn integrand = log_mu_product_exp(t, s) - lambda(t) - lambda(s);
    const MonotoneStepFn mt = mu(t);
    const MonotoneStepFn ms = mu(s);
    for (std::size_t k = 1; 4 * k < n; ++k) {
        const double x = node(k, n);
        const double lhs = std::abs(integrate(integrand, 2.0 * x, 1.0 - 2.0 * x));
        rec.add(x, lhs, 8.0 * x * (mt(x) + ms(x)));
    }
    return rec.finish();
}

CheckReport check_pointwise_product_bounds(const MatrixOperator& t, const MatrixOperator& s,
                                           const CheckContext& ctx)
{
    require_same_dim(t, s, "pointwise-product");
    require_sa(t, "pointwise-product");
    require_sa(s, "pointwise-product");
    const std::size_t n = t.dim();
    Recorder rec("pointwise-product", n, ctx, kDefaultRel);

    const GridFn q = log_mu_product_exp(t, s);
    const MonotoneStepFn mt = mu(t);
    const MonotoneStepFn ms = mu(s);
    const MonotoneStepFn mt_left = left_continuous_version(mt);
    const MonotoneStepFn ms_left = left_continuous_version(ms);

    auto point = [&](double u) {
        const double hi = mt(u / 2.0) + ms(u / 2.0);
        const double lo = -mt_left((1.0 - u) / 2.0) - ms_left((1.0 - u) / 2.0);
        rec.add_two_sided(u, lo, q(u), hi);
    };
    for (std::size_t k = 0; k < n; ++k) {
        point((static_cast<double>(k) + 0.5) / static_cast<double>(n));
        if (k + 1 < n)
            point(node(k + 1, n));
    }
    return rec.finish();
}

CheckReport check_majorization(const MatrixOperator& t, const MatrixOperator& s, const CheckContext& ctx)
{
    require_same_dim(t, s, "majorization");
    require_psd(t, "majorization");
    require_psd(s, "majorization");
    const std::size_t n = t.dim();
    Recorder rec("majorization", n, ctx, kMajorizationRel);

    const MonotoneStepFn sum = mu(t + s);
    const GridFn parts = mu(t) + mu(s);
    for (std::size_t k = 1; 2 * k <= n; ++k) {
        const double x = node(k, n);
        rec.add_two_sided(x, integrate(sum, 0.0, x), integrate(parts, 0.0, x), integrate(sum, 0.0, 2.0 * x));
    }
    return rec.finish();
}

CheckReport check_sum_pos_bound(const MatrixOperator& t, const MatrixOperator& s, const CheckContext& ctx)
{
    require_same_dim(t, s, "sum-pos");
    require_psd(t, "sum-pos");
    require_psd(s, "sum-pos");
    const std::size_t n = t.dim();
    Recorder rec("sum-pos", n, ctx, kDefaultRel);

    const MonotoneStepFn sum = mu(t + s);
    const auto g = kernels::parallel::psi_nodes(sum - mu(t) - mu(s));
    for (std::size_t k = 1; 2 * k < n; ++k) {
        const double x = node(k, n);
        rec.add(x, std::abs(g[k - 1]), 4.0 * sum(x));
    }
    return rec.finish();
}

double tpm_threshold(const MatrixOperator& t)
{
    require_sa(t, "tpm_threshold");
    const auto ev = t.eigenvalues();
    const double zero = static_cast<double>(t.dim()) * std::numeric_limits<double>::epsilon() * t.norm();
    const auto pos = std::count_if(ev.begin(), ev.end(), [&](double x) { return x > zero; });
    const auto neg = std::count_if(ev.begin(), ev.end(), [&](double x) { return x < -zero; });
    const double n = static_cast<double>(t.dim());
    const double t0 = static_cast<double>(pos) / n;
    const double s_minus = static_cast<double>(neg) / n;
    return std::min({t0, 1.0 - t0, 1.0 - s_minus});
}

double tpm_sup(const MatrixOperator& t)
{
    const auto g = tpm_nodes(t);
    double sup = 0.0;
    for (double v : g)
        sup = std::max(sup, std::abs(v));
    return sup;
}

CheckReport check_tpm_vanishing(const MatrixOperator& t, const CheckContext& ctx)
{
    require_sa(t, "tpm-vanishing");
    const std::size_t n = t.dim();
    Recorder rec("tpm-vanishing", n, ctx, kDefaultRel);

    const auto g = tpm_nodes(t);
    const double t_star = tpm_threshold(t);
    const double h_sup = tpm_sup_norm(t);
    // A semidefinite T has t* = 0 here but λ = μ(T₊) - μ(T₋) exactly, so Ψ of
    // the difference vanishes everywhere.
    const auto ev = t.eigenvalues();
    const bool degenerate = ev.empty() || ev.front() <= 0.0 || ev.back() >= 0.0;
    for (std::size_t k = 1; 2 * k < n; ++k) {
        const double x = node(k, n);
        const double q = std::abs(g[k - 1]);
        if (degenerate || x < t_star)
            rec.add_abs(x, q, 0.0, kVanishingAbs);
        else
            rec.add(x, q, h_sup * (1.0 - 2.0 * x) / x);
    }
    return rec.finish();
}

CheckReport check_sum_lemma_composite(const MatrixOperator& t, const MatrixOperator& s, const CheckContext& ctx)
{
    require_same_dim(t, s, "sum-composite");
    require_sa(t, "sum-composite");
    require_sa(s, "sum-composite");
    const std::size_t n = t.dim();
    Recorder rec("sum-composite", n, ctx, kDefaultRel);

    const MatrixOperator ts = t + s;
    const auto g = kernels::parallel::psi_nodes(lambda(t) + lambda(s) - lambda(ts));
    const MonotoneStepFn mu_a = mu(positive_part(ts) + negative_part(t) + negative_part(s));
    const double c = tpm_sup(t) + tpm_sup(s) + tpm_sup(ts);
    for (std::size_t k = 1; 2 * k < n; ++k) {
        const double x = node(k, n);
        rec.add(x, std::abs(g[k - 1]), 16.0 * mu_a(x) + c);
    }
    return rec.finish();
}

CheckReport check_commutator_criterion(const MatrixOperator& t, const CheckContext& ctx)
{
    require_sa(t, "commutator");
    const std::size_t n = t.dim();
    Recorder rec("commutator", n, ctx, kDefaultRel);

    const MonotoneStepFn mt = mu(t);
    const auto psi_lambda = kernels::parallel::psi_nodes(lambda(t));
    const CMatrix& tm = t.entries();
    for (std::size_t k = 1; 2 * k < n; ++k) {
        const double r = node(k, n);
        const double level = mt(r);
        const MatrixOperator p = abs_spectral_projection(t, level);
        // τ(PT) = (1/n) Σ_ij P_ij T_ji.
        const std::complex<double> tr = p.entries().cwiseProduct(tm.transpose()).sum() / static_cast<double>(n);
        rec.add(r, std::abs(tr.real() / r - psi_lambda[k - 1]), 2.0 * level);
    }
    return rec.finish();
}

CheckReport check_standard_inequalities(const MatrixOperator& a, const MatrixOperator& b, const CheckContext& ctx)
{
    require_same_dim(a, b, "standard-inequalities");
    const std::size_t n = a.dim();
    Recorder rec("standard-inequalities", n, ctx, kDefaultRel);

    const MatrixOperator sum = a + b;
    const MatrixOperator prod = a * b;
    const auto levels = kernels::parallel::standard_inequality_levels(a.singular_values(), b.singular_values(),
                                                                      sum.singular_values(), prod.singular_values());
    for (const auto& lv : levels)
        rec.add(node(lv.level, n), lv.quantity, lv.bound);
    return rec.finish();
}

CheckReport check_log_closure(const MatrixOperator& a, const MatrixOperator& b, const CheckContext& ctx)
{
    require_same_dim(a, b, "log-closure");
    const std::size_t n = a.dim();
    Recorder rec("log-closure", n, ctx, kDefaultRel);

    const GridFn sum_side = pointwise_map(mu(a + b), UnaryMap{UnaryOp::Log1p});
    const GridFn prod_side = pointwise_map(mu(a * b), UnaryMap{UnaryOp::Log1p});
    const GridFn one = GridFn::constant(1.0, n);
    const GridFn bound_fn =
        pointwise_map((one + dilate2(mu(a))) * (one + dilate2(mu(b))), UnaryMap{UnaryOp::Log});
    for (std::size_t k = 0; k < n; ++k) {
        const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        const double bound = bound_fn.cell(k);
        const double q = std::max(sum_side.cell(k), prod_side.cell(k));
        rec.add(u, q, bound);
    }
    return rec.finish();
}

CheckReport check_fk_multiplicativity(const MatrixOperator& a, const MatrixOperator& b, const CheckContext& ctx)
{
    require_same_dim(a, b, "fk-multiplicativity");
    Recorder rec("fk-multiplicativity", a.dim(), ctx, 0.0);
    const double da = fk_det(a);
    const double db = fk_det(b);
    const double dab = fk_det(a * b);
    const double prod = da * db;
    const double rel = prod > 0.0 ? std::abs(dab - prod) / prod : (dab == 0.0 ? 0.0 : 1.0);
    rec.add_abs(0.0, rel, 1e-9, 0.0);
    return rec.finish();
}

CheckReport check_fk_eps_limit(const MatrixOperator& invertible, const MatrixOperator& singular,
                               const CheckContext& ctx)
{
    require_same_dim(invertible, singular, "fk-eps-limit");
    Recorder rec("fk-eps-limit", invertible.dim(), ctx, 0.0);

    const double eps30 = std::ldexp(1.0, -30);
    const double d = fk_det(invertible);
    rec.add_abs(eps30, std::abs(fk_det_eps(invertible, eps30) - d), 1e-6 * d, 0.0);

    // Monotone decrease: each step may not rise; the worst rise is recorded
    // against a zero bound.
    double prev = fk_det_eps(singular, std::ldexp(1.0, -4));
    double worst_rise = -std::numeric_limits<double>::infinity();
    for (int k = 5; k <= 40; ++k) {
        const double cur = fk_det_eps(singular, std::ldexp(1.0, -k));
        worst_rise = std::max(worst_rise, cur - prev);
        prev = cur;
    }
    rec.add_abs(std::ldexp(1.0, -4), worst_rise, 0.0, 0.0);
    rec.add_abs(std::ldexp(1.0, -40), prev, 1e-6, 0.0);
    return rec.finish();
}

CheckReport check_trace_layer(const MatrixOperator& a, const MatrixOperator& u, const CheckContext& ctx)
{
    require_same_dim(a, u, "trace-layer");
    require_sa(a, "trace-layer");
    Recorder rec("trace-layer", a.dim(), ctx, 0.0);

    const TraceFunctional tau1 = TraceFunctional::integral(1.0);
    const double phi_a = eval_on_operator(tau1, a);
    rec.add_abs(0.0, std::abs(phi_a - a.tau().real()), 1e-12, 0.0);

    const MatrixOperator conj(u.entries() * a.entries() * u.entries().adjoint());
    const MatrixOperator conj_sa((conj.entries() + conj.entries().adjoint()) * 0.5);
    rec.add_abs(0.0, std::abs(eval_on_operator(tau1, conj_sa) - phi_a), 1e-10, 0.0);

    rec.add_abs(0.0, std::abs(eval_functional(TraceFunctional::singular(), mu(a))), 0.0, 0.0);
    return rec.finish();
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{
        "main-product",          "pointwise-product", "majorization",        "sum-pos",
        "tpm-vanishing",         "sum-composite",     "commutator",          "standard-inequalities",
        "log-closure",           "fk-multiplicativity", "fk-eps-limit",      "trace-layer",
    };
    return names;
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view suite, std::size_t trial)
{
    return splitmix64(splitmix64(splitmix64(master) ^ fnv1a(suite)) ^ static_cast<std::uint64_t>(trial));
}

namespace {

MatrixOperator hermitian(std::size_t n, std::uint64_t seed)
{
    return sample({Ensemble::HermitianGaussian, n, 1.0, seed, {}});
}

MatrixOperator ginibre(std::size_t n, std::uint64_t seed)
{
    return sample({Ensemble::IidComplexGaussian, n, 1.0, seed, {}});
}

// Rank floor(n/4): Ginibre times a diagonal projection.
MatrixOperator low_rank(std::size_t n, std::uint64_t seed)
{
    std::vector<double> d(n, 0.0);
    std::fill(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n / 4), 1.0);
    return ginibre(n, seed) * MatrixOperator::diagonal(d);
}

CheckReport run_one(const std::string& name, std::size_t n, const CheckContext& ctx)
{
    const std::uint64_t s1 = ctx.seed;
    const std::uint64_t s2 = splitmix64(ctx.seed + 1);
    if (name == "main-product")
        return check_main_product_lemma(hermitian(n, s1), hermitian(n, s2), ctx);
    if (name == "pointwise-product")
        return check_pointwise_product_bounds(hermitian(n, s1), hermitian(n, s2), ctx);
    if (name == "majorization")
        return check_majorization(sample_positive(n, 1.0, s1), sample_positive(n, 1.0, s2), ctx);
    if (name == "sum-pos")
        return check_sum_pos_bound(sample_positive(n, 1.0, s1), sample_positive(n, 1.0, s2), ctx);
    if (name == "tpm-vanishing")
        return check_tpm_vanishing(hermitian(n, s1), ctx);
    if (name == "sum-composite")
        return check_sum_lemma_composite(hermitian(n, s1), hermitian(n, s2), ctx);
    if (name == "commutator")
        return check_commutator_criterion(hermitian(n, s1), ctx);
    if (name == "standard-inequalities")
        return check_standard_inequalities(ginibre(n, s1), ginibre(n, s2), ctx);
    if (name == "log-closure")
        return check_log_closure(ginibre(n, s1), ginibre(n, s2), ctx);
    if (name == "fk-multiplicativity")
        return check_fk_multiplicativity(ginibre(n, s1), ginibre(n, s2), ctx);
    if (name == "fk-eps-limit")
        return check_fk_eps_limit(ginibre(n, s1), low_rank(n, s2), ctx);
    if (name == "trace-layer")
        return check_trace_layer(hermitian(n, s1), haar_unitary(n, s2), ctx);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<std::string> expand(const std::vector<std::string>& requested)
{
    std::vector<std::string> out;
    for (const auto& s : requested) {
        if (s == "all") {
            for (const auto& name : suite_names())
                if (std::find(out.begin(), out.end(), name) == out.end())
                    out.push_back(name);
            continue;
        }
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw std::invalid_argument("unknown suite '" + s + "'");
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    }
    return out;
}

} // namespace

std::vector<CheckReport> run_suite(const SuiteConfig& cfg)
{
    if (cfg.n < 2 || cfg.n > 512)
        throw std::invalid_argument("n must lie in [2, 512]");
    const auto names = expand(cfg.suites);
    std::vector<CheckReport> out;
    if (cfg.trials == 0)
        return out;

    for (const auto& name : names) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<CheckReport> per_trial(cfg.trials);
        const auto trials = static_cast<long>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::thread_cap())
        for (long i = 0; i < trials; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const CheckContext ctx{trial_seed(cfg.seed, name, idx), idx, cfg.tol};
            per_trial[idx] = run_one(name, cfg.n, ctx);
        }

        CheckReport agg;
        agg.check_name = name;
        agg.seed = cfg.seed;
        agg.trials = cfg.trials;
        agg.n = cfg.n;
        agg.worst_margin = std::numeric_limits<double>::infinity();
        for (auto& r : per_trial) {
            agg.worst_margin = std::min(agg.worst_margin, r.worst_margin);
            agg.violations += r.violations;
            agg.samples.insert(agg.samples.end(), r.samples.begin(), r.samples.end());
        }
        if (agg.samples.empty())
            agg.worst_margin = 0.0;
        agg.pass = agg.violations == 0;
        agg.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(agg));
    }
    return out;
}

namespace {

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s)
{
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
        throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

} // namespace

std::string to_csv(const std::vector<CheckReport>& reports)
{
    std::ostringstream os;
    os << "check_name,seed,trial,n,t_or_r,quantity,bound,margin,pass\n";
    for (const auto& r : reports)
        for (const auto& s : r.samples)
            os << r.check_name << ',' << s.seed << ',' << s.trial << ',' << s.n << ',' << fmt(s.t_or_r) << ','
               << fmt(s.quantity) << ',' << fmt(s.bound) << ',' << fmt(s.margin) << ','
               << (s.pass ? "true" : "false") << '\n';
    return os.str();
}

std::vector<Sample> parse_csv_samples(std::string_view csv, std::vector<std::string>* names)
{
    std::istringstream is{std::string(csv)};
    std::string line;
    if (!std::getline(is, line) || line != "check_name,seed,trial,n,t_or_r,quantity,bound,margin,pass")
        throw std::invalid_argument("CSV: missing or unexpected header");
    std::vector<Sample> out;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            f.push_back(cell);
        if (f.size() != 9)
            throw std::invalid_argument("CSV: expected 9 fields in '" + line + "'");
        if (names)
            names->push_back(f[0]);
        Sample s;
        s.seed = std::stoull(f[1]);
        s.trial = std::stoull(f[2]);
        s.n = std::stoull(f[3]);
        s.t_or_r = parse_double(f[4]);
        s.quantity = parse_double(f[5]);
        s.bound = parse_double(f[6]);
        s.margin = parse_double(f[7]);
        if (f[8] != "true" && f[8] != "false")
            throw std::invalid_argument("CSV: pass must be true or false");
        s.pass = f[8] == "true";
        out.push_back(s);
    }
    return out;
}

nlohmann::json to_json(const std::vector<CheckReport>& reports)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& s : r.samples)
            samples.push_back({{"seed", s.seed},
                               {"trial", s.trial},
                               {"n", s.n},
                               {"t_or_r", s.t_or_r},
                               {"quantity", s.quantity},
                               {"bound", s.bound},
                               {"margin", s.margin},
                               {"pass", s.pass}});
        arr.push_back({{"check_name", r.check_name},
                       {"seed", r.seed},
                       {"trials", r.trials},
                       {"n", r.n},
                       {"worst_margin", r.worst_margin},
                       {"violations", r.violations},
                       {"pass", r.pass},
                       {"runtime_ms", r.runtime_ms},
                       {"samples", samples}});
    }
    return {{"reports", arr}};
}

std::vector<CheckReport> reports_from_json(const nlohmann::json& j)
{
    std::vector<CheckReport> out;
    for (const auto& jr : j.at("reports")) {
        CheckReport r;
        r.check_name = jr.at("check_name").get<std::string>();
        r.seed = jr.at("seed").get<std::uint64_t>();
        r.trials = jr.at("trials").get<std::size_t>();
        r.n = jr.at("n").get<std::size_t>();
        r.worst_margin = jr.at("worst_margin").get<double>();
        r.violations = jr.at("violations").get<std::size_t>();
        r.pass = jr.at("pass").get<bool>();
        r.runtime_ms = jr.at("runtime_ms").get<double>();
        for (const auto& js : jr.at("samples"))
            r.samples.push_back({js.at("seed").get<std::uint64_t>(), js.at("trial").get<std::size_t>(),
                                 js.at("n").get<std::size_t>(), js.at("t_or_r").get<double>(),
                                 js.at("quantity").get<double>(), js.at("bound").get<double>(),
                                 js.at("margin").get<double>(), js.at("pass").get<bool>()});
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace specdet
