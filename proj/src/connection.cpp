#include "heun/connection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "heun/richardson.hpp"
#include "heun/special_functions.hpp"

namespace heun {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::CF: return "cf";
        case Method::Recurrence: return "recurrence";
        case Method::SchafkeSchmidt: return "ss";
        case Method::Wronskian: return "wronskian";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "cf") return Method::CF;
    if (name == "recurrence") return Method::Recurrence;
    if (name == "ss" || name == "schafke-schmidt") return Method::SchafkeSchmidt;
    if (name == "wronskian") return Method::Wronskian;
    fail(ErrorKind::DomainError, "unknown method '" + std::string(name) + "'");
}

double ConnectionMatrix::det_residual() const { return std::abs(det() + spec.theta0 / spec.theta1); }

namespace {

constexpr double kBreakdown = 1e-14;
constexpr double kBranchCoupling = 0.3;
constexpr long kMinSeedDepth = 64;
constexpr long kDefaultSchafkeSchmidtK = 1L << 14;

Complex log1p_c(Complex x) {
    const Complex u = 1.0 + x;
    if (u == Complex(1.0)) return x;
    return std::log(u) * x / (u - 1.0);
}

ComplexHP log1p_c(const ComplexHP& x) { return log(ComplexHP(1.0) + x); }

void check_gate(const EquationSpec& spec, const RouteOptions& opts) {
    if (opts.allow_strong_coupling) return;
    const double lam = std::abs(spec.lambda);
    if (spec.family == Family::Heun && lam >= 1.0)
        fail(ErrorKind::DomainError, "|lambda| >= 1 outside the weak-coupling gate (override to proceed)");
    if ((spec.family == Family::RCHE || spec.family == Family::CHE) && lam > 0.9)
        fail(ErrorKind::DomainError, "|lambda| > 0.9 outside the weak-coupling gate (override to proceed)");
}

Precision route_precision(const RouteOptions& opts, Precision fallback) {
    return opts.precision ? *opts.precision : precision_from_env(fallback);
}

void require_reachable(double tol, Precision p) {
    if (!(tol >= 10.0 * unit_roundoff(p))) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", tol);
        fail(ErrorKind::SlowConvergence, "tolerance " + std::string(buf) + " below the " +
                                             std::string(to_string(p)) + " precision floor");
    }
}

double noise_floor(Precision p, long K) { return 100.0 * unit_roundoff(p) * std::sqrt(static_cast<double>(K)); }

// Ladder K_top / 2^j, j = levels..0, ascending.
std::vector<long> ladder(long k_top, int levels) {
    std::vector<long> ks;
    for (int j = levels; j >= 0; --j) ks.push_back(k_top >> j);
    return ks;
}

template <class Cx>
struct EtaStep {
    const CoefficientSequence<Cx>& seq;
    Cx lambda;
    bool branch_watch;

    // x_k = eta_k - 1 from x_{k+1}
    Cx operator()(long k, const Cx& x_next, const AlphaBeta<Cx>& ab_k, const AlphaBeta<Cx>& ab_km1) const {
        const Cx eta = Cx(1.0) - lambda * ab_km1.alpha - lambda * ab_k.beta / (Cx(1.0) + x_next);
        if (magnitude(eta) < kBreakdown) fail(ErrorKind::CFBreakdown, "eta_" + std::to_string(k) + " vanishes");
        if (branch_watch && to_complex(eta).real() <= 0.0)
            fail(ErrorKind::BranchAmbiguity, "eta_" + std::to_string(k) + " crosses the branch cut of ln");
        return eta - Cx(1.0);
    }
};

// x_{k_start} from the unit seed placed depth steps above.
template <class Cx>
Cx eta_minus_one(const CoefficientSequence<Cx>& seq, const Cx& lambda, long k_start, long depth, bool watch) {
    EtaStep<Cx> step{seq, lambda, watch};
    Cx x(0.0);
    AlphaBeta<Cx> ab_k = seq(k_start + depth);
    for (long k = k_start + depth - 1; k >= k_start; --k) {
        AlphaBeta<Cx> ab_km1 = seq(k - 1);
        AlphaBeta<Cx> ab_kk = seq(k);
        x = step(k, x, ab_kk, ab_km1);
        ab_k = ab_kk;
    }
    return x;
}

// Seed depth doubled until x_{k_top + 1} is stable to roundoff.
template <class Cx>
long stable_seed_depth(const CoefficientSequence<Cx>& seq, const Cx& lambda, long k_top, long max_depth) {
    long d = kMinSeedDepth;
    Cx prev = eta_minus_one(seq, lambda, k_top + 1, d, false);
    while (d < max_depth) {
        Cx next = eta_minus_one(seq, lambda, k_top + 1, 2 * d, false);
        const bool stable = magnitude(Cx(next - prev)) <= 4.0 * unit_roundoff(precision_of<Cx>());
        d *= 2;
        prev = next;
        if (stable) break;
    }
    return d;
}

// Partial sums sum_{k=k_lo}^{K} ln eta_k for each K in ks (ascending) from one backward sweep.
template <class Cx>
std::vector<Cx> eta_partial_sums(const EquationSpec& spec, long k_lo, const std::vector<long>& ks, long seed_depth) {
    CoefficientSequence<Cx> seq(spec);
    const Cx lambda = seq.lambda();
    const bool watch = std::abs(spec.lambda) > kBranchCoupling;
    EtaStep<Cx> step{seq, lambda, watch};
    const long k_top = ks.back();
    const long k_seed = k_top + seed_depth;

    std::vector<Cx> suffix_at(ks.size(), Cx(0.0));  // sum_{k = ks[j]+1}^{k_top}
    Cx suffix(0.0);
    Cx x(0.0);
    AlphaBeta<Cx> ab_k = seq(k_seed);
    std::size_t next_mark = ks.size() - 1;
    for (long k = k_seed; k >= k_lo; --k) {
        AlphaBeta<Cx> ab_km1 = seq(k - 1);
        x = step(k, x, ab_k, ab_km1);
        ab_k = ab_km1;
        if (k <= k_top) {
            while (next_mark < ks.size() && ks[next_mark] == k) {
                suffix_at[next_mark] = suffix;
                next_mark = next_mark == 0 ? ks.size() : next_mark - 1;
            }
            suffix += log1p_c(x);
        }
    }
    std::vector<Cx> sums(ks.size());
    for (std::size_t j = 0; j < ks.size(); ++j) sums[j] = suffix - suffix_at[j];
    return sums;
}

template <class Cx>
Extrapolation<Complex> extrapolate(const std::vector<Cx>& samples, double floor) {
    auto ex = richardson(samples, 2.0, floor);
    return {to_complex(ex.value), ex.error, ex.contracted};
}

// Outer driver: the ladder top doubles until successive extrapolations agree.
template <class Sampler>
Estimate drive_ladder(Sampler&& sample, long k_start, int levels, double tol, long max_depth, Precision p,
                      const char* what) {
    long k_top = k_start;
    std::optional<Complex> prev;
    while (true) {
        Extrapolation<Complex> ex = sample(k_top);
        const double scale = std::max(1.0, std::abs(ex.value));
        const double target = std::max(tol * scale, noise_floor(p, k_top) * scale);
        if (prev) {
            const double diff = std::abs(ex.value - *prev);
            if (diff <= target && ex.error <= target) return {ex.value, std::max(diff, ex.error), k_top};
        }
        if (2 * k_top > max_depth)
            fail(ErrorKind::NonConvergence, std::string(what) + " did not stabilise by depth " + std::to_string(max_depth));
        prev = ex.value;
        k_top *= 2;
        (void)levels;
    }
}

template <class Cx>
Extrapolation<Complex> cf_sample(const EquationSpec& spec, long k_top, int levels, long max_depth) {
    CoefficientSequence<Cx> seq(spec);
    const long seed = stable_seed_depth(seq, seq.lambda(), k_top, max_depth);
    auto sums = eta_partial_sums<Cx>(spec, 1, ladder(k_top, levels), seed);
    return extrapolate(sums, noise_floor(precision_of<Cx>(), k_top));
}

template <class Cx>
std::vector<Cx> recurrence_samples(const EquationSpec& spec, long k_first, const Cx& a_prev, const Cx& a_first,
                                   const std::vector<long>& ks) {
    CoefficientSequence<Cx> seq(spec);
    const Cx lambda = seq.lambda();
    std::vector<Cx> out;
    Cx prev = a_prev, cur = a_first;
    std::size_t mark = 0;
    for (long k = k_first;; ++k) {
        while (mark < ks.size() && ks[mark] == k) {
            out.push_back(cur);
            ++mark;
        }
        if (mark == ks.size()) break;
        auto ab = seq(k);
        Cx next = cur - lambda * (ab.alpha * cur + ab.beta * prev);
        prev = cur;
        cur = next;
    }
    return out;
}

template <class Cx>
Extrapolation<Complex> recurrence_sample(const EquationSpec& spec, long k_top, int levels) {
    auto samples = recurrence_samples<Cx>(spec, 0, Cx(0.0), Cx(1.0), ladder(k_top, levels));
    return extrapolate(samples, noise_floor(precision_of<Cx>(), k_top));
}

int clamp_levels(long K, int levels) {
    int l = std::max(0, levels);
    while (l > 0 && (K >> l) < 8) --l;
    return l;
}

bool is_zero_coupling(const EquationSpec& spec) { return spec.lambda == Complex(0.0); }

}  // namespace

Complex eta_tail(const EquationSpec& spec, long k_start, long depth) {
    if (depth < 1) fail(ErrorKind::DomainError, "eta_tail depth must be >= 1");
    CoefficientSequence<Complex> seq(spec);
    const bool watch = std::abs(spec.lambda) > kBranchCoupling;
    return 1.0 + eta_minus_one(seq, seq.lambda(), k_start, depth, watch);
}

Complex log_eta_partial_sum(const EquationSpec& spec, long K, long seed_depth) {
    validate(spec);
    return eta_partial_sums<Complex>(spec, 1, {K}, seed_depth).back();
}

Estimate log_a_infinity_cf(const EquationSpec& spec, const RouteOptions& opts) {
    validate(spec);
    check_gate(spec, opts);
    if (is_zero_coupling(spec)) return {0.0, 0.0, 0};
    const Precision p = route_precision(opts, Precision::Double);
    require_reachable(opts.tol, p);
    const int levels = std::max(1, opts.levels);
    const long k_start = std::min<long>(512L << levels, opts.max_depth);
    auto sampler = [&](long k_top) {
        return p == Precision::Double ? cf_sample<Complex>(spec, k_top, levels, opts.max_depth)
                                      : cf_sample<ComplexHP>(spec, k_top, levels, opts.max_depth);
    };
    Estimate est = drive_ladder(sampler, k_start, levels, opts.tol, opts.max_depth, p, "continued fraction");
    if (spec.family == Family::Heun) est.value -= std::log(1.0 - spec.lambda);
    return est;
}

Estimate a_infinity_recurrence(const EquationSpec& spec, long K, const RouteOptions& opts) {
    validate(spec);
    check_gate(spec, opts);
    if (is_zero_coupling(spec)) return {1.0, 0.0, K};
    const Precision p = route_precision(opts, Precision::Double);
    require_reachable(opts.tol, p);
    if (K <= 0) {
        const int levels = std::max(1, opts.levels);
        auto sampler = [&](long k_top) {
            return p == Precision::Double ? recurrence_sample<Complex>(spec, k_top, levels)
                                          : recurrence_sample<ComplexHP>(spec, k_top, levels);
        };
        return drive_ladder(sampler, std::min<long>(512L << levels, opts.max_depth), levels, opts.tol, opts.max_depth,
                            p, "recurrence");
    }
    if (K < 10) fail(ErrorKind::DomainError, "recurrence requires K >= 10");
    const int levels = clamp_levels(K, opts.levels);
    auto ex = p == Precision::Double ? recurrence_sample<Complex>(spec, K, levels)
                                     : recurrence_sample<ComplexHP>(spec, K, levels);
    const double scale = std::max(1.0, std::abs(ex.value));
    if (ex.error > std::max(opts.tol * scale, noise_floor(p, K) * scale))
        fail(ErrorKind::NonConvergence, "recurrence error estimate " + std::to_string(ex.error) + " above tolerance at K=" +
                                            std::to_string(K));
    return {ex.value, ex.error, K};
}

Complex fusion_cl(Complex theta0, Complex theta1, Complex w) {
    const Complex s = 0.5 + theta1 - theta0;
    return std::exp(sf::log_gamma(1.0 - 2.0 * theta0) + sf::log_gamma(2.0 * theta1) - sf::log_gamma(s + w) -
                    sf::log_gamma(s - w));
}

Complex a_infinity_prefactor(const EquationSpec& spec) {
    switch (spec.family) {
        case Family::Hypergeometric:
        case Family::RCHE: return 1.0;
        case Family::CHE: return std::exp(spec.lambda / 2.0);
        case Family::Heun: return std::pow(1.0 - spec.lambda, 0.5 - *spec.theta_t);
    }
    return 1.0;
}

Estimate connection_scalar(const EquationSpec& spec, Method method, const RouteOptions& opts) {
    validate(spec);
    const Complex fcl = fusion_cl(spec.theta0, spec.theta1, spec.accessory());
    switch (method) {
        case Method::CF: {
            Estimate la = log_a_infinity_cf(spec, opts);
            const Complex c = fcl * a_infinity_prefactor(spec) * std::exp(la.value);
            return {c, std::abs(c) * la.error, la.depth};
        }
        case Method::Recurrence: {
            Estimate a = a_infinity_recurrence(spec, opts.K, opts);
            const Complex pre = fcl * a_infinity_prefactor(spec);
            return {pre * a.value, std::abs(pre) * a.error, a.depth};
        }
        case Method::SchafkeSchmidt: {
            const long K = opts.K > 0 ? opts.K : kDefaultSchafkeSchmidtK;
            return schafke_schmidt_connection(spec, K, opts.levels, route_precision(opts, Precision::High));
        }
        case Method::Wronskian: {
            ConnectionMatrix m = wronskian_connection(spec, opts.z_probe, opts.K);
            return {m.entries[0][0], m.err_estimate, m.depth_or_K};
        }
    }
    fail(ErrorKind::DomainError, "unknown method");
}

ConnectionMatrix connection_matrix(const EquationSpec& spec, Method method, const RouteOptions& opts) {
    validate(spec);
    ConnectionMatrix m;
    if (method == Method::Wronskian) {
        m = wronskian_connection(spec, opts.z_probe, opts.K);
    } else {
        m.spec = spec;
        m.method = method;
        m.precision = route_precision(opts, method == Method::SchafkeSchmidt ? Precision::High : Precision::Double);
        for (Sign e : {Sign::Plus, Sign::Minus})
            for (Sign f : {Sign::Plus, Sign::Minus}) {
                const EquationSpec s = spec.with_thetas(sign_value(e) * spec.theta0, sign_value(f) * spec.theta1);
                Estimate est = connection_scalar(s, method, opts);
                m(e, f) = est.value;
                m.err_estimate = std::max(m.err_estimate, est.error);
                m.depth_or_K = std::max(m.depth_or_K, est.depth);
            }
    }
    const double tol = std::max(opts.tol, m.err_estimate);
    if (m.det_residual() > 100.0 * tol)
        fail(ErrorKind::DetCheckFailed, "|det C + theta0/theta1| = " + std::to_string(m.det_residual()));
    return m;
}

ConnectionMatrix wronskian_connection(const EquationSpec& spec, Complex z_probe, long K) {
    validate(spec);
    auto build = [&](Point p, Sign s) {
        return K > 0 ? frobenius_series(spec, p, s, static_cast<int>(K))
                     : frobenius_series_adaptive(spec, p, s, z_probe, 1e-17);
    };
    const FrobeniusSolution zero[2] = {build(Point::Zero, Sign::Plus), build(Point::Zero, Sign::Minus)};
    const FrobeniusSolution one[2] = {build(Point::One, Sign::Plus), build(Point::One, Sign::Minus)};
    for (const auto& f : {zero[0], zero[1], one[0], one[1]}) {
        const double x = std::abs(f.point() == Point::Zero ? z_probe : z_probe - 1.0);
        if (x >= f.radius()) fail(ErrorKind::RadiusError, "probe point outside the disc of convergence");
    }
    ConnectionMatrix m;
    m.spec = spec;
    m.method = Method::Wronskian;
    m.precision = Precision::Double;
    double tail = 0.0;
    long terms = 0;
    for (int e = 0; e < 2; ++e)
        for (int f = 0; f < 2; ++f) {
            const double ef = f == 0 ? 1.0 : -1.0;
            m.entries[e][f] = -wronskian(zero[e], one[1 - f], z_probe) / (2.0 * ef * spec.theta1);
        }
    for (const auto& f : {zero[0], zero[1], one[0], one[1]}) {
        tail = std::max(tail, f.tail_tol(z_probe));
        terms = std::max<long>(terms, static_cast<long>(f.coefficients().size()) - 1);
    }
    double cmax = 0.0;
    for (auto& row : m.entries)
        for (auto& c : row) cmax = std::max(cmax, std::abs(c));
    m.err_estimate = std::max(tail, 1e-15) * std::max(1.0, cmax) * 10.0;
    m.depth_or_K = terms;
    return m;
}

namespace {

template <class Cx>
Extrapolation<Complex> schafke_schmidt_sample(const EquationSpec& spec, long K, int levels) {
    CanonicalRecurrence<Cx> rec(spec);
    const std::vector<long> ks = ladder(K, levels);
    const Cx expo = to_scalar<Cx>(1.0 - 2.0 * spec.theta1);
    std::vector<Cx> samples;
    Cx prev(0.0), cur(1.0);
    std::size_t mark = 0;
    for (long k = 0; mark < ks.size(); ++k) {
        if (ks[mark] == k) {
            samples.push_back(cur * pow(Cx(static_cast<double>(k)), expo));
            ++mark;
            if (mark == ks.size()) break;
        }
        Cx next = rec.step(k, cur, prev);
        prev = cur;
        cur = next;
    }
    return extrapolate(samples, 0.0);
}

}  // namespace

Estimate schafke_schmidt_connection(const EquationSpec& spec, long K, int levels, Precision precision) {
    validate(spec);
    if (std::abs(2.0 * spec.theta1.real()) >= 4.0)
        fail(ErrorKind::DomainError, "|Re 2 theta1| too large for large-order extrapolation");
    levels = clamp_levels(K, levels);
    auto ex = precision == Precision::Double ? schafke_schmidt_sample<Complex>(spec, K, levels)
                                             : schafke_schmidt_sample<ComplexHP>(spec, K, levels);
    const Complex pre = sf::gamma(2.0 * spec.theta1) * a_infinity_prefactor(spec);
    if (!ex.contracted)
        fail(ErrorKind::SlowConvergence, "large-order extrapolation table does not contract at K=" + std::to_string(K));
    return {pre * ex.value, std::abs(pre) * ex.error, K};
}

std::array<double, 2> monodromy_residuals(const ConnectionMatrix& m, Complex sigma) {
    using std::numbers::pi;
    const Complex t0 = m.spec.theta0, t1 = m.spec.theta1;
    const Complex denom = std::sin(2.0 * pi * t0) * std::sin(2.0 * pi * t1);
    auto rhs = [&](Complex a) {
        return -(t0 / t1) * std::cos(pi * (a + sigma)) * std::cos(pi * (a - sigma)) / denom;
    };
    const Complex p1 = m.entries[0][0] * m.entries[1][1];
    const Complex p2 = m.entries[0][1] * m.entries[1][0];
    const Complex r1 = rhs(t1 - t0), r2 = rhs(t1 + t0);
    auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
    return {rel(p1, r1), rel(p2, r2)};
}

Complex extract_sigma(const ConnectionMatrix& m, double tol) {
    using std::numbers::pi;
    const Complex i(0.0, 1.0);
    const auto& c = m.entries;
    const Complex e1 = std::exp(2.0 * pi * i * m.spec.theta1), e0 = std::exp(2.0 * pi * i * m.spec.theta0);
    // Tr(C diag(e1, 1/e1) adj C diag(e0, 1/e0)), adj C = [[d, -b], [-c, a]]
    const Complex a = c[0][0], b = c[0][1], cc = c[1][0], d = c[1][1];
    const Complex tr = e0 * (a * e1 * d - b / e1 * cc) + (1.0 / e0) * (-cc * e1 * b + d / e1 * a);
    const Complex cos2ps = -tr / (2.0 * m.det());
    Complex sigma = std::acos(cos2ps) / (2.0 * pi);
    if (std::abs(sigma.imag()) <= 1e-10) {
        double s = std::fmod(std::abs(sigma.real()), 1.0);
        if (s > 0.5) s = 1.0 - s;
        sigma = s;
    } else {
        if (sigma.imag() < 0.0) sigma = -sigma;
        sigma -= std::floor(sigma.real());
    }
    auto res = monodromy_residuals(m, sigma);
    if (std::max(res[0], res[1]) > tol)
        fail(ErrorKind::MonodromyInconsistent, "product relation residuals " + std::to_string(res[0]) + ", " +
                                                   std::to_string(res[1]));
    return sigma;
}

Complex sigma_near(Complex sigma, Complex ref) {
    Complex best = sigma;
    double dist = INFINITY;
    for (Complex s : {sigma, -sigma}) {
        const Complex cand = s + std::round((ref - s).real());
        if (std::abs(cand - ref) < dist) {
            dist = std::abs(cand - ref);
            best = cand;
        }
    }
    return best;
}

ToeplitzTail toeplitz_tail(const EquationSpec& spec, long N, const RouteOptions& opts) {
    validate(spec);
    check_gate(spec, opts);
    const int levels = std::max(1, opts.levels + 1);
    const long k_top = N << (levels + 1);
    const Precision p = route_precision(opts, Precision::Double);

    // restarted recurrence: samples at N * 2^{j+1}
    std::vector<long> ks;
    for (int j = 1; j <= levels + 1; ++j) ks.push_back(N << j);
    auto tail_run = [&]<class Cx>(Cx) {
        auto d = recurrence_samples<Cx>(spec, N, Cx(0.0), Cx(1.0), ks);
        CoefficientSequence<Cx> seq(spec);
        const long seed = stable_seed_depth(seq, seq.lambda(), k_top, opts.max_depth);
        auto s = eta_partial_sums<Cx>(spec, N + 1, ks, seed);
        return std::pair{extrapolate(d, 0.0), extrapolate(s, 0.0)};
    };
    auto [d, s] = p == Precision::Double ? tail_run(Complex{}) : tail_run(ComplexHP{});
    ToeplitzTail out;
    out.d_tail = d.value;
    out.log_eta_tail = s.value;
    out.d_infinity = d.value * std::exp(-s.value);
    out.error = d.error + std::abs(d.value) * s.error;
    return out;
}

}  // namespace heun
