#include "heun/perturbative.hpp"

#include <algorithm>
#include <cmath>

#include "heun/richardson.hpp"
#include "heun/special_functions.hpp"

namespace heun {

Jet::Jet(int order, Complex constant) : c_(static_cast<std::size_t>(order + 1), 0.0) { c_[0] = constant; }

Jet::Jet(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
}

Jet Jet::variable(int order) {
    Jet j(order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    for (int n = 0; n <= std::min(order(), o.order()); ++n) c_[n] += o.c_[n];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (int n = 0; n <= std::min(order(), o.order()); ++n) c_[n] -= o.c_[n];
    return *this;
}

Jet& Jet::operator*=(Complex s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator*(Complex s, Jet a) { return a *= s; }

Jet operator*(const Jet& a, const Jet& b) {
    const int N = std::min(a.order(), b.order());
    Jet r(N);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) r[i + j] += a[i] * b[j];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    if (std::abs(b[0]) == 0.0) fail(ErrorKind::JetDivByZero, "jet divisor has zero constant term");
    const int N = std::min(a.order(), b.order());
    Jet q(N);
    for (int n = 0; n <= N; ++n) {
        Complex s = a[n];
        for (int j = 1; j <= n; ++j) s -= b[j] * q[n - j];
        q[n] = s / b[0];
    }
    return q;
}

Jet inverse(const Jet& a) { return Jet(a.order(), 1.0) / a; }

Jet log(const Jet& a) {
    if (std::abs(a[0] - 1.0) > 1e-14) fail(ErrorKind::DomainError, "jet log requires unit constant term");
    // (log a)' = a' / a
    const int N = a.order();
    Jet r(N);
    for (int n = 1; n <= N; ++n) {
        Complex s = double(n) * a[n];
        for (int j = 1; j < n; ++j) s -= double(j) * r[j] * a[n - j];
        r[n] = s / double(n);
    }
    return r;
}

Jet exp(const Jet& a) {
    if (std::abs(a[0]) > 1e-14) fail(ErrorKind::DomainError, "jet exp requires zero constant term");
    // e' = a' e
    const int N = a.order();
    Jet e(N, 1.0);
    for (int n = 1; n <= N; ++n) {
        Complex s = 0.0;
        for (int j = 1; j <= n; ++j) s += double(j) * a[j] * e[n - j];
        e[n] = s / double(n);
    }
    return e;
}

std::vector<Complex> c_coefficients(const EquationSpec& spec, int N, const PerturbativeOptions& opts) {
    if (N < 1 || N > kMaxPerturbativeOrder)
        fail(ErrorKind::SizeError, "perturbative order must lie in [1, " + std::to_string(kMaxPerturbativeOrder) + "]");
    const EquationSpec s = spec.family == Family::Hypergeometric ? spec : spec.with_lambda(0.5);
    validate(s);
    if (spec.family == Family::Hypergeometric) return std::vector<Complex>(N, 0.0);

    CoefficientSequence<Complex> seq(s);
    const std::vector<long> ks = {opts.k_base, 2 * opts.k_base, 4 * opts.k_base, 8 * opts.k_base};
    const long k_top = ks.back();
    const Jet lam = Jet::variable(N);

    std::vector<Jet> suffix_at(ks.size(), Jet(N));
    Jet suffix(N);
    Jet eta(N, 1.0);
    std::size_t mark = ks.size() - 1;
    for (long k = k_top + N + 2; k >= 1; --k) {
        const auto ab_k = seq(k);
        const auto ab_km1 = seq(k - 1);
        // eta_k = 1 - lambda alpha_{k-1} - lambda beta_k / eta_{k+1}
        eta = Jet(N, 1.0) - ab_km1.alpha * lam - ab_k.beta * (lam / eta);
        if (k <= k_top) {
            if (mark < ks.size() && ks[mark] == k) {
                suffix_at[mark] = suffix;
                mark = mark == 0 ? ks.size() : mark - 1;
            }
            suffix += log(eta);
        }
    }
    std::vector<Complex> out(N);
    for (int n = 1; n <= N; ++n) {
        std::vector<Complex> samples;
        for (std::size_t j = 0; j < ks.size(); ++j) samples.push_back(suffix[n] - suffix_at[j][n]);
        // per-term rounding adds up coherently over the sweep
        const double floor = 10.0 * unit_roundoff(Precision::Double) * double(k_top) * std::max(1.0, std::abs(samples.back()));
        auto ex = richardson(samples, 2.0, floor);
        if (!ex.contracted || ex.error > opts.tol * std::max(1.0, std::abs(ex.value)))
            fail(ErrorKind::SlowConvergence, "tail sum of order " + std::to_string(n) + " does not settle");
        out[n - 1] = ex.value;
        if (spec.family == Family::Heun) out[n - 1] += 1.0 / double(n);
    }
    return out;
}

namespace {

constexpr double kResonance = 1e-10;

void require_not(Complex w, std::initializer_list<double> bad) {
    for (double b : bad)
        if (std::abs(w - b) < kResonance)
            fail(ErrorKind::ParameterResonance, "omega = " + std::to_string(b) + " makes a closed-form denominator vanish");
}

}  // namespace

Complex c1_closed_rche(const EquationSpec& spec) {
    const Complex t0 = spec.theta0, t1 = spec.theta1, w = spec.omega;
    require_not(w, {0.0, 0.5, -0.5, 1.0, -1.0});
    const Complex q = 0.25 - w * w;
    const Complex a = 0.5 - t0 + t1;
    const Complex dpsi = sf::digamma(a + w) - sf::digamma(a - w);
    return -(0.25 - t0 * t0 + t1 * t1 - w * w) / (4.0 * w * q) * dpsi + (t0 + t1) / (2.0 * q);
}

Complex c2_closed_rche(const EquationSpec& spec) {
    const Complex t0 = spec.theta0, t1 = spec.theta1, w = spec.omega;
    require_not(w, {0.0, 0.5, -0.5, 1.0, -1.0});
    const Complex w2 = w * w, w3 = w2 * w, w4 = w2 * w2;
    const Complex q = 0.25 - w2;
    const Complex r = 1.0 - w2;
    const Complex a = 0.5 - t0 + t1;
    const Complex m = t0 * t0 - t1 * t1;
    const Complex p = 0.25 - t0 * t0 + t1 * t1 - w2;
    const Complex dpsi = sf::digamma(a + w) - sf::digamma(a - w);
    const Complex spsi1 = sf::polygamma(1, a + w) + sf::polygamma(1, a - w);

    Complex c2 = -p * p / (32.0 * w2 * q * q) * spsi1;
    const Complex bracket = (60.0 * w4 - 35.0 * w2 + 2.0) * m * m / (256.0 * w3 * q * q * q * r) -
                            3.0 * (t0 * t0 + t1 * t1) / (32.0 * w * r * q) -
                            (1.0 - 12.0 * w2) * m / (64.0 * w3 * q * q) + (2.0 - 3.0 * w2) / (64.0 * w3 * r);
    c2 += bracket * dpsi;
    c2 += (t0 + t1) / (4.0 * q * q) - 3.0 * (t0 - t1) / (32.0 * q * r) -
          (25.0 - 52.0 * w2) * (t0 - t1) * (t0 + t1) * (t0 + t1) / (128.0 * q * q * q * r);
    return c2;
}

Complex f1_closed_he(const EquationSpec& spec) {
    if (!spec.theta_t || !spec.theta_inf) fail(ErrorKind::FamilyFieldError, "f1 requires theta_t and theta_inf");
    const Complex t0 = spec.theta0, t1 = spec.theta1, w = spec.omega;
    const Complex tt = *spec.theta_t, ti = *spec.theta_inf;
    require_not(w, {0.0, 0.5, -0.5});
    const Complex q = 0.25 - w * w;
    const Complex a = 0.5 + t1 - t0;
    const Complex second = q + ti * ti - tt * tt;
    const Complex dpsi = sf::digamma(a + w) - sf::digamma(a - w);
    return -(q + t0 * t0 - t1 * t1) * second / (4.0 * w * q) * dpsi - (t0 + t1) * second / (2.0 * q);
}

Complex c1_closed_he(const EquationSpec& spec) { return 0.5 - *spec.theta_t + f1_closed_he(spec); }

Complex sigma1_closed(const EquationSpec& spec) {
    if (!spec.theta_t || !spec.theta_inf) fail(ErrorKind::FamilyFieldError, "sigma1 requires theta_t and theta_inf");
    const Complex t0 = spec.theta0, t1 = spec.theta1, w = spec.omega;
    const Complex tt = *spec.theta_t, ti = *spec.theta_inf;
    require_not(w, {0.0, 0.5, -0.5});
    const Complex q = 0.25 - w * w;
    return (q + t0 * t0 - t1 * t1) * (q + ti * ti - tt * tt) / (4.0 * w * q);
}

}  // namespace heun
