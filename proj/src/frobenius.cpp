#include "heun/frobenius.hpp"

#include <algorithm>
#include <cmath>

namespace heun {

namespace {

using Poly = std::vector<Complex>;

Poly mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly add(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

Poly scale(Poly a, Complex s) {
    for (auto& x : a) x *= s;
    return a;
}

// p(x + shift) by repeated synthetic division.
Poly taylor_shift(Poly p, Complex shift) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) p[j - 1] += shift * p[j];
    return p;
}

struct OdePolys {
    Poly q;  // leading coefficient, double zero at 0 and 1
    Poly n;  // P * q
};

OdePolys ode_polys(const EquationSpec& spec) {
    const Complex t0 = spec.theta0, t1 = spec.theta1, om = spec.accessory(), lam = spec.lambda;
    const Poly z{0.0, 1.0};
    const Poly zm1{-1.0, 1.0};
    const Poly z2 = mul(z, z);
    const Poly zm12 = mul(zm1, zm1);
    const Poly zzm1 = mul(z, zm1);
    const Poly z2zm12 = mul(z2, zm12);

    OdePolys r;
    if (spec.family == Family::Heun) {
        const Complex tt = *spec.theta_t, ti = *spec.theta_inf;
        const Poly w{1.0, -lam};
        const Poly w2 = mul(w, w);
        const Complex u1 = t0 * t0 + t1 * t1 + tt * tt - ti * ti - 0.5;
        const Complex e = om * om + tt * tt - ti * ti - 0.25;
        r.q = mul(z2zm12, w2);
        r.n = scale(mul(zm12, w2), 0.25 - t0 * t0);
        r.n = add(r.n, scale(mul(z2, w2), 0.25 - t1 * t1));
        r.n = add(r.n, scale(z2zm12, lam * lam * (0.25 - tt * tt)));
        r.n = add(r.n, scale(mul(zzm1, w2), u1));
        r.n = add(r.n, scale(mul(zzm1, w), -(1.0 - lam) * e));
        return r;
    }
    const Complex u0 = t0 * t0 + t1 * t1 - om * om - 0.25;
    r.q = z2zm12;
    r.n = add(scale(zm12, 0.25 - t0 * t0), scale(z2, 0.25 - t1 * t1));
    r.n = add(r.n, scale(zzm1, u0));
    if (spec.family == Family::RCHE) r.n = add(r.n, scale(mul(zzm1, z), -lam));
    if (spec.family == Family::CHE) {
        r.n = add(r.n, scale(z2zm12, -lam * lam / 4.0));
        r.n = add(r.n, scale(mul(z, zm12), -lam * *spec.theta_star));
    }
    return r;
}

}  // namespace

FrobeniusSolution::FrobeniusSolution(EquationSpec spec, Point point, Sign sign, std::vector<Complex> coeffs)
    : spec_(std::move(spec)), point_(point), sign_(sign), c_(std::move(coeffs)) {
    const Complex theta = point_ == Point::Zero ? spec_.theta0 : spec_.theta1;
    rho_ = 0.5 - sign_value(sign_) * theta;
}

Complex FrobeniusSolution::base(Complex z) const { return point_ == Point::Zero ? z : 1.0 - z; }

void FrobeniusSolution::series(Complex z, Complex& s0, Complex& s1, Complex& s2) const {
    const Complex x = point_ == Point::Zero ? z : z - 1.0;
    s0 = s1 = s2 = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) {
        s2 = s2 * x + 2.0 * s1;
        s1 = s1 * x + s0;
        s0 = s0 * x + c_[k];
    }
}

Complex FrobeniusSolution::evaluate(Complex z) const {
    Complex s0, s1, s2;
    series(z, s0, s1, s2);
    return std::pow(base(z), rho_) * s0;
}

Complex FrobeniusSolution::evaluate_deriv(Complex z) const {
    Complex s0, s1, s2;
    series(z, s0, s1, s2);
    const Complex b = base(z);
    const double db = point_ == Point::Zero ? 1.0 : -1.0;
    const Complex p = std::pow(b, rho_);
    return p * (rho_ * db / b * s0 + s1);
}

Complex FrobeniusSolution::evaluate_second_deriv(Complex z) const {
    Complex s0, s1, s2;
    series(z, s0, s1, s2);
    const Complex b = base(z);
    const double db = point_ == Point::Zero ? 1.0 : -1.0;
    const Complex p = std::pow(b, rho_);
    return p * (rho_ * (rho_ - 1.0) / (b * b) * s0 + 2.0 * rho_ * db / b * s1 + s2);
}

double FrobeniusSolution::radius() const {
    double r = 1.0;
    if (spec_.family == Family::Heun) {
        const Complex t = 1.0 / spec_.lambda;
        r = std::min(r, std::abs(point_ == Point::Zero ? t : t - 1.0));
    }
    return r;
}

double FrobeniusSolution::tail_tol(Complex z) const {
    const double x = std::abs(point_ == Point::Zero ? z : z - 1.0);
    const double q = x / radius();
    if (q >= 1.0) return INFINITY;
    const std::size_t n = c_.size();
    double last = 0.0;
    for (std::size_t k = n >= 2 ? n - 2 : 0; k < n; ++k) last = std::max(last, std::abs(c_[k]) * std::pow(x, double(k)));
    return last * q / (1.0 - q);
}

FrobeniusSolution frobenius_series(const EquationSpec& spec, Point point, Sign sign, int n) {
    validate(spec);
    const OdePolys polys = ode_polys(spec);
    const Complex shift = point == Point::Zero ? 0.0 : 1.0;
    const Poly q = taylor_shift(polys.q, shift);
    const Poly nn = taylor_shift(polys.n, shift);
    const Complex theta = point == Point::Zero ? spec.theta0 : spec.theta1;
    const Complex rho = 0.5 - sign_value(sign) * theta;

    std::vector<Complex> c(static_cast<std::size_t>(n + 1), 0.0);
    c[0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        Complex acc = 0.0;
        for (std::size_t j = 3; j < q.size(); ++j) {
            const int k = m + 2 - static_cast<int>(j);
            if (k < 0) break;
            acc += q[j] * c[k] * (double(k) + rho) * (double(k) - 1.0 + rho);
        }
        for (std::size_t j = 1; j < nn.size(); ++j) {
            const int k = m - static_cast<int>(j);
            if (k < 0) break;
            acc += nn[j] * c[k];
        }
        const Complex denom = q[2] * (double(m) + rho) * (double(m) + rho - 1.0) + nn[0];
        if (std::abs(denom) < 1e-300) fail(ErrorKind::ResonantExponents, "indicial resonance at order " + std::to_string(m));
        c[m] = -acc / denom;
    }
    return FrobeniusSolution(spec, point, sign, std::move(c));
}

FrobeniusSolution frobenius_series_adaptive(const EquationSpec& spec, Point point, Sign sign, Complex z, double tol) {
    auto sol = frobenius_series(spec, point, sign, 16);
    const double x = std::abs(point == Point::Zero ? z : z - 1.0);
    if (x >= sol.radius()) fail(ErrorKind::RadiusError, "evaluation point outside the disc of convergence");
    int n = 32;
    while (true) {
        sol = frobenius_series(spec, point, sign, n);
        double scale = std::abs(sol.evaluate(z) / std::pow(point == Point::Zero ? z : 1.0 - z, sol.exponent()));
        if (sol.tail_tol(z) <= tol * std::max(1.0, scale)) return sol;
        if (n >= kMaxFrobeniusTerms)
            fail(ErrorKind::TailError, "series tail above tolerance at " + std::to_string(kMaxFrobeniusTerms) + " terms");
        n = std::min(2 * n, kMaxFrobeniusTerms);
    }
}

Complex wronskian(const FrobeniusSolution& f, const FrobeniusSolution& g, Complex z) {
    return f.evaluate(z) * g.evaluate_deriv(z) - f.evaluate_deriv(z) * g.evaluate(z);
}

double ode_residual(const FrobeniusSolution& f, Complex z) {
    const Complex d2 = f.evaluate_second_deriv(z);
    const Complex pp = normal_form_potential(f.spec(), z) * f.evaluate(z);
    return std::abs(d2 + pp) / std::max({std::abs(d2), std::abs(pp), 1e-300});
}

}  // namespace heun
