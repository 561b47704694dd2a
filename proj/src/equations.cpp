#include "heun/equations.hpp"

#include <cmath>
#include <sstream>

namespace heun {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Hypergeometric: return "hyp";
        case Family::RCHE: return "rche";
        case Family::CHE: return "che";
        case Family::Heun: return "heun";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "hyp" || name == "hypergeometric") return Family::Hypergeometric;
    if (name == "rche") return Family::RCHE;
    if (name == "che") return Family::CHE;
    if (name == "heun" || name == "he") return Family::Heun;
    fail(ErrorKind::FamilyFieldError, "unknown family '" + std::string(name) + "'");
}

EquationSpec EquationSpec::hypergeometric(Complex theta0, Complex theta1, Complex theta_inf) {
    EquationSpec s;
    s.family = Family::Hypergeometric;
    s.theta0 = theta0;
    s.theta1 = theta1;
    s.theta_inf = theta_inf;
    s.omega = theta_inf;
    s.lambda = 0.0;
    return s;
}

EquationSpec EquationSpec::rche(Complex theta0, Complex theta1, Complex omega, Complex lambda) {
    EquationSpec s;
    s.family = Family::RCHE;
    s.theta0 = theta0;
    s.theta1 = theta1;
    s.omega = omega;
    s.lambda = lambda;
    return s;
}

EquationSpec EquationSpec::che(Complex theta0, Complex theta1, Complex theta_star, Complex omega, Complex lambda) {
    EquationSpec s = rche(theta0, theta1, omega, lambda);
    s.family = Family::CHE;
    s.theta_star = theta_star;
    return s;
}

EquationSpec EquationSpec::heun(Complex theta0, Complex theta1, Complex theta_t, Complex theta_inf, Complex omega,
                                Complex lambda) {
    EquationSpec s = rche(theta0, theta1, omega, lambda);
    s.family = Family::Heun;
    s.theta_t = theta_t;
    s.theta_inf = theta_inf;
    return s;
}

Complex EquationSpec::accessory() const {
    if (family == Family::Hypergeometric && theta_inf) return *theta_inf;
    return omega;
}

EquationSpec EquationSpec::with_thetas(Complex t0, Complex t1) const {
    EquationSpec s = *this;
    s.theta0 = t0;
    s.theta1 = t1;
    return s;
}

EquationSpec EquationSpec::with_lambda(Complex lam) const {
    EquationSpec s = *this;
    s.lambda = lam;
    return s;
}

bool is_half_integer(Complex x, double tol) {
    const Complex twice = 2.0 * x;
    return std::abs(twice.imag()) < tol && std::abs(twice.real() - std::round(twice.real())) < tol;
}

namespace {

std::string fmt(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

}  // namespace

void validate(const EquationSpec& spec) {
    auto need = [&](const std::optional<Complex>& v, const char* name) {
        if (!v) fail(ErrorKind::FamilyFieldError, std::string(name) + " required for family " +
                                                      std::string(family_name(spec.family)));
    };
    auto forbid = [&](const std::optional<Complex>& v, const char* name) {
        if (v) fail(ErrorKind::FamilyFieldError, std::string(name) + " not allowed for family " +
                                                     std::string(family_name(spec.family)));
    };
    switch (spec.family) {
        case Family::Hypergeometric:
            need(spec.theta_inf, "theta_inf");
            forbid(spec.theta_t, "theta_t");
            forbid(spec.theta_star, "theta_star");
            if (std::abs(spec.lambda) != 0.0) fail(ErrorKind::FamilyFieldError, "lambda must be 0 for hyp");
            break;
        case Family::RCHE:
            forbid(spec.theta_t, "theta_t");
            forbid(spec.theta_inf, "theta_inf");
            forbid(spec.theta_star, "theta_star");
            break;
        case Family::CHE:
            need(spec.theta_star, "theta_star");
            forbid(spec.theta_t, "theta_t");
            forbid(spec.theta_inf, "theta_inf");
            break;
        case Family::Heun:
            need(spec.theta_t, "theta_t");
            need(spec.theta_inf, "theta_inf");
            forbid(spec.theta_star, "theta_star");
            if (std::abs(spec.lambda) < 1e-300) fail(ErrorKind::DomainError, "heun requires lambda = 1/t != 0");
            if (std::abs(spec.lambda - 1.0) < 1e-12) fail(ErrorKind::DomainError, "t = 1 collides with z = 1");
            break;
    }
    const Complex values[] = {spec.theta0, spec.theta1, spec.omega, spec.lambda};
    for (auto v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorKind::DomainError, "non-finite parameter");
    if (is_half_integer(spec.theta0)) fail(ErrorKind::ResonantExponents, "2 theta0 is an integer: " + fmt(spec.theta0));
    if (is_half_integer(spec.theta1)) fail(ErrorKind::ResonantExponents, "2 theta1 is an integer: " + fmt(spec.theta1));
    if (spec.theta_t && is_half_integer(*spec.theta_t))
        fail(ErrorKind::ResonantExponents, "2 theta_t is an integer: " + fmt(*spec.theta_t));
}

template <class Cx>
CoefficientSequence<Cx>::CoefficientSequence(const EquationSpec& spec)
    : family_(spec.family),
      t0_(to_scalar<Cx>(spec.theta0)),
      shift_(to_scalar<Cx>(Complex(0.5) - spec.theta0 + spec.theta1)),
      omega2_(to_scalar<Cx>(spec.accessory() * spec.accessory())),
      lambda_(to_scalar<Cx>(spec.lambda)) {
    if (family_ == Family::Heun) {
        const Complex tt = *spec.theta_t, ti = *spec.theta_inf;
        a_shift_ = to_scalar<Cx>(Complex(0.5) - spec.theta0 - tt);
        b_shift_ = to_scalar<Cx>(-spec.theta0 + spec.theta1 - tt);
        t0sq_plus_tinf2_minus_om2_ = to_scalar<Cx>(spec.theta0 * spec.theta0 + ti * ti - spec.omega * spec.omega);
        tinf2_ = to_scalar<Cx>(ti * ti);
    } else if (family_ == Family::CHE) {
        const Complex ts = *spec.theta_star;
        a_shift_ = to_scalar<Cx>(Complex(0.5) - spec.theta0 - ts);
        b_shift_ = to_scalar<Cx>(-spec.theta0 + spec.theta1 - ts);
    }
}

template <class Cx>
Cx CoefficientSequence<Cx>::denominator(long k) const {
    const Cx s = Cx(static_cast<double>(k)) + shift_;
    Cx d = s * s - omega2_;
    if (magnitude(d) < kAccessoryResonanceTolerance)
        fail(ErrorKind::AccessoryResonance, "D_" + std::to_string(k) + " vanishes");
    return d;
}

template <class Cx>
AlphaBeta<Cx> CoefficientSequence<Cx>::operator()(long k) const {
    const Cx kk(static_cast<double>(k));
    const Cx dk = denominator(k);
    Cx alpha(0.0);
    Cx beta(0.0);
    Cx kfac = kk * (kk - Cx(2.0) * t0_);
    switch (family_) {
        case Family::Hypergeometric:
        case Family::RCHE:
            if (k > 0) beta = kfac / (dk * denominator(k - 1));
            break;
        case Family::CHE:
            alpha = (kk + a_shift_) / dk;
            if (k > 0) beta = -kfac * (kk + b_shift_) / (dk * denominator(k - 1));
            break;
        case Family::Heun: {
            const Cx p = kk + a_shift_;
            alpha = -(p * p - t0sq_plus_tinf2_minus_om2_) / dk;
            if (k > 0) {
                const Cx q = kk + b_shift_;
                beta = kfac * (q * q - tinf2_) / (dk * denominator(k - 1));
            }
            break;
        }
    }
    return {alpha, beta};
}

template class CoefficientSequence<Complex>;
template class CoefficientSequence<ComplexHP>;

std::pair<Complex, Complex> alpha_beta(const EquationSpec& spec, long k) {
    auto ab = CoefficientSequence<Complex>(spec)(k);
    return {ab.alpha, ab.beta};
}

template <class Cx>
CanonicalRecurrence<Cx>::CanonicalRecurrence(const EquationSpec& spec)
    : family_(spec.family),
      t0_(to_scalar<Cx>(spec.theta0)),
      t1_(to_scalar<Cx>(spec.theta1)),
      tt_(to_scalar<Cx>(spec.theta_t.value_or(0.0))),
      tinf_(to_scalar<Cx>(spec.theta_inf.value_or(0.0))),
      ts_(to_scalar<Cx>(spec.theta_star.value_or(0.0))),
      omega_(to_scalar<Cx>(spec.accessory())),
      lambda_(to_scalar<Cx>(spec.lambda)) {}

template <class Cx>
Cx CanonicalRecurrence<Cx>::leading(long k) const {
    const Cx kk(static_cast<double>(k + 1));
    return kk * (kk - Cx(2.0) * t0_);
}

template <class Cx>
Cx CanonicalRecurrence<Cx>::hyp_factor(long k) const {
    const Cx kk(static_cast<double>(k));
    return (kk + Cx(0.5) - t0_ + t1_ + omega_) * (kk + Cx(0.5) - t0_ + t1_ - omega_);
}

template <class Cx>
Cx CanonicalRecurrence<Cx>::step(long k, const Cx& u_k, const Cx& u_km1) const {
    const Cx kk(static_cast<double>(k));
    Cx a(0.0), b(0.0);
    switch (family_) {
        case Family::Hypergeometric:
            break;
        case Family::RCHE:
            b = Cx(1.0);
            break;
        case Family::CHE:
            a = kk + Cx(0.5) - t0_ - ts_;
            b = -(kk - t0_ + t1_ - ts_);
            break;
        case Family::Heun: {
            const Cx p = kk + Cx(0.5) - t0_ - tt_;
            const Cx q = kk - t0_ + t1_ - tt_;
            a = -(p * p - t0_ * t0_ - tinf_ * tinf_ + omega_ * omega_);
            b = q * q - tinf_ * tinf_;
            break;
        }
    }
    const Cx rhs = (hyp_factor(k) - lambda_ * a) * u_k - lambda_ * b * u_km1;
    return rhs / leading(k);
}

template <class Cx>
Cx CanonicalRecurrence<Cx>::step_unperturbed(long k, const Cx& u_k) const {
    return hyp_factor(k) * u_k / leading(k);
}

template class CanonicalRecurrence<Complex>;
template class CanonicalRecurrence<ComplexHP>;

Complex canonical_recurrence_step(const EquationSpec& spec, long k, Complex u_k, Complex u_km1) {
    return CanonicalRecurrence<Complex>(spec).step(k, u_k, u_km1);
}

std::vector<Complex> canonical_coefficients(const EquationSpec& spec, long K) {
    CanonicalRecurrence<Complex> rec(spec);
    std::vector<Complex> u(static_cast<std::size_t>(K + 1));
    u[0] = 1.0;
    Complex prev = 0.0;
    for (long k = 0; k < K; ++k) {
        u[k + 1] = rec.step(k, u[k], prev);
        prev = u[k];
    }
    return u;
}

std::vector<Complex> rescaled_a(const EquationSpec& spec, long K) {
    CanonicalRecurrence<Complex> rec(spec);
    CoefficientSequence<Complex> seq(spec);
    // a_{k+1} = a_k - lambda (alpha_k a_k + beta_k a_{k-1}); checked against u_k / u_k^0 in tests.
    std::vector<Complex> a(static_cast<std::size_t>(K + 1));
    a[0] = 1.0;
    Complex prev = 0.0;
    for (long k = 0; k < K; ++k) {
        auto ab = seq(k);
        a[k + 1] = a[k] - spec.lambda * (ab.alpha * a[k] + ab.beta * prev);
        prev = a[k];
    }
    return a;
}

Complex normal_form_potential(const EquationSpec& spec, Complex z) {
    const Complex t0 = spec.theta0, t1 = spec.theta1, om = spec.accessory(), lam = spec.lambda;
    const Complex z1 = z - 1.0;
    Complex p = (0.25 - t0 * t0) / (z * z) + (0.25 - t1 * t1) / (z1 * z1);
    switch (spec.family) {
        case Family::Hypergeometric:
            p += (t0 * t0 + t1 * t1 - om * om - 0.25) / (z * z1);
            break;
        case Family::RCHE:
            p += (t0 * t0 + t1 * t1 - om * om - 0.25 - lam * z) / (z * z1);
            break;
        case Family::CHE:
            p += (t0 * t0 + t1 * t1 - om * om - 0.25) / (z * z1) - lam * lam / 4.0 - lam * *spec.theta_star / z;
            break;
        case Family::Heun: {
            const Complex tt = *spec.theta_t, ti = *spec.theta_inf;
            const Complex t = 1.0 / lam;
            p += (0.25 - tt * tt) / ((z - t) * (z - t));
            p += (t0 * t0 + t1 * t1 + tt * tt - ti * ti - 0.5) / (z * z1);
            p += (t - 1.0) * (om * om + tt * tt - ti * ti - 0.25) / (z * z1 * (z - t));
            break;
        }
    }
    return p;
}

}  // namespace heun
