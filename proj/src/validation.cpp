#include "heun/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "heun/perturbative.hpp"
#include "heun/richardson.hpp"

namespace heun {

std::string_view status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

bool ValidationReport::all_pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "connection_identity", "determinant",   "monodromy",       "sigma_expansion",
        "method_agreement",    "closed_forms",  "che_as_he_limit", "reflection",
    };
    return names;
}

namespace {

CheckResult judge(std::string name, double residual, double tol, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tol;
    r.status = std::isfinite(residual) && residual < tol ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = std::move(detail);
    return r;
}

CheckResult skipped(std::string name, std::string why) {
    CheckResult r;
    r.name = std::move(name);
    r.detail = std::move(why);
    return r;
}

double matrix_distance(const ConnectionMatrix& a, const ConnectionMatrix& b) {
    double num = 0.0, scale = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            num = std::max(num, std::abs(a.entries[i][j] - b.entries[i][j]));
            scale = std::max({scale, std::abs(a.entries[i][j]), std::abs(b.entries[i][j])});
        }
    return num / scale;
}

}  // namespace

CheckResult verify_connection_identity(const ConnectionMatrix& c, const std::vector<double>& z_list, int K,
                                       double tol) {
    const auto& spec = c.spec;
    const FrobeniusSolution zero[2] = {frobenius_series(spec, Point::Zero, Sign::Plus, K),
                                       frobenius_series(spec, Point::Zero, Sign::Minus, K)};
    const FrobeniusSolution one[2] = {frobenius_series(spec, Point::One, Sign::Plus, K),
                                      frobenius_series(spec, Point::One, Sign::Minus, K)};
    double worst = 0.0;
    for (double z : z_list) {
        for (const auto& f : {zero[0], one[0]}) {
            const double x = std::abs(f.point() == Point::Zero ? z : z - 1.0);
            if (x >= f.radius()) fail(ErrorKind::RadiusError, "z = " + std::to_string(z) + " outside a disc");
        }
        for (int e = 0; e < 2; ++e) {
            const Complex lhs = zero[e].evaluate(z);
            const Complex rhs = c.entries[e][0] * one[0].evaluate(z) + c.entries[e][1] * one[1].evaluate(z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
        }
    }
    return judge("connection_identity", worst, tol);
}

CheckResult verify_determinant(const ConnectionMatrix& c, double tol) {
    return judge("determinant", c.det_residual(), tol);
}

CheckResult verify_monodromy(const ConnectionMatrix& c, double tol) {
    const Complex sigma = extract_sigma(c, INFINITY);
    auto res = monodromy_residuals(c, sigma);
    return judge("monodromy", std::max(res[0], res[1]), tol);
}

CheckResult verify_sigma_expansion(const std::vector<ConnectionMatrix>& ladder, double tol) {
    if (ladder.size() < 2) fail(ErrorKind::SizeError, "sigma expansion needs at least two couplings");
    const EquationSpec& spec = ladder.front().spec;
    const Complex sigma1 = sigma1_closed(spec);
    std::vector<Complex> g;
    for (const auto& m : ladder) {
        const Complex sigma = sigma_near(extract_sigma(m, INFINITY), spec.omega);
        g.push_back((sigma - spec.omega) / m.spec.lambda);
    }
    for (std::size_t j = 1; j < ladder.size(); ++j)
        if (std::abs(ladder[j - 1].spec.lambda / ladder[j].spec.lambda - 2.0) > 1e-12)
            fail(ErrorKind::DomainError, "sigma expansion couplings must halve");
    auto ex = richardson(g);
    return judge("sigma_expansion", std::abs(ex.value - sigma1) / std::abs(sigma1), tol);
}

CheckResult verify_method_agreement(const std::vector<ConnectionMatrix>& matrices, double tol, double ss_tol) {
    double worst = 0.0;  // in units of the applicable tolerance
    for (std::size_t i = 0; i < matrices.size(); ++i)
        for (std::size_t j = i + 1; j < matrices.size(); ++j) {
            const bool ss = matrices[i].method == Method::SchafkeSchmidt || matrices[j].method == Method::SchafkeSchmidt;
            worst = std::max(worst, matrix_distance(matrices[i], matrices[j]) / (ss ? ss_tol : tol));
        }
    CheckResult r = judge("method_agreement", worst * tol, tol);
    r.detail = "Schafke-Schmidt pairs scaled to tolerance " + std::to_string(ss_tol);
    return r;
}

ClosedFormData closed_form_data(const EquationSpec& spec, const ValidationConfig& cfg) {
    ClosedFormData d;
    if (spec.family == Family::RCHE) {
        d.closed = {c1_closed_rche(spec), c2_closed_rche(spec)};
        d.numeric = c_coefficients(spec, 2);
        d.tol = {cfg.closed_form_tol, cfg.closed_form_c2_tol};
    } else if (spec.family == Family::Heun) {
        d.closed = {c1_closed_he(spec)};
        d.numeric = c_coefficients(spec, 1);
        d.tol = {cfg.closed_form_tol};
    }
    return d;
}

CheckResult verify_closed_forms(const ClosedFormData& d) {
    double worst = 0.0;
    for (std::size_t n = 0; n < d.closed.size(); ++n)
        worst = std::max(worst, std::abs(d.numeric[n] - d.closed[n]) / std::max(1.0, std::abs(d.closed[n])) / d.tol[n]);
    const double tol = d.tol.empty() ? 1.0 : d.tol.front();
    return judge("closed_forms", worst * tol, tol);
}

EquationSpec che_as_he(const EquationSpec& che, double Lambda) {
    if (che.family != Family::CHE) fail(ErrorKind::FamilyFieldError, "limit check needs a CHE spec");
    const Complex ts = *che.theta_star;
    return EquationSpec::heun(che.theta0, che.theta1, (Lambda + ts) / 2.0, (Lambda - ts) / 2.0, che.omega,
                              che.lambda / Lambda);
}

LimitData che_as_he_limit_data(const EquationSpec& che, const std::vector<double>& Lambdas, const RouteOptions& opts) {
    LimitData d;
    d.che = connection_scalar(che, Method::CF, opts).value;
    d.Lambdas = Lambdas;
    for (double L : Lambdas) {
        if (L < 1e3) fail(ErrorKind::DomainError, "limit check needs Lambda >= 1e3");
        d.he.push_back(connection_scalar(che_as_he(che, L), Method::CF, opts).value);
    }
    return d;
}

CheckResult verify_che_as_he_limit(const LimitData& d, double tol, double exponent_slack) {
    std::vector<double> rel;
    for (const Complex& h : d.he) rel.push_back(std::abs(h - d.che) / std::abs(d.che));
    CheckResult r = judge("che_as_he_limit", rel.back(), tol);
    if (rel.size() >= 2) {
        const std::size_t n = rel.size();
        const double slope = std::log(rel[n - 1] / rel[n - 2]) / std::log(d.Lambdas[n - 1] / d.Lambdas[n - 2]);
        r.detail = "scaling exponent " + std::to_string(slope);
        if (!(std::abs(slope + 1.0) <= exponent_slack)) r.status = CheckStatus::Fail;
    }
    return r;
}

CheckResult verify_che_as_he_limit(const EquationSpec& che, double Lambda, const RouteOptions& opts) {
    return verify_che_as_he_limit(che_as_he_limit_data(che, {Lambda / 10.0, Lambda}, opts), 1e-3);
}

EquationSpec reflected_spec(const EquationSpec& spec) {
    EquationSpec r = spec.with_thetas(spec.theta1, spec.theta0).with_lambda(-spec.lambda);
    switch (spec.family) {
        case Family::RCHE: r.omega = std::sqrt(spec.omega * spec.omega + spec.lambda); break;
        case Family::CHE: r.omega = std::sqrt(spec.omega * spec.omega - spec.lambda * *spec.theta_star); break;
        default: fail(ErrorKind::FamilyFieldError, "reflection is implemented for RCHE and CHE");
    }
    return r;
}

double certify_reflection(const EquationSpec& spec, double tol) {
    const EquationSpec r = reflected_spec(spec);
    double worst = 0.0;
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        const auto psi = frobenius_series(spec, Point::Zero, s, 400);
        for (double z : {0.35, 0.5, 0.65}) {
            const Complex d2 = psi.evaluate_second_deriv(1.0 - z);
            const Complex pp = normal_form_potential(r, z) * psi.evaluate(1.0 - z);
            worst = std::max(worst, std::abs(d2 + pp) / std::max(std::abs(d2), std::abs(pp)));
        }
    }
    if (worst > tol)
        fail(ErrorKind::ReflectionMismatch, "reflected equation residual " + std::to_string(worst));
    return worst;
}

CheckResult verify_reflection(const ConnectionMatrix& c, const ConnectionMatrix& reflected, double tol) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex p = 0.0;
            for (int k = 0; k < 2; ++k) p += reflected.entries[i][k] * c.entries[k][j];
            worst = std::max(worst, std::abs(p - (i == j ? 1.0 : 0.0)));
        }
    return judge("reflection", worst, tol);
}

ValidationReport full_report(const EquationSpec& spec, const ValidationConfig& cfg) {
    ValidationReport report;
    report.spec = spec;
    report.config = cfg;

    auto timed = [&](const std::string& name, const std::function<CheckResult()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = body();
        } catch (const Error& e) {
            r = CheckResult{name, CheckStatus::Fail, INFINITY, 0.0, 0.0, e.what()};
        } catch (const std::exception& e) {
            r = CheckResult{name, CheckStatus::Fail, INFINITY, 0.0, 0.0, std::string("internal: ") + e.what()};
        }
        r.name = name;
        r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.checks.push_back(std::move(r));
    };

    std::optional<ConnectionMatrix> cf;
    auto cf_matrix = [&]() -> const ConnectionMatrix& {
        if (!cf) cf = connection_matrix(spec, Method::CF, cfg.route);
        return *cf;
    };

    timed("connection_identity",
          [&] { return verify_connection_identity(cf_matrix(), cfg.z_list, cfg.identity_K, cfg.identity_tol); });
    timed("determinant", [&] { return verify_determinant(cf_matrix(), cfg.det_tol); });
    timed("monodromy", [&] { return verify_monodromy(cf_matrix(), cfg.monodromy_tol); });
    timed("sigma_expansion", [&] {
        if (spec.family != Family::Heun) return skipped("sigma_expansion", "closed form available for HE only");
        std::vector<ConnectionMatrix> ladder;
        for (double lam : cfg.sigma_lambdas)
            ladder.push_back(connection_matrix(spec.with_lambda(lam), Method::CF, cfg.route));
        return verify_sigma_expansion(ladder, cfg.sigma_tol);
    });
    timed("method_agreement", [&] {
        std::vector<ConnectionMatrix> ms{cf_matrix()};
        for (Method m : {Method::Recurrence, Method::Wronskian, Method::SchafkeSchmidt})
            ms.push_back(connection_matrix(spec, m, cfg.route));
        return verify_method_agreement(ms, cfg.agreement_tol, cfg.ss_tol);
    });
    timed("closed_forms", [&] {
        if (spec.family != Family::RCHE && spec.family != Family::Heun)
            return skipped("closed_forms", "closed forms available for RCHE and HE only");
        return verify_closed_forms(closed_form_data(spec, cfg));
    });
    timed("che_as_he_limit", [&] {
        if (spec.family != Family::CHE) return skipped("che_as_he_limit", "applies to CHE only");
        return verify_che_as_he_limit(che_as_he_limit_data(spec, cfg.limit_Lambdas, cfg.route), cfg.limit_tol,
                                      cfg.limit_exponent_slack);
    });
    timed("reflection", [&] {
        if (spec.family != Family::RCHE && spec.family != Family::CHE)
            return skipped("reflection", "applies to RCHE and CHE only");
        certify_reflection(spec);
        const auto reflected = connection_matrix(reflected_spec(spec), Method::CF, cfg.route);
        return verify_reflection(cf_matrix(), reflected, cfg.reflection_tol);
    });
    return report;
}

}  // namespace heun
