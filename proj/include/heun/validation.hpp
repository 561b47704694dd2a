#pragma once

#include <string>
#include <vector>

#include "heun/connection.hpp"

namespace heun {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    double residual = 0.0;
    double tolerance = 0.0;
    double runtime_s = 0.0;
    std::string detail;  // error name and message for failed computations

    bool passed() const { return status == CheckStatus::Pass; }
};

struct ValidationConfig {
    RouteOptions route;
    std::vector<double> z_list{0.3, 0.5, 0.7};
    int identity_K = 400;
    double identity_tol = 1e-9;
    double det_tol = 1e-10;
    double monodromy_tol = 1e-8;
    double sigma_tol = 1e-3;
    std::vector<double> sigma_lambdas{0.08, 0.04, 0.02};
    double agreement_tol = 1e-8;
    double ss_tol = 1e-6;
    double closed_form_tol = 1e-8;
    double closed_form_c2_tol = 1e-6;
    double limit_tol = 1e-3;
    std::vector<double> limit_Lambdas{1e3, 1e4};
    double limit_exponent_slack = 0.1;
    double reflection_tol = 1e-9;
};

struct ValidationReport {
    EquationSpec spec;
    ValidationConfig config;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

/// Names of the checks in full_report order.
const std::vector<std::string>& check_names();

/// max over z and e of |psi^[0]_e(z) - sum_e' C_ee' psi^[1]_e'(z)| / |psi^[0]_e(z)|.
CheckResult verify_connection_identity(const ConnectionMatrix& c, const std::vector<double>& z_list, int K,
                                       double tol);

/// |det C + theta0/theta1|.
CheckResult verify_determinant(const ConnectionMatrix& c, double tol);

/// Product relations with sigma from extract_sigma.
CheckResult verify_monodromy(const ConnectionMatrix& c, double tol);

/// (sigma(lambda) - omega)/lambda extrapolated to lambda = 0 against sigma1_closed. The
/// matrices are HE at lambda values halving down the list.
CheckResult verify_sigma_expansion(const std::vector<ConnectionMatrix>& ladder, double tol);

/// Pairwise relative agreement; Schafke-Schmidt entries are held to ss_tol.
CheckResult verify_method_agreement(const std::vector<ConnectionMatrix>& matrices, double tol, double ss_tol);

struct ClosedFormData {
    std::vector<Complex> numeric;  // c_1, c_2, ...
    std::vector<Complex> closed;   // same length
    std::vector<double> tol;
};

ClosedFormData closed_form_data(const EquationSpec& spec, const ValidationConfig& cfg);
CheckResult verify_closed_forms(const ClosedFormData& d);

struct LimitData {
    Complex che;
    std::vector<double> Lambdas;
    std::vector<Complex> he;
};

/// HE spec with theta_t = (Lambda + theta_*)/2, theta_inf = (Lambda - theta_*)/2, lambda_HE = lambda / Lambda.
EquationSpec che_as_he(const EquationSpec& che, double Lambda);
LimitData che_as_he_limit_data(const EquationSpec& che, const std::vector<double>& Lambdas, const RouteOptions& opts);
/// Relative difference at the largest Lambda below tol and the fitted scaling exponent within -1 +- slack.
CheckResult verify_che_as_he_limit(const LimitData& d, double tol, double exponent_slack = 0.1);
CheckResult verify_che_as_he_limit(const EquationSpec& che, double Lambda, const RouteOptions& opts = {});

/// Spec of the equation for psi(1 - z): RCHE (lambda, omega^2) -> (-lambda, omega^2 + lambda),
/// CHE (lambda, omega^2) -> (-lambda, omega^2 - lambda theta_*), theta0 <-> theta1.
EquationSpec reflected_spec(const EquationSpec& spec);
/// Largest ODE residual of psi(1 - z) in the reflected equation; ReflectionMismatch above tol.
double certify_reflection(const EquationSpec& spec, double tol = 1e-10);
/// |C_reflected C - I|.
CheckResult verify_reflection(const ConnectionMatrix& c, const ConnectionMatrix& reflected, double tol);

ValidationReport full_report(const EquationSpec& spec, const ValidationConfig& cfg = {});

}  // namespace heun
