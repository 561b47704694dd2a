#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "heun/equations.hpp"
#include "heun/frobenius.hpp"

namespace heun {

enum class Method { CF, Recurrence, SchafkeSchmidt, Wronskian };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

/// Value with an absolute error estimate and the depth (or K) that produced it.
struct Estimate {
    Complex value;
    double error = 0.0;
    long depth = 0;
};

struct RouteOptions {
    double tol = 1e-12;
    long max_depth = 1L << 20;
    /// Fixed K for the recurrence, Schafke-Schmidt and Wronskian routes; 0 selects it adaptively.
    long K = 0;
    int levels = 3;
    /// Unset: binary64 for CF and recurrence, quad for Schafke-Schmidt.
    std::optional<Precision> precision;
    bool allow_strong_coupling = false;
    Complex z_probe = 0.5;
};

/// C[i][j] = C(eps_i theta0, eps_j theta1) with index 0 for + and 1 for -.
struct ConnectionMatrix {
    std::array<std::array<Complex, 2>, 2> entries{};
    EquationSpec spec;
    Method method = Method::CF;
    long depth_or_K = 0;
    double err_estimate = 0.0;
    Precision precision = Precision::Double;

    Complex& operator()(Sign e, Sign f) { return entries[e == Sign::Plus ? 0 : 1][f == Sign::Plus ? 0 : 1]; }
    const Complex& operator()(Sign e, Sign f) const {
        return entries[e == Sign::Plus ? 0 : 1][f == Sign::Plus ? 0 : 1];
    }
    Complex det() const { return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]; }
    /// |det + theta0/theta1|.
    double det_residual() const;
};

/// eta_{k_start} by backward recursion eta_k = 1 - lambda alpha_{k-1} - lambda beta_k / eta_{k+1}
/// from the unit seed eta_{k_start+depth} = 1.
Complex eta_tail(const EquationSpec& spec, long k_start, long depth);

/// Raw partial sum sum_{k=1}^{K} ln eta_k with the seed placed seed_depth beyond K.
Complex log_eta_partial_sum(const EquationSpec& spec, long K, long seed_depth = 64);

/// ln a_infinity by the continued fraction: sum_k ln eta_k, minus ln(1 - lambda) for HE.
/// Partial sums on a geometric ladder are Richardson-extrapolated in 1/K; the
/// ladder top doubles until two successive extrapolations agree within tol.
Estimate log_a_infinity_cf(const EquationSpec& spec, const RouteOptions& opts = {});

/// a_infinity by forward iteration of the rescaled recurrence to K, extrapolated
/// over the ladder K / 2^j. NonConvergence if the error estimate exceeds opts.tol.
Estimate a_infinity_recurrence(const EquationSpec& spec, long K, const RouteOptions& opts = {});

/// Gamma(1 - 2 theta0) Gamma(2 theta1) / [Gamma(1/2 + theta1 - theta0 + w) Gamma(1/2 + theta1 - theta0 - w)].
Complex fusion_cl(Complex theta0, Complex theta1, Complex w);

/// Family prefactor multiplying a_infinity: 1, e^{lambda/2}, or (1 - lambda)^{1/2 - theta_t}.
Complex a_infinity_prefactor(const EquationSpec& spec);

/// C(theta0, theta1) by the given route.
Estimate connection_scalar(const EquationSpec& spec, Method method, const RouteOptions& opts = {});

/// All four sign flips; DetCheckFailed when |det + theta0/theta1| > 100 tol.
ConnectionMatrix connection_matrix(const EquationSpec& spec, Method method, const RouteOptions& opts = {});

/// C_{ee'} = -W(psi^[0]_e, psi^[1]_{-e'}) / (2 e' theta1) at z_probe. K = 0 picks the
/// number of series terms adaptively.
ConnectionMatrix wronskian_connection(const EquationSpec& spec, Complex z_probe = 0.5, long K = 0);

/// Gamma(2 theta1) lim k^{1 - 2 theta1} u_k (with the family prefactor) by Richardson
/// extrapolation over k = K / 2^j, j = 0..levels.
Estimate schafke_schmidt_connection(const EquationSpec& spec, long K, int levels = 3,
                                    Precision precision = Precision::High);

/// Residuals of the two product relations for C_{++}C_{--} and C_{+-}C_{-+}, relative to their magnitude.
std::array<double, 2> monodromy_residuals(const ConnectionMatrix& m, Complex sigma);

inline constexpr double kMonodromyTolerance = 1e-8;

/// sigma from cos 2 pi sigma = -Tr(C e^{2 pi i theta1 s3} adj C e^{2 pi i theta0 s3}) / (2 det C).
/// Branch: Re sigma in [0, 1) with Im sigma > 0; real values reported in [0, 1/2].
/// MonodromyInconsistent when a product relation fails beyond tol.
Complex extract_sigma(const ConnectionMatrix& m, double tol = kMonodromyTolerance);

/// The representative of +-sigma + n closest to ref.
Complex sigma_near(Complex sigma, Complex ref);

struct ToeplitzTail {
    Complex d_tail;      // limit of the recurrence restarted at a_{N-1} = 0, a_N = 1
    Complex log_eta_tail;  // sum_{k > N} ln eta_k
    Complex d_infinity;  // d_tail exp(-log_eta_tail)
    double error = 0.0;
};

/// Tail determinant reconstruction for HE; d_infinity tends to 1 / (1 - lambda).
ToeplitzTail toeplitz_tail(const EquationSpec& spec, long N, const RouteOptions& opts = {});

}  // namespace heun
