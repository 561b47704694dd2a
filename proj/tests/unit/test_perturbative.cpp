#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "heun/connection.hpp"
#include "heun/perturbative.hpp"

using namespace heun;

namespace {
bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

Jet random_jet(std::mt19937& rng, int N, Complex c0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Jet j(N, c0);
    for (int n = 1; n <= N; ++n) j[n] = {u(rng), u(rng)};
    return j;
}

// ln a_infinity on a symmetric grid of M points spaced h around lambda = 0, fitted by a degree-deg
// polynomial without constant term.
std::vector<Complex> grid_fit(const EquationSpec& spec, double h, int M, int deg) {
    Eigen::MatrixXcd A(M, deg);
    Eigen::VectorXcd b(M);
    RouteOptions opts;
    opts.tol = 1e-14;
    for (int j = 1; j <= M; ++j) {
        const double lam = h * (j - (M + 1) / 2.0);
        for (int n = 1; n <= deg; ++n) A(j - 1, n - 1) = std::pow(lam, n);
        b(j - 1) = log_a_infinity_cf(spec.with_lambda(lam), opts).value;
    }
    Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
    return {x.data(), x.data() + deg};
}
}  // namespace

TEST_CASE("jet ring operations") {
    std::mt19937 rng(7);
    const int N = 6;
    Jet a = random_jet(rng, N, {1.3, 0.2}), b = random_jet(rng, N, {0.7, -0.4}), c = random_jet(rng, N, {-0.5, 0.9});
    Jet l = (a * b) * c, r = a * (b * c);
    for (int n = 0; n <= N; ++n) CHECK(close(l[n], r[n], 1e-13));
    Jet id(N, 1.0);
    Jet ai = a * id;
    for (int n = 0; n <= N; ++n) CHECK(ai[n] == a[n]);
    Jet rt = (a / b) * b;
    for (int n = 0; n <= N; ++n) CHECK(close(rt[n], a[n], 1e-13));
    Jet z = random_jet(rng, N, 0.0);
    Jet le = log(exp(z));
    for (int n = 0; n <= N; ++n) CHECK(close(le[n], z[n], 1e-12));
    Jet ln1 = log(Jet(N, 1.0) + Jet::variable(N));
    for (int n = 1; n <= N; ++n) CHECK(close(ln1[n], (n % 2 ? 1.0 : -1.0) / n, 1e-15));
    CHECK_THROWS_AS(a / Jet::variable(N), Error);
}

TEST_CASE("c_1 is minus the sum of beta for RCHE") {
    auto spec = EquationSpec::rche(0.1, 0.2, 0.3, 0.0);
    auto c = c_coefficients(spec, 2);
    CHECK(close(c[0], c1_closed_rche(spec), 1e-10));
    CHECK(close(c[1], c2_closed_rche(spec), 1e-8));
}

TEST_CASE("HE first order") {
    auto spec = EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1);
    auto c = c_coefficients(spec, 1);
    CHECK(close(c[0], c1_closed_he(spec), 1e-10));
}

TEST_CASE("jet coefficients match a lambda-grid fit") {
    for (const EquationSpec& spec :
         {EquationSpec::rche(0.1, 0.2, 0.3, 0.0), EquationSpec::che(0.1, 0.2, 0.25, 0.3, 0.0),
          EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1)}) {
        auto jet = c_coefficients(spec, 8);
        auto fit = grid_fit(spec, 0.01, 16, 10);
        for (int n = 0; n < 3; ++n) CHECK(std::abs(jet[n] - fit[n]) < 1e-7);
    }
}

TEST_CASE("truncation residual scales with the next power") {
    auto spec = EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1);
    const int N = 3;
    auto c = c_coefficients(spec, N);
    RouteOptions opts;
    opts.tol = 1e-15;
    opts.precision = Precision::High;
    std::vector<double> res;
    for (double lam : {0.02, 0.04, 0.08}) {
        Complex series = 0.0;
        for (int n = 1; n <= N; ++n) series += c[n - 1] * std::pow(lam, n);
        res.push_back(std::abs(log_a_infinity_cf(spec.with_lambda(lam), opts).value - series));
    }
    CHECK(res[1] / res[0] >= std::pow(2.0, N + 1) * 0.9);
    CHECK(res[2] / res[1] >= std::pow(2.0, N + 1) * 0.9);
}

TEST_CASE("closed-form properties") {
    auto he = EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1);
    CHECK(close(sigma1_closed(he), sigma1_closed(EquationSpec::heun(0.41, 0.33, 0.27, 0.11, 0.37, 0.1)), 1e-15));
    // theta_inf^2 = theta_t^2 - 1/4 + omega^2
    Complex ti = std::sqrt(Complex(0.33 * 0.33 - 0.25 + 0.37 * 0.37));
    auto killed = EquationSpec::heun(0.11, 0.27, 0.33, ti, 0.37, 0.1);
    CHECK(std::abs(f1_closed_he(killed)) < 1e-14);
    CHECK(std::abs(sigma1_closed(killed)) < 1e-14);
    auto rche = EquationSpec::rche(0.1, 0.2, 0.3, 0.0);
    CHECK(close(c1_closed_rche(rche), c1_closed_rche(EquationSpec::rche(0.1, 0.2, -0.3, 0.0)), 1e-14));
    try {
        c1_closed_rche(EquationSpec::rche(0.1, 0.2, 0.5, 0.0));
        FAIL("expected ParameterResonance");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParameterResonance);
    }
    CHECK_THROWS_AS(c_coefficients(rche, 9), Error);
}
