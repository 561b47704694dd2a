#include "doctest.h"
#include "heun/frobenius.hpp"

using namespace heun;

namespace {
bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

const EquationSpec kSpecs[] = {
    EquationSpec::hypergeometric(0.1, 0.2, 0.3),
    EquationSpec::rche(0.1, 0.2, 0.3, 0.1),
    EquationSpec::rche({0.13, 0.02}, {0.21, -0.05}, {0.34, 0.01}, {0.2, 0.1}),
    EquationSpec::che(0.1, 0.2, 0.25, 0.3, 0.1),
    EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1),
    EquationSpec::heun({0.05, 0.1}, {0.3, -0.02}, {0.2, 0.07}, {0.4, 0.05}, {0.15, 0.2}, {0.3, 0.2}),
};
}  // namespace

TEST_CASE("RCHE coefficients against mpmath") {
    auto spec = EquationSpec::rche(0.1, 0.2, 0.3, 0.1);
    auto sol = frobenius_series(spec, Point::Zero, Sign::Plus, 300);
    CHECK(close(sol.coefficients()[1], -0.3625, 1e-15));
    CHECK(close(sol.coefficients()[2], -0.13746527777777777778, 1e-15));
    CHECK(close(sol.evaluate(0.5), 0.58514449919675079586, 1e-14));
}

TEST_CASE("series solve the ODE") {
    for (const auto& spec : kSpecs)
        for (Point p : {Point::Zero, Point::One})
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                auto sol = frobenius_series(spec, p, s, 400);
                for (Complex z : {Complex(0.3), Complex(0.5, 0.1), Complex(0.7)}) CHECK(ode_residual(sol, z) < 1e-11);
            }
}

TEST_CASE("local Wronskians") {
    for (const auto& spec : kSpecs) {
        auto a = frobenius_series(spec, Point::Zero, Sign::Plus, 400);
        auto b = frobenius_series(spec, Point::Zero, Sign::Minus, 400);
        auto c = frobenius_series(spec, Point::One, Sign::Plus, 400);
        auto d = frobenius_series(spec, Point::One, Sign::Minus, 400);
        for (Complex z : {Complex(0.4), Complex(0.6)}) {
            CHECK(close(wronskian(a, b, z), 2.0 * spec.theta0, 1e-12));
            CHECK(close(wronskian(c, d, z), -2.0 * spec.theta1, 1e-12));
        }
    }
}

TEST_CASE("canonical coefficients reproduce the local solution at 0") {
    // psi_+^[0] = z^{1/2 - theta0} (1 - z)^{1/2 + theta1} g(z) u(z)
    for (const auto& spec : kSpecs) {
        auto sol = frobenius_series(spec, Point::Zero, Sign::Plus, 400);
        auto u = canonical_coefficients(spec, 400);
        for (Complex z : {Complex(0.3), Complex(0.5, 0.2)}) {
            Complex us = 0.0;
            for (std::size_t k = u.size(); k-- > 0;) us = us * z + u[k];
            Complex g = 1.0;
            if (spec.family == Family::CHE) g = std::exp(spec.lambda * z / 2.0);
            if (spec.family == Family::Heun) g = std::pow(1.0 - spec.lambda * z, 0.5 - *spec.theta_t);
            Complex expect = std::pow(z, 0.5 - spec.theta0) * std::pow(1.0 - z, 0.5 + spec.theta1) * g * us;
            CHECK(close(sol.evaluate(z), expect, 1e-12));
        }
    }
}

TEST_CASE("adaptive series") {
    auto spec = EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1);
    auto sol = frobenius_series_adaptive(spec, Point::One, Sign::Minus, 0.3, 1e-15);
    auto ref = frobenius_series(spec, Point::One, Sign::Minus, 2000);
    CHECK(close(sol.evaluate(0.3), ref.evaluate(0.3), 1e-14));
    try {
        frobenius_series_adaptive(spec, Point::Zero, Sign::Plus, 1.2);
        FAIL("expected RadiusError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RadiusError);
    }
}
