#include "doctest.h"
#include "heun/errors.hpp"
#include "heun/special_functions.hpp"

using heun::Complex;
namespace sf = heun::sf;

namespace {
bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("gamma against mpmath values") {
    CHECK(close(sf::gamma({1.0, 1.0}), {0.49801566811835604271, -0.15494982830181068512}, 1e-14));
    CHECK(close(sf::gamma({-2.5, 0.3}), {-0.61382299743774147276, -0.21123261493704177897}, 1e-13));
    CHECK(close(sf::gamma(5.0), 24.0, 1e-14));
    CHECK(close(sf::gamma(0.5), std::sqrt(M_PI), 1e-15));
}

TEST_CASE("log_gamma continuous branch") {
    CHECK(close(sf::log_gamma(10.5), 13.940625219403763633, 1e-15));
    CHECK(close(sf::log_gamma({-2.5, 0.3}), {-0.4320888926132019451, -9.093345421289741495}, 1e-13));
    CHECK(close(sf::log_gamma({0.3, -2.0}), std::conj(sf::log_gamma({0.3, 2.0})), 1e-14));
    CHECK(close(std::exp(sf::log_gamma({3.3, 4.1})), sf::gamma({3.3, 4.1}), 1e-13));
}

TEST_CASE("polygamma") {
    CHECK(close(sf::digamma({3.0, -2.0}), {1.1645915153739775267, -0.67080728264223022839}, 1e-14));
    CHECK(close(sf::polygamma(3, {0.7, 0.4}), {-6.3486565282747414251, -13.018164078264187967}, 1e-12));
    CHECK(close(sf::digamma(1.0), -0.57721566490153286061, 1e-15));
    CHECK(close(sf::polygamma(1, 1.0), M_PI * M_PI / 6, 1e-14));
}

TEST_CASE("gamma functional equation") {
    for (Complex z : {Complex(0.3, 0.2), Complex(-1.7, 0.9), Complex(4.2, -3.1)})
        CHECK(close(sf::gamma(z + 1.0), z * sf::gamma(z), 1e-13));
}

TEST_CASE("poles and order limits") {
    CHECK_THROWS_AS(sf::gamma(-3.0), heun::Error);
    try {
        sf::gamma(0.0);
    } catch (const heun::Error& e) {
        CHECK(e.kind() == heun::ErrorKind::PoleError);
    }
    try {
        sf::polygamma(17, 1.0);
        FAIL("expected OrderError");
    } catch (const heun::Error& e) {
        CHECK(e.kind() == heun::ErrorKind::OrderError);
    }
    CHECK_THROWS_AS(sf::polygamma(-1, 1.0), heun::Error);
}

TEST_CASE("pochhammer") {
    CHECK(close(sf::pochhammer(Complex(0.5), 3), 0.5 * 1.5 * 2.5, 1e-15));
    CHECK(sf::pochhammer(Complex(7.0), 0) == Complex(1.0));
}
