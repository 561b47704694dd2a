#include "doctest.h"
#include "heun/connection.hpp"

using namespace heun;

namespace {
bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

struct Reference {
    EquationSpec spec;
    std::array<std::array<Complex, 2>, 2> c;
};

const Reference kRefs[] = {
    {EquationSpec::rche(0.1, 0.2, 0.3, 0.1),
     {{{0.66822127321022922048, 0.46250208401850560192}, {1.0653710767881887592, -0.010870136919657927208}}}},
    {EquationSpec::che(0.1, 0.2, 0.25, 0.3, 0.1),
     {{{0.86624049280214666983, 0.18144434321269515828}, {1.2502926632030609217, -0.31531828767078418355}}}},
    {EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1),
     {{{0.6101722101814967119, 0.49744396796618966149}, {0.93176836921722915062, 0.091933304180980511782}}}},
};
}  // namespace

TEST_CASE("fusion_cl") {
    CHECK(close(fusion_cl(0.1, 0.2, 0.3), 0.80780326141961845793, 1e-14));
    CHECK(close(fusion_cl(0.1, 0.2, -0.3), fusion_cl(0.1, 0.2, 0.3), 1e-15));
}

TEST_CASE("eta_tail") {
    auto spec = EquationSpec::rche(0.1, 0.2, 0.3, 0.1);
    CHECK(close(eta_tail(spec, 1, 64), eta_tail(spec, 1, 128), 1e-13));
    CHECK(eta_tail(spec.with_lambda(0.0), 5, 10) == Complex(1.0));
    CHECK_THROWS_AS(eta_tail(spec, 1, 0), Error);
}

TEST_CASE("all routes reproduce the oracle matrices") {
    for (const auto& ref : kRefs) {
        for (Method m : {Method::CF, Method::Recurrence, Method::Wronskian, Method::SchafkeSchmidt}) {
            INFO("family " << family_name(ref.spec.family) << " method " << method_name(m));
            auto mat = connection_matrix(ref.spec, m);
            const double tol = m == Method::SchafkeSchmidt ? 1e-6 : 1e-10;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) CHECK(close(mat.entries[i][j], ref.c[i][j], tol));
            CHECK(mat.det_residual() < 1e-10);
        }
    }
}

TEST_CASE("CF and recurrence agree on ln a_infinity") {
    auto spec = EquationSpec::rche(0.1, 0.2, 0.3, 0.1);
    auto cf = log_a_infinity_cf(spec);
    auto rec = a_infinity_recurrence(spec, 100000);
    CHECK(close(std::exp(cf.value), rec.value, 1e-10));
    CHECK(log_a_infinity_cf(spec.with_lambda(0.0)).value == Complex(0.0));
    CHECK(a_infinity_recurrence(spec.with_lambda(0.0), 100).value == Complex(1.0));
}

TEST_CASE("leading order of ln a_infinity") {
    auto spec = EquationSpec::rche(0.1, 0.2, 0.3, 1e-4);
    Complex sum_beta = 0.0;
    for (long k = 1; k < 2000000; ++k) sum_beta += alpha_beta(spec, k).second;
    auto la = log_a_infinity_cf(spec);
    CHECK(std::abs(la.value + spec.lambda * sum_beta) < 1e-3 * std::abs(la.value));
}

TEST_CASE("Wronskian probe independence") {
    auto spec = EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1);
    auto a = wronskian_connection(spec, 0.4);
    auto b = wronskian_connection(spec, 0.6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(close(a.entries[i][j], b.entries[i][j], 1e-12));
}

TEST_CASE("hypergeometric matrix is the fusion matrix") {
    auto spec = EquationSpec::hypergeometric({0.13, 0.05}, {0.31, -0.1}, {0.22, 0.03});
    auto m = wronskian_connection(spec);
    auto ss = schafke_schmidt_connection(spec, 10000, 3);
    for (Sign e : {Sign::Plus, Sign::Minus})
        for (Sign f : {Sign::Plus, Sign::Minus}) {
            const Complex t0 = sign_value(e) * spec.theta0, t1 = sign_value(f) * spec.theta1;
            CHECK(close(m(e, f), fusion_cl(t0, t1, *spec.theta_inf), 1e-11));
        }
    CHECK(close(ss.value, fusion_cl(spec.theta0, spec.theta1, *spec.theta_inf), 1e-8));
}

TEST_CASE("depth doubling contracts") {
    auto spec = EquationSpec::rche(0.1, 0.2, 0.3, 0.3);
    Complex prev_diff = 0.0;
    Complex prev = 0.0;
    for (long K : {64L, 128L, 256L, 512L}) {
        Complex v = log_eta_partial_sum(spec, K);
        if (K > 64) {
            Complex diff = v - prev;
            if (K > 128) CHECK(std::abs(diff) < std::abs(prev_diff));
            prev_diff = diff;
        }
        prev = v;
    }
}

TEST_CASE("sigma extraction") {
    auto hyp = EquationSpec::hypergeometric(0.1, 0.2, 0.3);
    auto m = connection_matrix(hyp, Method::CF);
    CHECK(close(extract_sigma(m), 0.3, 1e-10));
    for (const auto& ref : kRefs) {
        auto mat = connection_matrix(ref.spec, Method::CF);
        Complex s = extract_sigma(mat);
        auto res = monodromy_residuals(mat, s);
        CHECK(res[0] < 1e-8);
        CHECK(res[1] < 1e-8);
        CHECK(s.real() >= 0.0);
        CHECK(s.real() < 1.0);
    }
    CHECK(close(sigma_near(0.3, -1.28), -1.3, 1e-15));
    CHECK(close(sigma_near(0.3, 2.31), 2.3, 1e-15));
}

TEST_CASE("Toeplitz tail") {
    auto spec = EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1);
    auto t = toeplitz_tail(spec, 10000);
    CHECK(std::abs(t.d_infinity - 1.0 / 0.9) < 1e-8);
}

TEST_CASE("weak-coupling gate and errors") {
    auto strong = EquationSpec::rche(0.1, 0.2, 0.3, 0.95);
    try {
        connection_matrix(strong, Method::CF);
        FAIL("expected DomainError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainError);
    }
    RouteOptions shallow;
    shallow.max_depth = 64;
    try {
        log_a_infinity_cf(EquationSpec::rche(0.1, 0.2, 0.3, 0.1), shallow);
        FAIL("expected NonConvergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonConvergence);
    }
    RouteOptions tiny;
    tiny.max_depth = 1024;
    tiny.tol = 1e-300;
    try {
        log_a_infinity_cf(EquationSpec::rche(0.1, 0.2, 0.3, 0.1), tiny);
        FAIL("expected SlowConvergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SlowConvergence);
    }
}
