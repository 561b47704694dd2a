#include "doctest.h"
#include "heun/perturbative.hpp"
#include "heun/validation.hpp"

using namespace heun;

namespace {
const EquationSpec kRche = EquationSpec::rche(0.1, 0.2, 0.3, 0.1);
const EquationSpec kChe = EquationSpec::che(0.1, 0.2, 0.25, 0.3, 0.1);
const EquationSpec kHe = EquationSpec::heun(0.11, 0.27, 0.33, 0.41, 0.37, 0.1);

ConnectionMatrix perturbed(ConnectionMatrix m, int i = 0, int j = 1) {
    m.entries[i][j] *= 1.01;
    return m;
}
}  // namespace

TEST_CASE("full reports pass with every check listed once") {
    for (const auto& spec : {EquationSpec::hypergeometric(0.1, 0.2, 0.3), kRche, kChe, kHe}) {
        auto report = full_report(spec);
        INFO("family " << family_name(spec.family));
        REQUIRE(report.checks.size() == check_names().size());
        for (std::size_t i = 0; i < report.checks.size(); ++i) {
            INFO(report.checks[i].name << ": " << report.checks[i].residual << " " << report.checks[i].detail);
            CHECK(report.checks[i].name == check_names()[i]);
            CHECK(report.checks[i].status != CheckStatus::Fail);
        }
        CHECK(report.all_pass());
    }
}

TEST_CASE("reports are deterministic") {
    auto a = full_report(kRche), b = full_report(kRche);
    for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].residual == b.checks[i].residual);
}

TEST_CASE("negative controls") {
    ValidationConfig cfg;
    auto c = connection_matrix(kHe, Method::CF);
    CHECK(verify_connection_identity(c, cfg.z_list, 400, 1e-9).passed());
    CHECK_FALSE(verify_connection_identity(perturbed(c), cfg.z_list, 400, 1e-9).passed());
    CHECK_FALSE(verify_determinant(perturbed(c), 1e-10).passed());
    CHECK_FALSE(verify_monodromy(perturbed(c), 1e-8).passed());

    std::vector<ConnectionMatrix> ladder;
    for (double lam : cfg.sigma_lambdas) ladder.push_back(connection_matrix(kHe.with_lambda(lam), Method::CF));
    CHECK(verify_sigma_expansion(ladder, 1e-3).passed());
    ladder[1] = perturbed(ladder[1], 1, 1);
    CHECK_FALSE(verify_sigma_expansion(ladder, 1e-3).passed());

    std::vector<ConnectionMatrix> ms{c, connection_matrix(kHe, Method::Recurrence)};
    CHECK(verify_method_agreement(ms, 1e-8, 1e-6).passed());
    ms[1] = perturbed(ms[1], 1, 0);
    CHECK_FALSE(verify_method_agreement(ms, 1e-8, 1e-6).passed());

    auto cfd = closed_form_data(kRche, cfg);
    CHECK(verify_closed_forms(cfd).passed());
    cfd.numeric[1] *= 1.01;
    CHECK_FALSE(verify_closed_forms(cfd).passed());

    auto ld = che_as_he_limit_data(kChe, {1e3, 1e4}, {});
    CHECK(verify_che_as_he_limit(ld, 1e-3).passed());
    ld.che *= 1.01;
    CHECK_FALSE(verify_che_as_he_limit(ld, 1e-3).passed());

    auto r = connection_matrix(kRche, Method::CF);
    auto rr = connection_matrix(reflected_spec(kRche), Method::CF);
    CHECK(verify_reflection(r, rr, 1e-9).passed());
    CHECK_FALSE(verify_reflection(r, perturbed(rr, 0, 0), 1e-9).passed());
}

TEST_CASE("reflection transforms are certified") {
    CHECK(certify_reflection(kRche) < 1e-10);
    CHECK(certify_reflection(kChe) < 1e-10);
    CHECK(certify_reflection(EquationSpec::che({0.1, 0.05}, {0.2, -0.1}, {0.3, 0.2}, {0.3, 0.1}, {0.2, 0.1})) < 1e-10);
    auto twice = reflected_spec(reflected_spec(kChe));
    CHECK(std::abs(twice.omega * twice.omega - kChe.omega * kChe.omega) < 1e-15);
    CHECK(twice.lambda == kChe.lambda);
    CHECK_THROWS_AS(certify_reflection(kHe), Error);
}

TEST_CASE("che limit convenience overload") {
    auto r = verify_che_as_he_limit(kChe, 1e4);
    CHECK(r.passed());
    CHECK(r.residual < 1e-3);
}

TEST_CASE("degenerate inputs surface as failed checks") {
    auto report = full_report(EquationSpec::rche(0.1, 0.2, 0.5 - 1e-13, 0.1));
    CHECK_FALSE(report.all_pass());
    bool saw = false;
    for (const auto& c : report.checks)
        if (c.detail.find("ParameterResonance") != std::string::npos) saw = true;
    CHECK(saw);

    ValidationConfig cfg;
    cfg.route.tol = 1e-20;
    auto tight = full_report(kRche, cfg);
    CHECK_FALSE(tight.all_pass());
    bool slow = false;
    for (const auto& c : tight.checks)
        if (c.detail.find("SlowConvergence") != std::string::npos) slow = true;
    CHECK(slow);
}
