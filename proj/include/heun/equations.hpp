#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heun/errors.hpp"
#include "heun/scalar.hpp"

namespace heun {

enum class Family { Hypergeometric, RCHE, CHE, Heun };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// Monodromy exponents, accessory parameter and coupling of one equation.
///
/// Family-specific exponents are optional: theta_t and theta_inf belong to
/// HE, theta_star to CHE, and the hypergeometric family stores its
/// exponent at infinity in theta_inf. For HE the coupling is lambda = 1/t.
struct EquationSpec {
    Family family = Family::RCHE;
    Complex theta0{};
    Complex theta1{};
    std::optional<Complex> theta_t;
    std::optional<Complex> theta_inf;
    std::optional<Complex> theta_star;
    Complex omega{};
    Complex lambda{};

    static EquationSpec hypergeometric(Complex theta0, Complex theta1, Complex theta_inf);
    static EquationSpec rche(Complex theta0, Complex theta1, Complex omega, Complex lambda);
    static EquationSpec che(Complex theta0, Complex theta1, Complex theta_star, Complex omega, Complex lambda);
    static EquationSpec heun(Complex theta0, Complex theta1, Complex theta_t, Complex theta_inf, Complex omega,
                             Complex lambda);

    /// The exponent entering F_cl and the lambda = 0 hypergeometric limit:
    /// omega, or theta_inf for the hypergeometric family.
    Complex accessory() const;

    EquationSpec with_thetas(Complex t0, Complex t1) const;
    EquationSpec with_lambda(Complex lam) const;
};

inline constexpr double kHalfIntegerTolerance = 1e-10;
inline constexpr double kAccessoryResonanceTolerance = 1e-12;

/// Throws ResonantExponents, DomainError or FamilyFieldError.
void validate(const EquationSpec& spec);

template <class Cx>
struct AlphaBeta {
    Cx alpha;
    Cx beta;
};

/// Generator k -> (alpha_k, beta_k) of the three-term recurrence
/// a_{k+1} - a_k = -lambda (alpha_k a_k + beta_k a_{k-1}).
/// Formulas are the closed forms for each family; alpha vanishes for RCHE and
/// the hypergeometric family, and beta_0 = 0 for every family.
template <class Cx>
class CoefficientSequence {
public:
    explicit CoefficientSequence(const EquationSpec& spec);

    AlphaBeta<Cx> operator()(long k) const;

    /// (k + 1/2 - theta0 + theta1)^2 - omega^2; throws AccessoryResonance near 0.
    Cx denominator(long k) const;

    Family family() const { return family_; }
    const Cx& lambda() const { return lambda_; }

private:
    Family family_;
    Cx t0_, shift_, omega2_, lambda_;
    Cx a_shift_;  // alpha numerator offset (1/2 - theta0 - theta_t, or 1/2 - theta0 - theta_star)
    Cx b_shift_;  // beta numerator offset (-theta0 + theta1 - theta_t, or ... - theta_star)
    Cx t0sq_plus_tinf2_minus_om2_;
    Cx tinf2_;
};

extern template class CoefficientSequence<Complex>;
extern template class CoefficientSequence<ComplexHP>;

std::pair<Complex, Complex> alpha_beta(const EquationSpec& spec, long k);

/// Taylor recurrence of the canonical-form solution u(z) = 1 + sum u_k z^k:
///   (k+1)(k+1-2 theta0) u_{k+1} = (D_k - lambda A_k) u_k - lambda B_k u_{k-1}.
/// A_k and B_k come from the canonical ODE of each family, independently of
/// CoefficientSequence.
template <class Cx>
class CanonicalRecurrence {
public:
    explicit CanonicalRecurrence(const EquationSpec& spec);

    Cx step(long k, const Cx& u_k, const Cx& u_km1) const;

    /// Same step with lambda forced to zero (the hypergeometric comparison sequence).
    Cx step_unperturbed(long k, const Cx& u_k) const;

private:
    Family family_;
    Cx t0_, t1_, tt_, tinf_, ts_, omega_, lambda_;
    Cx leading(long k) const;
    Cx hyp_factor(long k) const;
};

extern template class CanonicalRecurrence<Complex>;
extern template class CanonicalRecurrence<ComplexHP>;

Complex canonical_recurrence_step(const EquationSpec& spec, long k, Complex u_k, Complex u_km1);

/// u_0 .. u_K of the canonical solution.
std::vector<Complex> canonical_coefficients(const EquationSpec& spec, long K);

/// a_k = u_k / u_k^{lambda=0}, k = 0..K.
std::vector<Complex> rescaled_a(const EquationSpec& spec, long K);

/// Normal-form potential P(z) of psi'' + P(z) psi = 0.
Complex normal_form_potential(const EquationSpec& spec, Complex z);

bool is_half_integer(Complex x, double tol = kHalfIntegerTolerance);

}  // namespace heun
