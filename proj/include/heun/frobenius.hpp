#pragma once

#include <vector>

#include "heun/equations.hpp"

namespace heun {

enum class Point { Zero, One };
enum class Sign { Plus, Minus };

inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// Local solution at z = 0 or z = 1 of psi'' + P psi = 0:
///   at 0: z^{1/2 - s theta0} sum c_k z^k
///   at 1: (1 - z)^{1/2 - s theta1} sum c_k (z - 1)^k
/// with c_0 = 1 and s = +1 or -1.
class FrobeniusSolution {
public:
    FrobeniusSolution(EquationSpec spec, Point point, Sign sign, std::vector<Complex> coeffs);

    Complex evaluate(Complex z) const;
    Complex evaluate_deriv(Complex z) const;
    Complex evaluate_second_deriv(Complex z) const;

    /// Distance from the expansion point to the nearest other singularity.
    double radius() const;

    /// Bound on the truncation tail at z from the last two coefficients and a
    /// geometric majorant with ratio |x| / radius.
    double tail_tol(Complex z) const;

    const std::vector<Complex>& coefficients() const { return c_; }
    Complex exponent() const { return rho_; }
    Point point() const { return point_; }
    Sign sign() const { return sign_; }
    const EquationSpec& spec() const { return spec_; }

private:
    EquationSpec spec_;
    Point point_;
    Sign sign_;
    Complex rho_;
    std::vector<Complex> c_;

    // base = z at 0, 1 - z at 1; S, S', S'' are the series and its x-derivatives.
    void series(Complex z, Complex& s0, Complex& s1, Complex& s2) const;
    Complex base(Complex z) const;
};

/// Series with n + 1 coefficients.
FrobeniusSolution frobenius_series(const EquationSpec& spec, Point point, Sign sign, int n);

inline constexpr int kMaxFrobeniusTerms = 10000;

/// Chooses the number of terms so that the estimated tail at z is below tol.
/// Throws RadiusError outside the disc and TailError past kMaxFrobeniusTerms.
FrobeniusSolution frobenius_series_adaptive(const EquationSpec& spec, Point point, Sign sign, Complex z,
                                            double tol = 1e-15);

/// f g' - f' g at z.
Complex wronskian(const FrobeniusSolution& f, const FrobeniusSolution& g, Complex z);

/// |psi'' + P psi| / max(|psi''|, |P psi|) at z.
double ode_residual(const FrobeniusSolution& f, Complex z);

}  // namespace heun
