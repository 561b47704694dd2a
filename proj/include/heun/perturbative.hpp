#pragma once

#include <vector>

#include "heun/equations.hpp"

namespace heun {

/// Truncated power series c_0 + c_1 x + ... + c_N x^N.
class Jet {
public:
    explicit Jet(int order, Complex constant = 0.0);
    Jet(std::vector<Complex> coeffs);

    static Jet variable(int order);  // x

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex& operator[](int n) { return c_[n]; }
    const Complex& operator[](int n) const { return c_[n]; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(Complex s);

private:
    std::vector<Complex> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(Jet a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(Complex s, Jet a);
/// JetDivByZero when b[0] vanishes.
Jet operator/(const Jet& a, const Jet& b);
Jet inverse(const Jet& a);
/// Requires a[0] = 1.
Jet log(const Jet& a);
/// Requires a[0] = 0.
Jet exp(const Jet& a);

inline constexpr int kMaxPerturbativeOrder = 8;

struct PerturbativeOptions {
    double tol = 1e-9;
    long k_base = 10000;  // partial sums at k_base * {1, 2, 4, 8}
};

/// c_1..c_N of ln a_infinity = sum c_n lambda^n (lambda in the spec is ignored).
/// HE includes the -ln(1 - lambda) term.
std::vector<Complex> c_coefficients(const EquationSpec& spec, int N, const PerturbativeOptions& opts = {});

/// Closed forms in digamma and trigamma for RCHE.
Complex c1_closed_rche(const EquationSpec& spec);
Complex c2_closed_rche(const EquationSpec& spec);

/// First-order coefficient of ln C / F_cl in 1/t for HE, and c_1 = 1/2 - theta_t + f_1.
Complex f1_closed_he(const EquationSpec& spec);
Complex c1_closed_he(const EquationSpec& spec);

/// First-order shift of the composite exponent, sigma = omega + sigma_1 / t + ... .
Complex sigma1_closed(const EquationSpec& spec);

}  // namespace heun
