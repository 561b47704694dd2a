#pragma once

#include "heun/scalar.hpp"

// Complex gamma-family functions used by the connection prefactors and the
// closed-form perturbative references. Binary64 only.
namespace heun::sf {

/// Distance to the nearest non-positive integer below which an argument is
/// treated as a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// Highest polygamma order supported.
inline constexpr int kMaxPolygammaOrder = 16;

Complex gamma(Complex z);

/// Continuous log-gamma: analytic off the cut (-inf, 0], equal to the real
/// log-gamma on the positive axis.
Complex log_gamma(Complex z);

/// psi^(n)(z), n <= 16.
Complex polygamma(int n, Complex z);

inline Complex digamma(Complex z) { return polygamma(0, z); }

/// (x)_k = x(x+1)...(x+k-1) by direct product; (x)_0 = 1.
template <class Cx>
Cx pochhammer(const Cx& x, unsigned k) {
    Cx p(1.0);
    for (unsigned j = 0; j < k; ++j) p *= x + Cx(static_cast<double>(j));
    return p;
}

bool near_pole(Complex z);

}  // namespace heun::sf
