#pragma once

#include <complex>
#include <cstdlib>
#include <string>
#include <string_view>

#include <boost/multiprecision/complex128.hpp>

namespace heun {

/// Default working scalar: a binary64 complex pair.
using Complex = std::complex<double>;

/// Quad-precision complex (113-bit mantissa) used by the recurrence and
/// continued-fraction kernels when high precision is requested.
using ComplexHP = boost::multiprecision::complex128;

enum class Precision { Double, High };

inline std::string_view to_string(Precision p) {
    return p == Precision::Double ? "double" : "high";
}

/// Unit roundoff of the active backend.
inline double unit_roundoff(Precision p) {
    return p == Precision::Double ? 1.1102230246251565e-16 : 9.6296497219361793e-35;
}

/// Reads HEUN_PRECISION ("double" | "high"); anything else yields `fallback`.
inline Precision precision_from_env(Precision fallback) {
    const char* env = std::getenv("HEUN_PRECISION");
    if (!env) return fallback;
    std::string_view v(env);
    if (v == "double") return Precision::Double;
    if (v == "high") return Precision::High;
    return fallback;
}

inline double magnitude(double x) { return x < 0 ? -x : x; }
inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const ComplexHP& z) { return static_cast<double>(abs(z)); }

template <class Cx>
Cx to_scalar(const Complex& z);

template <>
inline Complex to_scalar<Complex>(const Complex& z) { return z; }

template <>
inline ComplexHP to_scalar<ComplexHP>(const Complex& z) {
    return ComplexHP(z.real(), z.imag());
}

inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(const ComplexHP& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class Cx>
constexpr Precision precision_of() {
    return std::is_same_v<Cx, Complex> ? Precision::Double : Precision::High;
}

}  // namespace heun
