#include "heun/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "heun/errors.hpp"

namespace heun::sf {
namespace {

// Godfrey's coefficients for g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

// B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

void check_pole(Complex z, const char* what) {
    if (near_pole(z)) {
        std::ostringstream os;
        os << what << " evaluated at " << z << ", within " << kPoleTolerance
           << " of a non-positive integer";
        fail(ErrorKind::PoleError, os.str());
    }
}

// log Gamma for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
    const Complex base = z + kLanczosG + 0.5;
    Complex series = kLanczos[0];
    for (std::size_t j = 1; j < kLanczos.size(); ++j) series += kLanczos[j] / (z + static_cast<double>(j));
    return (z + 0.5) * std::log(base) - base + 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series) -
           std::log(z);
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

bool near_pole(Complex z) {
    if (z.real() > 0.5) return false;
    const double nearest = std::round(z.real());
    return nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < kPoleTolerance;
}

Complex log_gamma(Complex z) {
    check_pole(z, "log_gamma");
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    // Shift upwards; each principal log keeps its cut on the negative axis, so
    // the sum is continuous off (-inf, 0].
    const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
    Complex correction = 0.0;
    for (int k = 0; k < shift; ++k) correction += std::log(z + static_cast<double>(k));
    return lanczos_log_gamma(z + static_cast<double>(shift)) - correction;
}

Complex gamma(Complex z) {
    check_pole(z, "gamma");
    if (z.real() >= 0.5) return std::exp(lanczos_log_gamma(z));
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * std::exp(lanczos_log_gamma(1.0 - z)));
}

Complex polygamma(int n, Complex z) {
    if (n < 0 || n > kMaxPolygammaOrder) {
        fail(ErrorKind::OrderError, "polygamma order " + std::to_string(n) + " outside [0, 16]");
    }
    check_pole(z, "polygamma");

    // Argument shift: psi^(n)(z) = psi^(n)(z+1) - (-1)^n n! / z^(n+1).
    const double threshold = 12.0 + n;
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    const double n_fact = factorial(n);
    Complex shifted = 0.0;
    while (z.real() < threshold) {
        shifted += 1.0 / std::pow(z, n + 1);
        z += 1.0;
    }

    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex asym;
    if (n == 0) {
        asym = std::log(z) - 0.5 * inv;
        Complex p = inv2;
        for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
            const Complex term = kBernoulli[k - 1] / (2.0 * k) * p;
            asym -= term;
            if (std::abs(term) < 1e-18 * std::abs(asym)) break;
            p *= inv2;
        }
    } else {
        Complex p = std::pow(inv, n);
        Complex sum = factorial(n - 1) * p + 0.5 * n_fact * p * inv;
        p *= inv2;
        for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
            const double coeff = kBernoulli[k - 1] * factorial(2 * static_cast<int>(k) + n - 1) /
                                 factorial(2 * static_cast<int>(k));
            const Complex term = coeff * p;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            p *= inv2;
        }
        asym = -sign_n * sum;
    }
    return asym - sign_n * n_fact * shifted;
}

}  // namespace heun::sf
