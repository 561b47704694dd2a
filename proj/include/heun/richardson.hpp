#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "heun/scalar.hpp"

namespace heun {

template <class T>
struct Extrapolation {
    T value{};
    double error = 0.0;      // magnitude of the last correction
    bool contracted = true;  // corrections shrink along the diagonal
};

// Richardson extrapolation of samples S(h_j), h_j = h_0 / ratio^j, assuming
// S(h) = S(0) + a_1 h + a_2 h^2 + ... . The full Neville table is built; the
// bottom-right entry is returned. `floor` is the absolute level below which
// corrections are regarded as roundoff and not required to contract.
template <class T>
Extrapolation<T> richardson(std::span<const T> samples, double ratio = 2.0, double floor = 0.0) {
    Extrapolation<T> out;
    const std::size_t n = samples.size();
    if (n == 0) return out;
    std::vector<T> row(samples.begin(), samples.end());
    std::vector<T> diagonal{row.back()};
    for (std::size_t m = 1; m < n; ++m) {
        const double f = std::pow(ratio, static_cast<double>(m));
        std::vector<T> next(row.size() - 1);
        for (std::size_t j = 0; j + 1 < row.size(); ++j)
            next[j] = (T(f) * row[j + 1] - row[j]) / T(f - 1.0);
        row = std::move(next);
        diagonal.push_back(row.back());
    }
    out.value = diagonal.back();
    if (n >= 2) out.error = magnitude(T(diagonal[n - 1] - diagonal[n - 2]));
    if (n >= 3) {
        const double prev = magnitude(T(diagonal[n - 2] - diagonal[n - 3]));
        out.contracted = out.error <= prev || out.error <= floor;
    }
    return out;
}

template <class T>
Extrapolation<T> richardson(const std::vector<T>& samples, double ratio = 2.0, double floor = 0.0) {
    return richardson(std::span<const T>(samples), ratio, floor);
}

}  // namespace heun
