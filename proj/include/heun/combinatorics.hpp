#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "heun/equations.hpp"

namespace heun {

struct Composition {
    std::vector<int> parts;

    int n() const;
    int length() const { return static_cast<int>(parts.size()); }
    auto operator<=>(const Composition&) const = default;
};

enum class Step { Right, Up };

struct Walk {
    std::vector<Step> steps;

    int n() const { return static_cast<int>(steps.size()) / 2; }
};

inline constexpr int kMaxCompositionSize = 16;
inline constexpr int kMaxEnumerationSize = 8;

/// All 2^{n-1} compositions of n in lexicographic order.
std::vector<Composition> compositions(int n);

/// Intersection counts of the vertical edges with the diagonals y - x + 1/2,
/// diagonals ordered by increasing y - x.
Composition walk_type(const Walk& w);

std::uint64_t binomial(int n, int k);

/// (2n / mu_1) prod_m binom(mu_m + mu_{m+1} - 1, mu_{m+1}).
std::uint64_t n_mu(const Composition& mu);

/// Counts of all binom(2n, n) walks bucketed by type.
std::map<Composition, std::uint64_t> enumerate_walk_types(int n);

/// sum_{k=1}^{K - l + 1} sum_mu N_mu beta_k^{mu_1} ... beta_{k+l-1}^{mu_l}: the terms whose
/// indices stay at or below K.
Complex trace_formula_partial(int n, const EquationSpec& spec, long K);

/// Tr A^{2n} of the (K+1)x(K+1) matrix with A_{k,k-1} = beta_k, A_{k-1,k} = 1, by closed walks
/// from each row.
Complex truncated_matrix_trace(int n, const EquationSpec& spec, long K);

/// Tr A^{2n} with the k-sum extrapolated over the ladder K/8, K/4, K/2, K.
Complex trace_formula(int n, const EquationSpec& spec, long K = 20000);

}  // namespace heun
