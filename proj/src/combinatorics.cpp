#include "heun/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "heun/richardson.hpp"

namespace heun {

int Composition::n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::vector<Composition> compositions(int n) {
    if (n < 1 || n > kMaxCompositionSize)
        fail(ErrorKind::SizeError, "composition size must lie in [1, " + std::to_string(kMaxCompositionSize) + "]");
    std::vector<Composition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            out.push_back({cur});
            return;
        }
        for (int p = 1; p <= rest; ++p) {
            cur.push_back(p);
            self(self, rest - p);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

Composition walk_type(const Walk& w) {
    std::map<int, int> counts;  // y - x at the start of each vertical edge
    int level = 0;
    for (Step s : w.steps) {
        if (s == Step::Up) {
            ++counts[level];
            ++level;
        } else {
            --level;
        }
    }
    Composition mu;
    for (auto [lvl, c] : counts) mu.parts.push_back(c);
    return mu;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t n_mu(const Composition& mu) {
    if (mu.parts.empty()) fail(ErrorKind::SizeError, "empty composition");
    for (int p : mu.parts)
        if (p < 1) fail(ErrorKind::SizeError, "composition parts must be positive");
    const int n = mu.n();
    if (n > kMaxCompositionSize)
        fail(ErrorKind::SizeError, "composition size must not exceed " + std::to_string(kMaxCompositionSize));
    std::uint64_t prod = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t m = 0; m + 1 < mu.parts.size(); ++m)
        prod *= binomial(mu.parts[m] + mu.parts[m + 1] - 1, mu.parts[m + 1]);
    return prod / static_cast<std::uint64_t>(mu.parts[0]);
}

std::map<Composition, std::uint64_t> enumerate_walk_types(int n) {
    if (n < 1 || n > kMaxEnumerationSize)
        fail(ErrorKind::SizeError, "walk enumeration size must lie in [1, " + std::to_string(kMaxEnumerationSize) + "]");
    std::map<Composition, std::uint64_t> counts;
    Walk w;
    w.steps.resize(2 * n);
    for (std::uint32_t mask = 0; mask < (1u << (2 * n)); ++mask) {
        if (std::popcount(mask) != n) continue;
        for (int i = 0; i < 2 * n; ++i) w.steps[i] = (mask >> i) & 1u ? Step::Up : Step::Right;
        ++counts[walk_type(w)];
    }
    return counts;
}

namespace {

void require_rche(const EquationSpec& spec) {
    if (spec.family != Family::RCHE) fail(ErrorKind::FamilyFieldError, "trace formula is defined for RCHE");
}

std::vector<Complex> beta_table(const EquationSpec& spec, long K) {
    CoefficientSequence<Complex> seq(spec);
    std::vector<Complex> beta(static_cast<std::size_t>(K + 1), 0.0);
    for (long k = 1; k <= K; ++k) beta[k] = seq(k).beta;
    return beta;
}

// Partial sums at each K in ks (ascending).
std::vector<Complex> trace_partials(int n, const std::vector<Complex>& beta, const std::vector<long>& ks) {
    const auto comps = compositions(n);
    std::vector<Complex> weights;
    for (const auto& mu : comps) weights.push_back(static_cast<double>(n_mu(mu)));
    std::vector<Complex> out;
    Complex sum = 0.0;
    long done = 0;  // terms with top index <= done are included
    for (long K : ks) {
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& parts = comps[c].parts;
            const long l = static_cast<long>(parts.size());
            // add k with done < k + l - 1 <= K
            for (long k = std::max(1L, done - l + 2); k + l - 1 <= K; ++k) {
                Complex term = weights[c];
                for (long m = 0; m < l; ++m) {
                    Complex b = beta[k + m];
                    for (int p = 1; p < parts[m]; ++p) b *= beta[k + m];
                    term *= b;
                }
                sum += term;
            }
        }
        done = K;
        out.push_back(sum);
    }
    return out;
}

}  // namespace

Complex trace_formula_partial(int n, const EquationSpec& spec, long K) {
    require_rche(spec);
    validate(spec);
    return trace_partials(n, beta_table(spec, K), {K}).back();
}

Complex truncated_matrix_trace(int n, const EquationSpec& spec, long K) {
    require_rche(spec);
    validate(spec);
    const std::vector<Complex> beta = beta_table(spec, K);
    Complex tr = 0.0;
    for (long i = 0; i <= K; ++i) {
        const long lo = std::max(0L, i - n), hi = std::min(K, i + static_cast<long>(n));
        std::vector<Complex> v(hi - lo + 1, 0.0), next(v.size());
        v[i - lo] = 1.0;
        for (int step = 0; step < 2 * n; ++step) {
            std::fill(next.begin(), next.end(), 0.0);
            for (long r = lo; r <= hi; ++r) {
                if (r > lo) next[r - lo] += beta[r] * v[r - 1 - lo];
                if (r < hi) next[r - lo] += v[r + 1 - lo];
            }
            v.swap(next);
        }
        tr += v[i - lo];
    }
    return tr;
}

Complex trace_formula(int n, const EquationSpec& spec, long K) {
    require_rche(spec);
    validate(spec);
    if (K < 64) fail(ErrorKind::SizeError, "trace formula needs K >= 64");
    const std::vector<long> ks = {K / 8, K / 4, K / 2, K};
    auto partial = trace_partials(n, beta_table(spec, K), ks);
    auto ex = richardson(partial, 2.0, 1e-13 * std::max(1.0, std::abs(partial.back())));
    if (!ex.contracted) fail(ErrorKind::SlowConvergence, "trace tail extrapolation does not contract");
    return ex.value;
}

}  // namespace heun
