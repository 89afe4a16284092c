#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace chidef {

// Independent dimension count for the cohomology of the deformation complex
// of the free algebra on r generators: classes are spanned by
//   (d^{a_1} e^*_{j_1} ^ ... ^ d^{a_n} e^*_{j_n}) (x) m (x) d^s
// with distinct pairs (j_i, a_i), an output monomial m, and an overall
// translate d^s. The class sits at arity n, internal weight deg(m) - n and
// shift level a_1 + ... + a_n + s + wt(m) - n. Everything here is plain
// counting; no cochain machinery is involved.

// number of monomials in r generators and their translates with exactly
// (degree, weight) as given
inline std::map<std::pair<unsigned, unsigned>, std::size_t>
monomial_counts(unsigned r, unsigned max_deg, unsigned max_wt) {
    // complete knapsack over the variables x_{j,a}, weight a
    std::map<std::pair<unsigned, unsigned>, std::size_t> cnt;
    cnt[{0, 0}] = 1;
    for (unsigned j = 0; j < r; ++j)
        for (unsigned a = 0; a <= max_wt; ++a)
            for (unsigned d = 1; d <= max_deg; ++d)
                for (unsigned w = a; w <= max_wt; ++w) {
                    auto it = cnt.find({d - 1, w - a});
                    if (it == cnt.end()) continue;
                    cnt[{d, w}] += it->second;
                }
    return cnt;
}

// expected cohomology dimension at arity n, internal weight w and shift
// level t0, so that a_1 + ... + a_n + s + wt(m) = t0 + n and deg(m) = w + n
// truncated count: additionally require a_1 + ... + a_n + s <= lam_max (the
// lambda-degree bound of the window; a class realizes each a_i as a slot
// lambda power and s as a power of the total lambda sum) and wt(m) <= wt_max
// (the output side of the symmetric-weight window); negative caps disable
inline std::size_t koszul_dimension(unsigned r, std::size_t n, int w, int t0, int lam_max,
                                    int wt_max) {
    int dm = w + int(n);
    if (dm < 0) return 0;
    int cap = t0 + int(n);
    if (cap < 0) return 0;
    unsigned T = unsigned(cap);

    // subsets of size n of the pair set {(j, a) : j < r, a <= T}, tallied
    // by total translate order (0/1-knapsack, each pair at most once)
    std::vector<std::vector<std::size_t>> dp(n + 1, std::vector<std::size_t>(T + 1, 0));
    dp[0][0] = 1;
    for (unsigned j = 0; j < r; ++j)
        for (unsigned a = 0; a <= T; ++a)
            for (std::size_t k = n; k >= 1; --k)
                for (unsigned t = T; t >= a; --t) {
                    dp[k][t] += dp[k - 1][t - a];
                    if (t == a) break;
                }

    auto monos = monomial_counts(r, unsigned(dm), T);

    // s = T - sigma - wt(m) is then determined; it only has to be >= 0
    std::size_t total = 0;
    for (unsigned sigma = 0; sigma <= T; ++sigma) {
        if (dp[n][sigma] == 0) continue;
        for (unsigned wm = 0; sigma + wm <= T; ++wm) {
            if (wt_max >= 0 && wm > unsigned(wt_max)) continue;
            if (lam_max >= 0 && T - wm > unsigned(lam_max)) continue;
            auto it = monos.find({unsigned(dm), wm});
            if (it != monos.end()) total += dp[n][sigma] * it->second;
        }
    }
    return total;
}

inline std::size_t koszul_dimension(unsigned r, std::size_t n, int w, int t0) {
    return koszul_dimension(r, n, w, t0, -1, -1);
}

} // namespace chidef
