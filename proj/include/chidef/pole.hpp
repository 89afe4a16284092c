#pragma once

#include "chidef/lambda_poly.hpp"
#include "chidef/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace chidef {

// Pole multidegree along pairwise diagonals: edge {i,j} (i<j, 0-based slots)
// -> order of the pole (z_i - z_j)^{-order}.
using PolePattern = std::map<std::pair<std::size_t, std::size_t>, unsigned>;

inline unsigned total_pole_order(const PolePattern& p) {
    unsigned t = 0;
    for (const auto& [e, m] : p) t += m;
    return t;
}

namespace pole_detail {

// Straightening to the canonical (no-broken-circuit) form: two pole edges
// sharing their larger endpoint, (i,k) and (j,k) with i<j<k, satisfy
//   1/(z_ik z_jk) = 1/(z_ij z_jk) - 1/(z_ij z_ik).
inline void straighten(const PolePattern& p, const Rational& c,
                       std::map<PolePattern, Rational>& out) {
    // find a violating pair
    for (auto it = p.begin(); it != p.end(); ++it) {
        auto jt = it;
        ++jt;
        for (; jt != p.end(); ++jt) {
            if (it->first.second != jt->first.second) continue;
            std::size_t i = it->first.first, j = jt->first.first, k = it->first.second;
            // i < j since the map is ordered
            PolePattern base = p;
            if (--base[{i, k}] == 0) base.erase({i, k});
            if (--base[{j, k}] == 0) base.erase({j, k});
            PolePattern p1 = base;
            ++p1[{i, j}];
            ++p1[{j, k}];
            straighten(p1, c, out);
            PolePattern p2 = base;
            ++p2[{i, j}];
            ++p2[{i, k}];
            straighten(p2, -c, out);
            return;
        }
    }
    auto [pos, inserted] = out.try_emplace(p, c);
    if (!inserted) {
        pos->second += c;
        if (pos->second.is_zero()) out.erase(pos);
    }
}

} // namespace pole_detail

inline std::map<PolePattern, Rational> straighten_pole(const PolePattern& p, const Rational& c) {
    std::map<PolePattern, Rational> out;
    pole_detail::straighten(p, c, out);
    return out;
}

// canonical = no two edges share their larger endpoint (increasing forest)
inline bool pole_canonical(const PolePattern& p) {
    std::vector<std::size_t> larger;
    for (const auto& [e, m] : p) larger.push_back(e.second);
    std::sort(larger.begin(), larger.end());
    return std::adjacent_find(larger.begin(), larger.end()) == larger.end();
}

namespace pole_detail {

inline void enumerate_monomials(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                std::size_t at, unsigned left, PolePattern& cur,
                                std::vector<PolePattern>& out) {
    if (at == edges.size()) {
        if (left == 0) out.push_back(cur);
        return;
    }
    enumerate_monomials(edges, at + 1, left, cur, out);
    for (unsigned m = 1; m <= left; ++m) {
        cur[edges[at]] = m;
        enumerate_monomials(edges, at + 1, left - m, cur, out);
        cur.erase(edges[at]);
    }
}

} // namespace pole_detail

// All pole monomials whose straightened form contains the canonical pattern
// c, with the coefficient it appears with. Straightening preserves the vertex
// set and the total order, so the search space is finite. Used to extend a
// value table from the canonical basis to every monomial.
inline const std::vector<std::pair<PolePattern, Rational>>& anti_straighten(const PolePattern& c) {
    static std::map<PolePattern, std::vector<std::pair<PolePattern, Rational>>> cache;
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    std::vector<std::size_t> verts;
    for (const auto& [e, m] : c) {
        verts.push_back(e.first);
        verts.push_back(e.second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b)
            edges.emplace_back(verts[a], verts[b]);
    std::vector<PolePattern> monos;
    PolePattern cur;
    pole_detail::enumerate_monomials(edges, 0, total_pole_order(c), cur, monos);
    std::vector<std::pair<PolePattern, Rational>> out;
    for (const auto& q : monos) {
        auto s = straighten_pole(q, Rational(1));
        auto jt = s.find(c);
        if (jt != s.end() && !jt->second.is_zero()) out.emplace_back(q, jt->second);
    }
    return cache.emplace(c, std::move(out)).first->second;
}

// d/dz_a of the pole monomial; returns (pattern, coefficient) pairs (already
// canonical: differentiation preserves the forest property... it only deepens
// existing edges, so re-straightening is unnecessary).
inline std::vector<std::pair<PolePattern, Rational>> d_z(const PolePattern& p, std::size_t a) {
    std::vector<std::pair<PolePattern, Rational>> out;
    for (const auto& [e, m] : p) {
        if (e.first != a && e.second != a) continue;
        long sign = (e.first == a) ? 1 : -1; // d/dz_a (z_i - z_j) for a=i / a=j
        PolePattern q = p;
        ++q[e];
        out.emplace_back(std::move(q), Rational(-long(m) * sign));
    }
    return out;
}

// relabel slots by a permutation; flipped edge orientation contributes
// (-1)^order
inline std::pair<PolePattern, int> permute_pole(const PolePattern& p, const Permutation& sigma) {
    PolePattern q;
    int sign = 1;
    for (const auto& [e, m] : p) {
        std::size_t a = sigma.img[e.first], b = sigma.img[e.second];
        if (a > b) {
            std::swap(a, b);
            if (m % 2) sign = -sign;
        }
        q[{a, b}] += m;
    }
    return {q, sign};
}

// relabel slots by an injective slot map (for compositions)
inline PolePattern relabel_pole(const PolePattern& p, const std::vector<std::size_t>& slot_map) {
    PolePattern q;
    int dummy = 1;
    (void)dummy;
    for (const auto& [e, m] : p) {
        std::size_t a = slot_map[e.first], b = slot_map[e.second];
        if (a > b) std::swap(a, b); // slot maps used here are monotone per block
        q[{a, b}] += m;
    }
    return q;
}

} // namespace chidef
