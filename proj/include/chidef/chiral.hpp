#pragma once

#include "chidef/pole.hpp"
#include "chidef/star_operation.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace chidef {

// Raised when a result leaves the configured truncation window. Distinct from
// logic errors: callers may widen the window and retry.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// n-ary chiral operation between free translation D-modules. A term is a
// pole pattern along the pairwise diagonals together with a lambda-polynomial
// table on generator tuples; tables attached to different patterns are
// independent data. Patterns are kept in the canonical straightened form.
class ChiralCochain {
public:
    using Key = std::vector<std::size_t>;
    using Cell = std::pair<Key, PolePattern>;

    ChiralCochain(std::vector<ModulePtr> sources, ModulePtr target, int degree)
        : sources_(std::move(sources)), target_(std::move(target)), degree_(degree) {}

    std::size_t arity() const { return sources_.size(); }
    const std::vector<ModulePtr>& sources() const { return sources_; }
    const ModulePtr& target() const { return target_; }
    int degree() const { return degree_; }
    const std::map<Cell, LambdaPoly>& table() const { return table_; }

    bool is_zero() const {
        for (const auto& [c, p] : table_)
            if (!p.is_zero()) return false;
        return true;
    }

    unsigned max_pole_order() const {
        unsigned t = 0;
        for (const auto& [c, p] : table_)
            if (!p.is_zero()) t = std::max(t, total_pole_order(c.second));
        return t;
    }

    unsigned max_lambda_degree() const {
        unsigned t = 0;
        for (const auto& [c, p] : table_)
            t = std::max(t, p.lambda_degree());
        return t;
    }

    int slot_degree(std::size_t slot, const Key& k) const {
        return sources_[slot]->basis()[k[slot]].degree;
    }

    // add a single term; the table is indexed by canonical pole monomials,
    // and the value at any other monomial is determined by straightening, so
    // assignments at non-canonical patterns carry no independent data and
    // are dropped
    void add_term(const Key& k, const PolePattern& pole, const std::vector<unsigned>& lexp,
                  std::size_t out_gen, const Rational& coeff) {
        validate_key(k);
        if (lexp.size() != arity()) throw std::invalid_argument("ChiralCochain: exponent arity");
        if (!pole_canonical(pole)) return;
        auto it = table_.find({k, pole});
        if (it == table_.end()) {
            LambdaPoly p(arity(), target_);
            p.add_term(lexp, out_gen, coeff);
            if (!p.is_zero()) table_.emplace(Cell{k, pole}, std::move(p));
        } else {
            it->second.add_term(lexp, out_gen, coeff);
            if (it->second.is_zero()) table_.erase(it);
        }
    }

    void add_cell(const Key& k, const PolePattern& pole, const LambdaPoly& p) {
        for (const auto& [e, c] : p.terms()) add_term(k, pole, e.first, e.second, c);
    }

    LambdaPoly cell_value(const Key& k, const PolePattern& pole) const {
        auto it = table_.find({k, pole});
        return it == table_.end() ? LambdaPoly(arity(), target_) : it->second;
    }

    ChiralCochain& operator+=(const ChiralCochain& o) {
        check_same_shape(o);
        for (const auto& [c, p] : o.table_) add_cell(c.first, c.second, p);
        return *this;
    }
    ChiralCochain& operator-=(const ChiralCochain& o) {
        check_same_shape(o);
        for (const auto& [c, p] : o.table_) {
            auto q = p;
            q *= Rational(-1);
            add_cell(c.first, c.second, q);
        }
        return *this;
    }
    ChiralCochain& operator*=(const Rational& c) {
        if (c.is_zero()) { table_.clear(); return *this; }
        for (auto& [k, p] : table_) p *= c;
        return *this;
    }
    friend ChiralCochain operator+(ChiralCochain a, const ChiralCochain& b) { return a += b; }
    friend ChiralCochain operator-(ChiralCochain a, const ChiralCochain& b) { return a -= b; }
    friend ChiralCochain operator*(ChiralCochain a, const Rational& c) { return a *= c; }

    bool operator==(const ChiralCochain& o) const {
        if (arity() != o.arity() || !(*target_ == *o.target_)) return false;
        for (std::size_t i = 0; i < arity(); ++i)
            if (!(*sources_[i] == *o.sources_[i])) return false;
        ChiralCochain d = *this;
        d -= o;
        return d.is_zero();
    }

    // simultaneous permutation of argument slots, lambda variables and pole
    // pattern; pole edges flipped against their orientation contribute signs.
    // The permuted value at a canonical monomial B is the value at
    // sigma^{-1}(B), which need not be canonical: the table is extended to
    // all monomials first, relabeled, and restricted back.
    ChiralCochain permute(const Permutation& sigma, bool sign_twist) const {
        if (sigma.size() != arity()) throw std::invalid_argument("permute: size mismatch");
        std::vector<ModulePtr> src(arity());
        for (std::size_t i = 0; i < arity(); ++i) src[sigma.img[i]] = sources_[i];
        ChiralCochain r(src, target_, degree_);
        for (const auto& [cell, p] : table_) {
            const auto& [k, pole] = cell;
            Key nk(arity());
            std::vector<int> degs(arity());
            for (std::size_t i = 0; i < arity(); ++i) {
                nk[sigma.img[i]] = k[i];
                degs[i] = slot_degree(i, k);
            }
            for (const auto& [mono, scoef] : anti_straighten(pole)) {
                auto [npole, psign] = permute_pole(mono, sigma);
                if (!pole_canonical(npole)) continue;
                LambdaPoly np = p.symmetric_action(sigma, sign_twist, degs);
                np *= psign < 0 ? -scoef : scoef;
                r.add_cell(nk, npole, np);
            }
        }
        return r;
    }

private:
    void validate_key(const Key& k) const {
        if (k.size() != arity()) throw std::invalid_argument("ChiralCochain: key arity");
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] >= sources_[i]->rank())
                throw std::out_of_range("ChiralCochain: generator index");
    }
    void check_same_shape(const ChiralCochain& o) const {
        if (!(arity() == o.arity() && *target_ == *o.target_))
            throw std::invalid_argument("ChiralCochain: shape mismatch");
        for (std::size_t i = 0; i < arity(); ++i)
            if (!(*sources_[i] == *o.sources_[i]))
                throw std::invalid_argument("ChiralCochain: source mismatch");
    }

    std::vector<ModulePtr> sources_;
    ModulePtr target_;
    int degree_;
    std::map<Cell, LambdaPoly> table_;
};

namespace chiral_detail {

inline Rational binom_r(unsigned n, unsigned k) {
    Rational b(1);
    for (unsigned j = 0; j < k; ++j) {
        b *= Rational(long(n - j));
        b *= Rational(long(j + 1)).inverse();
    }
    return b;
}

// working state while composing one pair of table terms: block-local markers
// still available for Taylor consumption, result lambda exponents, and the
// transferred pole factors (current order, assigned result slot)
struct CTerm {
    std::vector<unsigned> nu;
    std::vector<unsigned> le;
    std::vector<unsigned> ord;
    PolePattern emit;
    Rational c;
};

inline void cterm_merge(std::vector<CTerm>& v) {
    std::map<std::tuple<std::vector<unsigned>, std::vector<unsigned>, std::vector<unsigned>,
                        PolePattern>,
             Rational>
        acc;
    for (auto& t : v) {
        auto key = std::make_tuple(t.nu, t.le, t.ord, t.emit);
        auto [it, ins] = acc.try_emplace(std::move(key), t.c);
        if (!ins) it->second += t.c;
    }
    v.clear();
    for (auto& [k, c] : acc) {
        if (c.is_zero()) continue;
        v.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), c});
    }
}

} // namespace chiral_detail

// experiment switches for the dressing conventions in compose_i; the identity
// suite fixes the values
struct ComposeRule {
    bool taylor = true; // distribute outer slot poles over the block
    bool lower = true;  // conversion translates lower the transferred orders
    int sT = 1;         // sign per marker consumed by the distribution
    int sL = 1;         // sign of the lowering branch
};
inline ComposeRule& compose_rule() {
    static ComposeRule r;
    return r;
}

// Re-expansion of one module in terms of another when feeding outputs into
// argument slots: each generator of `from` is a finite d-combination of
// generators of `to`, rule entries (generator, d-power, coefficient). The
// d-power turns into the negated block shift operator during composition.
struct OutputConversion {
    ModulePtr from;
    ModulePtr to;
    std::vector<std::vector<std::tuple<std::size_t, unsigned, Rational>>> rules;
};

// Operadic insertion x o_i y (1-based). The inner block occupies result slots
// i-1 .. i+m-2. Transfers, in order:
//  - y's stored lambdas relabel to the block slots; they stay available as
//    markers the transferred pole factors can consume;
//  - each d on the fed output contributes the block lambda sum together with
//    a branch lowering a transferred factor order r+1 -> r with weight r
//    (the table is a value table, so the derivative acts by its transpose);
//  - each of x's pole factors at slot i, now a function of the insertion
//    point, distributes over the block as the transpose of block collapse:
//    an order-r factor becomes any product of edges (j, other end)^{rho_j}
//    over block slots with r = sum_j (rho_j + s_j), where s_j markers are
//    consumed at slot j, weighted by falling(nu_j, s_j) * C(rho_j-1+s_j, s_j)
//    (the diagonal re-expansion of the deepened pole);
//  - x's slot marker substitutes to the plain block lambda sum.
inline ChiralCochain compose_i(const ChiralCochain& x, const ChiralCochain& y, std::size_t i,
                               const OutputConversion* cv = nullptr) {
    if (i < 1 || i > x.arity()) throw std::out_of_range("compose_i: slot");
    if (cv) {
        if (!(*y.target() == *cv->from) || !(*x.sources()[i - 1] == *cv->to))
            throw std::invalid_argument("compose_i: conversion shape mismatch");
    } else if (!(*x.sources()[i - 1] == *y.target()))
        throw std::invalid_argument("compose_i: source/target mismatch");
    std::size_t n = x.arity(), m = y.arity();
    std::size_t rn = n + m - 1;
    std::vector<ModulePtr> src;
    for (std::size_t j = 0; j + 1 < i; ++j) src.push_back(x.sources()[j]);
    for (std::size_t j = 0; j < m; ++j) src.push_back(y.sources()[j]);
    for (std::size_t j = i; j < n; ++j) src.push_back(x.sources()[j]);
    ChiralCochain r(src, x.target(), x.degree() + y.degree());

    // slot relabelings into the result
    std::vector<std::size_t> xmap(n), block(m);
    for (std::size_t j = 0; j + 1 < i; ++j) xmap[j] = j;
    xmap[i - 1] = i - 1; // unused: slot-i factors are transferred separately
    for (std::size_t j = i; j < n; ++j) xmap[j] = j + m - 1;
    for (std::size_t j = 0; j < m; ++j) block[j] = i - 1 + j;

    // index x's table cells by the generator expected at the composed slot
    std::map<std::size_t, std::vector<const std::pair<const ChiralCochain::Cell, LambdaPoly>*>>
        by_slot_gen;
    for (const auto& entry : x.table()) by_slot_gen[entry.first.first[i - 1]].push_back(&entry);

    for (const auto& [ycell, yp] : y.table()) {
        const auto& [yk, ypole] = ycell;
        std::vector<std::size_t> ymap(m);
        for (std::size_t j = 0; j < m; ++j) ymap[j] = i - 1 + j;
        PolePattern ypole_r = relabel_pole(ypole, ymap);
        for (const auto& [ye, yc] : yp.terms()) {
            std::vector<std::tuple<std::size_t, unsigned, Rational>> rules;
            if (cv) rules = cv->rules[ye.second];
            else rules.emplace_back(ye.second, 0u, Rational(1));
            for (const auto& [fed_gen, dpow, rc] : rules) {
                auto hit = by_slot_gen.find(fed_gen);
                if (hit == by_slot_gen.end()) continue;
                for (const auto* entry_ptr : hit->second) {
                    const auto& [xcell, xp] = *entry_ptr;
                    const auto& [xk, xpole] = xcell;
                    int s = 1;
                    if (y.degree() % 2) {
                        int d = 0;
                        for (std::size_t j = 0; j + 1 < i; ++j) d += x.slot_degree(j, xk);
                        if (d % 2) s = -1;
                    }
                    const ComposeRule& rule = compose_rule();
                    // x's value extends from the canonical patterns to every
                    // monomial; the transfer below is per monomial
                    for (const auto& [xq, sq] : anti_straighten(xpole)) {
                    // split the monomial at the composed slot; transferred
                    // factors are normalised to (z_slot - z_other)^{-order}
                    PolePattern xpole_ext;
                    std::vector<std::pair<std::size_t, unsigned>> fac;
                    int orient = 1;
                    for (const auto& [pr, ord] : xq) {
                        if (pr.first == i - 1) {
                            fac.emplace_back(xmap[pr.second], ord);
                        } else if (pr.second == i - 1) {
                            fac.emplace_back(xmap[pr.first], ord);
                            if (ord % 2) orient = -orient;
                        } else {
                            xpole_ext[{xmap[pr.first], xmap[pr.second]}] += ord;
                        }
                    }

                    for (const auto& [xe, xc] : xp.terms()) {
                        std::vector<unsigned> le(rn, 0);
                        for (std::size_t j = 0; j + 1 < i; ++j) le[j] = xe.first[j];
                        for (std::size_t j = i; j < n; ++j) le[j + m - 1] = xe.first[j];
                        unsigned E = xe.first[i - 1];

                        Rational c0 = xc * yc * rc * sq;
                        if (s < 0) c0 = -c0;
                        if (dpow % 2) c0 = -c0; // each d on the fed output costs a sign
                        if (orient < 0) c0 = -c0;

                        std::vector<chiral_detail::CTerm> terms;
                        {
                            chiral_detail::CTerm t;
                            t.nu.assign(m, 0);
                            for (std::size_t j = 0; j < m; ++j) t.nu[j] = ye.first[j];
                            t.le = le;
                            t.ord.resize(fac.size());
                            for (std::size_t f = 0; f < fac.size(); ++f)
                                t.ord[f] = fac[f].second;
                            t.c = c0;
                            terms.push_back(std::move(t));
                        }
                        // conversion translates
                        for (unsigned t = 0; t < dpow; ++t) {
                            std::vector<chiral_detail::CTerm> nxt;
                            for (const auto& ct : terms) {
                                for (std::size_t a : block) {
                                    auto u = ct;
                                    ++u.le[a];
                                    nxt.push_back(std::move(u));
                                }
                                if (rule.lower)
                                    for (std::size_t f = 0; f < ct.ord.size(); ++f)
                                        if (ct.ord[f] >= 2) {
                                            auto u = ct;
                                            --u.ord[f];
                                            u.c *= Rational(long(u.ord[f]) * rule.sL);
                                            nxt.push_back(std::move(u));
                                        }
                            }
                            terms = std::move(nxt);
                            chiral_detail::cterm_merge(terms);
                        }
                        // distribute the transferred factors over the block
                        for (std::size_t f = 0; f < fac.size(); ++f) {
                            std::vector<chiral_detail::CTerm> nxt;
                            std::size_t far = fac[f].first;
                            auto put = [&](chiral_detail::CTerm u, std::size_t a,
                                           unsigned rho) {
                                u.ord[f] -= rho;
                                if (a > far && (rho % 2)) u.c = -u.c;
                                u.emit[{std::min(a, far), std::max(a, far)}] += rho;
                                return u;
                            };
                            auto go = [&](auto&& self, std::size_t j, chiral_detail::CTerm ct)
                                -> void {
                                if (j == m) {
                                    if (ct.ord[f] == 0) nxt.push_back(std::move(ct));
                                    return;
                                }
                                self(self, j + 1, ct);
                                for (unsigned rho = 1; rho <= ct.ord[f]; ++rho) {
                                    Rational fall(1);
                                    for (unsigned sd = 0;
                                         rho + sd <= ct.ord[f] && sd <= ct.nu[j]; ++sd) {
                                        if (sd)
                                            fall *= Rational(long(rule.sT) *
                                                             long(ct.nu[j] - (sd - 1)));
                                        auto u = put(ct, block[j], rho);
                                        u.ord[f] -= sd;
                                        u.nu[j] -= sd;
                                        u.c *= fall *
                                               chiral_detail::binom_r(rho - 1 + sd, sd);
                                        self(self, j + 1, std::move(u));
                                    }
                                }
                            };
                            for (const auto& ct : terms) {
                                if (!rule.taylor) {
                                    nxt.push_back(put(ct, block.front(), ct.ord[f]));
                                    continue;
                                }
                                go(go, 0, ct);
                            }
                            terms = std::move(nxt);
                            chiral_detail::cterm_merge(terms);
                        }
                        // slot marker substitution: plain block lambda sum
                        for (unsigned t = 0; t < E; ++t) {
                            std::vector<chiral_detail::CTerm> nxt;
                            for (const auto& ct : terms)
                                for (std::size_t a : block) {
                                    auto u = ct;
                                    ++u.le[a];
                                    nxt.push_back(std::move(u));
                                }
                            terms = std::move(nxt);
                            chiral_detail::cterm_merge(terms);
                        }

                        ChiralCochain::Key rk(rn);
                        for (std::size_t j = 0; j + 1 < i; ++j) rk[j] = xk[j];
                        for (std::size_t j = 0; j < m; ++j) rk[i - 1 + j] = yk[j];
                        for (std::size_t j = i; j < n; ++j) rk[j + m - 1] = xk[j];
                        for (const auto& ct : terms) {
                            auto lexp = ct.le;
                            for (std::size_t j = 0; j < m; ++j) lexp[block[j]] += ct.nu[j];
                            PolePattern merged = xpole_ext;
                            for (const auto& [e, mm] : ypole_r) merged[e] += mm;
                            for (const auto& [e, mm] : ct.emit) merged[e] += mm;
                            r.add_term(rk, merged, lexp, xe.second, ct.c);
                        }
                    }
                    }
                }
            }
        }
    }
    return r;
}

inline ChiralCochain symmetrize(const ChiralCochain& x, bool with_sign) {
    for (std::size_t i = 1; i < x.arity(); ++i)
        if (!(*x.sources()[i] == *x.sources()[0]))
            throw std::invalid_argument("symmetrize: unequal sources");
    ChiralCochain acc(x.sources(), x.target(), x.degree());
    for (const auto& sigma : all_permutations(x.arity())) acc += x.permute(sigma, with_sign);
    acc *= factorial(unsigned(x.arity())).inverse();
    return acc;
}

inline ChiralCochain brace(const ChiralCochain& x, const ChiralCochain& y,
                           const BraceConvention& conv = {},
                           const OutputConversion* cv = nullptr) {
    ChiralCochain c = compose_i(x, y, 1, cv);
    ChiralCochain p(c.sources(), c.target(), c.degree());
    if (conv.project_full_output_arity) {
        p = symmetrize(c, conv.sign_twist);
    } else {
        std::size_t n = x.arity(), rn = c.arity();
        for (const auto& sigma : all_permutations(n)) {
            Permutation ext = Permutation::id(rn);
            for (std::size_t i = 0; i < n; ++i) ext.img[i] = sigma.img[i];
            p += c.permute(ext, conv.sign_twist);
        }
        p *= factorial(unsigned(n)).inverse();
    }
    p *= Rational(long(x.arity()));
    return p;
}

inline int g_degree(const ChiralCochain& x) {
    return x.degree() + int(x.arity()) - 1;
}

inline ChiralCochain bracket(const ChiralCochain& x, const ChiralCochain& y,
                             const BraceConvention& conv = {},
                             const OutputConversion* cv = nullptr) {
    ChiralCochain a = brace(x, y, conv, cv);
    ChiralCochain b = brace(y, x, conv, cv);
    if ((g_degree(x) % 2) && (g_degree(y) % 2)) a += b;
    else a -= b;
    return a;
}

// Simultaneous two-slot composition gamma(b; x, y) used by the cup product.
inline ChiralCochain compose_pair(const ChiralCochain& b, const ChiralCochain& x,
                                  const ChiralCochain& y, const OutputConversion* cv = nullptr) {
    if (b.arity() != 2) throw std::invalid_argument("compose_pair: outer arity must be 2");
    return compose_i(compose_i(b, y, 2, cv), x, 1, cv);
}

// Residue restriction from chiral to *-operations, binary case: a pole of
// order k between the two slots contributes lambda_1^{k-1}/(k-1)! times its
// table; pole-free terms restrict to zero.
inline StarOperation restrict_r(const ChiralCochain& c) {
    if (c.arity() != 2) throw std::invalid_argument("restrict_r: expected arity 2");
    StarOperation r(c.sources(), c.target(), c.degree());
    for (const auto& [cell, p] : c.table()) {
        const auto& [k, pole] = cell;
        if (pole.size() != 1) continue;
        unsigned ord = pole.begin()->second;
        LambdaPoly q = p;
        std::vector<unsigned> mono{ord - 1, 0};
        q = q.mul_monomial(mono);
        q *= factorial(ord - 1).inverse();
        r.add_value(k, q);
    }
    return r;
}

// embed a pole-free *-operation as a chiral cochain
inline ChiralCochain lift_star(const StarOperation& x) {
    ChiralCochain c(x.sources(), x.target(), x.degree());
    for (const auto& [k, p] : x.table()) c.add_cell(k, {}, p);
    return c;
}

// the regular (pole-free) part of a cochain
inline ChiralCochain regular_part(const ChiralCochain& c) {
    ChiralCochain r(c.sources(), c.target(), c.degree());
    for (const auto& [cell, p] : c.table())
        if (cell.second.empty()) r.add_cell(cell.first, {}, p);
    return r;
}

} // namespace chidef
