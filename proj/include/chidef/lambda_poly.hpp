#pragma once

#include "chidef/dmodule.hpp"
#include "chidef/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace chidef {

// Permutation on {0,..,n-1}; img[i] is where slot i goes.
struct Permutation {
    std::vector<std::size_t> img;

    std::size_t size() const { return img.size(); }
    static Permutation id(std::size_t n) {
        Permutation p;
        p.img.resize(n);
        std::iota(p.img.begin(), p.img.end(), 0);
        return p;
    }
    Permutation then(const Permutation& outer) const { // outer âˆ˜ this
        Permutation r;
        r.img.resize(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) r.img[i] = outer.img[img[i]];
        return r;
    }
    Permutation inverse() const {
        Permutation r;
        r.img.resize(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) r.img[img[i]] = i;
        return r;
    }
    int sgn() const {
        int s = 1;
        for (std::size_t i = 0; i < img.size(); ++i)
            for (std::size_t j = i + 1; j < img.size(); ++j)
                if (img[i] > img[j]) s = -s;
        return s;
    }
    // Koszul sign of permuting objects of the given degrees
    static int koszul_sign(const Permutation& p, const std::vector<int>& degrees) {
        int s = 1;
        for (std::size_t i = 0; i < p.img.size(); ++i)
            for (std::size_t j = i + 1; j < p.img.size(); ++j)
                if (p.img[i] > p.img[j] && (degrees[i] % 2) && (degrees[j] % 2)) s = -s;
        return s;
    }
};

inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do out.push_back(Permutation{v});
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

// Polynomial in lambda_1..lambda_n with coefficients in the basis of a target
// module; the target's d-action has been eliminated by d = -(lambda_1+...+lambda_n).
class LambdaPoly {
public:
    // key: (lambda exponents, target basis index)
    using Key = std::pair<std::vector<unsigned>, std::size_t>;

    LambdaPoly(std::size_t arity, ModulePtr target)
        : arity_(arity), target_(std::move(target)) {}

    std::size_t arity() const { return arity_; }
    const ModulePtr& target() const { return target_; }
    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    unsigned lambda_degree() const {
        unsigned d = 0;
        for (const auto& [k, v] : terms_)
            d = std::max(d, std::accumulate(k.first.begin(), k.first.end(), 0u));
        return d;
    }

    void add_term(std::vector<unsigned> exps, std::size_t target_idx, const Rational& c) {
        if (exps.size() != arity_) throw std::invalid_argument("LambdaPoly: exponent arity mismatch");
        if (target_idx >= target_->rank()) throw std::out_of_range("LambdaPoly: target index");
        if (c.is_zero()) return;
        Key k{std::move(exps), target_idx};
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_[std::move(k)] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LambdaPoly& operator+=(const LambdaPoly& o) {
        check_compatible(o);
        for (const auto& [k, v] : o.terms_) add_term(k.first, k.second, v);
        return *this;
    }
    LambdaPoly& operator-=(const LambdaPoly& o) {
        check_compatible(o);
        for (const auto& [k, v] : o.terms_) add_term(k.first, k.second, -v);
        return *this;
    }
    LambdaPoly& operator*=(const Rational& c) {
        if (c.is_zero()) { terms_.clear(); return *this; }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
    friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
    friend LambdaPoly operator*(LambdaPoly a, const Rational& c) { return a *= c; }

    bool operator==(const LambdaPoly& o) const {
        return arity_ == o.arity_ && *target_ == *o.target_ && terms_ == o.terms_;
    }

    // multiply by the monomial in the lambda variables
    LambdaPoly mul_monomial(const std::vector<unsigned>& m) const {
        LambdaPoly r(arity_, target_);
        for (const auto& [k, v] : terms_) {
            auto e = k.first;
            for (std::size_t i = 0; i < arity_; ++i) e[i] += m[i];
            r.add_term(std::move(e), k.second, v);
        }
        return r;
    }

    // value on d applied to the given argument slot: multiplication by -lambda_slot
    LambdaPoly apply_partial(std::size_t slot) const { // 1-based
        if (slot < 1 || slot > arity_) throw std::out_of_range("apply_partial: slot");
        std::vector<unsigned> m(arity_, 0);
        m[slot - 1] = 1;
        LambdaPoly r = mul_monomial(m);
        r *= Rational(-1);
        return r;
    }

    // simultaneous permutation of lambda variables (and, at the operation
    // level, of argument slots); sign_twist adds the sign representation
    LambdaPoly symmetric_action(const Permutation& perm, bool sign_twist,
                                const std::vector<int>& slot_degrees) const {
        if (perm.size() != arity_ || slot_degrees.size() != arity_)
            throw std::invalid_argument("symmetric_action: size mismatch");
        int s = Permutation::koszul_sign(perm, slot_degrees);
        if (sign_twist) s *= perm.sgn();
        LambdaPoly r(arity_, target_);
        for (const auto& [k, v] : terms_) {
            std::vector<unsigned> e(arity_);
            for (std::size_t i = 0; i < arity_; ++i) e[perm.img[i]] = k.first[i];
            r.add_term(std::move(e), k.second, s == 1 ? v : -v);
        }
        return r;
    }

    // lambda_i -> sum of the lambda's in groups[i] (0-based slots of the new
    // arity); groups must cover each old slot
    LambdaPoly substitute_sums(const std::vector<std::vector<std::size_t>>& groups,
                               std::size_t new_arity) const {
        if (groups.size() != arity_) throw std::invalid_argument("substitute_sums: group count");
        LambdaPoly r(new_arity, target_);
        for (const auto& [k, v] : terms_) {
            std::vector<std::pair<std::vector<unsigned>, Rational>> partial{
                {std::vector<unsigned>(new_arity, 0), v}};
            for (std::size_t i = 0; i < arity_; ++i) {
                unsigned e = k.first[i];
                if (e == 0) continue;
                std::vector<std::pair<std::vector<unsigned>, Rational>> next;
                // expand (sum of group vars)^e multinomially
                std::vector<std::vector<unsigned>> expos;
                std::vector<Rational> coeffs;
                expand_power(groups[i], e, expos, coeffs);
                for (const auto& [base, c0] : partial)
                    for (std::size_t t = 0; t < expos.size(); ++t) {
                        auto b = base;
                        for (std::size_t j = 0; j < expos[t].size(); ++j) b[j] += expos[t][j];
                        next.emplace_back(std::move(b), c0 * coeffs[t]);
                    }
                partial = std::move(next);
            }
            for (auto& [e, c] : partial) r.add_term(std::move(e), k.second, c);
        }
        return r;
    }

private:
    void check_compatible(const LambdaPoly& o) const {
        if (arity_ != o.arity_ || !(*target_ == *o.target_))
            throw std::invalid_argument("LambdaPoly: incompatible operands");
    }

    static void expand_power(const std::vector<std::size_t>& group, unsigned e,
                             std::vector<std::vector<unsigned>>& expos,
                             std::vector<Rational>& coeffs) {
        // (x_{g1}+...+x_{gm})^e
        std::size_t hi = 0;
        for (std::size_t g : group) hi = std::max(hi, g + 1);
        std::vector<unsigned> cur(hi, 0);
        std::function<void(std::size_t, unsigned, Rational)> rec =
            [&](std::size_t pos, unsigned rem, Rational mult) {
                if (pos + 1 == group.size()) {
                    cur[group[pos]] += rem;
                    expos.push_back(cur);
                    coeffs.push_back(mult);
                    cur[group[pos]] -= rem;
                    return;
                }
                for (unsigned t = 0; t <= rem; ++t) {
                    cur[group[pos]] += t;
                    rec(pos + 1, rem - t, mult * binomial(long(rem), t));
                    cur[group[pos]] -= t;
                }
            };
        rec(0, e, Rational(1));
        // pad exponent vectors lazily: caller adds into a new_arity-sized base,
        // so extend each vector to at least hi entries (already sized hi)
    }

    std::size_t arity_;
    ModulePtr target_;
    std::map<Key, Rational> terms_;
};

// The canonical *-pairing <K^dual, K> -> i_{2*}omega on generators with
// d-powers applied to each argument.
inline LambdaPoly canonical_pairing(const ModulePtr& kdual, const std::string& kdual_gen,
                                    const ModulePtr& k, const std::string& k_gen,
                                    unsigned d1, unsigned d2) {
    LambdaPoly p(2, omega_module());
    // matched iff kdual_gen is the dual label of k_gen
    if (kdual_gen == k_gen + "^") {
        kdual->index_of(kdual_gen);
        k->index_of(k_gen);
        Rational c = ((d1 + d2) % 2 == 0) ? Rational(1) : Rational(-1);
        p.add_term({d1, d2}, 0, c);
    }
    return p;
}

} // namespace chidef
