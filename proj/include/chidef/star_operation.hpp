#pragma once

#include "chidef/lambda_poly.hpp"

#include <map>
#include <vector>

namespace chidef {

// n-ary *-operation between free translation D-modules, stored on generator
// tuples; values on d-shifted arguments follow by sesquilinearity.
class StarOperation {
public:
    using Key = std::vector<std::size_t>; // generator index per slot

    StarOperation(std::vector<ModulePtr> sources, ModulePtr target, int degree)
        : sources_(std::move(sources)), target_(std::move(target)), degree_(degree) {}

    static StarOperation identity(const ModulePtr& m) {
        StarOperation x({m}, m, 0);
        for (std::size_t g = 0; g < m->rank(); ++g) {
            LambdaPoly p(1, m);
            p.add_term({0}, g, Rational(1));
            x.set_value({g}, p);
        }
        return x;
    }

    std::size_t arity() const { return sources_.size(); }
    const std::vector<ModulePtr>& sources() const { return sources_; }
    const ModulePtr& target() const { return target_; }
    int degree() const { return degree_; }
    const std::map<Key, LambdaPoly>& table() const { return table_; }
    bool is_zero() const {
        for (const auto& [k, p] : table_)
            if (!p.is_zero()) return false;
        return true;
    }

    void set_value(const Key& k, const LambdaPoly& p) {
        validate_key(k);
        if (p.arity() != arity() || !(*p.target() == *target_))
            throw std::invalid_argument("StarOperation: value shape mismatch");
        if (p.is_zero()) table_.erase(k);
        else table_.insert_or_assign(k, p);
    }

    LambdaPoly value(const Key& k) const {
        validate_key(k);
        auto it = table_.find(k);
        return it == table_.end() ? LambdaPoly(arity(), target_) : it->second;
    }

    void add_value(const Key& k, const LambdaPoly& p) {
        auto cur = value(k);
        cur += p;
        set_value(k, cur);
    }

    int slot_degree(std::size_t slot, const Key& k) const {
        return sources_[slot]->basis()[k[slot]].degree;
    }

    StarOperation& operator+=(const StarOperation& o) {
        check_same_shape(o);
        for (const auto& [k, p] : o.table_) add_value(k, p);
        return *this;
    }
    StarOperation& operator-=(const StarOperation& o) {
        check_same_shape(o);
        for (const auto& [k, p] : o.table_) {
            auto q = p;
            q *= Rational(-1);
            add_value(k, q);
        }
        return *this;
    }
    StarOperation& operator*=(const Rational& c) {
        if (c.is_zero()) { table_.clear(); return *this; }
        for (auto& [k, p] : table_) p *= c;
        return *this;
    }
    friend StarOperation operator+(StarOperation a, const StarOperation& b) { return a += b; }
    friend StarOperation operator-(StarOperation a, const StarOperation& b) { return a -= b; }
    friend StarOperation operator*(StarOperation a, const Rational& c) { return a *= c; }

    bool operator==(const StarOperation& o) const {
        if (arity() != o.arity() || !(*target_ == *o.target_)) return false;
        for (std::size_t i = 0; i < arity(); ++i)
            if (!(*sources_[i] == *o.sources_[i])) return false;
        StarOperation d = *this;
        d -= o;
        return d.is_zero();
    }

    // simultaneous permutation of argument slots and lambda variables
    StarOperation permute(const Permutation& sigma, bool sign_twist) const {
        if (sigma.size() != arity()) throw std::invalid_argument("permute: size mismatch");
        std::vector<ModulePtr> src(arity());
        for (std::size_t i = 0; i < arity(); ++i) src[sigma.img[i]] = sources_[i];
        StarOperation r(src, target_, degree_);
        for (const auto& [k, p] : table_) {
            Key nk(arity());
            std::vector<int> degs(arity());
            for (std::size_t i = 0; i < arity(); ++i) {
                nk[sigma.img[i]] = k[i];
                degs[i] = slot_degree(i, k);
            }
            r.add_value(nk, p.symmetric_action(sigma, sign_twist, degs));
        }
        return r;
    }

private:
    void validate_key(const Key& k) const {
        if (k.size() != arity()) throw std::invalid_argument("StarOperation: key arity");
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] >= sources_[i]->rank())
                throw std::out_of_range("StarOperation: generator index");
    }
    void check_same_shape(const StarOperation& o) const {
        if (!(arity() == o.arity() && *target_ == *o.target_))
            throw std::invalid_argument("StarOperation: shape mismatch");
        for (std::size_t i = 0; i < arity(); ++i)
            if (!(*sources_[i] == *o.sources_[i]))
                throw std::invalid_argument("StarOperation: source mismatch");
    }

    std::vector<ModulePtr> sources_;
    ModulePtr target_;
    int degree_;
    std::map<Key, LambdaPoly> table_;
};

// Operadic insertion x o_i y (1-based slot): the lambda-substitution rule.
// Slot i of x must accept the target of y.
inline StarOperation compose_i(const StarOperation& x, const StarOperation& y, std::size_t i) {
    if (i < 1 || i > x.arity()) throw std::out_of_range("compose_i: slot");
    if (!(*x.sources()[i - 1] == *y.target()))
        throw std::invalid_argument("compose_i: source/target mismatch");
    std::size_t n = x.arity(), m = y.arity();
    std::size_t rn = n + m - 1;
    std::vector<ModulePtr> src;
    for (std::size_t j = 0; j + 1 < i; ++j) src.push_back(x.sources()[j]);
    for (std::size_t j = 0; j < m; ++j) src.push_back(y.sources()[j]);
    for (std::size_t j = i; j < n; ++j) src.push_back(x.sources()[j]);
    StarOperation r(src, x.target(), x.degree() + y.degree());

    // substitution groups for x's lambda variables
    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t j = 0; j + 1 < i; ++j) groups[j] = {j};
    groups[i - 1].resize(m);
    std::iota(groups[i - 1].begin(), groups[i - 1].end(), i - 1);
    for (std::size_t j = i; j < n; ++j) groups[j] = {j + m - 1};

    for (const auto& [yk, yp] : y.table()) {
        for (const auto& [ye, yc] : yp.terms()) {
            // ye: (block lambda exponents, output generator index)
            for (const auto& [xk, xp] : x.table()) {
                if (xk[i - 1] != ye.second) continue;
                // Koszul sign: y passes the first i-1 arguments of x
                int s = 1;
                if (y.degree() % 2) {
                    int d = 0;
                    for (std::size_t j = 0; j + 1 < i; ++j) d += x.slot_degree(j, xk);
                    if (d % 2) s = -1;
                }
                LambdaPoly sub = xp.substitute_sums(groups, rn);
                std::vector<unsigned> mono(rn, 0);
                for (std::size_t j = 0; j < m; ++j) mono[i - 1 + j] = ye.first[j];
                LambdaPoly val = sub.mul_monomial(mono);
                val *= (s == 1 ? yc : -yc);
                StarOperation::Key rk(rn);
                for (std::size_t j = 0; j + 1 < i; ++j) rk[j] = xk[j];
                for (std::size_t j = 0; j < m; ++j) rk[i - 1 + j] = yk[j];
                for (std::size_t j = i; j < n; ++j) rk[j + m - 1] = xk[j];
                r.add_value(rk, val);
            }
        }
    }
    return r;
}

// Average over the symmetric group (characteristic-zero projection onto
// invariants, epsilon-twisted when with_sign is set). Idempotent.
inline StarOperation symmetrize(const StarOperation& x, bool with_sign) {
    for (std::size_t i = 1; i < x.arity(); ++i)
        if (!(*x.sources()[i] == *x.sources()[0]))
            throw std::invalid_argument("symmetrize: unequal sources");
    StarOperation acc(x.sources(), x.target(), x.degree());
    auto perms = all_permutations(x.arity());
    for (const auto& sigma : perms) acc += x.permute(sigma, with_sign);
    acc *= factorial(unsigned(x.arity())).inverse();
    return acc;
}

struct BraceConvention {
    bool sign_twist = true;               // epsilon_n twist in the projection p
    bool project_full_output_arity = true; // spec open question: p over arity n+m-1
};

// Eq.-style brace x{y} = n p(o_1(x,y)) on same-module components.
inline StarOperation brace(const StarOperation& x, const StarOperation& y,
                           const BraceConvention& conv = {}) {
    StarOperation c = compose_i(x, y, 1);
    StarOperation p(c.sources(), c.target(), c.degree());
    if (conv.project_full_output_arity) {
        p = symmetrize(c, conv.sign_twist);
    } else {
        // literal subscript reading: average only over permutations of the
        // first n result slots
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

// graded degree of an element of g_O: operation degree plus arity shift [1-n]
inline int g_degree(const StarOperation& x) {
    return x.degree() + int(x.arity()) - 1;
}

// [x,y] = x{y} - (-1)^{|x||y|} y{x}
inline StarOperation bracket(const StarOperation& x, const StarOperation& y,
                             const BraceConvention& conv = {}) {
    StarOperation a = brace(x, y, conv);
    StarOperation b = brace(y, x, conv);
    if ((g_degree(x) % 2) && (g_degree(y) % 2)) a += b;
    else a -= b;
    return a;
}

} // namespace chidef
