#pragma once

#include "chidef/chiral.hpp"
#include "chidef/sparse_matrix.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace chidef {

// Free chiral algebra on r generators, modelled as the polynomial algebra on
// variables x_{j,a} (the a-th translate of the j-th generator) truncated by
// symmetric degree and total weight. A monomial is a sorted multiset of
// variable ids; the unit is the empty monomial.
using SKMonomial = std::vector<unsigned>;

class SKSpace {
public:
    SKSpace(unsigned r, unsigned max_deg, unsigned max_wt)
        : r_(r), amax_(max_wt), max_deg_(max_deg), max_wt_(max_wt) {
        SKMonomial m;
        enumerate(m, 0, 0);
        std::vector<Generator> gens;
        for (std::size_t i = 0; i < monos_.size(); ++i) {
            index_[monos_[i]] = i;
            gens.push_back({label(monos_[i]), 0});
        }
        module_ = std::make_shared<TransDModule>("SK", gens, Side::right);
    }

    unsigned r() const { return r_; }
    unsigned max_deg() const { return max_deg_; }
    unsigned max_wt() const { return max_wt_; }
    const std::vector<SKMonomial>& monomials() const { return monos_; }
    const ModulePtr& module() const { return module_; }

    unsigned var_id(unsigned j, unsigned a) const { return j * (amax_ + 1) + a; }
    unsigned var_gen(unsigned v) const { return v / (amax_ + 1); }
    unsigned var_wt(unsigned v) const { return v % (amax_ + 1); }

    unsigned weight(const SKMonomial& m) const {
        unsigned w = 0;
        for (unsigned v : m) w += var_wt(v);
        return w;
    }
    unsigned degree(const SKMonomial& m) const { return unsigned(m.size()); }

    std::size_t index_of(const SKMonomial& m) const {
        auto it = index_.find(m);
        if (it == index_.end())
            throw TruncationError("SKSpace: monomial outside the truncation window: " + label(m));
        return it->second;
    }
    bool contains(const SKMonomial& m) const { return index_.count(m) != 0; }

    std::size_t unit_index() const { return index_.at({}); }

    std::size_t product(std::size_t i, std::size_t j) const {
        SKMonomial m = monos_[i];
        m.insert(m.end(), monos_[j].begin(), monos_[j].end());
        std::sort(m.begin(), m.end());
        return index_of(m);
    }

    // derivative of a monomial: sum over factors with one translate raised
    std::vector<std::pair<SKMonomial, Rational>> derivative(const SKMonomial& m) const {
        std::map<SKMonomial, Rational> acc;
        for (std::size_t p = 0; p < m.size(); ++p) {
            SKMonomial q = m;
            ++q[p]; // x_{j,a} -> x_{j,a+1} is id+1 within the block
            if (var_wt(m[p]) + 1 > amax_) continue; // falls outside; callers bound weights
            std::sort(q.begin(), q.end());
            acc[q] += Rational(1);
        }
        std::vector<std::pair<SKMonomial, Rational>> out;
        for (auto& [q, c] : acc)
            if (!c.is_zero()) out.emplace_back(q, c);
        return out;
    }

    std::string label(const SKMonomial& m) const {
        if (m.empty()) return "1";
        std::string s;
        for (std::size_t p = 0; p < m.size(); ++p) {
            if (p) s += "*";
            s += "x" + std::to_string(var_gen(m[p])) + "." + std::to_string(var_wt(m[p]));
        }
        return s;
    }

private:
    void enumerate(SKMonomial& m, unsigned from, unsigned wt) {
        monos_.push_back(m);
        if (m.size() == max_deg_) return;
        for (unsigned v = from; v < r_ * (amax_ + 1); ++v) {
            unsigned w = wt + var_wt(v);
            if (w > max_wt_) continue;
            m.push_back(v);
            enumerate(m, v, w);
            m.pop_back();
        }
    }

    unsigned r_, amax_, max_deg_, max_wt_;
    std::vector<SKMonomial> monos_;
    std::map<SKMonomial, std::size_t> index_;
    ModulePtr module_;
};

// convention switches for the deep-pole values of the chiral product; the
// dressing step is v -> sd*(lambda_1+lambda_2)*v + sa*(lambda_1-lambda_2)*v
// + sp*(dv), applied j times with weight gbase^j (/ j! when gfact) to the
// coefficient of the j-th diagonal derivative.  The defaults are the unique
// choice that makes the product cochain swap-invariant and square to zero
// under the differential on the pole-bounded windows.
struct DeepProductRule {
    Rational sd = Rational(0);
    Rational sp = Rational(-1, 2);
    Rational sa = Rational(-1, 2);
    bool lam2_only = false;
    int gbase = 1;
    bool gfact = true;
};

inline DeepProductRule& deep_product_rule() {
    static DeepProductRule r;
    return r;
}

// The free-module presentation of the truncated algebra: a monomial basis of
// the cokernel of the derivative in each (degree, weight) block serves as the
// d-generator set, and every monomial is re-expanded as a d-polynomial
// combination of generators. The unit is the weight-zero degree-zero
// generator.
class SKModel {
public:
    explicit SKModel(std::shared_ptr<const SKSpace> space) : space_(std::move(space)) {
        build();
    }

    const SKSpace& space() const { return *space_; }
    std::shared_ptr<const SKSpace> space_ptr() const { return space_; }
    const ModulePtr& gen_module() const { return gmod_; }
    std::size_t gen_count() const { return gen_mono_.size(); }
    std::size_t gen_monomial(std::size_t g) const { return gen_mono_[g]; }
    std::size_t unit_gen() const { return unit_gen_; }
    unsigned gen_degree(std::size_t g) const { return space_->degree(space_->monomials()[gen_mono_[g]]); }
    unsigned gen_weight(std::size_t g) const { return space_->weight(space_->monomials()[gen_mono_[g]]); }

    // expansion of each monomial as sum of coeff * d^t (generator)
    const std::vector<std::vector<std::tuple<std::size_t, unsigned, Rational>>>& expansions() const {
        return conv_.rules;
    }

    const OutputConversion& conversion() const { return conv_; }

    // the chiral product: the order-1 pole cell carries mu(g,h) = gh, and the
    // deeper canonical pole cells carry the diagonal re-expansion values
    // forced by D-linearity of the product; tabulated on generator pairs
    // within the argument caps, up to the given pole order
    ChiralCochain product_cochain(unsigned arg_max_deg, unsigned arg_max_wt,
                                  unsigned pole_cap = 1) const {
        return product_cochain(arg_max_deg, arg_max_wt, arg_max_deg, arg_max_wt, pole_cap);
    }

    // asymmetric caps: tabulated on pairs where one slot is within the small
    // caps and the other within the large ones (either way around)
    ChiralCochain product_cochain(unsigned small_deg, unsigned small_wt, unsigned large_deg,
                                  unsigned large_wt, unsigned pole_cap = 1) const {
        ChiralCochain b({gmod_, gmod_}, space_->module(), 0);
        auto within = [&](std::size_t g, unsigned d, unsigned w) {
            return gen_degree(g) <= d && gen_weight(g) <= w;
        };
        for (std::size_t g = 0; g < gen_count(); ++g) {
            if (!within(g, large_deg, large_wt)) continue;
            for (std::size_t h = 0; h < gen_count(); ++h) {
                if (!within(h, large_deg, large_wt)) continue;
                if (!within(g, small_deg, small_wt) && !within(h, small_deg, small_wt)) continue;
                for (unsigned k = 1; k <= pole_cap; ++k) {
                    auto val = deep_value(g, h, k);
                    if (!val) break; // fell outside the truncation window
                    PolePattern pole{{{0, 1}, k}};
                    for (const auto& [le, co] : *val)
                        b.add_term({g, h}, pole, {le.first[0], le.first[1]}, le.second, co);
                }
            }
        }
        return b;
    }

private:
    using DeepValue = std::map<std::pair<std::vector<unsigned>, std::size_t>, Rational>;

    // value of the product on the order-k canonical pole cell (g, h):
    //   sum_{j=0}^{k-1} gamma_j M^j ( d^{k-1-j}(a)/(k-1-j)! * b )
    // with M the dressing step from deep_product_rule(); returns nothing when
    // an intermediate falls outside the truncation window (the cell is then
    // dropped as a whole)
    std::optional<DeepValue> deep_value(std::size_t g, std::size_t h, unsigned k) const {
        const auto& sp = *space_;
        const auto& rule = deep_product_rule();
        const SKMonomial& am = sp.monomials()[gen_mono_[g]];
        const SKMonomial& bm = sp.monomials()[gen_mono_[h]];
        auto raise = [&](const SKMonomial& m, std::size_t p) -> std::optional<SKMonomial> {
            if (sp.var_wt(m[p]) + 1 > sp.max_wt()) return std::nullopt;
            SKMonomial q = m;
            ++q[p];
            std::sort(q.begin(), q.end());
            return q;
        };
        DeepValue out;
        for (unsigned j = 0; j < k; ++j) {
            std::map<SKMonomial, Rational> poly{{am, Rational(1)}};
            for (unsigned s = 0; s + j + 1 < k; ++s) {
                std::map<SKMonomial, Rational> next;
                for (const auto& [m, c] : poly)
                    for (std::size_t p = 0; p < m.size(); ++p) {
                        auto q = raise(m, p);
                        if (!q) return std::nullopt;
                        next[*q] += c;
                    }
                poly = std::move(next);
            }
            Rational fact(1);
            for (unsigned s = 2; s + j + 1 <= k; ++s) fact *= Rational(int(s));
            DeepValue cur;
            for (const auto& [m, c] : poly) {
                SKMonomial q = m;
                q.insert(q.end(), bm.begin(), bm.end());
                std::sort(q.begin(), q.end());
                if (!sp.contains(q)) return std::nullopt;
                cur[{{0u, 0u}, sp.index_of(q)}] += c / fact;
            }
            for (unsigned s = 0; s < j; ++s) {
                DeepValue next;
                for (const auto& [key, c] : cur) {
                    if (!rule.sd.is_zero()) {
                        if (!rule.lam2_only) {
                            auto k1 = key;
                            ++k1.first[0];
                            next[k1] += c * rule.sd;
                        }
                        auto k2 = key;
                        ++k2.first[1];
                        next[k2] += c * rule.sd;
                    }
                    if (!rule.sa.is_zero()) {
                        auto k1 = key;
                        ++k1.first[0];
                        next[k1] += c * rule.sa;
                        auto k2 = key;
                        ++k2.first[1];
                        next[k2] -= c * rule.sa;
                    }
                    if (!rule.sp.is_zero()) {
                        const SKMonomial& m = sp.monomials()[key.second];
                        for (std::size_t p = 0; p < m.size(); ++p) {
                            auto q = raise(m, p);
                            if (!q || !sp.contains(*q)) return std::nullopt;
                            next[{key.first, sp.index_of(*q)}] += c * rule.sp;
                        }
                    }
                }
                cur = std::move(next);
            }
            Rational gj(rule.gbase < 0 && (j % 2) ? -1 : 1);
            if (rule.gfact)
                for (unsigned s = 2; s <= j; ++s) gj /= Rational(int(s));
            for (const auto& [key, c] : cur) out[key] += c * gj;
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    void build() {
        const auto& monos = space_->monomials();
        // group monomials by (degree, weight)
        std::map<std::pair<unsigned, unsigned>, std::vector<std::size_t>> blocks;
        for (std::size_t i = 0; i < monos.size(); ++i)
            blocks[{space_->degree(monos[i]), space_->weight(monos[i])}].push_back(i);

        conv_.rules.resize(monos.size());
        std::vector<char> is_gen(monos.size(), 0);
        std::vector<std::size_t> gen_of_mono(monos.size(), SIZE_MAX);

        // provisional generator numbering: decided block by block in weight
        // order, final numbering by monomial index afterwards
        for (auto& [dw, block] : blocks) {
            auto [d, w] = dw;
            if (w == 0) {
                for (std::size_t m : block) is_gen[m] = 1;
                continue;
            }
            auto prev_it = blocks.find({d, w - 1});
            std::vector<std::size_t> prev =
                prev_it == blocks.end() ? std::vector<std::size_t>{} : prev_it->second;
            std::map<std::size_t, std::size_t> pos; // monomial index -> row in block
            for (std::size_t t = 0; t < block.size(); ++t) pos[block[t]] = t;

            // rows = derivatives of the lighter block; pivot columns are
            // spanned by the image, the rest are generators
            detail::Echelon ech;
            for (std::size_t m : prev) {
                std::map<std::size_t, Rational> row;
                for (const auto& [q, c] : space_->derivative(monos[m]))
                    row[pos.at(space_->index_of(q))] = c;
                detail::insert_row(ech, std::move(row));
            }
            std::vector<char> pivot(block.size(), 0);
            for (std::size_t p : ech.pivot_cols) pivot[p] = 1;
            for (std::size_t t = 0; t < block.size(); ++t)
                if (!pivot[t]) is_gen[block[t]] = 1;
        }

        std::vector<Generator> gens;
        for (std::size_t i = 0; i < monos.size(); ++i)
            if (is_gen[i]) {
                gen_of_mono[i] = gen_mono_.size();
                gen_mono_.push_back(i);
                gens.push_back({space_->label(monos[i]), 0});
            }
        gmod_ = std::make_shared<TransDModule>("SKgen", gens, Side::right);
        unit_gen_ = gen_of_mono[space_->unit_index()];

        // expansions, by increasing weight so lighter ones are available
        for (auto& [dw, block] : blocks) {
            auto [d, w] = dw;
            if (w == 0) {
                for (std::size_t m : block) conv_.rules[m] = {{gen_of_mono[m], 0u, Rational(1)}};
                continue;
            }
            auto prev_it = blocks.find({d, w - 1});
            std::vector<std::size_t> prev =
                prev_it == blocks.end() ? std::vector<std::size_t>{} : prev_it->second;
            std::map<std::size_t, std::size_t> pos;
            for (std::size_t t = 0; t < block.size(); ++t) pos[block[t]] = t;
            std::vector<std::size_t> local_gens;
            for (std::size_t m : block)
                if (is_gen[m]) local_gens.push_back(m);

            // square system [derivatives | local generators], inverted once
            // for the whole block by eliminating with the identity appended
            std::size_t ncols = prev.size() + local_gens.size();
            SparseMatrix aug(block.size(), ncols + block.size());
            for (std::size_t c = 0; c < prev.size(); ++c)
                for (const auto& [q, co] : space_->derivative(monos[prev[c]]))
                    aug.set(pos.at(space_->index_of(q)), c, co);
            for (std::size_t c = 0; c < local_gens.size(); ++c)
                aug.set(pos.at(local_gens[c]), prev.size() + c, Rational(1));
            for (std::size_t t = 0; t < block.size(); ++t)
                aug.set(t, ncols + t, Rational(1));
            detail::Echelon ech2 = detail::eliminate(aug);
            if (ech2.pivot_cols.size() != ncols ||
                (ncols && ech2.pivot_cols.back() != ncols - 1))
                throw std::logic_error("SKModel: expansion system is singular");

            for (std::size_t t = 0; t < block.size(); ++t) {
                std::size_t m = block[t];
                std::map<std::pair<std::size_t, unsigned>, Rational> acc;
                for (std::size_t c = 0; c < ncols; ++c) {
                    auto it = ech2.rows[c].find(ncols + t);
                    if (it == ech2.rows[c].end() || it->second.is_zero()) continue;
                    const Rational& a = it->second;
                    if (c < prev.size()) {
                        for (const auto& [g, tt, co] : conv_.rules[prev[c]]) {
                            auto& slot = acc[{g, tt + 1}];
                            slot += a * co;
                        }
                    } else {
                        acc[{gen_of_mono[local_gens[c - prev.size()]], 0u}] += a;
                    }
                }
                for (const auto& [key, co] : acc)
                    if (!co.is_zero()) conv_.rules[m].emplace_back(key.first, key.second, co);
            }
        }
        conv_.from = space_->module();
        conv_.to = gmod_;
    }

    std::shared_ptr<const SKSpace> space_;
    ModulePtr gmod_;
    std::vector<std::size_t> gen_mono_;
    std::size_t unit_gen_ = 0;
    OutputConversion conv_;
};

// zero out table entries evaluating any argument at the unit generator
inline ChiralCochain reduced_part(const ChiralCochain& c, std::size_t unit_gen) {
    ChiralCochain r(c.sources(), c.target(), c.degree());
    for (const auto& [cell, p] : c.table()) {
        bool has_unit = false;
        for (std::size_t g : cell.first)
            if (g == unit_gen) { has_unit = true; break; }
        if (!has_unit) r.add_cell(cell.first, cell.second, p);
    }
    return r;
}

// zero out table entries with any argument beyond the given caps
inline ChiralCochain restrict_args(const ChiralCochain& c, const SKModel& model, unsigned max_deg,
                                   unsigned max_wt) {
    ChiralCochain r(c.sources(), c.target(), c.degree());
    for (const auto& [cell, p] : c.table()) {
        bool keep = true;
        for (std::size_t g : cell.first)
            if (model.gen_degree(g) > max_deg || model.gen_weight(g) > max_wt) {
                keep = false;
                break;
            }
        if (keep) r.add_cell(cell.first, cell.second, p);
    }
    return r;
}

} // namespace chidef
