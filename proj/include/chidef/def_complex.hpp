#pragma once

#include "chidef/koszul.hpp"
#include "chidef/sk.hpp"
#include "chidef/sparse_matrix.hpp"

#include <map>
#include <optional>
#include <vector>

namespace chidef {

// one summand coordinate of a cochain: which argument tuple, pole pattern,
// lambda monomial and output generator
struct TermCoord {
    ChiralCochain::Key key;
    PolePattern pole;
    std::vector<unsigned> lexp;
    std::size_t out;

    bool operator<(const TermCoord& o) const {
        if (key != o.key) return key < o.key;
        if (pole != o.pole) return pole < o.pole;
        if (lexp != o.lexp) return lexp < o.lexp;
        return out < o.out;
    }
    bool operator==(const TermCoord& o) const {
        return key == o.key && pole == o.pole && lexp == o.lexp && out == o.out;
    }
};

// shift level of a term: lambda degree + pole order + output weight minus
// the argument weights; additive on pole-free cells but not across deep
// pole cells (an order-k cell sits at shift 2k-1)
inline int term_shift(const SKModel& model, const TermCoord& t) {
    int s = int(total_pole_order(t.pole));
    for (unsigned e : t.lexp) s += int(e);
    s += int(model.space().weight(model.space().monomials()[t.out]));
    for (std::size_t g : t.key) s -= int(model.gen_weight(g));
    return s;
}

// conformal level of a term: lambda degree - pole order + output weight
// minus the argument weights; exactly additive under composition even
// across deep pole cells (the product cochain is homogeneous of level -1)
inline int conformal_level(const SKModel& model, const TermCoord& t) {
    return term_shift(model, t) - 2 * int(total_pole_order(t.pole));
}

// truncation window for one arity of the complex: the shift level is an
// exact grading of the pole-graded differential, and at fixed shift the
// lambda degree plus pole order is determined by the output weight, so the
// slice is finite even without the caps; lam_max and pole_max additionally
// cap the lambda degree and total pole order of basis terms (the
// experiment's L and P_max bounds), and the caps bound the TOTAL argument
// degree and weight, which only ever grow under insertion of the product
struct SliceWindow {
    unsigned arg_deg_tot;
    unsigned arg_wt_tot;
    int level; // exact shift level of this arity
    unsigned lam_max;
    unsigned pole_max;
};

namespace def_detail {

inline void enumerate_poles(std::size_t n, unsigned budget, std::size_t vertex, PolePattern& cur,
                            std::vector<PolePattern>& out) {
    if (vertex >= n) {
        out.push_back(cur);
        return;
    }
    enumerate_poles(n, budget, vertex + 1, cur, out);
    for (std::size_t i = 0; i < vertex; ++i)
        for (unsigned m = 1; m <= budget; ++m) {
            cur[{i, vertex}] = m;
            enumerate_poles(n, budget - m, vertex + 1, cur, out);
            cur.erase({i, vertex});
        }
}

// canonical pole patterns on n slots with total order <= budget: at most one
// edge per larger endpoint
inline std::vector<PolePattern> canonical_poles(std::size_t n, unsigned budget) {
    std::vector<PolePattern> out;
    PolePattern cur;
    enumerate_poles(n, budget, 1, cur, out);
    return out;
}

inline void enumerate_exps(std::size_t n, unsigned total, std::vector<unsigned>& cur,
                           std::vector<std::vector<unsigned>>& out) {
    if (cur.size() + 1 == n) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (unsigned t = 0; t <= total; ++t) {
        cur.push_back(t);
        enumerate_exps(n, total - t, cur, out);
        cur.pop_back();
    }
}

// lambda exponent tuples on n slots with the exact total given
inline std::vector<std::vector<unsigned>> exact_exps(std::size_t n, unsigned total) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    enumerate_exps(n, total, cur, out);
    return out;
}

} // namespace def_detail

// basis of the epsilon-symmetric reduced cochains at one arity, internal
// weight and shift level, inside the argument window
class SliceBasis {
public:
    SliceBasis(const SKModel& model, std::size_t n, int w, const SliceWindow& win)
        : model_(&model), n_(n), w_(w), win_(win) {
        build();
    }

    std::size_t arity() const { return n_; }
    int weight() const { return w_; }
    const SliceWindow& window() const { return win_; }
    const std::vector<ChiralCochain>& elements() const { return basis_; }
    const std::vector<TermCoord>& coords() const { return coords_; }

    std::size_t coord_index(const TermCoord& t) {
        auto it = index_.find(t);
        if (it != index_.end()) return it->second;
        std::size_t i = coords_.size();
        coords_.push_back(t);
        index_.emplace(t, i);
        return i;
    }

    // is the term coordinate inside this slice's window (and reduced)?
    bool in_window(const TermCoord& t) const {
        const auto& model = *model_;
        unsigned degs = 0, wts = 0;
        for (std::size_t g : t.key) {
            if (g == model.unit_gen()) return false;
            degs += model.gen_degree(g);
            wts += model.gen_weight(g);
        }
        if (degs > win_.arg_deg_tot || wts > win_.arg_wt_tot) return false;
        if (total_pole_order(t.pole) > win_.pole_max) return false;
        unsigned lt = 0;
        for (unsigned e : t.lexp) lt += e;
        if (lt > win_.lam_max) return false;
        const auto& om = model.space().monomials()[t.out];
        if (int(model.space().degree(om)) != w_ + int(degs)) return false;
        return conformal_level(model, t) == win_.level;
    }

    // expand a symmetric cochain in the coordinate list; returns false if a
    // nonzero term falls outside the window (the clipped part is dropped)
    bool coordinates(const ChiralCochain& c, std::map<std::size_t, Rational>& out) {
        bool inside = true;
        for (const auto& [cell, p] : c.table())
            for (const auto& [e, coeff] : p.terms()) {
                TermCoord t{cell.first, cell.second, e.first, e.second};
                if (!in_window(t)) {
                    inside = false;
                    continue;
                }
                out[coord_index(t)] += coeff;
            }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return inside;
    }

private:
    void build() {
        const auto& model = *model_;
        const auto& space = model.space();
        std::vector<std::size_t> args;
        for (std::size_t g = 0; g < model.gen_count(); ++g) {
            if (g == model.unit_gen()) continue;
            if (model.gen_degree(g) <= win_.arg_deg_tot && model.gen_weight(g) <= win_.arg_wt_tot)
                args.push_back(g);
        }
        // monomial outputs grouped by degree, then weight
        std::map<unsigned, std::map<unsigned, std::vector<std::size_t>>> outs;
        for (std::size_t i = 0; i < space.monomials().size(); ++i) {
            const auto& m = space.monomials()[i];
            outs[space.degree(m)][space.weight(m)].push_back(i);
        }

        detail::Echelon ech;
        std::vector<std::size_t> stack;
        enumerate_keys(args, stack, outs, ech);
    }

    void enumerate_keys(const std::vector<std::size_t>& args, std::vector<std::size_t>& key,
                        const std::map<unsigned, std::map<unsigned, std::vector<std::size_t>>>& outs,
                        detail::Echelon& ech) {
        if (key.size() == n_) {
            int degs = 0, wts = 0;
            for (std::size_t g : key) {
                degs += int(model_->gen_degree(g));
                wts += int(model_->gen_weight(g));
            }
            if (degs > int(win_.arg_deg_tot) || wts > int(win_.arg_wt_tot)) return;
            int od = w_ + degs;
            if (od < 0) return;
            auto it = outs.find(unsigned(od));
            if (it == outs.end()) return;
            // lambda - pole + out weight = level + argument weights
            auto poles = def_detail::canonical_poles(n_, win_.pole_max);
            for (const auto& [ow, idxs] : it->second)
                for (const auto& pole : poles) {
                    int lt = win_.level + wts - int(ow) + int(total_pole_order(pole));
                    if (lt < 0 || lt > int(win_.lam_max)) continue;
                    for (const auto& le : def_detail::exact_exps(n_, unsigned(lt)))
                        for (std::size_t out : idxs) try_candidate(key, pole, le, out, ech);
                }
            return;
        }
        // non-decreasing argument tuples represent the symmetric orbits
        for (std::size_t a = 0; a < args.size(); ++a) {
            if (!key.empty() && args[a] < key.back()) continue;
            key.push_back(args[a]);
            enumerate_keys(args, key, outs, ech);
            key.pop_back();
        }
    }

    void try_candidate(const std::vector<std::size_t>& key, const PolePattern& pole,
                       const std::vector<unsigned>& le, std::size_t out, detail::Echelon& ech) {
        ChiralCochain single(std::vector<ModulePtr>(n_, model_->gen_module()),
                             model_->space().module(), 0);
        single.add_term(key, pole, le, out, Rational(1));
        ChiralCochain sym = symmetrize(single, true);
        if (sym.is_zero()) return;
        std::map<std::size_t, Rational> vec;
        coordinates(sym, vec); // symmetrization stays inside the window
        std::map<std::size_t, Rational> row(vec.begin(), vec.end());
        if (detail::insert_row(ech, std::move(row))) basis_.push_back(std::move(sym));
    }

    const SKModel* model_;
    std::size_t n_;
    int w_;
    SliceWindow win_;
    std::vector<ChiralCochain> basis_;
    std::vector<TermCoord> coords_;
    std::map<TermCoord, std::size_t> index_;
};

// differential matrix between two slices; counts how many image columns had
// terms clipped at the target window
struct DiffMatrix {
    SparseMatrix mat; // coords(to) x elements(from)
    std::size_t clipped = 0;
};

inline ChiralCochain slice_differential(const SKModel& model, const ChiralCochain& b,
                                        const ChiralCochain& c) {
    const OutputConversion& cv = model.conversion();
    return reduced_part(bracket(b, c, {}, &cv), model.unit_gen());
}

inline DiffMatrix differential_matrix(const SKModel& model, const ChiralCochain& b,
                                      SliceBasis& from, SliceBasis& to) {
    DiffMatrix dm;
    std::vector<std::map<std::size_t, Rational>> cols;
    for (const auto& e : from.elements()) {
        ChiralCochain de = slice_differential(model, b, e);
        std::map<std::size_t, Rational> col;
        if (!to.coordinates(de, col)) ++dm.clipped;
        cols.push_back(std::move(col));
    }
    dm.mat = SparseMatrix(to.coords().size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c]) dm.mat.set(r, c, v);
    return dm;
}

// window parameters for the whole complex: the conformal level drops by one
// per arity, matching what the differential does, so one conformal weight
// fixes the level of every arity; the caps are shared by all arities
struct ComplexWindow {
    unsigned arg_deg_tot = 4;
    unsigned arg_wt_tot = 4;
    unsigned lam_max = 2;
    unsigned pole_max = 2;
    int cweight = 0; // conformal weight: level + arity, preserved by d

    SliceWindow at(std::size_t n) const {
        return {arg_deg_tot, arg_wt_tot, cweight - int(n), lam_max, pole_max};
    }
};

struct CohomologyEntry {
    std::size_t arity = 0;
    int weight = 0;
    int cweight = 0;
    std::size_t dim_space = 0;   // windowed cochain space at this arity
    std::size_t rank_out = 0;    // rank of d leaving this arity
    std::size_t rank_in = 0;     // rank of d entering from arity-1
    long dim_h = 0;              // dim_space - rank_out - rank_in
    std::size_t clipped_out = 0; // columns clipped when mapping out
    std::size_t clipped_in = 0;
    bool window_exact = true; // stable under window enlargement
};

// three-slice cohomology computation at (arity n, weight w, shift base t0)
inline CohomologyEntry cohomology_at(const SKModel& model, const ChiralCochain& b, std::size_t n,
                                     int w, const ComplexWindow& cw) {
    CohomologyEntry e;
    e.arity = n;
    e.weight = w;
    e.cweight = cw.cweight;
    SliceBasis mid(model, n, w, cw.at(n));
    SliceBasis up(model, n + 1, w, cw.at(n + 1));
    DiffMatrix out = differential_matrix(model, b, mid, up);
    e.dim_space = mid.elements().size();
    e.rank_out = rank(out.mat);
    e.clipped_out = out.clipped;
    if (n >= 2) {
        SliceBasis down(model, n - 1, w, cw.at(n - 1));
        DiffMatrix in = differential_matrix(model, b, down, mid);
        e.rank_in = rank(in.mat);
        e.clipped_in = in.clipped;
    }
    e.dim_h = long(e.dim_space) - long(e.rank_out) - long(e.rank_in);
    return e;
}

// persistent cohomology across two nested quotient windows: cocycles of the
// big window that remain independent of the small window's coboundaries
// after projecting down; boundary-supported junk of the big window dies in
// the projection while genuine class truncations survive
inline long persistent_dim(const SKModel& model, const ChiralCochain& b, std::size_t n, int w,
                           const ComplexWindow& small, const ComplexWindow& big) {
    SliceBasis mid_b(model, n, w, big.at(n));
    SliceBasis up_b(model, n + 1, w, big.at(n + 1));
    DiffMatrix out_b = differential_matrix(model, b, mid_b, up_b);
    std::vector<Vec> cocycles = kernel_basis(out_b.mat);

    SliceBasis mid_s(model, n, w, small.at(n));
    detail::Echelon ech;
    if (n >= 2) {
        SliceBasis down_s(model, n - 1, w, small.at(n - 1));
        DiffMatrix in_s = differential_matrix(model, b, down_s, mid_s);
        for (std::size_t c = 0; c < in_s.mat.cols(); ++c) {
            std::map<std::size_t, Rational> col;
            for (std::size_t r = 0; r < in_s.mat.rows(); ++r) {
                Rational v = in_s.mat.get(r, c);
                if (!v.is_zero()) col[r] = v;
            }
            detail::insert_row(ech, std::move(col));
        }
    }

    long h = 0;
    for (const auto& z : cocycles) {
        ChiralCochain c(std::vector<ModulePtr>(n, model.gen_module()), model.space().module(), 0);
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (z[i].is_zero()) continue;
            ChiralCochain e = mid_b.elements()[i];
            e *= z[i];
            c += e;
        }
        std::map<std::size_t, Rational> coords;
        mid_s.coordinates(c, coords); // drops terms outside the small window
        if (detail::insert_row(ech, std::move(coords))) ++h;
    }
    return h;
}

// recompute with an enlarged argument window and compare, marking stability
inline CohomologyEntry cohomology_marked(const SKModel& model, const ChiralCochain& b,
                                         std::size_t n, int w, const ComplexWindow& cw) {
    CohomologyEntry e = cohomology_at(model, b, n, w, cw);
    ComplexWindow big = cw;
    big.arg_deg_tot += 1;
    big.arg_wt_tot += 1;
    CohomologyEntry e2 = cohomology_at(model, b, n, w, big);
    e.window_exact = (e.dim_h == e2.dim_h);
    return e;
}

} // namespace chidef
