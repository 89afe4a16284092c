#include "chidef/def_complex.hpp"

#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace chidef;

namespace {

// d^2 window check on the standard sample cochains
bool dd_ok(const SKModel& model, const ChiralCochain& b) {
    const auto& space = model.space();
    const auto& cv = model.conversion();
    auto gmod = model.gen_module();
    std::size_t gx = SIZE_MAX, gxx = SIZE_MAX;
    for (std::size_t g = 0; g < model.gen_count(); ++g) {
        if (model.gen_degree(g) == 1 && model.gen_weight(g) == 0) gx = g;
        if (model.gen_degree(g) == 2 && model.gen_weight(g) == 0) gxx = g;
    }
    auto d = [&](const ChiralCochain& c) {
        return reduced_part(bracket(b, c, {}, &cv), model.unit_gen());
    };
    std::vector<ChiralCochain> samples;
    {
        ChiralCochain c({gmod}, space.module(), 0);
        c.add_term({gx}, {}, {0}, space.unit_index(), Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({gmod}, space.module(), 0);
        c.add_term({gx}, {}, {1}, space.unit_index(), Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({gmod}, space.module(), 0);
        c.add_term({gx}, {}, {0}, space.index_of({space.var_id(0, 0)}), Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({gmod}, space.module(), 0);
        c.add_term({gxx}, {}, {0}, space.index_of({space.var_id(0, 0)}), Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({gmod, gmod}, space.module(), 0);
        c.add_term({gx, gx}, {{{0, 1}, 1}}, {0, 0}, space.unit_index(), Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({gmod, gmod}, space.module(), 0);
        c.add_term({gx, gx}, {{{0, 1}, 2}}, {0, 1}, space.unit_index(), Rational(1));
        samples.push_back(c);
    }
    for (const auto& c : samples) {
        auto res = restrict_args(d(d(c)), model, 1, 0);
        for (const auto& [cell, p] : res.table())
            if (total_pole_order(cell.second) <= 2 && !p.is_zero()) return false;
    }
    return true;
}

// persistent cohomology at one probe point, against the oracle
int probe(unsigned pole_cap, int w, int t0, std::size_t n, std::size_t* oracle) {
    unsigned r = 1, Dt = 3, At = 3, gap = 1;
    unsigned Dg = Dt + gap, Ag = At + gap;
    unsigned shiftmax = unsigned(std::max(t0, 0) + int(n) + 2);
    unsigned B = shiftmax + Ag;
    auto space = std::make_shared<SKSpace>(r, 2 * Dg + 2, 2 * (Ag + B) + pole_cap);
    SKModel model(space);
    auto b = model.product_cochain(Dg, Ag + B, pole_cap);

    ComplexWindow small{Dt, At, 2, 2, t0 + int(n) + 1};
    ComplexWindow big{Dg, Ag, 2, 2, t0 + int(n) + 1};
    SliceBasis mid_b(model, n, w, big.at(n));
    SliceBasis up_b(model, n + 1, w, big.at(n + 1));
    DiffMatrix out_b = differential_matrix(model, b, mid_b, up_b);
    auto coc = kernel_basis(out_b.mat);

    SliceBasis mid_s(model, n, w, small.at(n));
    detail::Echelon ech;
    if (n >= 2) {
        SliceBasis down_s(model, n - 1, w, small.at(n - 1));
        DiffMatrix in_s = differential_matrix(model, b, down_s, mid_s);
        for (std::size_t c2 = 0; c2 < in_s.mat.cols(); ++c2) {
            std::map<std::size_t, Rational> col;
            for (std::size_t r2 = 0; r2 < in_s.mat.rows(); ++r2) {
                Rational v = in_s.mat.get(r2, c2);
                if (!v.is_zero()) col[r2] = v;
            }
            detail::insert_row(ech, std::move(col));
        }
    }
    int kept = 0;
    for (const auto& z : coc) {
        ChiralCochain c(std::vector<ModulePtr>(n, model.gen_module()), model.space().module(), 0);
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (z[i].is_zero()) continue;
            ChiralCochain e = mid_b.elements()[i];
            e *= z[i];
            c += e;
        }
        std::map<std::size_t, Rational> coords;
        mid_s.coordinates(c, coords);
        if (detail::insert_row(ech, std::move(coords))) ++kept;
    }
    *oracle = koszul_dimension(r, n, w, t0);
    return kept;
}

} // namespace

int main(int argc, char** argv) {
    unsigned cap = argc > 1 ? unsigned(atoi(argv[1])) : 4;
    bool full = getenv("FULL") != nullptr;

    if (getenv("PIN")) {
        deep_product_rule() = {Rational(0), Rational(-1, 2), Rational(-1, 2), false, 1, true};
        auto space = std::make_shared<SKSpace>(1, 6, 8);
        SKModel model(space);
        auto b = model.product_cochain(3, 2, cap);
        bool sym = b.permute(Permutation{{1, 0}}, true) == b;
        printf("pinned: sym=%d dd=%d", int(sym), int(dd_ok(model, b)));
        fflush(stdout);
        std::size_t o1 = 0, o2 = 0;
        int h1 = probe(cap, -2, -1, 1, &o1);
        int h2 = probe(cap, -2, -1, 2, &o2);
        printf("  H(n=1)=%d/%zu H(n=2)=%d/%zu\n", h1, o1, h2, o2);
        return 0;
    }

    std::vector<Rational> halves{Rational(0), Rational(1), Rational(-1), Rational(1, 2),
                                 Rational(-1, 2)};
    for (const Rational& sd : halves)
        for (const Rational& sp : halves)
            for (int lam2 = 0; lam2 <= (sd.is_zero() ? 0 : 1); ++lam2)
                for (int gb : {1, -1})
                    for (int gf = 0; gf <= 1; ++gf) {
                        if (sd.is_zero() && sp.is_zero()) continue;
                        deep_product_rule() = {sd, sp, Rational(0), lam2 != 0, gb, gf != 0};
                        auto space = std::make_shared<SKSpace>(1, 6, 8);
                        SKModel model(space);
                        auto b = model.product_cochain(3, 2, cap);
                        ChiralCochain bp = b.permute(Permutation{{1, 0}}, true);
                        bool sym = bp == b;
                        ChiralCochain bn = bp;
                        bn += b;
                        bool asym = bn.is_zero();
                        bool dd = dd_ok(model, b);
                        printf("sd=%s sp=%s lam2=%d gb=%+d gf=%d : sym=%d asym=%d dd=%d",
                               sd.str().c_str(), sp.str().c_str(), lam2, gb, gf, int(sym),
                               int(asym), int(dd));
                        if (dd && (sym || asym) && full) {
                            std::size_t o1 = 0, o2 = 0;
                            int h1 = probe(cap, -2, -1, 1, &o1);
                            int h2 = probe(cap, -2, -1, 2, &o2);
                            printf("  H(n=1)=%d/%zu H(n=2)=%d/%zu", h1, o1, h2, o2);
                        }
                        printf("\n");
                        fflush(stdout);
                    }
    return 0;
}
