#include "chidef/def_complex.hpp"

#include <cstdio>
#include <cstdlib>

using namespace chidef;

static void grading_stats(const SKModel& model, const ChiralCochain& c, const char* name) {
    std::map<std::pair<int, int>, int> hist; // (term_shift, pole) -> count
    for (const auto& [cell, p] : c.table()) {
        int pole = int(total_pole_order(cell.second));
        for (const auto& [le, co] : p.terms()) {
            TermCoord t{cell.first, cell.second, le.first, le.second};
            hist[{term_shift(model, t), pole}]++;
        }
    }
    printf("%s:", name);
    for (const auto& [k, n] : hist)
        printf("  shift=%d pole=%d G=%d x%d", k.first, k.second, k.first - 2 * k.second, n);
    printf("\n");
}

int main() {
    setbuf(stdout, nullptr);
    deep_product_rule() = {Rational(0), Rational(-1, 2), Rational(0), false, 1, true};
    if (getenv("SA_N"))
        deep_product_rule().sa =
            Rational(atol(getenv("SA_N")), getenv("SA_D") ? atol(getenv("SA_D")) : 1);
    if (getenv("ST")) compose_rule().sT = atoi(getenv("ST"));
    if (getenv("SL")) compose_rule().sL = atoi(getenv("SL"));
    unsigned cap = getenv("CAP") ? unsigned(atoi(getenv("CAP"))) : 4;
    bool small = getenv("SMALL") != nullptr;
    auto space = std::make_shared<SKSpace>(1, small ? 6 : 7, small ? 8 : 9);
    SKModel model(space);
    auto b = small ? model.product_cochain(3, 2, cap) : model.product_cochain(3, 3, cap);
    const auto& cv = model.conversion();
    auto gmod = model.gen_module();
    const auto& sp = *space;

    std::size_t gx = SIZE_MAX, gxx = SIZE_MAX, g33 = SIZE_MAX;
    for (std::size_t g = 0; g < model.gen_count(); ++g) {
        if (model.gen_degree(g) == 1 && model.gen_weight(g) == 0) gx = g;
        if (model.gen_degree(g) == 2 && model.gen_weight(g) == 0) gxx = g;
        if (model.gen_degree(g) == 3 && model.gen_weight(g) == 3) g33 = g;
    }
    grading_stats(model, b, "b");

    auto d = [&](const ChiralCochain& c) {
        return reduced_part(bracket(b, c, {}, &cv), model.unit_gen());
    };

    std::vector<ChiralCochain> samples;
    const char* names[8];
    int ns = 0;
    {
        ChiralCochain c({gmod}, sp.module(), 0);
        c.add_term({gx}, {}, {1}, sp.unit_index(), Rational(1));
        names[ns++] = "x->L1";
        samples.push_back(c);
    }
    {
        ChiralCochain c({gmod}, sp.module(), 0);
        c.add_term({gxx}, {}, {0}, sp.index_of({sp.var_id(0, 0)}), Rational(1));
        names[ns++] = "x2->x";
        samples.push_back(c);
    }
    if (!small) {
        // the spurious survivor: x''' + L^3 x on the cubic generator
        ChiralCochain c({gmod}, sp.module(), 0);
        c.add_term({g33}, {}, {0}, sp.index_of({sp.var_id(0, 3)}), Rational(1));
        c.add_term({g33}, {}, {3}, sp.index_of({sp.var_id(0, 0)}), Rational(1));
        names[ns++] = "g33->x'''+L3x";
        samples.push_back(c);
    }
    {
        ChiralCochain c({gmod, gmod}, sp.module(), 0);
        c.add_term({gx, gx}, {{{0, 1}, 2}}, {0, 1}, sp.unit_index(), Rational(1));
        names[ns++] = "pole2 L2";
        samples.push_back(c);
    }

    int only = getenv("ONLY") ? atoi(getenv("ONLY")) : -1;
    for (int i = 0; i < ns; ++i) {
        if (only >= 0 && i != only) continue;
        grading_stats(model, samples[i], names[i]);
        auto dc = d(samples[i]);
        grading_stats(model, dc, "  d");
        if (getenv("DD")) {
            auto ddc = d(dc);
            auto res = restrict_args(ddc, model, 1, 0);
            grading_stats(model, res, "  dd|win");
            if (getenv("DUMP")) {
                for (const auto& [cell, p] : res.table()) {
                    unsigned pmax = getenv("PMAX") ? unsigned(atoi(getenv("PMAX"))) : 2;
                    if (total_pole_order(cell.second) > pmax) continue;
                    std::string pole;
                    for (const auto& [e2, mm] : cell.second)
                        pole += "z" + std::to_string(e2.first) + std::to_string(e2.second) +
                                "^-" + std::to_string(mm) + " ";
                    for (const auto& [le, co] : p.terms()) {
                        std::string lam;
                        for (std::size_t k2 = 0; k2 < le.first.size(); ++k2)
                            if (le.first[k2])
                                lam += "L" + std::to_string(k2) + "^" +
                                       std::to_string(le.first[k2]);
                        printf("    %s%s -> %s * %s\n", pole.c_str(), lam.c_str(),
                               sp.label(sp.monomials()[le.second]).c_str(), co.str().c_str());
                    }
                }
            }
        }
    }
    return 0;
}
