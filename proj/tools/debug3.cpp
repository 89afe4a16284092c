#include "chidef/def_complex.hpp"

#include <cstdio>
#include <cstdlib>

using namespace chidef;

namespace {

ModulePtr tiny_mod(int rank) {
    std::vector<Generator> gens;
    for (int i = 0; i < rank; ++i) gens.push_back({"g" + std::to_string(i), 0});
    return std::make_shared<TransDModule>("M", gens, Side::right);
}

ChiralCochain term2(const ModulePtr& m, std::vector<unsigned> le, PolePattern pole) {
    ChiralCochain c({m, m}, m, 0);
    c.add_term({0, 0}, pole, le, 0, Rational(1));
    return c;
}

void dump_tiny(const ChiralCochain& c, const char* name) {
    printf("%s:\n", name);
    for (const auto& [cell, p] : c.table()) {
        std::string pole;
        for (const auto& [e2, mm] : cell.second)
            pole += "z" + std::to_string(e2.first) + std::to_string(e2.second) + "^-" +
                    std::to_string(mm) + " ";
        for (const auto& [le, co] : p.terms()) {
            std::string lam;
            for (std::size_t i = 0; i < le.first.size(); ++i)
                if (le.first[i])
                    lam += "L" + std::to_string(i) + "^" + std::to_string(le.first[i]);
            printf("  %s%s : %s\n", pole.c_str(), lam.c_str(), co.str().c_str());
        }
    }
}

int operad_probe() {
    auto m = tiny_mod(1);
    int a = getenv("A") ? atoi(getenv("A")) : 0;
    int bq = getenv("B") ? atoi(getenv("B")) : 0;
    int cq = getenv("C") ? atoi(getenv("C")) : 0;
    std::vector<ChiralCochain> ops;
    ops.push_back(term2(m, {0, 0}, {{{0, 1}, 1}}));
    ops.push_back(term2(m, {1, 0}, {}));
    ops.push_back(term2(m, {0, 1}, {{{0, 1}, 2}}));
    const auto& x = ops[a];
    const auto& y = ops[bq];
    const auto& z = ops[cq];
    dump_tiny(compose_i(compose_i(x, y, 1), z, 3), "(x o1 y) o3 z");
    dump_tiny(compose_i(compose_i(x, z, 2), y, 1), "(x o2 z) o1 y");
    for (std::size_t j = 1; j <= 2; ++j) {
        dump_tiny(compose_i(compose_i(x, y, 1), z, j),
                  j == 1 ? "(x o1 y) o1 z" : "(x o1 y) o2 z");
        dump_tiny(compose_i(x, compose_i(y, z, j), 1),
                  j == 1 ? "x o1 (y o1 z)" : "x o1 (y o2 z)");
    }
    return 0;
}

bool operad_ok() {
    auto m = tiny_mod(1);
    std::vector<ChiralCochain> ops;
    ops.push_back(term2(m, {0, 0}, {{{0, 1}, 1}}));
    ops.push_back(term2(m, {1, 0}, {}));
    ops.push_back(term2(m, {0, 1}, {{{0, 1}, 2}}));
    bool ok = true;
    for (std::size_t a = 0; a < ops.size(); ++a)
        for (std::size_t bq = 0; bq < ops.size(); ++bq)
            for (std::size_t cq = 0; cq < ops.size(); ++cq) {
                const auto& x = ops[a];
                const auto& y = ops[bq];
                const auto& z = ops[cq];
                if (!(compose_i(compose_i(x, y, 1), z, 3) == compose_i(compose_i(x, z, 2), y, 1))) {
                    printf("[par %zu%zu%zu] ", a, bq, cq);
                    ok = false;
                }
                for (std::size_t j = 1; j <= 2; ++j)
                    if (!(compose_i(compose_i(x, y, 1), z, j) ==
                          compose_i(x, compose_i(y, z, j), 1))) {
                        printf("[seq%zu %zu%zu%zu] ", j, a, bq, cq);
                        ok = false;
                    }
            }
    return ok;
}

// target translation: -sum lambda - out_sign * d(out)
ChiralCochain translate_target(const SKModel& model, const ChiralCochain& c, int out_sign) {
    ChiralCochain r(c.sources(), c.target(), c.degree());
    const auto& space = model.space();
    for (const auto& [cell, p] : c.table())
        for (const auto& [e, coeff] : p.terms()) {
            for (std::size_t i = 0; i < c.arity(); ++i) {
                auto le = e.first;
                le[i] += 1;
                r.add_term(cell.first, cell.second, le, e.second, -coeff);
            }
            if (out_sign)
                for (const auto& [q, dc] : space.derivative(space.monomials()[e.second]))
                    r.add_term(cell.first, cell.second, e.first, space.index_of(q),
                               coeff * dc * Rational(-out_sign));
        }
    return r;
}

int jacobi_mode() {
    auto m = tiny_mod(1);
    std::vector<ChiralCochain> els;
    els.push_back(symmetrize(term2(m, {0, 0}, {{{0, 1}, 1}}), true));
    els.push_back(symmetrize(term2(m, {1, 0}, {}), true));
    els.push_back(symmetrize(term2(m, {0, 1}, {{{0, 1}, 2}}), true));
    {
        ChiralCochain u({m}, m, 0);
        u.add_term({0}, {}, {1}, 0, Rational(1));
        els.push_back(u);
    }
    for (std::size_t a = 0; a < els.size(); ++a)
        if (els[a].is_zero()) printf("element %zu symmetrizes to zero\n", a);
    for (std::size_t a = 0; a < els.size(); ++a)
        for (std::size_t bq = 0; bq < els.size(); ++bq)
            for (std::size_t cq = 0; cq < els.size(); ++cq) {
                const auto& x = els[a];
                const auto& y = els[bq];
                const auto& z = els[cq];
                auto lhs = bracket(x, bracket(y, z));
                auto rhs = bracket(bracket(x, y), z);
                auto t = bracket(y, bracket(x, z));
                if ((g_degree(x) % 2) && (g_degree(y) % 2)) rhs -= t;
                else rhs += t;
                if (!(lhs == rhs)) printf("jacobi FAIL (%zu,%zu,%zu)\n", a, bq, cq);
            }
    printf("jacobi done\n");
    return 0;
}

} // namespace

void rule_from_env() {
    if (getenv("TAY")) compose_rule().taylor = atoi(getenv("TAY"));
    if (getenv("LOW")) compose_rule().lower = atoi(getenv("LOW"));
    if (getenv("ST")) compose_rule().sT = atoi(getenv("ST"));
    if (getenv("SL")) compose_rule().sL = atoi(getenv("SL"));
}

int main() {
    if (getenv("JACOBI")) {
        rule_from_env();
        return jacobi_mode();
    }
    if (getenv("OPERAD")) {
        rule_from_env();
        return operad_probe();
    }
    auto space = std::make_shared<SKSpace>(1, 8, 8);
    SKModel model(space);
    auto b = model.product_cochain(4, 4);
    const OutputConversion& cv = model.conversion();
    std::size_t x00 = 0, x00sq = 0;
    for (std::size_t g = 0; g < model.gen_count(); ++g) {
        if (model.gen_degree(g) == 1 && model.gen_weight(g) == 0) x00 = g;
        if (model.gen_degree(g) == 2 && model.gen_weight(g) == 0) x00sq = g;
    }
    std::size_t out_x00 = model.gen_monomial(x00);
    std::size_t out_x00sq = model.gen_monomial(x00sq);

    std::vector<ChiralCochain> samples;
    {
        ChiralCochain c({model.gen_module()}, space->module(), 0);
        c.add_term({x00}, {}, {1}, space->unit_index(), Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({model.gen_module()}, space->module(), 0);
        c.add_term({x00}, {}, {0}, out_x00, Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({model.gen_module()}, space->module(), 0);
        c.add_term({x00sq}, {}, {0}, out_x00, Rational(1));
        samples.push_back(c);
    }
    {
        ChiralCochain c({model.gen_module(), model.gen_module()}, space->module(), 0);
        c.add_term({x00, x00}, {{{0, 1}, 1}}, {0, 0}, out_x00, Rational(1));
        c = symmetrize(c, true);
        if (!c.is_zero()) samples.push_back(c);
    }
    {
        ChiralCochain c({model.gen_module(), model.gen_module()}, space->module(), 0);
        c.add_term({x00, x00}, {}, {1, 0}, out_x00sq, Rational(1));
        c = symmetrize(c, true);
        if (!c.is_zero()) samples.push_back(c);
    }
    {
        ChiralCochain c({model.gen_module(), model.gen_module()}, space->module(), 0);
        c.add_term({x00, x00}, {{{0, 1}, 2}}, {0, 1}, space->unit_index(), Rational(1));
        samples.push_back(c);
    }
    printf("%zu samples\n", samples.size());

    auto d = [&](const ChiralCochain& c) {
        return reduced_part(bracket(b, c, {}, &cv), model.unit_gen());
    };

    auto describe = [&](const ChiralCochain& c, const char* name) {
        printf("%s:\n", name);
        for (const auto& [cell, p] : c.table()) {
            std::string key;
            for (std::size_t g : cell.first)
                key += model.space().label(model.space().monomials()[model.gen_monomial(g)]) + ",";
            std::string pole;
            for (const auto& [e2, mm] : cell.second)
                pole += "z" + std::to_string(e2.first) + std::to_string(e2.second) + "^-" +
                        std::to_string(mm) + " ";
            for (const auto& [le, co] : p.terms()) {
                std::string lam;
                for (std::size_t i = 0; i < le.first.size(); ++i)
                    if (le.first[i])
                        lam += "L" + std::to_string(i) + "^" + std::to_string(le.first[i]);
                printf("  (%s) %s%s -> %s * %s\n", key.c_str(), pole.c_str(), lam.c_str(),
                       model.space().label(model.space().monomials()[le.second]).c_str(),
                       co.str().c_str());
            }
        }
    };

    if (const char* probe = getenv("PROBE")) {
        int si = atoi(probe);
        int os = getenv("OUTSGN") ? atoi(getenv("OUTSGN")) : 1;
        rule_from_env();
        const auto& c = samples[si];
        describe(restrict_args(d(c), model, 1, 0), "d(c)");
        describe(restrict_args(d(translate_target(model, c, os)), model, 1, 0), "d(Tc)");
        describe(restrict_args(translate_target(model, d(c), os), model, 1, 0), "T(dc)");
        ChiralCochain lhs = d(translate_target(model, c, os));
        lhs -= translate_target(model, d(c), os);
        describe(restrict_args(lhs, model, 1, 0), "residual");
        describe(restrict_args(d(d(c)), model, 1, 0), "dd(c)");
        return 0;
    }

    for (int st : {1, -1})
        for (int sl : {1, -1}) {
            compose_rule().taylor = true;
            compose_rule().lower = true;
            compose_rule().sT = st;
            compose_rule().sL = sl;
            bool op = operad_ok();
            bool dd = true;
            for (std::size_t si = 0; si < samples.size(); ++si)
                if (!restrict_args(d(d(samples[si])), model, 1, 0).is_zero()) {
                    dd = false;
                    printf("[dd fail sample %zu] ", si);
                }
            printf("sT=%+d sL=%+d: operad=%s dd=%s", st, sl, op ? "ok" : "FAIL",
                   dd ? "ok" : "FAIL");
            for (int os : {1, -1, 0}) {
                bool tok = true;
                for (std::size_t si = 0; si < samples.size(); ++si) {
                    ChiralCochain lhs = d(translate_target(model, samples[si], os));
                    lhs -= translate_target(model, d(samples[si]), os);
                    if (!restrict_args(lhs, model, 1, 0).is_zero()) {
                        tok = false;
                        printf("[T%+d fail sample %zu] ", os, si);
                    }
                }
                printf(" T(out=%+d)=%s", os, tok ? "ok" : "FAIL");
            }
            printf("\n");
        }
    return 0;
}
