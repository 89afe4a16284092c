#include "chidef/mc_deligne.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chidef;

namespace {

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = Rational(1);
    return v;
}

bool vec_zero(const Vec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("coefficient algebra builtins and validation") {
    auto A = NilpotentCoeffAlgebra::truncated_polynomial(3);
    CHECK(A.dim() == 3);
    CHECK(A.nilpotency_index() == 3);
    // t * t = t^2, t * t^2 = 0
    CHECK(A.product(A.basis_vec(1), A.basis_vec(1)) == A.basis_vec(2));
    CHECK(vec_zero(A.product(A.basis_vec(1), A.basis_vec(2))));
    CHECK(A.product(A.basis_vec(0), A.basis_vec(2)) == A.basis_vec(2));

    // Euler derivation t d/dt descends to the quotient
    SparseMatrix euler(3, 3);
    euler.set(1, 1, Rational(1));
    euler.set(2, 2, Rational(2));
    A.set_derivation(euler);
    CHECK(A.delta_apply(A.basis_vec(2)) == Vec{Rational(0), Rational(0), Rational(2)});

    // d/dt is not a derivation of k[t]/t^3 (fails on t * t^2)
    SparseMatrix ddt(3, 3);
    ddt.set(0, 1, Rational(1));
    ddt.set(1, 2, Rational(2));
    auto B = NilpotentCoeffAlgebra::truncated_polynomial(3);
    CHECK_THROWS(B.set_derivation(ddt));

    // a non-nilpotent "ideal" is rejected
    std::vector<std::vector<Vec>> mult(1, std::vector<Vec>(1, Vec{Rational(1)}));
    CHECK_THROWS(NilpotentCoeffAlgebra({"e"}, 0, mult, {0}, 2));
}

TEST_CASE("evaluate_glie") {
    auto m = std::make_shared<TransDModule>(
        "h", std::vector<Generator>{{"k^", 0}, {"k", 0}, {"w", 0}}, Side::right);
    auto A2 = NilpotentCoeffAlgebra::truncated_polynomial(2);

    // abelian bracket -> abelian Lie algebra of matching dimension
    StarOperation zero(std::vector<ModulePtr>(2, m), m, 0);
    auto Lz = evaluate_glie(zero, A2);
    CHECK(Lz.dim() == 6);
    Lz.validate();
    CHECK(Lz.nilpotency_certificate() == 1);

    // canonical pairing [k^, k] = w: Heisenberg over the dual numbers
    StarOperation br(std::vector<ModulePtr>(2, m), m, 0);
    LambdaPoly p(2, m);
    p.add_term({0, 0}, 2, Rational(1));
    br.set_value({0, 1}, p);
    br.set_value({1, 0}, p * Rational(-1));
    auto L = evaluate_glie(br, A2);
    CHECK(L.dim() == 6);
    L.validate();
    CHECK(L.nilpotency_certificate() == 2);
    // [k^ (x) t^a, k (x) t^b] = w (x) t^{a+b}, zero once a+b >= 2
    CHECK(L.bracket_basis(0 * 2 + 0, 1 * 2 + 1) == unit_vec(6, 2 * 2 + 1));
    CHECK(L.bracket_basis(0 * 2 + 1, 1 * 2 + 0) == unit_vec(6, 2 * 2 + 1));
    CHECK(vec_zero(L.bracket_basis(0 * 2 + 1, 1 * 2 + 1)));
    CHECK(vec_zero(L.bracket_basis(0 * 2 + 0, 0 * 2 + 1)));

    // lambda-dependent bracket with a nonzero derivation: lambda_1 acts as
    // delta on the first coordinate
    auto A3 = NilpotentCoeffAlgebra::truncated_polynomial(3);
    SparseMatrix euler(3, 3);
    euler.set(1, 1, Rational(1));
    euler.set(2, 2, Rational(2));
    A3.set_derivation(euler);
    StarOperation lam(std::vector<ModulePtr>(2, m), m, 0);
    LambdaPoly q(2, m);
    q.add_term({1, 0}, 2, Rational(1)); // [k^, k] = lambda_1 w
    lam.set_value({0, 1}, q);
    auto Ld = evaluate_glie(lam, A3);
    // [k^ (x) t^a, k (x) t^b] = a * w (x) t^{a+b}
    CHECK(vec_zero(Ld.bracket_basis(0 * 3 + 0, 1 * 3 + 1)));
    Vec expect = unit_vec(9, 2 * 3 + 2);
    CHECK(Ld.bracket_basis(0 * 3 + 1, 1 * 3 + 1) == expect);
    Vec e2(9);
    e2[2 * 3 + 2] = Rational(2);
    CHECK(Ld.bracket_basis(0 * 3 + 2, 1 * 3 + 0) == e2);
}

TEST_CASE("mc_check") {
    // abelian with d = 0: everything in degree 1 is MC
    FiniteDGLie ab({1, 1}, SparseMatrix(2, 2));
    ab.validate();
    CHECK(vec_zero(mc_check(ab, Vec(2))));
    CHECK(vec_zero(mc_check(ab, unit_vec(2, 0))));

    // e in degree 1, f in degree 2, [e,e] = f, d e = f:
    // residual of x = e is de + f/2 = (3/2) f
    SparseMatrix d(2, 2);
    d.set(1, 0, Rational(1));
    FiniteDGLie L({1, 2}, d);
    L.set_bracket(0, 0, unit_vec(2, 1));
    L.validate();
    Vec res = mc_check(L, unit_vec(2, 0));
    CHECK(res == Vec{Rational(0), Rational(3, 2)});
    CHECK_THROWS(mc_check(L, unit_vec(2, 1))); // wrong degree
}

TEST_CASE("gauge action") {
    // abelian: gauge = translation by exact terms
    SparseMatrix d(2, 2);
    d.set(1, 0, Rational(1));
    FiniteDGLie ab({0, 1}, d);
    ab.validate();
    Vec x = Vec{Rational(0), Rational(5)};
    CHECK(gauge_act(ab, Vec(2), x) == x);
    Vec y = unit_vec(2, 0);
    CHECK(gauge_act(ab, y, x) == Vec{Rational(0), Rational(4)}); // x - dy

    // class-2 nilpotent playground: a, b, c in degree 0 with [a,b] = c,
    // u, v in degree 1 with [a,u] = v = -[u,a]; d = 0
    FiniteDGLie L({0, 0, 0, 1, 1}, SparseMatrix(5, 5));
    L.set_bracket(0, 1, unit_vec(5, 2));
    L.set_bracket(1, 0, Vec{Rational(0), Rational(0), Rational(-1), Rational(0), Rational(0)});
    L.set_bracket(0, 3, unit_vec(5, 4));
    L.set_bracket(3, 0, Vec{Rational(0), Rational(0), Rational(0), Rational(0), Rational(-1)});
    L.validate();
    CHECK(L.nilpotency_certificate() == 2);

    Vec u = unit_vec(5, 3);
    // MC (d = 0 and all degree-1 brackets vanish) is preserved by every gauge
    for (long ca = -2; ca <= 2; ++ca)
        for (long cb = -2; cb <= 2; ++cb) {
            Vec g(5);
            g[0] = Rational(ca);
            g[1] = Rational(cb);
            Vec gx = gauge_act(L, g, u);
            CHECK(vec_zero(mc_check(L, gx)));
            // explicit class-2 formula: u + [g, u]
            Vec expect = u;
            expect[4] += Rational(ca);
            CHECK(gx == expect);
            // group law: acting by g then g' = acting by BCH(g', g)
            for (long cc = -1; cc <= 1; ++cc) {
                Vec g2(5);
                g2[1] = Rational(cc);
                Vec lhs = gauge_act(L, g2, gauge_act(L, g, u));
                Vec bch = g2;
                for (std::size_t i = 0; i < 5; ++i) bch[i] += g[i];
                Vec comm = L.bracket(g2, g);
                for (std::size_t i = 0; i < 5; ++i) bch[i] += comm[i] * Rational(1, 2);
                CHECK(lhs == gauge_act(L, bch, u));
            }
        }
}

TEST_CASE("first-order classes and second-order obstruction") {
    // acyclic two-term complex -> no classes
    SparseMatrix d(2, 2);
    d.set(1, 0, Rational(1));
    FiniteDGLie acyc({1, 2}, d);
    CHECK(deligne_classes_first_order(acyc).dimension == 0);

    // zero differential, three degree-1 lines -> 3 classes
    FiniteDGLie flat({1, 1, 1}, SparseMatrix(3, 3));
    auto cls = deligne_classes_first_order(flat);
    CHECK(cls.dimension == 3);
    CHECK(cls.representatives.size() == 3);

    // obstruction: e in degree 1, f in degree 2, d = 0, [e,e] = f
    FiniteDGLie ob({1, 2}, SparseMatrix(2, 2));
    ob.set_bracket(0, 0, unit_vec(2, 1));
    ob.validate();
    auto o = obstruction_second_order(ob, unit_vec(2, 0));
    CHECK(!o.liftable);
    CHECK(o.reduced_class == Vec{Rational(0), Rational(1, 2)});
    // abelian: always liftable
    FiniteDGLie ab({1, 2}, SparseMatrix(2, 2));
    auto oa = obstruction_second_order(ab, unit_vec(2, 0));
    CHECK(oa.liftable);
    CHECK(vec_zero(oa.reduced_class));
    // H^2 = 0 (f exact): always liftable even with a nonzero bracket
    SparseMatrix dm(3, 3);
    dm.set(1, 2, Rational(1)); // basis: e (1), f (2), e' (1); d e' = f
    FiniteDGLie lift({1, 2, 1}, dm);
    lift.set_bracket(0, 0, unit_vec(3, 1));
    lift.validate();
    auto ol = obstruction_second_order(lift, unit_vec(3, 0));
    CHECK(ol.liftable);
    CHECK(vec_zero(ol.reduced_class));
}

TEST_CASE("quasi-isomorphism invariance") {
    // L1: two degree-1 lines, zero d, abelian
    FiniteDGLie L1({1, 1}, SparseMatrix(2, 2));
    // L2 = L1 + acyclic piece in degrees 0 -> 1
    SparseMatrix d2(4, 4);
    d2.set(3, 2, Rational(1));
    FiniteDGLie L2({1, 1, 0, 1}, d2);

    // identity
    SparseMatrix id2(2, 2);
    id2.set(0, 0, Rational(1));
    id2.set(1, 1, Rational(1));
    auto rid = quasi_iso_invariance_check(L1, L1, id2);
    CHECK(rid.dg_map);
    CHECK(rid.quasi_iso);
    CHECK(rid.classes_match);

    // inclusion of the quasi-isomorphic subcomplex
    SparseMatrix inc(4, 2);
    inc.set(0, 0, Rational(1));
    inc.set(1, 1, Rational(1));
    auto rin = quasi_iso_invariance_check(L1, L2, inc);
    CHECK(rin.dg_map);
    CHECK(rin.quasi_iso);
    CHECK(rin.classes_match);
    CHECK(rin.dim_source == 2);
    CHECK(rin.dim_target == 2);

    // a dg map that is not a quasi-isomorphism: zero map to a smaller complex
    FiniteDGLie L0({1}, SparseMatrix(1, 1));
    SparseMatrix z(1, 2);
    auto rz = quasi_iso_invariance_check(L1, L0, z);
    CHECK(rz.dg_map);
    CHECK(!rz.quasi_iso);
    CHECK(!rz.classes_match);

    // not a dg-Lie map: bracket incompatibility is reported
    FiniteDGLie H({0, 0, 0}, SparseMatrix(3, 3));
    H.set_bracket(0, 1, unit_vec(3, 2));
    H.set_bracket(1, 0, Vec{Rational(0), Rational(0), Rational(-1)});
    H.validate();
    FiniteDGLie A3({0, 0, 0}, SparseMatrix(3, 3));
    SparseMatrix idm(3, 3);
    for (std::size_t i = 0; i < 3; ++i) idm.set(i, i, Rational(1));
    auto rb = quasi_iso_invariance_check(H, A3, idm);
    CHECK(!rb.dg_map);
}
