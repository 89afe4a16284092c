#include "chidef/star_lie.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chidef;

namespace {

ModulePtr make_mod(int rank, const std::string& name = "M") {
    std::vector<Generator> gens;
    for (int i = 0; i < rank; ++i) gens.push_back({"g" + std::to_string(i), 0});
    return std::make_shared<TransDModule>(name, gens, Side::right);
}

// arity-1 map g -> -lambda g (multiplication by d on the argument)
StarOperation d_multiplier(const ModulePtr& m) {
    StarOperation x({m}, m, 0);
    for (std::size_t g = 0; g < m->rank(); ++g) {
        LambdaPoly p(1, m);
        p.add_term({1}, g, Rational(-1));
        x.set_value({g}, p);
    }
    return x;
}

// enumerate basis operations of the given arity on m, single lambda-monomial
// values, total lambda degree <= lmax
std::vector<StarOperation> basis_ops(const ModulePtr& m, std::size_t arity, unsigned lmax) {
    std::vector<StarOperation> out;
    std::vector<StarOperation::Key> keys;
    std::function<void(StarOperation::Key&)> rec_keys = [&](StarOperation::Key& k) {
        if (k.size() == arity) { keys.push_back(k); return; }
        for (std::size_t g = 0; g < m->rank(); ++g) {
            k.push_back(g);
            rec_keys(k);
            k.pop_back();
        }
    };
    StarOperation::Key k0;
    rec_keys(k0);
    std::vector<std::vector<unsigned>> expos;
    std::function<void(std::vector<unsigned>&, unsigned)> rec_e = [&](std::vector<unsigned>& e,
                                                                     unsigned rem) {
        if (e.size() == arity) { expos.push_back(e); return; }
        for (unsigned t = 0; t <= rem; ++t) {
            e.push_back(t);
            rec_e(e, rem - t);
            e.pop_back();
        }
    };
    std::vector<unsigned> e0;
    rec_e(e0, lmax);
    for (const auto& key : keys)
        for (const auto& e : expos)
            for (std::size_t out_g = 0; out_g < m->rank(); ++out_g) {
                StarOperation x(std::vector<ModulePtr>(arity, m), m, 0);
                LambdaPoly p(arity, m);
                p.add_term(e, out_g, Rational(1));
                x.set_value(key, p);
                out.push_back(std::move(x));
            }
    return out;
}

} // namespace

TEST_CASE("compose_i unit laws") {
    auto m = make_mod(2);
    auto id = StarOperation::identity(m);
    CHECK(compose_i(id, id, 1) == id);
    auto dm = d_multiplier(m);
    CHECK(compose_i(dm, id, 1) == dm);
    CHECK(compose_i(id, dm, 1) == dm);
}

TEST_CASE("compose_i pairing against d-map") {
    auto k = make_mod(1, "K");
    auto kd = dual_module(k);
    // pairing as a StarOperation K^ (x) K -> omega
    StarOperation pair({kd, k}, omega_module(), 0);
    pair.set_value({0, 0}, canonical_pairing(kd, "g0^", k, "g0", 0, 0));
    // arity-1 map K -> K sending k to dk
    StarOperation dk({k}, k, 0);
    LambdaPoly v(1, k);
    v.add_term({1}, 0, Rational(-1));
    dk.set_value({0}, v);
    auto composed = compose_i(pair, dk, 2);
    // oracle: apply_partial on the unit pairing
    CHECK(composed.value({0, 0}) ==
          canonical_pairing(kd, "g0^", k, "g0", 0, 0).apply_partial(2));
}

TEST_CASE("compose_i operad axioms, exhaustive low arity") {
    auto m = make_mod(1);
    auto ops1 = basis_ops(m, 1, 1);
    auto ops2 = basis_ops(m, 2, 1);
    // sequential: (x o_1 y) o_j z = x o_1 (y o_{j} z) for y arity 2
    for (const auto& x : ops2)
        for (const auto& y : ops2)
            for (const auto& z : ops1)
                for (std::size_t j = 1; j <= 2; ++j)
                    CHECK(compose_i(compose_i(x, y, 1), z, j) ==
                          compose_i(x, compose_i(y, z, j), 1));
    // parallel: for x arity 2, (x o_1 y) o_{1+m} z = (x o_2 z) o_1 y
    for (const auto& x : ops2)
        for (const auto& y : ops2)
            for (const auto& z : ops1)
                CHECK(compose_i(compose_i(x, y, 1), z, 3) ==
                      compose_i(compose_i(x, z, 2), y, 1));
}

TEST_CASE("symmetrize") {
    auto m = make_mod(2);
    auto ops2 = basis_ops(m, 2, 2);
    for (const auto& x : ops2) {
        auto s = symmetrize(x, false);
        CHECK(symmetrize(s, false) == s); // idempotent
        auto a = symmetrize(x, true);
        CHECK(symmetrize(a, true) == a);
    }
    // antisymmetric part dies under plain symmetrization
    Permutation swap{{1, 0}};
    const auto& x = ops2.front();
    auto anti = x - x.permute(swap, false);
    CHECK(symmetrize(anti, false).is_zero());
}

TEST_CASE("brace low-arity laws") {
    auto m = make_mod(1);
    auto id = StarOperation::identity(m);
    auto dm = d_multiplier(m);
    // arity-1 braces are plain composition
    CHECK(brace(dm, dm) == compose_i(dm, dm, 1));
    CHECK(brace(id, dm) == dm);
    // arity-1 commutator with the identity vanishes
    CHECK(bracket(id, dm).is_zero());
    CHECK(bracket(dm, id).is_zero());
}

TEST_CASE("bracket graded antisymmetry, basis pairs") {
    auto m = make_mod(1);
    auto ops1 = basis_ops(m, 1, 2);
    std::vector<StarOperation> ops2;
    for (const auto& x : basis_ops(m, 2, 2)) {
        auto s = symmetrize(x, true);
        if (!s.is_zero()) ops2.push_back(s);
    }
    std::vector<StarOperation> all = ops1;
    all.insert(all.end(), ops2.begin(), ops2.end());
    for (const auto& x : all)
        for (const auto& y : all) {
            auto lhs = bracket(x, y);
            auto rhs = bracket(y, x);
            if ((g_degree(x) % 2) && (g_degree(y) % 2)) CHECK((lhs - rhs).is_zero());
            else CHECK((lhs + rhs).is_zero());
        }
}

namespace {

bool jacobi_holds(const StarOperation& x, const StarOperation& y, const StarOperation& z) {
    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
    auto lhs = bracket(x, bracket(y, z));
    auto rhs = bracket(bracket(x, y), z);
    auto t = bracket(y, bracket(x, z));
    if ((g_degree(x) % 2) && (g_degree(y) % 2)) rhs -= t;
    else rhs += t;
    return (lhs - rhs).is_zero();
}

} // namespace

TEST_CASE("graded Jacobi on rank-1 slice") {
    auto m = make_mod(1);
    auto ops1 = basis_ops(m, 1, 1);
    std::vector<StarOperation> ops2;
    for (const auto& x : basis_ops(m, 2, 1)) {
        auto s = symmetrize(x, true);
        if (!s.is_zero()) ops2.push_back(s);
    }
    std::vector<StarOperation> all = ops1;
    all.insert(all.end(), ops2.begin(), ops2.end());
    for (const auto& x : all)
        for (const auto& y : all)
            for (const auto& z : all)
                CHECK(jacobi_holds(x, y, z));
}

TEST_CASE("mc correspondence") {
    auto m = make_mod(1);
    // zero element: abelian structure
    StarOperation zero(std::vector<ModulePtr>(2, m), m, 0);
    auto rep = mc_operad_correspondence(zero);
    CHECK(rep.mc_holds);
    CHECK(rep.skew_ok);
    CHECK(rep.jacobi_ok);
    REQUIRE(rep.lie_datum);
    CHECK(rep.lie_datum->bracket.is_zero());

    // an antisymmetric lambda-bracket: [g,g] = lambda g style, check via report
    StarOperation b(std::vector<ModulePtr>(2, m), m, 0);
    LambdaPoly p(2, m);
    p.add_term({1, 0}, 0, Rational(1));
    p.add_term({0, 1}, 0, Rational(-1));
    b.set_value({0, 0}, p);
    auto rep2 = mc_operad_correspondence(b);
    CHECK(rep2.skew_ok);
    if (rep2.mc_holds) {
        CHECK(rep2.jacobi_ok);
        CHECK(bool(rep2.lie_datum));
    }

    // a deliberately broken datum: symmetric table fails skew
    StarOperation bad(std::vector<ModulePtr>(2, m), m, 0);
    LambdaPoly q(2, m);
    q.add_term({0, 0}, 0, Rational(1));
    bad.set_value({0, 0}, q);
    auto rep3 = mc_operad_correspondence(bad);
    CHECK(!rep3.skew_ok);
    CHECK(!rep3.lie_datum);
}
