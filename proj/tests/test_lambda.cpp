#include "chidef/lambda_poly.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chidef;

namespace {

ModulePtr make_k(int rank) {
    std::vector<Generator> gens;
    for (int i = 0; i < rank; ++i) gens.push_back({"k" + std::to_string(i), 0});
    return std::make_shared<TransDModule>("K", gens, Side::right);
}

LambdaPoly constant(const ModulePtr& target, std::size_t arity) {
    LambdaPoly p(arity, target);
    p.add_term(std::vector<unsigned>(arity, 0), 0, Rational(1));
    return p;
}

} // namespace

TEST_CASE("apply_partial defining rules") {
    auto k = make_k(1);
    auto c = constant(k, 2);

    LambdaPoly expected(2, k);
    expected.add_term({1, 0}, 0, Rational(-1));
    CHECK(c.apply_partial(1) == expected);

    LambdaPoly sq(2, k);
    sq.add_term({2, 0}, 0, Rational(1));
    CHECK(c.apply_partial(1).apply_partial(1) == sq);

    // all slots of an arity-3 constant: (-1)^3 lambda_1 lambda_2 lambda_3
    auto c3 = constant(k, 3);
    auto all = c3.apply_partial(1).apply_partial(2).apply_partial(3);
    LambdaPoly e3(3, k);
    e3.add_term({1, 1, 1}, 0, Rational(-1));
    CHECK(all == e3);

    CHECK_THROWS(c.apply_partial(0));
    CHECK_THROWS(c.apply_partial(3));
}

TEST_CASE("apply_partial commutes across slots") {
    auto k = make_k(2);
    LambdaPoly p(3, k);
    p.add_term({1, 0, 2}, 0, Rational(3, 2));
    p.add_term({0, 1, 0}, 1, Rational(-5));
    CHECK(p.apply_partial(1).apply_partial(3) == p.apply_partial(3).apply_partial(1));
    CHECK(p.apply_partial(2).apply_partial(2) == p.apply_partial(2).apply_partial(2));
}

TEST_CASE("symmetric_action basics") {
    auto k = make_k(1);
    std::vector<int> deg0{0, 0};

    LambdaPoly p(2, k);
    p.add_term({1, 0}, 0, Rational(1)); // lambda_1

    CHECK(p.symmetric_action(Permutation::id(2), false, deg0) == p);

    Permutation swap{{1, 0}};
    LambdaPoly l2(2, k);
    l2.add_term({0, 1}, 0, Rational(1));
    CHECK(p.symmetric_action(swap, false, deg0) == l2);

    LambdaPoly ml2 = l2;
    ml2 *= Rational(-1);
    CHECK(p.symmetric_action(swap, true, deg0) == ml2);

    CHECK_THROWS(p.symmetric_action(Permutation::id(3), false, {0, 0, 0}));
}

TEST_CASE("symmetric_action is a group action, exhaustive n <= 4") {
    auto k = make_k(1);
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<int> degs(n, 1); // odd degrees stress the Koszul signs
        LambdaPoly p(n, k);
        std::vector<unsigned> e(n, 0);
        for (std::size_t i = 0; i < n; ++i) e[i] = unsigned(i);
        p.add_term(e, 0, Rational(1));
        if (n > 1) p.add_term(std::vector<unsigned>(n, 1), 0, Rational(2, 3));
        for (const auto& sigma : all_permutations(n))
            for (const auto& tau : all_permutations(n)) {
                auto lhs = p.symmetric_action(tau.then(sigma), true, degs);
                // degrees are permuted along with the slots
                std::vector<int> degs_tau(n);
                for (std::size_t i = 0; i < n; ++i) degs_tau[tau.img[i]] = degs[i];
                auto rhs = p.symmetric_action(tau, true, degs)
                               .symmetric_action(sigma, true, degs_tau);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("canonical pairing") {
    auto k = make_k(2);
    auto kd = dual_module(k);

    auto unit = canonical_pairing(kd, "k0^", k, "k0", 0, 0);
    LambdaPoly expected(2, omega_module());
    expected.add_term({0, 0}, 0, Rational(1));
    CHECK(unit == expected);

    CHECK(canonical_pairing(kd, "k0^", k, "k1", 0, 0).is_zero());

    // <k^, dk> = -lambda_2 * omega; oracle: apply_partial on the unit pairing
    auto dk = canonical_pairing(kd, "k0^", k, "k0", 0, 1);
    CHECK(dk == unit.apply_partial(2));
}

TEST_CASE("canonical pairing skew under swap with sign twist") {
    auto k = make_k(2);
    auto kd = dual_module(k);
    Permutation swap{{1, 0}};
    std::vector<int> deg0{0, 0};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (unsigned d1 = 0; d1 <= 2; ++d1)
                for (unsigned d2 = 0; d2 <= 2; ++d2) {
                    auto p = canonical_pairing(kd, "k" + std::to_string(a) + "^", k,
                                               "k" + std::to_string(b), d1, d2);
                    auto q = canonical_pairing(kd, "k" + std::to_string(a) + "^", k,
                                               "k" + std::to_string(b), d2, d1);
                    q *= Rational(-1);
                    CHECK(p.symmetric_action(swap, true, deg0) == q);
                }
}

TEST_CASE("substitute_sums expands multinomially") {
    auto k = make_k(1);
    LambdaPoly p(1, k);
    p.add_term({2}, 0, Rational(1)); // lambda_1^2
    auto q = p.substitute_sums({{0, 1}}, 2); // lambda -> lambda_1 + lambda_2
    LambdaPoly expected(2, k);
    expected.add_term({2, 0}, 0, Rational(1));
    expected.add_term({1, 1}, 0, Rational(2));
    expected.add_term({0, 2}, 0, Rational(1));
    CHECK(q == expected);
}
