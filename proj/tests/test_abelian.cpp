#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "actheta/abelian.hpp"

using namespace actheta;

namespace {
std::mt19937_64 rng(553101);

// multiplicative group (Z/m)^* handed to abelian_structure as opaque longs
GroupStructure<long> unit_group(long m) {
    std::vector<long> gens;
    for (long a = 2; a < m; ++a)
        if (std::gcd(a, m) == 1) gens.push_back(a);
    auto mul = [m](long a, long b) { return (a * b) % m; };
    return abelian_structure(gens, 1L, mul);
}
}  // namespace

TEST_CASE("from_relations invariant factors") {
    std::vector<ExpVec> gc;
    auto G = FiniteAbelianGroup::from_relations(2, {{Int(2), Int(0)}, {Int(0), Int(4)}}, &gc);
    CHECK(G.invariants() == std::vector<Int>{2, 4});
    CHECK(G.order() == 8);

    // Z^2 / <(2,1),(0,3)> is cyclic of order 6
    auto C6 = FiniteAbelianGroup::from_relations(2, {{Int(2), Int(1)}, {Int(0), Int(3)}}, &gc);
    CHECK(C6.invariants() == std::vector<Int>{6});
    // the generator images must still satisfy the relations
    CHECK(C6.is_zero(C6.add(C6.mul(gc[0], 2), gc[1])));
    CHECK(C6.is_zero(C6.mul(gc[1], 3)));
    // and generate: some generator must have full order 6 or the two combine
    Int o = lcm(C6.element_order(gc[0]), C6.element_order(gc[1]));
    CHECK(o == 6);

    CHECK_THROWS(FiniteAbelianGroup::from_relations(2, {{Int(2), Int(0)}}));
}

TEST_CASE("group operations and element order") {
    FiniteAbelianGroup G({Int(2), Int(4), Int(12)});
    CHECK(G.order() == 96);
    CHECK(G.exponent() == 12);
    ExpVec x{Int(1), Int(2), Int(9)};
    CHECK(G.element_order(x) == 4);  // lcm(2, 2, 4)
    CHECK(G.is_zero(G.mul(x, 4)));
    CHECK_FALSE(G.is_zero(G.mul(x, 2)));
    CHECK(G.add(x, G.neg(x)) == G.zero());
    CHECK(G.elements().size() == 96);
}

TEST_CASE("maximal p-quotient") {
    FiniteAbelianGroup G({Int(2), Int(4), Int(12)});
    CHECK(G.p_quotient(Int(2)).invariants() == std::vector<Int>{2, 4, 4});
    CHECK(G.p_quotient(Int(3)).invariants() == std::vector<Int>{3});
    CHECK(G.p_quotient(Int(5)).is_trivial());
    ExpVec x{Int(1), Int(3), Int(10)};
    CHECK(G.p_project(Int(3), x) == ExpVec{Int(1)});
    // projection is a homomorphism
    ExpVec y{Int(0), Int(2), Int(7)};
    auto Q = G.p_quotient(Int(2));
    CHECK(Q.add(G.p_project(Int(2), x), G.p_project(Int(2), y)) ==
          G.p_project(Int(2), G.add(x, y)));
}

TEST_CASE("characters: count, multiplicativity, orthogonality") {
    FiniteAbelianGroup G({Int(2), Int(6)});
    auto chars = GroupCharacter::all(G);
    CHECK(chars.size() == 12);
    auto elems = G.elements();
    std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
    for (const auto& chi : chars) {
        for (int t = 0; t < 20; ++t) {
            const ExpVec &x = elems[pick(rng)], &y = elems[pick(rng)];
            CHECK(chi.value(G.add(x, y)) == chi.value(x) * chi.value(y));
        }
        CycInt s;
        for (const auto& x : elems) s += chi.value(x);
        if (chi.is_trivial())
            CHECK(s == CycInt(G.order()));
        else
            CHECK(s.is_zero());
    }
}

TEST_CASE("character order and powers") {
    FiniteAbelianGroup G({Int(4)});
    GroupCharacter chi(G, {Int(1)});
    CHECK(chi.order() == 4);
    CHECK(chi.pow(2).order() == 2);
    CHECK(chi.pow(4).is_trivial());
    CHECK(chi.value({Int(1)}) == CycInt::zeta(4));
    CHECK((chi * chi.inverse()).is_trivial());
}

TEST_CASE("abelian_structure recovers unit groups") {
    // oracles: classical structure of (Z/m)^*
    CHECK(unit_group(7).group.invariants() == std::vector<Int>{6});
    CHECK(unit_group(16).group.invariants() == std::vector<Int>{2, 4});
    CHECK(unit_group(24).group.invariants() == std::vector<Int>{2, 2, 2});
    CHECK(unit_group(35).group.invariants() == std::vector<Int>{2, 12});
    CHECK(unit_group(121).group.invariants() == std::vector<Int>{110});
}

TEST_CASE("abelian_structure coordinates form an isomorphism") {
    for (long m : {16L, 35L, 45L}) {
        auto S = unit_group(m);
        const auto& G = S.group;
        // basis element i really has the stated order
        for (size_t i = 0; i < S.basis.size(); ++i) {
            long acc = 1;
            Int d = G.invariants()[i];
            for (Int k = 0; k < d; ++k) acc = (acc * S.basis[i]) % m;
            CHECK(acc == 1);
        }
        std::vector<long> elems;
        for (auto& [x, v] : S.coords) elems.push_back(x);
        std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
        for (int t = 0; t < 200; ++t) {
            long a = elems[pick(rng)], b = elems[pick(rng)];
            CHECK(S.coords.at((a * b) % m) == G.add(S.coords.at(a), S.coords.at(b)));
        }
    }
}
