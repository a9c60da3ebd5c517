#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <random>
#include <set>

#include "actheta/classfield.hpp"

using namespace actheta;

namespace {

std::mt19937_64 rng(471203);

// independent count of invertible residues modulo an ideal
Int unit_residue_count(const QuadOrder& OK, const QuadIdeal& n) {
    Int cnt = 0;
    for (const QuadElem& u : n.residues()) {
        if (u.x == 0 && u.y == 0) continue;
        if (QuadIdeal::principal(OK, u).add(n).is_unit_ideal()) ++cnt;
    }
    if (n.is_unit_ideal()) cnt = 1;
    return cnt;
}

// size of the image of the global units in (O/n)^x
Int unit_image_size(const QuadOrder& OK, const QuadIdeal& n) {
    std::set<QuadElem> img;
    for (const QuadElem& u : order_units(OK)) img.insert(n.reduce_elem(u));
    return Int((long)img.size());
}

// classical order formula |Cl_n| = h * |(O/n)^x| / |image of units|
Int ray_order_oracle(const QuadOrder& OK, const QuadIdeal& n) {
    Int h = class_group(OK).h();
    return h * unit_residue_count(OK, n) / unit_image_size(OK, n);
}

Int p_part(Int n, long p) {
    Int out = 1;
    while (n % p == 0) n /= p, out *= p;
    return out;
}

QuadElem random_residue_one_elem(const QuadOrder& OK, const QuadIdeal& n) {
    // an element congruent to 1 modulo n
    std::uniform_int_distribution<long> d(-20, 20);
    Int a(d(rng)), b(d(rng));
    return OK.add(OK.one(), {a * n.p() + b * n.q(), b * n.r()});
}

}  // namespace

TEST_CASE("unit groups of imaginary quadratic orders") {
    CHECK(order_units(QuadOrder(7)).size() == 2);
    CHECK(order_units(QuadOrder(4)).size() == 4);
    CHECK(order_units(QuadOrder(3)).size() == 6);
    CHECK(order_units(QuadOrder(3, 2)).size() == 2);
    for (long DK : {3L, 4L, 7L, 8L}) {
        QuadOrder OK(DK);
        for (const QuadElem& u : order_units(OK)) CHECK(OK.norm(u) == 1);
    }
}

TEST_CASE("residue unit group orders |(O/P^k)^x| = N(P)^(k-1) (N(P)-1)") {
    QuadOrder OK(7);
    auto sp = [&](long q) { return splitting(OK, Int(q)).prime; };
    // split prime over 11
    CHECK(residue_unit_group(OK, sp(11)).group.order() == 10);
    CHECK(residue_unit_group(OK, sp(11).pow(2)).group.order() == 110);
    // inert prime 3: norm 9
    CHECK(residue_unit_group(OK, QuadIdeal::principal(OK, {Int(3), Int(0)})).group.order() == 8);
    CHECK(residue_unit_group(OK, QuadIdeal::principal(OK, {Int(9), Int(0)})).group.order() == 72);
    // ramified prime over 7: norm 7
    CHECK(residue_unit_group(OK, sp(7)).group.order() == 6);
    CHECK(residue_unit_group(OK, QuadIdeal::principal(OK, {Int(7), Int(0)})).group.order() == 42);
    // the count agrees with a direct invertibility scan
    for (const QuadIdeal& C : {sp(11), sp(2).pow(3), QuadIdeal::principal(OK, {Int(9), Int(0)})})
        CHECK(residue_unit_group(OK, C).group.order() == unit_residue_count(OK, C));
}

TEST_CASE("ray class group with trivial modulus is the class group") {
    for (long DK : {7L, 23L, 47L}) {
        QuadOrder OK(DK);
        RayClassGroup H(OK, QuadIdeal::unit_ideal(OK));
        CHECK(H.order() == class_group(OK).h());
    }
}

TEST_CASE("ray class group orders match the classical formula") {
    for (long DK : {7L, 23L, 3L}) {
        QuadOrder OK(DK);
        std::vector<QuadIdeal> moduli = {
            QuadIdeal::principal(OK, {Int(3), Int(0)}),
            QuadIdeal::principal(OK, {Int(5), Int(0)}),
            QuadIdeal::principal(OK, {Int(8), Int(0)}),
            QuadIdeal::principal(OK, {Int(15), Int(0)}),
            splitting(OK, Int(11)).prime,
            splitting(OK, Int(11)).prime * QuadIdeal::principal(OK, {Int(3), Int(0)}),
        };
        for (const QuadIdeal& n : moduli) {
            CAPTURE(DK);
            CAPTURE(n.str());
            RayClassGroup H(OK, n);
            CHECK(H.order() == ray_order_oracle(OK, n));
        }
    }
}

TEST_CASE("spec field: small p-quotients of ray class groups") {
    QuadOrder OK(7);
    // (5) is inert: |(O/5)^x| = 24, no 5-part
    RayClassGroup H5(OK, QuadIdeal::principal(OK, {Int(5), Int(0)}), 5);
    CHECK(H5.group().is_trivial());
    // (25): |(O/25)^x| = 600, 5-part 25
    RayClassGroup H25(OK, QuadIdeal::principal(OK, {Int(25), Int(0)}), 5);
    CHECK(H25.order() == 25);
    CHECK(H25.order() == p_part(ray_order_oracle(OK, H25.modulus()), 5));
    // full group in p-mode projects the full evaluation
    RayClassGroup H25f(OK, H25.modulus());
    CHECK(H25f.order() == 300);
}

TEST_CASE("ray class evaluation is a homomorphism, trivial on rays") {
    QuadOrder OK(7);
    QuadIdeal n = splitting(OK, Int(11)).prime * QuadIdeal::principal(OK, {Int(3), Int(0)});
    RayClassGroup H(OK, n);
    const FiniteAbelianGroup& G = H.group();
    // principal ideals generated by elements = 1 mod n are trivial
    for (int t = 0; t < 30; ++t) {
        QuadElem g = random_residue_one_elem(OK, n);
        if (OK.norm(g) == 0 || !QuadIdeal::principal(OK, g).is_coprime_to(n)) continue;
        CHECK(G.is_zero(H.class_of(QuadIdeal::principal(OK, g))));
    }
    // multiplicativity on random coprime ideals
    std::uniform_int_distribution<long> d(2, 400);
    int done = 0;
    while (done < 60) {
        auto as = ideals_of_norm(OK, Int(d(rng)), n);
        auto bs = ideals_of_norm(OK, Int(d(rng)), n);
        if (as.empty() || bs.empty()) continue;
        const QuadIdeal& a = as[rng() % as.size()];
        const QuadIdeal& b = bs[rng() % bs.size()];
        CHECK(H.class_of(a * b) == G.add(H.class_of(a), H.class_of(b)));
        ++done;
    }
    // basis ideals really represent the basis
    for (size_t i = 0; i < G.rank(); ++i) {
        ExpVec e = G.zero();
        e[i] = 1;
        CHECK(H.class_of(H.basis_ideals()[i]) == e);
    }
}

TEST_CASE("basis ideals represent the basis in p-mode too") {
    QuadOrder OK(7);
    RayClassGroup H(OK, QuadIdeal::principal(OK, {Int(25), Int(0)}), 5);
    for (size_t i = 0; i < H.group().rank(); ++i) {
        ExpVec e = H.group().zero();
        e[i] = 1;
        CHECK(H.class_of(H.basis_ideals()[i]) == e);
    }
}

TEST_CASE("ring class group orders match the conductor formula") {
    // h(O_n) = h_K n prod_{q | n} (1 - chi(q)/q) / [O_K^x : O_n^x]
    for (long DK : {7L, 3L, 4L, 23L}) {
        QuadOrder OK(DK);
        Int hK = class_group(OK).h();
        for (long n = 2; n <= 9; ++n) {
            Int expect = hK * n;
            for (const auto& [q, e] : factorize(Int(n))) {
                int chi = mpz_kronecker(Int(-DK).get_mpz_t(), q.get_mpz_t());
                expect = expect / q * (q - chi);
            }
            long wK = (long)order_units(OK).size(), wn = (long)order_units(QuadOrder(DK, n)).size();
            expect = expect * wn / wK;
            CAPTURE(DK);
            CAPTURE(n);
            CHECK(RingClassGroup(DK, n).order() == expect);
        }
    }
}

TEST_CASE("ring class evaluation of field ideals via contraction") {
    RingClassGroup H(23, 5);
    QuadOrder OK(23);
    const FiniteAbelianGroup& G = H.group();
    QuadIdeal five = QuadIdeal::principal(OK, {Int(5), Int(0)});
    std::uniform_int_distribution<long> d(2, 300);
    int done = 0;
    while (done < 40) {
        auto as = ideals_of_norm(OK, Int(d(rng)), five);
        auto bs = ideals_of_norm(OK, Int(d(rng)), five);
        if (as.empty() || bs.empty()) continue;
        const QuadIdeal& a = as[rng() % as.size()];
        const QuadIdeal& b = bs[rng() % bs.size()];
        CHECK(H.class_of_field_ideal(a * b) ==
              G.add(H.class_of_field_ideal(a), H.class_of_field_ideal(b)));
        ++done;
    }
    // frobenius is the negated class, and multiplicative over q qbar
    QuadIdeal q = chosen_split_prime(OK, Int(13));
    CHECK(frobenius(H, q) == G.neg(H.class_of_field_ideal(q)));
    CHECK(G.add(frobenius(H, q), frobenius(H, q.conj())) ==
          frobenius(H, QuadIdeal::principal(OK, {Int(13), Int(0)})));
}

TEST_CASE("modulus splitting data") {
    QuadOrder OK(7);
    ModulusSplit ms = split_modulus(OK, 1, 33);
    CHECK(ms.n_plus == 11);
    CHECK(ms.n_minus == 3);
    CHECK(ms.frak_np.norm() == 11);
    CHECK(ms.ideal_nm.norm() == 9);
    CHECK(ms.frak_c.is_unit_ideal());
    CHECK_THROWS(split_modulus(OK, 1, 9));   // inert square
    CHECK_THROWS(split_modulus(OK, 1, 7));   // ramified
    CHECK_THROWS(split_modulus(OK, 3, 33));  // not coprime
    // deterministic split prime: lexicographically smallest Hermite basis
    QuadIdeal q = chosen_split_prime(OK, Int(11));
    CHECK(q < q.conj());
    CHECK(q.norm() == 11);
}

TEST_CASE("tau: inverse of the projection triple, c = 11 example") {
    // smallest split c with nontrivial 5-part of H(frak c) is c = 11
    TauIso t = tau_iso(7, 11, 1, 5);
    CHECK(t.verified);
    CHECK(t.H1.order() == 5);
    CHECK(t.H2.order() == 5);
    CHECK(t.H3.group().is_trivial());
    CHECK(t.Hcn.order() == 25);
    // round trip on every element of the product
    for (const ExpVec& x : t.H1.group().elements())
        for (const ExpVec& y : t.H2.group().elements()) {
            ExpVec z = t.H3.group().zero();
            ExpVec w = t.apply(x, y, z);
            ExpVec back = t.proj.apply(w);
            ExpVec expect = x;
            expect.insert(expect.end(), y.begin(), y.end());
            expect.insert(expect.end(), z.begin(), z.end());
            CHECK(back == expect);
        }
}

TEST_CASE("tau with inert part, c = 1, n = 33") {
    TauIso t = tau_iso(7, 1, 33, 5);
    CHECK(t.verified);
    CHECK(t.Hcn.order() == t.H1.order() * t.H2.order() * t.H3.order());
}

TEST_CASE("sigma and conjugated sigma satisfy the frobenius table") {
    long DK = 7, c = 1, n = 33, p = 5;
    SigmaMap sig(DK, c, n, p, false);
    SigmaMap sigc(DK, c, n, p, true);
    QuadOrder OK(DK);
    const RayClassGroup& Hm = sig.domain_left();
    const RayClassGroup& Hmb = sig.domain_right();
    const RingClassGroup& R = sig.target();
    const FiniteAbelianGroup& G = R.group();
    CHECK(!G.is_trivial());

    int split_done = 0, inert_done = 0;
    for (long q = 2; split_done < 20 || inert_done < 8; ++q) {
        if (!is_prime(Int(q)) || 7 * 33 * 5 % q == 0) continue;
        Splitting s = splitting(OK, Int(q));
        CAPTURE(q);
        if (s.kind == Splitting::Split && split_done < 20) {
            QuadIdeal Q = chosen_split_prime(OK, Int(q));
            QuadIdeal Qb = Q.conj();
            QuadIdeal Qf = QuadIdeal::principal(OK, {Int(q), Int(0)});
            ExpVec fr_inv = R.class_of_field_ideal(Q);  // Frob_Q^{-1}
            // sigma rows
            CHECK(G.is_zero(sig.apply(Hm.class_of(Qf), Hmb.class_of(Qf))));
            CHECK(sig.apply(Hm.class_of(Q), Hmb.class_of(Q)) == fr_inv);
            CHECK(sig.apply(Hm.class_of(Qb), Hmb.class_of(Qb)) == G.neg(fr_inv));
            CHECK(G.is_zero(sig.apply(Hm.class_of(Q), Hmb.class_of(Qb))));
            // conjugated sigma rows (second slot also lives in H(m))
            CHECK(G.is_zero(sigc.apply(Hm.class_of(Qf), Hm.class_of(Qf))));
            CHECK(G.is_zero(sigc.apply(Hm.class_of(Q), Hm.class_of(Q))));
            CHECK(sigc.apply(Hm.class_of(Q), Hm.class_of(Qb)) == fr_inv);
            CHECK(sigc.apply(Hm.class_of(Qb), Hm.class_of(Q)) == G.neg(fr_inv));
            ++split_done;
        } else if (s.kind == Splitting::Inert && inert_done < 8) {
            QuadIdeal L = QuadIdeal::principal(OK, {Int(q), Int(0)});
            CHECK(G.is_zero(sig.apply(Hm.class_of(L), Hmb.class_of(L))));
            CHECK(G.is_zero(sigc.apply(Hm.class_of(L), Hm.class_of(L))));
            ++inert_done;
        }
    }
    CHECK(split_done == 20);
    CHECK(inert_done == 8);
}

TEST_CASE("sigma is a homomorphism in both slots") {
    SigmaMap sig(7, 1, 33, 5, false);
    const FiniteAbelianGroup& A = sig.domain_left().group();
    const FiniteAbelianGroup& B = sig.domain_right().group();
    const FiniteAbelianGroup& G = sig.target().group();
    auto rnd = [&](const FiniteAbelianGroup& H) {
        ExpVec v = H.zero();
        for (size_t i = 0; i < v.size(); ++i) v[i] = Int((long)(rng() % 1000));
        return H.reduce(v);
    };
    for (int t = 0; t < 25; ++t) {
        ExpVec x1 = rnd(A), x2 = rnd(A), y1 = rnd(B), y2 = rnd(B);
        CHECK(sig.apply(A.add(x1, x2), B.add(y1, y2)) ==
              G.add(sig.apply(x1, y1), sig.apply(x2, y2)));
    }
}

TEST_CASE("ray class cache round trip") {
    QuadOrder OK(7);
    RayClassGroup H(OK, QuadIdeal::principal(OK, {Int(25), Int(0)}), 5);
    const char* path = "test_ray_cache.bin";
    write_ray_cache(path, H);
    RayCache c = read_ray_cache(path);
    CHECK(c.DK == 7);
    CHECK(c.p == 5);
    CHECK(c.mod_p == H.modulus().p());
    CHECK(c.invariants == H.group().invariants());
    REQUIRE(c.basis_ideals.size() == H.basis_ideals().size());
    for (size_t i = 0; i < c.basis_ideals.size(); ++i) {
        CHECK(c.basis_ideals[i][0] == H.basis_ideals()[i].p());
        CHECK(c.basis_ideals[i][1] == H.basis_ideals()[i].q());
        CHECK(c.basis_ideals[i][2] == H.basis_ideals()[i].r());
    }
    std::remove(path);
    CHECK_THROWS(read_ray_cache("does_not_exist.bin"));
}
