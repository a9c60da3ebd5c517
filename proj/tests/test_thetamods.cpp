#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "actheta/thetamods.hpp"

using namespace actheta;

namespace {

std::mt19937_64 rng(552307);

// number of ideals of norm n in Z[i]: lattice-point count divided by the four
// units (independent of the ideal machinery)
long zi_ideal_count(long n) {
    long cnt = 0;
    for (long a = -n; a <= n; ++a)
        for (long b = -n; b <= n; ++b)
            if (a * a + b * b == n) ++cnt;
    return cnt / 4;
}

HeckeCharacter trivial_char(long DK) {
    QuadOrder K(DK);
    return enumerate_characters(K, 0, 0, QuadIdeal::unit_ideal(K))[0];
}

}  // namespace

TEST_CASE("gauss sums square to the discriminant") {
    for (long d : {-3L, -4L, -7L, -8L, -11L, -23L}) {
        CycInt g = sqrt_disc(d);
        CHECK(g * g == CycInt(Int(d)));
    }
}

TEST_CASE("quadratic-to-cyclotomic embedding is a ring map") {
    std::uniform_int_distribution<long> d(-20, 20);
    for (long DK : {7L, 23L, 4L}) {
        QuadOrder K(DK);
        for (int t = 0; t < 30; ++t) {
            QuadElem x{Int(d(rng)), Int(d(rng))}, y{Int(d(rng)), Int(d(rng))};
            CHECK(quad_to_cyc(K, K.mul(x, y)) == quad_to_cyc(K, x) * quad_to_cyc(K, y));
            CHECK(quad_to_cyc(K, K.add(x, y)) == quad_to_cyc(K, x) + quad_to_cyc(K, y));
            // x * conj(x) = norm
            CHECK(quad_to_cyc(K, x) * quad_to_cyc(K, K.conj(x)) == CycRat(K.norm(x)));
        }
    }
}

TEST_CASE("theta of the trivial character on Q(i) counts ideals") {
    HeckeCharacter triv = trivial_char(4);
    QExpansion th = theta_series(triv, 50);
    CHECK(th.weight == 1);
    CHECK(th.level == 4);
    CHECK(th.a[1] == CycRat(1L));
    CHECK(th.a[2] == CycRat(1L));
    CHECK(th.a[3] == CycRat(0L));
    CHECK(th.a[5] == CycRat(2L));
    for (long n = 1; n <= 50; ++n) CHECK(th.a[n] == CycRat(Int(zi_ideal_count(n))));
    // divisor-sum identity a_n = sum_{d | n} chi_{-4}(d)
    for (long n = 1; n <= 50; ++n) {
        long s = 0;
        for (long dd = 1; dd <= n; ++dd)
            if (n % dd == 0) s += (dd % 4 == 1) ? 1 : (dd % 4 == 3 ? -1 : 0);
        CHECK(th.a[n] == CycRat(Int(s)));
    }
}

TEST_CASE("coefficient structure: inert vanishing, split pairs, multiplicativity") {
    QuadOrder K(7);
    QuadIdeal f7 = splitting(K, Int(7)).prime;
    for (const HeckeCharacter& psi : enumerate_characters(K, -1, 0, f7)) {
        QExpansion th = theta_series(psi, 300);
        CHECK(th.weight == 2);
        CHECK(th.level == 49);
        CHECK(th.a[1] == CycRat(1L));
        for (long q : {3L, 5L, 13L, 17L, 19L})  // inert, no ideal of norm q
            CHECK(th.a[q] == CycRat(0L));
        for (long q : {2L, 11L, 23L, 29L}) {
            QuadIdeal Q = splitting(K, Int(q)).prime;
            CHECK(th.a[q] == complex_value(psi, Q) + complex_value(psi, Q.conj()));
        }
        for (int t = 0; t < 40; ++t) {
            long m = 2 + (long)(rng() % 16), n = 2 + (long)(rng() % 16);
            if (std::gcd(m, n) != 1 || m * n > 300) continue;
            CHECK(th.a[m * n] == th.a[m] * th.a[n]);
        }
    }
}

TEST_CASE("Hecke operators: eigenform property of theta series") {
    QuadOrder K7(7);
    QuadIdeal f7 = splitting(K7, Int(7)).prime;
    std::vector<HeckeCharacter> chars = enumerate_characters(K7, -1, 0, f7);
    chars.push_back(trivial_char(7));
    chars.push_back(trivial_char(11));
    for (const HeckeCharacter& chi : enumerate_characters(QuadOrder(23), 0, 0,
                                                          QuadIdeal::unit_ideal(QuadOrder(23))))
        chars.push_back(chi);
    long B = 200;
    for (const HeckeCharacter& psi : chars) {
        QExpansion th = theta_series(psi, B);
        for (long q : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
            if (th.level % q == 0) continue;
            // eigenvalue = sum of psi over primes of norm q
            CycRat lam(0L);
            for (const QuadIdeal& Q : ideals_of_norm(psi.field(), Int(q), psi.conductor()))
                lam += complex_value(psi, Q);
            QExpansion Tq = hecke_Tq(th, q);
            for (long n = 1; n <= Tq.precision(); ++n) CHECK(Tq.a[n] == lam * th.a[n]);
        }
    }
    CHECK_THROWS(hecke_Tq(theta_series(chars[0], 30), 7));  // 7 divides the level
}

TEST_CASE("Eisenstein-type series on Q(i): divisor-sum eigenvalues") {
    QExpansion th = theta_series(trivial_char(4), 120);
    QExpansion T5 = hecke_Tq(th, 5);
    for (long n = 1; n <= T5.precision(); ++n) CHECK(T5.a[n] == CycRat(2L) * th.a[n]);
    QExpansion T3 = hecke_Tq(th, 3);
    for (long n = 1; n <= T3.precision(); ++n) CHECK(T3.a[n].is_zero());
}

TEST_CASE("p-depletion") {
    QuadOrder K(7);
    QuadIdeal f7 = splitting(K, Int(7)).prime;
    HeckeCharacter psi = enumerate_characters(K, -1, 0, f7)[0];
    QExpansion th = theta_series(psi, 100);
    QExpansion dep = p_deplete(th, 3);
    CHECK(dep.a[3].is_zero());
    CHECK(dep.a[99].is_zero());
    CHECK(p_deplete(dep, 3).a == dep.a);
    // conductor divisible by p inert: theta is already depleted
    HeckeCharacter psi0 = build_psi0(7, 5);
    QExpansion th0 = theta_series(psi0, 100);
    for (long n = 5; n <= 100; n += 5) CHECK(th0.a[n].is_zero());
}

TEST_CASE("p-adic embedding of cyclotomic integers") {
    long p = 5;
    int prec = 6;
    PadicNum z6 = cyc_to_padic(CycInt::zeta(6), p, prec);
    CHECK(z6.pow(Int(6)) == PadicNum(p, prec, Int(1), Int(0)));
    CHECK(z6.pow(Int(3)) == PadicNum(p, prec, Int(-1), Int(0)));
    // additive/multiplicative on random elements of Z[zeta_24]
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 20; ++t) {
        std::vector<Int> ca, cb;
        for (int i = 0; i < 8; ++i) {
            ca.push_back(Int(d(rng)));
            cb.push_back(Int(d(rng)));
        }
        CycInt x(24, ca), y(24, cb);
        CHECK(cyc_to_padic(x * y, p, prec) == cyc_to_padic(x, p, prec) * cyc_to_padic(y, p, prec));
        CHECK(cyc_to_padic(x + y, p, prec) == cyc_to_padic(x, p, prec) + cyc_to_padic(y, p, prec));
    }
    CHECK_THROWS(cyc_to_padic(CycInt::zeta(7), p, prec));
}

TEST_CASE("padic theta matches the exact theta termwise") {
    // finite-order character: exact coefficients lie in Z[zeta_6], embed them
    QuadOrder K(7);
    QuadIdeal f7 = splitting(K, Int(7)).prime;
    auto chars = enumerate_characters(K, 0, 0, f7);
    long p = 5;
    int prec = 5;
    for (const HeckeCharacter& xi : chars) {
        QExpansion th = p_deplete(theta_series(xi, 80), p);
        PadicQExpansion pth = padic_theta(xi, p, prec, 80);
        for (long n = 1; n <= 80; ++n)
            CHECK(pth.a[n] == cyc_to_padic(th.a[n].num(), p, prec));
    }
}

TEST_CASE("family specialization at the seed weight is the depleted theta") {
    long p = 5;
    int prec = 4;
    long B = 60;
    QuadOrder K(7);
    HeckeCharacter psi0 = build_psi0(7, p);
    QuadIdeal f7 = splitting(K, Int(7)).prime;
    std::vector<HeckeCharacter> seeds = {trivial_char(7)};
    for (const HeckeCharacter& c : enumerate_characters(K, 0, 0, f7)) seeds.push_back(c);
    REQUIRE(seeds.size() >= 3);
    for (const HeckeCharacter& xi : seeds) {
        LambdaThetaFamily fam = make_theta_family(xi, psi0, p);
        // nu = 2: the weight-2 seed xi psi0, via the independent product path
        HeckeCharacter psi = xi.product(psi0);
        PadicQExpansion spec2 = specialize_family(fam, 2, prec, B);
        PadicQExpansion direct = padic_theta(psi, p, prec, B);
        for (long n = 1; n <= B; ++n) CHECK(spec2.a[n] == direct.a[n]);
        // nu = 1: the finite-order theta of xi, depleted
        PadicQExpansion spec1 = specialize_family(fam, 1, prec, B);
        QExpansion exact1 = p_deplete(theta_series(xi, B), p);
        for (long n = 1; n <= B; ++n) {
            if (n % p == 0)
                CHECK(spec1.a[n] == PadicNum(p, prec, Int(0), Int(0)));
            else
                CHECK(spec1.a[n] == cyc_to_padic(exact1.a[n].num(), p, prec));
        }
        // weight periodicity: nu and nu + 2(p-1)p^{prec-1} agree at full precision
        PadicQExpansion s3 = specialize_family(fam, 3, prec, B);
        PadicQExpansion s3p = specialize_family(fam, 3 + 2 * 4 * 125, prec, B);
        for (long n = 1; n <= B; ++n) CHECK(s3.a[n] == s3p.a[n]);
    }
}

TEST_CASE("family group-ring coefficients refine the specialization") {
    long p = 5;
    int prec = 4;
    QuadOrder K(7);
    HeckeCharacter psi0 = build_psi0(7, p);
    LambdaThetaFamily fam = make_theta_family(trivial_char(7), psi0, p);
    PadicQExpansion spec2 = specialize_family(fam, 2, prec, 40);
    for (long m : {2L, 4L, 8L, 11L, 23L, 37L}) {
        auto coeff = family_coefficient(fam, m, 1, prec);
        PadicNum tot(p, prec, Int(0), Int(0));
        for (const auto& [cls, v] : coeff) tot = tot + v;
        // augmentation of the group-ring coefficient = specialization at nu = 2
        CHECK(tot == spec2.a[m]);
    }
}

TEST_CASE("rankin factorization: split and inert") {
    QuadOrder K(7);
    QuadIdeal f7 = splitting(K, Int(7)).prime;
    auto cs = enumerate_characters(K, -1, 0, f7);
    HeckeCharacter triv = trivial_char(7);
    CHECK(rankin_factorization_check(triv, triv, 2));   // split
    CHECK(rankin_factorization_check(triv, triv, 3));   // inert
    std::vector<long> primes = {2, 3, 5, 11, 13, 17, 19, 23, 29, 37, 43, 53};
    for (const HeckeCharacter& p1 : cs)
        for (const HeckeCharacter& p2 : cs)
            for (long q : primes) CHECK(rankin_factorization_check(p1, p2, q));
    CHECK_THROWS(rankin_factorization_check(cs[0], cs[1], 7));  // ramified
}
