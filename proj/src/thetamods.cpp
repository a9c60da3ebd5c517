#include "actheta/thetamods.hpp"

#include <numeric>
#include <stdexcept>

#include "actheta/classfield.hpp"

namespace actheta {

CycInt sqrt_disc(long d) {
    if (d >= 0) throw std::invalid_argument("sqrt_disc: expected negative discriminant");
    long m = -d;
    CycInt g(0L);
    for (long a = 1; a < m; ++a) {
        int chi = mpz_kronecker_ui(Int(d).get_mpz_t(), (unsigned long)a);
        if (chi == 1)
            g += CycInt::zeta(m, a);
        else if (chi == -1)
            g -= CycInt::zeta(m, a);
    }
    return g;
}

CycRat quad_to_cyc(const QuadOrder& K, const QuadElem& x) {
    // x + y*w with w = (D + sqrt(D))/2, sqrt(D) = c * sqrt(d) for the
    // fundamental discriminant d and conductor c
    long d = -K.field_disc_abs();
    Int c = K.conductor();
    CycInt root = c * sqrt_disc(d);
    CycInt two_val = CycInt(2 * x.x + x.y * K.disc()) + CycInt(x.y) * root;
    return CycRat(two_val, Int(2));
}

QuadElem quad_pow(const QuadOrder& K, const QuadElem& x, long e) {
    if (e < 0) throw std::invalid_argument("quad_pow: negative exponent");
    QuadElem acc{Int(1), Int(0)}, base = x;
    while (e > 0) {
        if (e & 1) acc = K.mul(acc, base);
        base = K.mul(base, base);
        e >>= 1;
    }
    return acc;
}

CycRat complex_value(const HeckeCharacter& psi, const QuadIdeal& a) {
    HeckeCharacter::Value v = psi.fold(psi.evaluate(a));
    for (const Int& e : v.gen_exps)
        if (e != 0) throw std::logic_error("complex_value: unresolved class symbol");
    const QuadOrder& K = psi.field();
    long ea = -psi.type_a(), eb = -psi.type_b();
    if (ea < 0 || eb < 0) throw std::invalid_argument("complex_value: positive type entry");
    CycRat out(v.root.to_cyc());
    QuadElem n = K.mul(quad_pow(K, v.num, ea), quad_pow(K, K.conj(v.num), eb));
    QuadElem d = K.mul(quad_pow(K, v.den, ea), quad_pow(K, K.conj(v.den), eb));
    out *= quad_to_cyc(K, n);
    if (!(d.x == 1 && d.y == 0)) out *= quad_to_cyc(K, d).inverse();
    return out;
}

QExpansion theta_series(const HeckeCharacter& psi, long B) {
    if (psi.type_b() != 0 || psi.type_a() > 0)
        throw std::invalid_argument("theta_series: infinity type must be (1-nu, 0)");
    const QuadOrder K = psi.field();
    long nu = 1 - psi.type_a();
    QExpansion f;
    f.weight = nu;
    f.level = Int(psi.conductor().norm() * K.field_disc_abs()).get_si();
    long dk = -K.field_disc_abs();
    f.neben = [psi, dk, level = f.level](long q) -> CycRat {
        if (std::gcd(q, level) != 1) return CycRat(0L);
        RootOfUnity eps = psi.eps_value({Int(q), Int(0)});
        long kron = mpz_kronecker_ui(Int(dk).get_mpz_t(), (unsigned long)q);
        return CycRat(Int(kron) * eps.to_cyc());
    };
    f.a.assign(B + 1, CycRat(0L));
    for (long n = 1; n <= B; ++n)
        for (const QuadIdeal& I : ideals_of_norm(K, Int(n), psi.conductor()))
            f.a[n] += complex_value(psi, I);
    return f;
}

QExpansion hecke_Tq(const QExpansion& f, long q) {
    if (f.level % q == 0) throw std::invalid_argument("hecke_Tq: q divides the level");
    if (f.precision() < q) throw std::invalid_argument("hecke_Tq: precision below q");
    QExpansion out = f;
    long B = f.precision() / q;
    out.a.assign(B + 1, CycRat(0L));
    CycRat cq = f.neben(q) * CycRat(pow_int(Int(q), f.weight - 1));
    for (long n = 1; n <= B; ++n) {
        out.a[n] = f.a[n * q];
        if (n % q == 0) out.a[n] += cq * f.a[n / q];
    }
    return out;
}

QExpansion p_deplete(const QExpansion& f, long p) {
    QExpansion out = f;
    for (long n = p; n <= f.precision(); n += p) out.a[n] = CycRat(0L);
    return out;
}

void write_qexpansion(std::ostream& os, const QExpansion& f) {
    os << "QEXP weight " << f.weight << " level " << f.level << " prec " << f.precision()
       << "\n";
    for (long n = 1; n <= f.precision(); ++n) os << n << " " << f.a[n].str() << "\n";
}

PadicNum cyc_to_padic(const CycInt& x, long p, int prec) {
    CycInt y = x.descend_minimal();
    long m = y.conductor();
    if ((p * p - 1) % m != 0)
        throw std::invalid_argument("cyc_to_padic: conductor not prime to p unramified");
    PadicNum z = padic_root_of_unity(p, prec, RootOfUnity::make(m, 1 % m));
    PadicNum acc(p, prec, Int(0), Int(0));
    PadicNum zi(p, prec, Int(1), Int(0));
    for (size_t i = 0; i < y.coeffs().size(); ++i) {
        acc = acc + PadicNum(p, prec, y.coeffs()[i], Int(0)) * zi;
        zi = zi * z;
    }
    return acc;
}

PadicQExpansion padic_theta(const HeckeCharacter& psi, long p, int prec, long B) {
    PadicQExpansion out;
    out.p = p;
    out.prec = prec;
    out.a.assign(B + 1, PadicNum(p, prec, Int(0), Int(0)));
    QuadIdeal fp =
        ideal_lcm(psi.conductor(), QuadIdeal::principal(psi.field(), {Int(p), Int(0)}));
    for (long n = 1; n <= B; ++n)
        for (const QuadIdeal& I : ideals_of_norm(psi.field(), Int(n), fp))
            out.a[n] = out.a[n] + avatar_value(psi, p, prec, I);
    return out;
}

LambdaThetaFamily make_theta_family(const HeckeCharacter& xi, const HeckeCharacter& psi0,
                                    long p) {
    if (xi.type_a() != 0 || xi.type_b() != 0)
        throw std::invalid_argument("make_theta_family: xi must have finite order");
    if (!xi.conductor().is_coprime_to_int(Int(p)))
        throw std::invalid_argument("make_theta_family: conductor of xi not coprime to p");
    return LambdaThetaFamily{xi, psi0, p};
}

namespace {

QuadIdeal family_conductor(const LambdaThetaFamily& fam) {
    return ideal_lcm(fam.xi.conductor(), fam.psi0.conductor());
}

}  // namespace

std::map<ExpVec, PadicNum> family_coefficient(const LambdaThetaFamily& fam, long m, long n,
                                              int prec) {
    const QuadOrder& K = fam.xi.field();
    QuadIdeal f = family_conductor(fam);
    QuadIdeal level_mod = f * QuadIdeal::principal(K, {pow_int(Int(fam.p), n), Int(0)});
    RayClassGroup H(K, level_mod, fam.p);
    std::map<ExpVec, PadicNum> out;
    for (const QuadIdeal& I : ideals_of_norm(K, Int(m), level_mod)) {
        PadicNum v = avatar_value(fam.xi, fam.p, prec, I) *
                     avatar_value(fam.psi0, fam.p, prec, I);
        ExpVec cls = H.class_of(I);
        auto it = out.find(cls);
        if (it == out.end())
            out.emplace(cls, v);
        else
            it->second = it->second + v;
    }
    return out;
}

PadicQExpansion specialize_family(const LambdaThetaFamily& fam, long nu, int prec, long B) {
    if (nu < 1) throw std::invalid_argument("specialize_family: weight must be >= 1");
    const QuadOrder& K = fam.xi.field();
    QuadIdeal f = family_conductor(fam);
    QuadIdeal fp = ideal_lcm(f, QuadIdeal::principal(K, {Int(fam.p), Int(0)}));
    PadicQExpansion out;
    out.p = fam.p;
    out.prec = prec;
    out.a.assign(B + 1, PadicNum(fam.p, prec, Int(0), Int(0)));
    for (long m = 1; m <= B; ++m)
        for (const QuadIdeal& I : ideals_of_norm(K, Int(m), fp)) {
            // stored coefficient iota(xi psi0)(a) specialized through
            // [a] -> avatar(psi0)(a)^{nu-2}
            PadicNum v = avatar_value(fam.xi, fam.p, prec, I) *
                         avatar_value(fam.psi0, fam.p, prec, I);
            v = v * avatar_value(fam.psi0, fam.p, prec, I).pow(Int(nu - 2));
            out.a[m] = out.a[m] + v;
        }
    return out;
}

namespace {

using CPoly = Poly<CycRat>;

CPoly det_poly(std::vector<std::vector<CPoly>> M) {
    size_t n = M.size();
    if (n == 1) return M[0][0];
    CPoly acc;
    for (size_t i = 0; i < n; ++i) {
        if (M[i][0].is_zero()) continue;
        std::vector<std::vector<CPoly>> minor;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<CPoly> row(M[r].begin() + 1, M[r].end());
            minor.push_back(std::move(row));
        }
        CPoly term = M[i][0] * det_poly(std::move(minor));
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

bool multiset_equal(std::vector<CycRat> a, std::vector<CycRat> b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const CycRat& x : a) {
        bool hit = false;
        for (size_t j = 0; j < b.size() && !hit; ++j)
            if (!used[j] && b[j] == x) used[j] = hit = true;
        if (!hit) return false;
    }
    return true;
}

}  // namespace

bool rankin_factorization_check(const HeckeCharacter& psi1, const HeckeCharacter& psi2,
                                long q) {
    const QuadOrder& K = psi1.field();
    Splitting s = splitting(K, Int(q));
    if (s.kind == Splitting::Ramified)
        throw std::invalid_argument("rankin_factorization_check: ramified prime");
    if (!psi1.conductor().is_coprime_to_int(Int(q)) ||
        !psi2.conductor().is_coprime_to_int(Int(q)))
        throw std::invalid_argument("rankin_factorization_check: q divides a conductor");
    HeckeCharacter eta1 = psi1.product(psi2), eta2 = psi1.product(psi2.conjugate());
    if (s.kind == Splitting::Split) {
        QuadIdeal Q = s.prime, Qb = s.prime.conj();
        std::vector<CycRat> lhs = {
            complex_value(psi1, Q) * complex_value(psi2, Q),
            complex_value(psi1, Q) * complex_value(psi2, Qb),
            complex_value(psi1, Qb) * complex_value(psi2, Q),
            complex_value(psi1, Qb) * complex_value(psi2, Qb)};
        std::vector<CycRat> rhs = {complex_value(eta1, Q), complex_value(eta1, Qb),
                                   complex_value(eta2, Q), complex_value(eta2, Qb)};
        return multiset_equal(lhs, rhs);
    }
    // inert: 2x2 induced blocks M_i = [[0, psi_i((q))], [1, 0]]; compare
    // det(1 - X M1 (x) M2) with the product of the eta Euler factors
    CycRat A = complex_value(psi1, s.prime), Bv = complex_value(psi2, s.prime);
    CycRat zero(0L), one(1L);
    std::vector<std::vector<CycRat>> M1 = {{zero, A}, {one, zero}};
    std::vector<std::vector<CycRat>> M2 = {{zero, Bv}, {one, zero}};
    std::vector<std::vector<CPoly>> T(4, std::vector<CPoly>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CycRat kron = M1[i / 2][j / 2] * M2[i % 2][j % 2];
            CPoly entry = CPoly::monomial(-kron, 1);
            if (i == j) entry = entry + CPoly(one);
            T[i][j] = entry;
        }
    CPoly lhs = det_poly(T);
    CPoly rhs = (CPoly(one) - CPoly::monomial(complex_value(eta1, s.prime), 2)) *
                (CPoly(one) - CPoly::monomial(complex_value(eta2, s.prime), 2));
    return lhs == rhs;
}

}  // namespace actheta
