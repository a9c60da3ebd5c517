#ifndef ACTHETA_THETAMODS_HPP
#define ACTHETA_THETAMODS_HPP

#include <functional>
#include <map>
#include <ostream>

#include "actheta/heckechar.hpp"
#include "actheta/poly.hpp"

namespace actheta {

// sqrt(d) for a fundamental discriminant d, as a quadratic Gauss sum in
// Z[zeta_{|d|}] (for d < 0 this is the root with positive imaginary part).
CycInt sqrt_disc(long d);

// Embedding of a quadratic order element x + y*w into the cyclotomic field
// containing sqrt(disc).
CycRat quad_to_cyc(const QuadOrder& K, const QuadElem& x);

// x^e in the order, e >= 0
QuadElem quad_pow(const QuadOrder& K, const QuadElem& x, long e);

// Complex value of psi on an ideal coprime to the conductor, as an element of
// the compositum of a cyclotomic field with K.  Requires every class symbol to
// resolve (trivial class group, or finite order).
CycRat complex_value(const HeckeCharacter& psi, const QuadIdeal& a);

// q-expansion with exact coefficients a_1..a_B
struct QExpansion {
    long weight = 0;
    long level = 1;
    std::function<CycRat(long)> neben;  // nebentypus value; 0 off (n, level) = 1
    std::vector<CycRat> a;              // a[0] unused
    long precision() const { return (long)a.size() - 1; }
};

// theta series of a character of infinity type (1-nu, 0): weight nu, level
// N(f)*|D_K|, nebentypus eps restricted to Z times the quadratic character of K
QExpansion theta_series(const HeckeCharacter& psi, long B);

// classical T_q on expansions, q prime not dividing the level; output
// precision floor(B/q)
QExpansion hecke_Tq(const QExpansion& f, long q);

// zero all coefficients a_n with p | n
QExpansion p_deplete(const QExpansion& f, long p);

void write_qexpansion(std::ostream& os, const QExpansion& f);

// expansion with p-adic coefficients
struct PadicQExpansion {
    long p = 0;
    int prec = 0;
    std::vector<PadicNum> a;  // a[0] unused
    long precision() const { return (long)a.size() - 1; }
};

// p-adic embedding of an exact cyclotomic integer; the minimal conductor must
// divide p^2 - 1
PadicNum cyc_to_padic(const CycInt& x, long p, int prec);

// theta series of psi with coefficients embedded through the p-adic avatar,
// restricted to ideals coprime to the conductor (hence p-depleted whenever
// p divides the conductor)
PadicQExpansion padic_theta(const HeckeCharacter& psi, long p, int prec, long B);

// Lambda-adic theta family: coefficient of q^m is the group-ring sum of
// avatar values of xi*psi0 over ideals of norm m coprime to the conductors
struct LambdaThetaFamily {
    HeckeCharacter xi;    // finite-order character, conductor coprime to p
    HeckeCharacter psi0;  // the canonical weight-2 seed of conductor (p)
    long p = 0;
};

LambdaThetaFamily make_theta_family(const HeckeCharacter& xi, const HeckeCharacter& psi0,
                                    long p);

// coefficient of q^m at finite level n: map from classes of the p-quotient ray
// class group mod f*p^n to accumulated coefficient values
std::map<ExpVec, PadicNum> family_coefficient(const LambdaThetaFamily& fam, long m, long n,
                                              int prec);

// weight-nu specialization: group-like terms [a] are sent to the (nu-2)-th
// power of the avatar of psi0, yielding the (depleted) theta series of
// xi * psi0^{nu-1}
PadicQExpansion specialize_family(const LambdaThetaFamily& fam, long nu, int prec, long B);

// Frobenius characteristic-polynomial factorization for the tensor product of
// two induced representations at an unramified prime q coprime to both
// conductors
bool rankin_factorization_check(const HeckeCharacter& psi1, const HeckeCharacter& psi2,
                                long q);

}  // namespace actheta

#endif
