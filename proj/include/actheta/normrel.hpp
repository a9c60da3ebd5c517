#ifndef ACTHETA_NORMREL_HPP
#define ACTHETA_NORMREL_HPP

#include "actheta/poly.hpp"

namespace actheta {

// Local data of a norm-relation computation at a prime q: the Hecke eigenvalue
// of f and the character values of psi_1, psi_2 and the derived anticyclotomic
// characters eta_1 = psi_1 psi_2, eta_2 = psi_1 psi_2^c at the primes above q.
struct HeckeDatum {
    Int a_q;
    long k = 2, l = 2, m = 2;  // balanced even/parity-consistent weights
    long q = 2;
    bool split = true;
    CycRat psi1_q, psi2_q, psi2_qbar;
    CycRat eta1_q, eta1_qbar, eta2_q, eta2_qbar;
    long r() const { return (k + l + m - 6) / 2; }
};

// validates primality, weight parity and the Weil bound |a_q| <= 2 q^{(k-1)/2}
HeckeDatum make_hecke_datum(const Int& a_q, long k, long l, long m, long q, bool split,
                            const std::vector<CycRat>& psi_slots,   // psi1(q), psi2(q), psi2(qbar)
                            const std::vector<CycRat>& eta_slots);  // eta1(q), eta1(qbar), eta2(q), eta2(qbar)

// split Euler factor: 1 - a_q eta_i(q)/q^{k/2} X + eta_i(q)^2/q X^2
Poly<CycRat> euler_P(const HeckeDatum& d, int i);

// inert Euler factor: 1 - a_q^2/q^k X + 2X/q + X^2/q^2
Poly<CycRat> euler_P_inert(const HeckeDatum& d);

// corestriction operator polynomial:
// a_q + q^r(1-q)/q^{l+m-2} psi1(q)psi2(qbar)
//     - q^{k/2-1} eta_1(q) X^{-1} - q^{k/2-1} eta_1(qbar) X
Laurent<CycRat> euler_Q(const HeckeDatum& d);

// the same operator as a formal group-ring element in Z[Frob^{+-1}];
// degree d coefficient multiplies Frob^d
Laurent<CycRat> normrel_rhs(const HeckeDatum& d, int i);

struct CongruenceCertificate {
    bool ok = false;
    Laurent<CycRat> difference;       // what was reduced
    std::vector<CycRat> quotients;    // difference coefficients divided by the modulus
    std::string failure;
};

// exact divisibility of every coefficient by `modulus` in Z[zeta][1/q]
// (denominators must be supported at q)
CongruenceCertificate certify_divisible(const Laurent<CycRat>& f, long q, const Int& modulus);

// builds P~ = P + (1-q)/q + (q-1)/q^{(l+m+2)/2} psi1(q)psi2(qbar)eta1(q) X and
// certifies P~ - P divisible by q - 1; also enforces that the difference has
// no monomials beyond degrees 0 and 1
CongruenceCertificate congruence_check_split(const HeckeDatum& d);

// certifies the two inert congruences modulo q^2 - 1:
//   -P(1) = a_q^2 - (q+1)^2/q  and
//   a_q^2 - (q+1)^2/q = a_q^2 - (q+1)/q q^{k-2}(q - 1 + q^{l-2} + q^{m-2})
CongruenceCertificate congruence_check_inert(const HeckeDatum& d);

}  // namespace actheta

#endif
