#include "actheta/normrel.hpp"

#include <stdexcept>

namespace actheta {

namespace {

CycRat qpow(long q, long e) {  // q^e with e of either sign
    Int p = pow_int(Int(q), e < 0 ? -e : e);
    return e < 0 ? CycRat(CycInt(1L), p) : CycRat(CycInt(p), Int(1));
}

}  // namespace

HeckeDatum make_hecke_datum(const Int& a_q, long k, long l, long m, long q, bool split,
                            const std::vector<CycRat>& psi_slots,
                            const std::vector<CycRat>& eta_slots) {
    if (!is_prime(Int(q))) throw std::invalid_argument("make_hecke_datum: q not prime");
    if (k % 2 != 0 || (l - m) % 2 != 0 || (k + l + m) % 2 != 0)
        throw std::invalid_argument("make_hecke_datum: weight parity violated");
    if (k < 2 || l < 2 || m < 2)
        throw std::invalid_argument("make_hecke_datum: weights below 2");
    if (a_q * a_q > 4 * pow_int(Int(q), k - 1))
        throw std::invalid_argument("make_hecke_datum: Weil bound violated");
    if (psi_slots.size() != 3 || eta_slots.size() != 4)
        throw std::invalid_argument("make_hecke_datum: expected 3 psi and 4 eta slots");
    HeckeDatum d;
    d.a_q = a_q;
    d.k = k;
    d.l = l;
    d.m = m;
    d.q = q;
    d.split = split;
    d.psi1_q = psi_slots[0];
    d.psi2_q = psi_slots[1];
    d.psi2_qbar = psi_slots[2];
    d.eta1_q = eta_slots[0];
    d.eta1_qbar = eta_slots[1];
    d.eta2_q = eta_slots[2];
    d.eta2_qbar = eta_slots[3];
    return d;
}

Poly<CycRat> euler_P(const HeckeDatum& d, int i) {
    if (!d.split) throw std::invalid_argument("euler_P: inert datum");
    const CycRat& eta = (i == 1) ? d.eta1_q : d.eta2_q;
    CycRat c1 = -CycRat(d.a_q) * eta * qpow(d.q, -d.k / 2);
    CycRat c2 = eta * eta * qpow(d.q, -1);
    return Poly<CycRat>({CycRat(1L), c1, c2});
}

Poly<CycRat> euler_P_inert(const HeckeDatum& d) {
    if (d.split) throw std::invalid_argument("euler_P_inert: split datum");
    CycRat c1 = -CycRat(Int(d.a_q * d.a_q)) * qpow(d.q, -d.k) + CycRat(2L) * qpow(d.q, -1);
    return Poly<CycRat>({CycRat(1L), c1, qpow(d.q, -2)});
}

Laurent<CycRat> euler_Q(const HeckeDatum& d) {
    if (!d.split) throw std::invalid_argument("euler_Q: inert datum");
    CycRat c0 = CycRat(d.a_q) +
                qpow(d.q, d.r()) * (CycRat(1L) - CycRat(Int(d.q))) * qpow(d.q, -(d.l + d.m - 2)) *
                    d.psi1_q * d.psi2_qbar;
    CycRat edge = -qpow(d.q, d.k / 2 - 1);
    return Laurent<CycRat>(-1, {edge * d.eta1_q, c0, edge * d.eta1_qbar});
}

Laurent<CycRat> normrel_rhs(const HeckeDatum& d, int i) {
    if (!d.split) throw std::invalid_argument("normrel_rhs: inert datum");
    const CycRat& eta_q = (i == 1) ? d.eta1_q : d.eta2_q;
    const CycRat& eta_qbar = (i == 1) ? d.eta1_qbar : d.eta2_qbar;
    const CycRat& psi2 = (i == 1) ? d.psi2_qbar : d.psi2_q;
    CycRat c = -qpow(d.q, d.k / 2 - 1);
    Laurent<CycRat> out = Laurent<CycRat>::term(c * eta_q, -1);
    out = out + Laurent<CycRat>::term(c * eta_qbar, 1);
    out = out + Laurent<CycRat>::term(
                    CycRat(d.a_q) + qpow(d.q, d.r()) * (CycRat(1L) - CycRat(Int(d.q))) *
                                        qpow(d.q, -(d.l + d.m - 2)) * d.psi1_q * psi2,
                    0);
    return out;
}

CongruenceCertificate certify_divisible(const Laurent<CycRat>& f, long q, const Int& modulus) {
    CongruenceCertificate cert;
    cert.difference = f;
    for (long deg = f.low(); deg <= f.high(); ++deg) {
        CycRat c = f.coeff(deg);
        if (c.is_zero()) {
            cert.quotients.push_back(c);
            continue;
        }
        // denominator must be supported at q
        Int den = c.den();
        while (den % q == 0) den /= q;
        if (den != 1) {
            cert.failure = "denominator not supported at q";
            return cert;
        }
        // q is invertible modulo `modulus`, so divisibility of the numerator
        // by `modulus` is the exact criterion
        if (gcd(Int(q), modulus) != 1) {
            cert.failure = "modulus not coprime to q";
            return cert;
        }
        auto quo = c.num().divide_exact(CycInt(modulus));
        if (!quo) {
            cert.failure = "coefficient at degree " + std::to_string(deg) +
                           " not divisible by the modulus";
            return cert;
        }
        cert.quotients.push_back(CycRat(*quo, c.den()));
    }
    cert.ok = true;
    return cert;
}

CongruenceCertificate congruence_check_split(const HeckeDatum& d) {
    Poly<CycRat> P = euler_P(d, 1);
    CycRat c0 = (CycRat(1L) - CycRat(Int(d.q))) * qpow(d.q, -1);
    CycRat c1 = (CycRat(Int(d.q)) - CycRat(1L)) * qpow(d.q, -(d.l + d.m + 2) / 2) * d.psi1_q *
                d.psi2_qbar * d.eta1_q;
    Laurent<CycRat> Pt(0, {P.coeff(0) + c0, P.coeff(1) + c1, P.coeff(2)});
    Laurent<CycRat> diff = Pt - Laurent<CycRat>(0, P.coeffs());
    CongruenceCertificate cert;
    // the difference must consist of the two quoted monomials only
    if (diff.low() < 0 || diff.high() > 1) {
        cert.difference = diff;
        cert.failure = "unexpected monomial in P~ - P";
        return cert;
    }
    return certify_divisible(diff, d.q, Int(d.q - 1));
}

CongruenceCertificate congruence_check_inert(const HeckeDatum& d) {
    if (d.split) throw std::invalid_argument("congruence_check_inert: split datum");
    Poly<CycRat> P = euler_P_inert(d);
    CycRat minusP1 = -(P.coeff(0) + P.coeff(1) + P.coeff(2));
    CycRat a2 = CycRat(Int(d.a_q * d.a_q));
    CycRat qp1 = CycRat(Int(d.q + 1));
    CycRat e1 = a2 - qp1 * qp1 * qpow(d.q, -1);
    CycRat e2 = a2 - qp1 * qpow(d.q, -1) * qpow(d.q, d.k - 2) *
                         (CycRat(Int(d.q - 1)) + qpow(d.q, d.l - 2) + qpow(d.q, d.m - 2));
    Laurent<CycRat> diffs(0, {minusP1 - e1, e1 - e2});
    return certify_divisible(diffs, d.q, Int(d.q) * d.q - 1);
}

}  // namespace actheta
