#ifndef ACTHETA_IWASAWA_HPP
#define ACTHETA_IWASAWA_HPP

#include <functional>
#include <map>

#include "actheta/abelian.hpp"
#include "actheta/padic.hpp"

namespace actheta {

// element of a finite-level group ring O[G]: coefficient map on group elements
struct GrElem {
    std::map<ExpVec, PadicNum> c;
};

// finite-level model of an Iwasawa algebra: O[G] with O realized as PadicNum
class GroupRing {
public:
    GroupRing(FiniteAbelianGroup G, long p, int prec);

    const FiniteAbelianGroup& group() const { return G_; }
    long p() const { return p_; }
    int prec() const { return prec_; }

    PadicNum scalar(const Int& a, const Int& b = Int(0)) const;
    GrElem zero() const { return {}; }
    GrElem one() const;
    GrElem gen(const ExpVec& g) const;  // [g]
    GrElem term(const ExpVec& g, const PadicNum& a) const;

    GrElem add(const GrElem& x, const GrElem& y) const;
    GrElem sub(const GrElem& x, const GrElem& y) const;
    GrElem mul(const GrElem& x, const GrElem& y) const;
    GrElem scale(const PadicNum& a, const GrElem& x) const;
    bool equal(const GrElem& x, const GrElem& y) const;

    PadicNum augment(const GrElem& x) const;
    // evaluation against a coefficient-ring-valued character
    PadicNum eval_fn(const GrElem& x,
                     const std::function<PadicNum(const ExpVec&)>& chi) const;

private:
    FiniteAbelianGroup G_;
    long p_;
    int prec_;
    void strip(GrElem& x) const;
};

// element of Z_{p^2}[zeta_{p^s}] in the power basis of length phi(p^s); the
// cyclotomic layer carries the ramified part of character values exactly
struct PadicCyc {
    long p = 0;
    long s = 0;  // zeta has order p^s (s = 0: plain scalar)
    std::vector<PadicNum> comp;

    static PadicCyc from_scalar(const PadicNum& a, long s);
    static PadicCyc zeta_power(long p, int prec, long s, long e);
    PadicCyc add(const PadicCyc& o) const;
    PadicCyc mul(const PadicCyc& o) const;
    PadicCyc galois(long t) const;   // zeta -> zeta^t, t coprime to p
    PadicNum norm_scalar() const;    // product over the Galois orbit (a scalar)
    bool operator==(const PadicCyc& o) const;
    bool operator!=(const PadicCyc& o) const { return !(*this == o); }
};

// evaluation at an abstract character of G: the prime-to-p part of the value
// embeds through mu_{p^2-1}, the p-part is carried on the zeta_{p^s} layer
PadicCyc eval_char(const GroupRing& R, const GrElem& x, const GroupCharacter& chi);

// [g] -> alpha(g)[g]
GrElem twist_by(const GroupRing& R, const std::function<PadicNum(const ExpVec&)>& alpha,
                const GrElem& x);

// coefficient transport along a group homomorphism (a ring homomorphism)
GrElem push_ring(const GroupRing& src, const GroupRing& dst, const GroupHom& h,
                 const GrElem& x);

// the square-root automorphism of O[G x G] (first factor of rank rank1):
// [gamma] (x) [delta] -> [gamma^{1/2} delta^{1/2}] (x) [gamma^{1/2} delta^{-1/2}];
// requires odd group order
GrElem sigma_auto(const GroupRing& R2, long rank1, const GrElem& x);

// finite model of the anticyclotomic quotient of a group with conjugation
struct AnticycModel {
    FiniteAbelianGroup H;
    GroupHom conj;            // action of complex conjugation on H
    FiniteAbelianGroup Gminus;  // H / (1 + conj)
    GroupHom pi;              // projection H -> Gminus
};

AnticycModel make_anticyc_model(const FiniteAbelianGroup& H, const GroupHom& conj);

// [gamma] -> [pi(gamma^{1/2} (gamma^c)^{-1/2})], a ring homomorphism
// O[H] -> O[Gminus]
GrElem tau_project(const GroupRing& RH, const AnticycModel& M, const GroupRing& RGm,
                   const GrElem& x);

// (tau, tau) after sigma: O[H x H] -> O[Gminus x Gminus]
GrElem anticyc_project(const GroupRing& RHH, const AnticycModel& M, const GroupRing& RGmGm,
                       const GrElem& x);

}  // namespace actheta

#endif
