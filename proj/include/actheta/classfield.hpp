#ifndef ACTHETA_CLASSFIELD_HPP
#define ACTHETA_CLASSFIELD_HPP

#include <array>
#include <string>

#include "actheta/quadfield.hpp"

namespace actheta {

// Units of an imaginary quadratic order (torsion only).
std::vector<QuadElem> order_units(const QuadOrder& ord);

// Multiplicative structure of (O/C)^x for a primary component C of a modulus:
// canonical residue representatives with full coordinate data.
GroupStructure<QuadElem> residue_unit_group(const QuadOrder& OK, const QuadIdeal& C);

// Ray class group of the maximal order modulo an integral ideal, optionally
// in maximal-p-quotient mode (p != 0).  Presented by generators that all
// carry explicit ideal representatives.
class RayClassGroup {
public:
    RayClassGroup() = default;
    RayClassGroup(const QuadOrder& OK, const QuadIdeal& modulus, long p = 0);

    const QuadOrder& field_order() const { return OK_; }
    const QuadIdeal& modulus() const { return mod_; }
    long p_mode() const { return p_; }
    const FiniteAbelianGroup& group() const { return G_; }
    Int order() const { return G_.order(); }

    // class of an ideal coprime to the modulus, as coordinates in group()
    ExpVec class_of(const QuadIdeal& a) const;
    // an ideal representing each basis vector of group()
    const std::vector<QuadIdeal>& basis_ideals() const { return basis_ideals_; }

private:
    QuadOrder OK_;
    QuadIdeal mod_;
    long p_ = 0;
    FiniteAbelianGroup G_;      // the published group (p-quotient in p-mode)
    FiniteAbelianGroup Gfull_;  // full ray class group
    std::vector<QuadIdeal> basis_ideals_;

    ClassGroup cl_;
    std::vector<QuadIdeal> cl_reps_;                    // ideals for class-group basis
    std::vector<QuadIdeal> components_;                 // primary parts of the modulus
    std::vector<GroupStructure<QuadElem>> comp_units_;  // (O/C)^x per component
    std::vector<ExpVec> gen_coords_;                    // coords (in Gfull_) of all generators
    std::vector<QuadIdeal> gen_ideals_;

    std::vector<Int> residue_dlog(const QuadElem& b) const;
    ExpVec full_class_of(const QuadIdeal& a) const;
    ExpVec publish(const ExpVec& full) const;
};

// Ring class group Pic(O_n) (p-quotient in p-mode) with evaluation for ideals
// of O_n and for ideals of O_K coprime to n.
class RingClassGroup {
public:
    RingClassGroup() = default;
    RingClassGroup(long DK, long n, long p = 0);

    const QuadOrder& order_On() const { return On_; }
    long p_mode() const { return p_; }
    const FiniteAbelianGroup& group() const { return G_; }
    Int order() const { return G_.order(); }

    ExpVec class_of(const QuadIdeal& a_of_On) const;
    ExpVec class_of_field_ideal(const QuadIdeal& a_of_OK) const;
    const std::vector<QuadIdeal>& basis_ideals() const { return basis_ideals_; }  // O_n ideals

private:
    QuadOrder On_;
    long p_ = 0;
    FiniteAbelianGroup G_;
    ClassGroup cl_;
    std::vector<QuadIdeal> basis_ideals_;
};

// Artin symbol with the geometric normalization: the class of an ideal acts
// as the *inverse* Frobenius, so Frob_a = -class(a).
ExpVec frobenius(const RayClassGroup& H, const QuadIdeal& a);
ExpVec frobenius(const RingClassGroup& H, const QuadIdeal& a_of_OK);

// Deterministic choice of the prime above a split rational prime: the one
// with lexicographically smallest Hermite basis.
QuadIdeal chosen_split_prime(const QuadOrder& OK, const Int& q);

// Splitting data n = n+ * n- and the ideals c, cbar, n+, nbar+ of the paper's
// setup (c and n+ products of split primes, n- squarefree inert).
struct ModulusSplit {
    long c, n_plus, n_minus;
    QuadIdeal frak_c, frak_c_bar, frak_np, frak_np_bar, ideal_nm;  // (n-) principal
};
ModulusSplit split_modulus(const QuadOrder& OK, long c, long n);

// tau_cn : H(c n+) x H(cbar nbar+) x H(n-) -> H(cn), inverse of the triple
// of natural projections; an isomorphism whenever p does not divide h_K.
struct TauIso {
    RayClassGroup H1, H2, H3, Hcn;
    GroupHom proj;  // Hcn -> H1 x H2 x H3 (coordinates concatenated)
    bool verified;  // proj checked bijective
    ExpVec apply(const ExpVec& x, const ExpVec& y, const ExpVec& z) const;
};
TauIso tau_iso(long DK, long c, long n, long p);

// sigma_cn : H(c n+(n-)) x H(cbar nbar+(n-)) -> H[cn] via the 4-tuple rule
// (x,a,y,b) -> (tau_{cn+}(x,y), (ab)^{1/2}) followed by projection to the
// ring class group; conjugated mode precomposes the second slot with complex
// conjugation.
class SigmaMap {
public:
    SigmaMap(long DK, long c, long n, long p, bool conjugated);

    const RayClassGroup& domain_left() const { return Hm_; }
    const RayClassGroup& domain_right() const { return conj_ ? Hm_ : Hmbar_; }
    const RingClassGroup& target() const { return Hcn_; }

    ExpVec apply(const ExpVec& x, const ExpVec& y) const;

private:
    long DK_, c_, n_, p_;
    bool conj_;
    ModulusSplit ms_;
    RayClassGroup Hm_, Hmbar_;    // H(frak-c n+ (n-)) and its conjugate
    RayClassGroup Hfs_, Hfsbar_;  // H(frak-c n+) and its conjugate
    RayClassGroup Hnm_;           // H((n-))
    RayClassGroup Hcnp_;          // H((c n+))
    RayClassGroup Hfull_;         // H((cn))
    RingClassGroup Hcn_;          // H[cn]
    GroupHom m_split_, mbar_split_;  // H(m) -> H(frak-c n+) x H((n-)) etc.
    GroupHom conj_hom_;              // H(m) -> H(mbar) by complex conjugation
    GroupHom tau_pair_;              // H((c n+)) -> H(frak-c n+) x H(conj)
    GroupHom full_split_;            // H((cn)) -> H((c n+)) x H((n-))
    GroupHom to_ring_;               // H((cn)) -> H[cn]
};

// Cache round-trip for ray class groups: invariants and generator ideals,
// binary with a format-version header.
void write_ray_cache(const std::string& path, const RayClassGroup& H);
struct RayCache {
    long DK, p;
    Int mod_p, mod_q, mod_r;
    std::vector<Int> invariants;
    std::vector<std::array<Int, 3>> basis_ideals;
};
RayCache read_ray_cache(const std::string& path);

}  // namespace actheta

#endif
