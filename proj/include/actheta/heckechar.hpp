#ifndef ACTHETA_HECKECHAR_HPP
#define ACTHETA_HECKECHAR_HPP

#include <optional>
#include <string>

#include "actheta/classfield.hpp"
#include "actheta/padic.hpp"

namespace actheta {

// Root of unity zeta_m^k kept in lowest terms (m = exact order).
struct RootOfUnity {
    long m = 1, k = 0;
    static RootOfUnity make(long mm, long kk);
    RootOfUnity mul(const RootOfUnity& o) const;
    RootOfUnity pow(long e) const;
    RootOfUnity inverse() const { return pow(-1); }
    bool is_one() const { return m == 1; }
    bool operator==(const RootOfUnity& o) const { return m == o.m && k == o.k; }
    bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
    CycInt to_cyc() const { return CycInt::zeta(m, k); }
};

// order of the torsion unit u under the fixed embedding 2+w -> zeta_w
RootOfUnity unit_as_root(const QuadOrder& ord, const QuadElem& u);

// Algebraic Hecke character of an imaginary quadratic field:
// psi((alpha)) = eps(alpha) * alpha^{-a} * conj(alpha)^{-b}, extended to all
// ideals coprime to the conductor through class-group representatives with a
// root-of-unity branch choice on each.
class HeckeCharacter {
public:
    HeckeCharacter() = default;
    // assembles a character from its finite data; throws when the unit
    // obstruction eps(u) u^{-a} conj(u)^{-b} = 1 fails
    HeckeCharacter(const QuadOrder& K, long a, long b, const QuadIdeal& f,
                   std::vector<Int> eps_exps, std::vector<Int> branches);

    const QuadOrder& field() const { return K_; }
    long type_a() const { return a_; }
    long type_b() const { return b_; }
    const QuadIdeal& conductor() const { return f_; }
    const GroupStructure<QuadElem>& residue_units() const { return U_; }
    const GroupCharacter& eps() const { return eps_; }
    const std::vector<QuadIdeal>& class_reps() const { return reps_; }
    const std::vector<QuadElem>& class_alphas() const { return alphas_; }
    const std::vector<Int>& branches() const { return branch_; }
    RootOfUnity eps_value(const QuadElem& x) const;

    // factored value: root * num^{-a} conj(num)^{-b} / (den^{-a} conj(den)^{-b})
    // * product of formal class-generator symbols
    struct Value {
        RootOfUnity root;
        QuadElem num{Int(1), Int(0)}, den{Int(1), Int(0)};
        ExpVec gen_exps;
    };
    Value evaluate(const QuadIdeal& a) const;
    Value value_one() const;
    Value value_mul(const Value& v, const Value& w) const;
    bool value_equal(const Value& v, const Value& w) const;

    bool is_trivial() const;
    HeckeCharacter conjugate() const;    // psi^c: a<->b, conductor conjugated
    HeckeCharacter inverse() const;
    HeckeCharacter norm_twist(long t) const;  // |.|^t: (a,b) -> (a+t, b+t)
    HeckeCharacter product(const HeckeCharacter& o) const;

    std::string serialize() const;

    // reduce symbol exponents into their canonical range; at infinity type
    // (0,0) all class symbols resolve to explicit roots of unity
    Value fold(Value v) const;

private:
    QuadOrder K_;
    long a_ = 0, b_ = 0;
    QuadIdeal f_;
    GroupStructure<QuadElem> U_;  // (O/f)^x
    GroupCharacter eps_;
    ClassGroup cl_;
    std::vector<QuadIdeal> reps_;    // deterministic class-group representatives
    std::vector<QuadElem> alphas_;   // reps_[i]^{e_i} = (alphas_[i])
    std::vector<Int> branch_;        // branch t_i: psi(rep_i) = zeta_{e_i}^{t_i} S_i
    void canonical_associate(QuadElem& x, RootOfUnity& root, bool den_side) const;
};

// all characters of infinity type (a,b) and conductor f (imprimitive included)
std::vector<HeckeCharacter> enumerate_characters(const QuadOrder& K, long a, long b,
                                                 const QuadIdeal& f);
HeckeCharacter parse_character(const std::string& text);

// lcm (intersection) of two integral ideals of the same order
QuadIdeal ideal_lcm(const QuadIdeal& a, const QuadIdeal& b);

// --- p-adic embeddings and avatars (p odd, inert in K for degree 2) ---

// Hensel square root of a unit square in Z_p (degree-1 input, odd p);
// normalized so the residue of the root lies in [1, p/2].
PadicNum padic_sqrt(const PadicNum& x);
// fixed embedding K -> Q_{p^2}: w = (D + sqrt(D))/2 with the canonical root
PadicNum embed_quad(const QuadOrder& OK, const QuadElem& x, long p, int prec);
// deterministic generator of mu_{p^2-1} in Z_{p^2}
PadicNum teichmuller_generator(long p, int prec);
// image of zeta_m^k under zeta_{p^2-1} -> teichmuller_generator; m | p^2-1
PadicNum padic_root_of_unity(long p, int prec, const RootOfUnity& z);

// p-adic avatar psi-hat(a), an element of Z_{p^2}^x at the given precision
PadicNum avatar_value(const HeckeCharacter& psi, long p, int prec, const QuadIdeal& a);

// the unique conductor-(p) character of type (-1,0) whose avatar lands in the
// principal units 1 + p Z_{p^2}
HeckeCharacter build_psi0(long DK, long p);

// --- anticyclotomic splitting ---

// G_n = H(c p^n) / (1 + complex conjugation), the level-n anticyclotomic
// quotient, with its tame (prime-to-p) and wild (p-part) pieces.
struct AnticycLevel {
    long DK, c, p;
    int n;
    RayClassGroup H;           // full ray class group mod (c) (p^n)
    FiniteAbelianGroup G;      // anticyclotomic quotient
    GroupHom pi;               // H.group() -> G
    FiniteAbelianGroup tame;   // prime-to-p part of G
    FiniteAbelianGroup wild;   // p-part of G (cyclic)
    ExpVec tame_part(const ExpVec& x) const;  // componentwise projections
    ExpVec wild_part(const ExpVec& x) const;
};
AnticycLevel anticyc_quotient(long DK, long c, long p, int n);

struct AnticycSplit {
    GroupCharacter tame;  // character of L.tame
    Int wild_exp;         // chi^- = (fixed generator) -> zeta_{pn}^{wild_exp}
    Int pn;               // order of the wild group (a p-power)
};
// chi must be a character of L.H.group() that is anticyclotomic
AnticycSplit split_anticyclotomic(const AnticycLevel& L, const GroupCharacter& chi);
GroupCharacter recombine(const AnticycLevel& L, const AnticycSplit& s);

// Witness search: gamma on H((c)) with gamma/gamma^c equal to the pullback of
// chi_t; nullopt when no witness exists.
std::optional<GroupCharacter> find_gamma(const AnticycLevel& L0, const GroupCharacter& chi_t);
// gamma/gamma^c as a character of L.H.group()
GroupCharacter anticyc_ratio(const AnticycLevel& L, const GroupCharacter& gamma);

}  // namespace actheta

#endif
