#ifndef ACTHETA_QUADFIELD_HPP
#define ACTHETA_QUADFIELD_HPP

#include <optional>
#include <vector>

#include "actheta/abelian.hpp"
#include "actheta/bigint.hpp"

namespace actheta {

// Element x + y*w of a quadratic order with discriminant D, where
// w = (D + sqrt(D))/2 satisfies w^2 = D*w - (D^2 - D)/4.
struct QuadElem {
    Int x, y;
    bool operator==(const QuadElem& o) const { return x == o.x && y == o.y; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }
    bool operator<(const QuadElem& o) const { return x != o.x ? x < o.x : y < o.y; }
};

// Order O_c of conductor c in the imaginary quadratic field of fundamental
// discriminant -D_K; the order's discriminant is c^2 * (-D_K).
class QuadOrder {
public:
    QuadOrder() = default;
    explicit QuadOrder(long DK, long c = 1);

    long field_disc_abs() const { return DK_; }
    long conductor() const { return c_; }
    const Int& disc() const { return D_; }
    QuadOrder maximal_order() const { return QuadOrder(DK_, 1); }

    QuadElem one() const { return {Int(1), Int(0)}; }
    QuadElem w() const { return {Int(0), Int(1)}; }
    QuadElem add(const QuadElem& a, const QuadElem& b) const { return {a.x + b.x, a.y + b.y}; }
    QuadElem sub(const QuadElem& a, const QuadElem& b) const { return {a.x - b.x, a.y - b.y}; }
    QuadElem mul(const QuadElem& a, const QuadElem& b) const;
    QuadElem conj(const QuadElem& a) const { return {a.x + a.y * D_, -a.y}; }
    Int norm(const QuadElem& a) const;
    Int trace(const QuadElem& a) const { return 2 * a.x + a.y * D_; }

    // rewrite an element of this order in the basis of a larger order (whose
    // conductor divides this one's)
    QuadElem convert_to(const QuadOrder& target, const QuadElem& a) const;

    bool operator==(const QuadOrder& o) const { return DK_ == o.DK_ && c_ == o.c_; }
    bool operator!=(const QuadOrder& o) const { return !(*this == o); }

private:
    long DK_ = 0;
    long c_ = 1;
    Int D_;
};

// Primitive positive-definite binary quadratic form a x^2 + b x y + c y^2.
// Reduced forms are the canonical labels for ideal classes.
struct QuadForm {
    Int a, b, c;
    Int disc() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    QuadForm reduced() const;
    static QuadForm principal(const Int& D);
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const;
};

// All reduced primitive forms of negative discriminant D; their count is the
// class number h(D).
std::vector<QuadForm> reduced_forms(const Int& D);

// Integral ideal of a quadratic order, stored as the Hermite basis
// (p, 0), (q, r) with respect to (1, w): columns are the coefficients of 1
// and of w, 0 <= q < p, r | p, r | q.
class QuadIdeal {
public:
    QuadIdeal() = default;
    QuadIdeal(const QuadOrder& ord, const std::vector<QuadElem>& gens);
    static QuadIdeal principal(const QuadOrder& ord, const QuadElem& g);
    static QuadIdeal unit_ideal(const QuadOrder& ord);

    const QuadOrder& order() const { return ord_; }
    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }
    Int norm() const { return p_ * r_; }
    bool is_zero() const { return p_ == 0; }
    bool is_unit_ideal() const { return p_ == 1 && r_ == 1; }

    QuadIdeal operator*(const QuadIdeal& o) const;
    QuadIdeal pow(unsigned long e) const;
    QuadIdeal conj() const;
    QuadIdeal add(const QuadIdeal& o) const;  // ideal sum (gcd)
    bool is_coprime_to(const QuadIdeal& o) const { return add(o).is_unit_ideal(); }
    bool is_coprime_to_int(const Int& m) const { return gcd(norm(), m) == 1; }

    bool contains(const QuadElem& e) const;
    QuadElem reduce_elem(QuadElem e) const;       // canonical representative mod the ideal
    std::vector<QuadElem> residues() const;       // all canonical representatives

    // reduced form of the ideal class (primitive part)
    QuadForm form() const;
    // generator when principal (shortest vector has norm = N(I))
    std::optional<QuadElem> principal_gen() const;
    bool is_principal() const { return principal_gen().has_value(); }

    // extension I * O_target to an order of smaller conductor; requires the
    // ideal coprime to its conductor
    QuadIdeal extend_to(const QuadOrder& target) const;
    // contraction I ∩ O_target to an order of larger conductor
    QuadIdeal contract_to(const QuadOrder& target) const;

    bool operator==(const QuadIdeal& o) const;
    bool operator!=(const QuadIdeal& o) const { return !(*this == o); }
    bool operator<(const QuadIdeal& o) const;

    std::string str() const;

private:
    QuadOrder ord_;
    Int p_, q_, r_;
};

// Splitting behaviour of a rational prime in the field of the given order.
struct Splitting {
    enum Kind { Split, Inert, Ramified } kind;
    QuadIdeal prime;  // an ideal above q of norm q (split/ramified) or q^2 (inert)
};
Splitting splitting(const QuadOrder& ord, const Int& q);

// Class group Pic(O) with the map from coprime-to-conductor ideals to
// exponent-vector classes.
struct ClassGroup {
    QuadOrder order;
    GroupStructure<QuadForm> structure;
    const FiniteAbelianGroup& group() const { return structure.group; }
    Int h() const { return structure.group.order(); }
    ExpVec class_of(const QuadIdeal& I) const;
    // a representative ideal (coprime to modulus_avoid) in the given class
    QuadIdeal representative(const ExpVec& cls, const Int& coprime_to = Int(1)) const;
};
ClassGroup class_group(const QuadOrder& ord);

// Duplicate-free list of integral invertible ideals of norm n coprime to the
// ideal f (and to the conductor), assembled from prime-power ideals.
std::vector<QuadIdeal> ideals_of_norm(const QuadOrder& ord, const Int& n,
                                      const QuadIdeal& f);
std::vector<QuadIdeal> ideals_of_norm(const QuadOrder& ord, const Int& n);

}  // namespace actheta

#endif
