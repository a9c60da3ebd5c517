#ifndef ACTHETA_QUATGROSS_HPP
#define ACTHETA_QUATGROSS_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "actheta/abelian.hpp"
#include "actheta/bigint.hpp"
#include "actheta/cyclotomic.hpp"
#include "actheta/iwasawa.hpp"
#include "actheta/padic.hpp"
#include "actheta/quadfield.hpp"

namespace actheta {

using Rat = mpq_class;
using QVec = std::array<Rat, 4>;  // x0 + x1 i + x2 j + x3 k in the 1,i,j,k basis

// Rational quaternion algebra with i^2 = a, j^2 = b, k = ij (a, b < 0 for the
// definite case).
struct QuatAlgebra {
    Int a, b;
    QVec mul(const QVec& x, const QVec& y) const;
    QVec conj(const QVec& x) const { return {x[0], -x[1], -x[2], -x[3]}; }
    Rat trd(const QVec& x) const { return 2 * x[0]; }
    Rat nrd(const QVec& x) const;
    Rat inner(const QVec& x, const QVec& y) const;  // trd(x * conj(y)) / 2
    QVec inverse(const QVec& x) const;
    bool operator==(const QuatAlgebra& o) const { return a == o.a && b == o.b; }
};

QVec qadd(const QVec& x, const QVec& y);
QVec qsub(const QVec& x, const QVec& y);
QVec qscale(const Rat& c, const QVec& x);
bool qzero(const QVec& x);

// Full-rank lattice in a quaternion algebra, stored by a canonical basis:
// rows of an integer Hermite-normal-form matrix divided by a minimal
// positive denominator.  Equality of lattices is equality of the fields.
struct QLattice {
    std::array<std::array<Int, 4>, 4> h;  // upper-triangular HNF rows
    Int den;

    QVec basis_vec(int m) const;
    static QLattice from_rows(const std::vector<QVec>& rows);
    QLattice scaled(const Rat& c) const;
    QLattice conjugated(const QuatAlgebra& A) const;
    QLattice sum(const QLattice& o) const;
    bool contains(const QVec& x) const;
    std::optional<std::array<Int, 4>> coords(const QVec& x) const;  // integer coords
    Rat det_abs() const;          // |det| of the rational basis matrix
    Rat index_in(const QLattice& o) const;  // [o : this] as a positive rational
    bool operator==(const QLattice& o) const { return h == o.h && den == o.den; }
    bool operator!=(const QLattice& o) const { return !(*this == o); }
    bool operator<(const QLattice& o) const;
    std::string str() const;
};

QLattice lattice_mul(const QuatAlgebra& A, const QLattice& x, const QLattice& y);

// Shortest-vector style exact enumeration: all lattice vectors v with
// nrd(v) = target (up to sign: one of each pair {v, -v} unless both wanted).
std::vector<QVec> vectors_of_norm(const QuatAlgebra& A, const QLattice& L, const Rat& target,
                                  bool up_to_sign = true);
// Counts of vectors with nrd = m * scale for m = 1..B (theta series of the
// norm form normalized by the ideal norm; a class invariant).
std::vector<long> theta_invariant(const QuatAlgebra& A, const QLattice& L, long B,
                                  const Rat& scale);

// Eichler order of level Nplus in the definite quaternion algebra of
// discriminant Nminus (both squarefree and coprime; Nminus a prime from the
// supported table).  Reduced discriminant = Nminus * Nplus is verified.
struct QuaternionOrder {
    QuatAlgebra A;
    QLattice L;
    Int Nminus, Nplus;
};
QuaternionOrder make_eichler_order(long Nminus, long Nplus);

// nrd of a lattice relative to an order: sqrt([O:I]) extended multiplicatively
// to non-integral lattices.
Rat lattice_nrd(const QLattice& I, const QLattice& O);

// left order {x : x I <= I} computed as (1/nrd I) * I * conj(I)
QLattice left_order(const QuatAlgebra& A, const QLattice& I, const QLattice& O);

// units of an order up to sign; w = #(units)/2
std::vector<QVec> order_units(const QuatAlgebra& A, const QLattice& O);

// Test whether right ideals I, J (over the same right order O) are in the
// same class; on success returns alpha with I = alpha * J.
std::optional<QVec> ideal_isomorphism(const QuatAlgebra& A, const QLattice& I, const QLattice& J,
                                      const QLattice& O);

// The q+1 right-O-submodules of colength q^2 in I (q-neighbors), q coprime
// to the reduced discriminant.
std::vector<QLattice> ideal_neighbors(const QuaternionOrder& O, const QLattice& I, long q);

struct BrandtSystem {
    QuaternionOrder order;
    std::vector<QLattice> reps;         // right ideal classes; reps[0] = O.L
    std::vector<QLattice> left_orders;  // O_L(reps[i])
    std::vector<long> w;                // |O_L(I_i)^x| / 2
    std::vector<std::vector<long>> thetas;  // dedup invariants
    std::map<long, std::vector<std::vector<Int>>> brandt;  // q -> B(q)

    long h() const { return (long)reps.size(); }
    Rat mass() const;  // sum 1/(2 w_i)
    // class index of a right ideal, with the witness alpha: J = alpha * reps[idx]
    std::pair<size_t, QVec> classify(const QLattice& J) const;
};

Rat eichler_mass(long Nminus, long Nplus);
BrandtSystem class_set_and_brandt(long Nminus, long Nplus, long Q);

// Rational eigenvector with B(q) v = a_q v for every listed q; throws if the
// joint eigenspace is not one-dimensional.  Normalized so that the first
// nonzero weighted coordinate w_i v_i equals 1.
std::vector<Rat> eigenvector(const BrandtSystem& sys, const std::map<long, Int>& aq);
std::vector<Rat> eisenstein_vector(const BrandtSystem& sys);

// ---------------------------------------------------------------------------
// Gross points: optimal embeddings of the order of conductor c p^n of the
// imaginary quadratic field of discriminant -DK into the left orders of the
// ideal classes, up to unit conjugation.

struct GrossPoint {
    size_t cls;
    QVec x;  // image of the generator w of the quadratic order (canonical mod units)
    bool operator==(const GrossPoint& o) const { return cls == o.cls && x == o.x; }
    bool operator<(const GrossPoint& o) const;
};

struct GrossPointSet {
    long DK, c, p, n;  // quadratic order conductor c * p^n
    ClassGroup pic;    // Pic(O_{c p^n})
    std::vector<GrossPoint> points;
};

// All optimal embeddings of conductor cond into the order OL (canonical
// representatives mod conjugation by order_units(OL)).
std::vector<QVec> optimal_embeddings(const QuatAlgebra& A, const QLattice& OL, long DK,
                                     long cond);

GrossPointSet gross_points(const BrandtSystem& sys, long DK, long c, long p, long n);

// Action of the ideal class sigma in Pic(O_{c p^n}) on a point.
GrossPoint galois_act(const BrandtSystem& sys, const GrossPointSet& set, const ExpVec& sigma,
                      const GrossPoint& pt);

// The p+1 Bruhat-Tits neighbors of a point of conductor c p^n, with the
// conductor exponent (level) of each neighbor.
struct PointNeighbor {
    GrossPoint pt;
    long level;
};
std::vector<PointNeighbor> point_neighbors(const BrandtSystem& sys, long DK, long c, long p,
                                           long n, const GrossPoint& pt);

// a_p * v(x) = sum of v over the p+1 neighbors, with level split {n+1: p, n-1: 1}
// (all p+1 at level 1 when n = 0) for every point at level n.
bool trace_relation_check(const BrandtSystem& sys, long DK, long c, long p, long n,
                          const std::vector<Rat>& v, const Int& ap);

// ---------------------------------------------------------------------------
// Theta elements

struct ThetaElement {
    long n = 0, p = 0;
    long alpha_exp = 0;  // regularization alpha_f^{-alpha_exp}
    Int ap;
    ClassGroup G;                // Pic(O_{c p^n})
    std::map<ExpVec, Rat> coeff; // sigma -> v(x^sigma), exact, no alpha factor
};

// Theta_n for the base point set.points[base]; coeff[sigma] = v(x^sigma).
ThetaElement theta_element(const BrandtSystem& sys, const GrossPointSet& set,
                           const std::vector<Rat>& v, const Int& ap, size_t base = 0);

// Exact evaluation sum_sigma v(x^sigma) chi(sigma) in Z[zeta] (alpha factor
// excluded; track theta.alpha_exp separately).
CycRat eval_exact(const ThetaElement& theta, const GroupCharacter& chi);

// unit root of X^2 - ap X + p (requires ap a unit mod p)
PadicNum padic_unit_root(const Int& ap, long p, int prec);

// p-adic evaluation including the alpha_f^{-n} factor; chi is a character of
// theta.G.group() with tame value part of order dividing p^2 - 1.
PadicCyc eval_theta_padic(const ThetaElement& theta, const GroupCharacter& chi, int prec);

// valuation num/den (normalized v_p) of a PadicCyc via the norm to the
// unramified layer; infinite when 0 at working precision
struct CycValuation {
    bool zero;
    long num, den;
};
CycValuation padic_cyc_valuation(const PadicCyc& x);
long padic_valuation(const PadicNum& x);  // returns precision when 0

// Evaluate the theta tower at a character chi (tame times wild combined) of
// the ring class group of one tower level: the matching level is selected by
// the character's group, the valuation and a nonvanishing verdict reported.
struct WildEval {
    long level;        // tower level used
    CycValuation val;  // of the evaluated theta element
    bool nonzero;      // at working precision
};
WildEval eval_wild(const std::vector<ThetaElement>& tower, const GroupCharacter& chi,
                   int prec);

}  // namespace actheta

#endif
