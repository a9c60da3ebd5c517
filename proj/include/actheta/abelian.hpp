#ifndef ACTHETA_ABELIAN_HPP
#define ACTHETA_ABELIAN_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "actheta/bigint.hpp"
#include "actheta/cyclotomic.hpp"

namespace actheta {

// Exponent vector of a group element with respect to an invariant-factor basis.
using ExpVec = std::vector<Int>;

// Finite abelian group in invariant-factor form Z/d_1 x ... x Z/d_k with
// d_1 | d_2 | ... | d_k and every d_i > 1.  Elements are exponent vectors,
// componentwise mod d_i.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;  // trivial group
    explicit FiniteAbelianGroup(std::vector<Int> invariants);

    // Quotient Z^ngens / (row span of relations); throws when infinite.  On
    // return gen_coords, if non-null, holds the coordinates of each of the
    // original ngens generators.
    static FiniteAbelianGroup from_relations(size_t ngens,
                                             const std::vector<ExpVec>& relations,
                                             std::vector<ExpVec>* gen_coords = nullptr);

    const std::vector<Int>& invariants() const { return inv_; }
    size_t rank() const { return inv_.size(); }
    bool is_trivial() const { return inv_.empty(); }
    Int order() const;
    Int exponent() const;

    // direct product, coordinates concatenated in order
    static FiniteAbelianGroup product(const std::vector<const FiniteAbelianGroup*>& parts);

    ExpVec zero() const { return ExpVec(inv_.size(), Int(0)); }
    ExpVec reduce(ExpVec x) const;
    ExpVec add(const ExpVec& x, const ExpVec& y) const;
    ExpVec sub(const ExpVec& x, const ExpVec& y) const;
    ExpVec neg(const ExpVec& x) const;
    ExpVec mul(const ExpVec& x, const Int& n) const;
    bool is_zero(const ExpVec& x) const;
    Int element_order(const ExpVec& x) const;

    // Every element; order() must be small enough to enumerate.
    std::vector<ExpVec> elements() const;

    // Maximal p-quotient and the projection onto it (drops components with
    // d_i coprime to p, reduces the rest mod the p-part of d_i).
    FiniteAbelianGroup p_quotient(const Int& p) const;
    ExpVec p_project(const Int& p, const ExpVec& x) const;

    bool operator==(const FiniteAbelianGroup& o) const { return inv_ == o.inv_; }
    bool operator!=(const FiniteAbelianGroup& o) const { return inv_ != o.inv_; }

private:
    std::vector<Int> inv_;
};

// Character of a finite abelian group: basis generator i maps to
// zeta_{d_i}^{e_i}.  Values live in Q(zeta_M), M the group exponent.
class GroupCharacter {
public:
    GroupCharacter() = default;  // trivial character of the trivial group
    GroupCharacter(FiniteAbelianGroup G, std::vector<Int> exps);

    const FiniteAbelianGroup& group() const { return G_; }
    const std::vector<Int>& exponents() const { return e_; }
    bool is_trivial() const;
    Int order() const;
    long value_conductor() const;             // exponent of G as a long
    CycInt value(const ExpVec& x) const;      // root of unity zeta_M^{...}
    long value_exponent(const ExpVec& x) const;  // chi(x) = zeta_M^return

    GroupCharacter pow(const Int& n) const;
    GroupCharacter inverse() const { return pow(Int(-1)); }
    GroupCharacter operator*(const GroupCharacter& o) const;
    bool operator==(const GroupCharacter& o) const;

    static std::vector<GroupCharacter> all(const FiniteAbelianGroup& G);

private:
    FiniteAbelianGroup G_;
    std::vector<Int> e_;
};

// Homomorphism between finite abelian groups given by the images of the
// domain basis vectors.
struct GroupHom {
    FiniteAbelianGroup dom, cod;
    std::vector<ExpVec> images;  // images[i] = image of the i-th basis vector

    ExpVec apply(const ExpVec& x) const;
    bool is_well_defined() const;  // order of basis vector kills its image
    bool is_surjective() const;
    bool is_isomorphism() const { return is_surjective() && dom.order() == cod.order(); }
    // some preimage of y, when one exists
    std::optional<ExpVec> preimage(const ExpVec& y) const;
};

// Structure of an abelian group handed to us as black-box elements: the
// abstract group, a basis realizing the invariant factors, and the coordinate
// of every element.
template <typename T>
struct GroupStructure {
    FiniteAbelianGroup group;
    std::vector<T> basis;  // basis[i] has order group.invariants()[i]
    std::map<T, ExpVec> coords;
};

namespace detail {

template <typename T, typename Mul>
T pow_elem(const T& x, Int e, const T& id, Mul&& mul) {
    T acc = id, base = x;
    for (Int k = e; k > 0; k /= 2) {
        if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, base);
        base = mul(base, base);
    }
    return acc;
}

// Returns pairs (generator, order) with orders in descending divisibility
// order: each order divides the previous one.  Takes std::function so that
// recursing with the quotient multiplication keeps a fixed template depth.
template <typename T>
std::vector<std::pair<T, Int>> decompose(const std::vector<T>& elements, const T& id,
                                         std::function<T(const T&, const T&)> mul) {
    if (elements.size() <= 1) return {};
    // element of maximal order; in a finite abelian group its order is the
    // exponent and it generates a direct summand
    T g = id;
    Int n = 1;
    for (const T& x : elements) {
        Int o = 1;
        T acc = x;
        while (!(acc == id)) acc = mul(acc, x), ++o;
        if (o > n) n = o, g = x;
    }
    std::vector<T> gpow;  // powers of g in order
    {
        T acc = id;
        for (Int i = 0; i < n; ++i) gpow.push_back(acc), acc = mul(acc, g);
    }
    // canonical representatives of the cosets of <g>
    std::map<T, T> rep;
    std::vector<T> reps;
    for (const T& x : elements) {
        if (rep.count(x)) continue;
        T best = x;
        std::vector<T> coset;
        for (const T& p : gpow) {
            T y = mul(x, p);
            coset.push_back(y);
            if (y < best) best = y;
        }
        for (const T& y : coset) rep.emplace(y, best);
        reps.push_back(best);
    }
    std::function<T(const T&, const T&)> mulq = [&](const T& a, const T& b) {
        return rep.at(mul(a, b));
    };
    auto inner = decompose(reps, rep.at(id), mulq);
    std::vector<std::pair<T, Int>> out;
    out.emplace_back(g, n);
    for (auto& [b, d] : inner) {
        // b^d lies in <g>; correct b by the matching power of g so its order
        // in the full group drops to d
        T bd = pow_elem(b, d, id, mul);
        Int s = 0;
        while (!(gpow[s.get_ui()] == bd)) ++s;
        if (s % d != 0) throw std::logic_error("abelian decompose: bad lift");
        T lifted = mul(b, pow_elem(g, (n - s / d) % n, id, mul));
        out.emplace_back(lifted, d);
    }
    return out;
}

}  // namespace detail

// Full structure of the abelian group generated by gens under mul.  T needs
// operator< and operator==; the group must be small enough to enumerate.
template <typename T, typename Mul>
GroupStructure<T> abelian_structure(const std::vector<T>& gens, const T& id, Mul mul) {
    std::map<T, char> seen;
    std::vector<T> todo{id}, elements;
    seen.emplace(id, 1);
    while (!todo.empty()) {
        T x = todo.back();
        todo.pop_back();
        elements.push_back(x);
        for (const T& g : gens) {
            T y = mul(x, g);
            if (seen.emplace(y, 1).second) todo.push_back(y);
        }
    }
    std::function<T(const T&, const T&)> mulf = mul;
    auto dec = detail::decompose(elements, id, mulf);  // descending orders
    GroupStructure<T> out;
    std::vector<Int> inv;
    for (auto it = dec.rbegin(); it != dec.rend(); ++it) {
        inv.push_back(it->second);
        out.basis.push_back(it->first);
    }
    out.group = FiniteAbelianGroup(inv);
    // enumerate coordinates
    out.coords.emplace(id, out.group.zero());
    std::vector<std::pair<T, ExpVec>> frontier{{id, out.group.zero()}};
    for (size_t i = 0; i < out.basis.size(); ++i) {
        std::vector<std::pair<T, ExpVec>> next = frontier;
        T acc = id;
        for (Int e = 1; e < inv[i]; ++e) {
            acc = mul(acc, out.basis[i]);
            for (auto& [x, v] : frontier) {
                ExpVec w = v;
                w[i] = e;
                next.emplace_back(mul(x, acc), w);
            }
        }
        frontier = std::move(next);
    }
    for (auto& [x, v] : frontier) out.coords[x] = v;
    if (out.coords.size() != elements.size())
        throw std::logic_error("abelian_structure: basis does not span");
    return out;
}

}  // namespace actheta

#endif
