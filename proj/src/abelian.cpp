#include "actheta/abelian.hpp"

#include <algorithm>
#include <numeric>

namespace actheta {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> invariants) {
    // moduli need not form a divisibility chain (direct products of groups in
    // chain form are not re-normalized); factors of 1 are dropped
    for (const Int& d : invariants) {
        if (d <= 0) throw std::invalid_argument("invariant factors must be positive");
        if (d != 1) inv_.push_back(d);
    }
}

FiniteAbelianGroup FiniteAbelianGroup::from_relations(size_t ngens,
                                                     const std::vector<ExpVec>& relations,
                                                     std::vector<ExpVec>* gen_coords) {
    std::vector<std::vector<Int>> A = relations;
    if (A.empty()) A.emplace_back(ngens, Int(0));
    for (const auto& row : A)
        if (row.size() != ngens) throw std::invalid_argument("relation length mismatch");
    SmithResult snf = smith_normal_form(A);
    // invariant of coordinate j: D[j][j] when present, else 0 (a free factor)
    std::vector<Int> d(ngens, Int(0));
    for (size_t j = 0; j < ngens && j < A.size(); ++j) d[j] = snf.D[j][j];
    for (size_t j = 0; j < ngens; ++j)
        if (d[j] == 0) throw std::invalid_argument("relations do not define a finite group");

    FiniteAbelianGroup G;
    std::vector<size_t> keep;  // coordinates with d[j] > 1
    for (size_t j = 0; j < ngens; ++j)
        if (d[j] != 1) {
            keep.push_back(j);
            G.inv_.push_back(d[j]);
        }
    if (gen_coords) {
        // generator i is the i-th standard basis vector; its coordinates are
        // row i of V, restricted to the kept components
        gen_coords->assign(ngens, {});
        for (size_t i = 0; i < ngens; ++i) {
            ExpVec v;
            for (size_t j : keep) v.push_back(mod_pos(snf.V[i][j], d[j]));
            (*gen_coords)[i] = std::move(v);
        }
    }
    return G;
}

Int FiniteAbelianGroup::order() const {
    Int n = 1;
    for (const Int& d : inv_) n *= d;
    return n;
}

Int FiniteAbelianGroup::exponent() const {
    Int e = 1;
    for (const Int& d : inv_) e = lcm(e, d);
    return e;
}

FiniteAbelianGroup FiniteAbelianGroup::product(
    const std::vector<const FiniteAbelianGroup*>& parts) {
    std::vector<Int> inv;
    for (const auto* g : parts)
        inv.insert(inv.end(), g->invariants().begin(), g->invariants().end());
    return FiniteAbelianGroup(inv);
}

ExpVec FiniteAbelianGroup::reduce(ExpVec x) const {
    if (x.size() != inv_.size()) throw std::invalid_argument("element rank mismatch");
    for (size_t i = 0; i < x.size(); ++i) x[i] = mod_pos(x[i], inv_[i]);
    return x;
}

ExpVec FiniteAbelianGroup::add(const ExpVec& x, const ExpVec& y) const {
    ExpVec z = x;
    for (size_t i = 0; i < z.size(); ++i) z[i] += y[i];
    return reduce(std::move(z));
}

ExpVec FiniteAbelianGroup::sub(const ExpVec& x, const ExpVec& y) const {
    ExpVec z = x;
    for (size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
    return reduce(std::move(z));
}

ExpVec FiniteAbelianGroup::neg(const ExpVec& x) const { return sub(zero(), x); }

ExpVec FiniteAbelianGroup::mul(const ExpVec& x, const Int& n) const {
    ExpVec z = x;
    for (auto& c : z) c *= n;
    return reduce(std::move(z));
}

bool FiniteAbelianGroup::is_zero(const ExpVec& x) const {
    for (size_t i = 0; i < x.size(); ++i)
        if (mod_pos(x[i], inv_[i]) != 0) return false;
    return true;
}

Int FiniteAbelianGroup::element_order(const ExpVec& x) const {
    Int o = 1;
    for (size_t i = 0; i < x.size(); ++i) o = lcm(o, inv_[i] / gcd(x[i], inv_[i]));
    return o;
}

std::vector<ExpVec> FiniteAbelianGroup::elements() const {
    std::vector<ExpVec> out{zero()};
    for (size_t i = 0; i < inv_.size(); ++i) {
        std::vector<ExpVec> next;
        next.reserve(out.size() * inv_[i].get_ui());
        for (Int e = 0; e < inv_[i]; ++e)
            for (ExpVec v : out) {
                v[i] = e;
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

FiniteAbelianGroup FiniteAbelianGroup::p_quotient(const Int& p) const {
    std::vector<Int> inv;
    for (const Int& d : inv_) {
        Int q = pow_int(p, valuation(d, p));
        if (q != 1) inv.push_back(q);
    }
    return FiniteAbelianGroup(inv);
}

ExpVec FiniteAbelianGroup::p_project(const Int& p, const ExpVec& x) const {
    ExpVec out;
    for (size_t i = 0; i < inv_.size(); ++i) {
        Int q = pow_int(p, valuation(inv_[i], p));
        if (q != 1) out.push_back(mod_pos(x[i], q));
    }
    return out;
}

ExpVec GroupHom::apply(const ExpVec& x) const {
    ExpVec out = cod.zero();
    for (size_t i = 0; i < images.size(); ++i) out = cod.add(out, cod.mul(images[i], x[i]));
    return out;
}

bool GroupHom::is_well_defined() const {
    for (size_t i = 0; i < images.size(); ++i)
        if (!cod.is_zero(cod.mul(images[i], dom.invariants()[i]))) return false;
    return true;
}

bool GroupHom::is_surjective() const {
    // cokernel: quotient of cod by the images and the cod relations
    std::vector<ExpVec> rels;
    for (const auto& im : images) rels.push_back(im);
    for (size_t j = 0; j < cod.rank(); ++j) {
        ExpVec r = cod.zero();
        r[j] = cod.invariants()[j];
        rels.push_back(r);
    }
    return FiniteAbelianGroup::from_relations(cod.rank(), rels).is_trivial();
}

std::optional<ExpVec> GroupHom::preimage(const ExpVec& y) const {
    // solve sum x_i * images[i] + cod-relations * k = y over Z
    size_t r = cod.rank(), n = dom.rank();
    std::vector<std::vector<Int>> A(r, std::vector<Int>(n + r, Int(0)));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < n; ++j) A[i][j] = images[j][i];
        A[i][n + i] = cod.invariants()[i];
    }
    auto sol = solve_linear_integer(A, y);
    if (!sol) return std::nullopt;
    return dom.reduce(ExpVec(sol->begin(), sol->begin() + n));
}

GroupCharacter::GroupCharacter(FiniteAbelianGroup G, std::vector<Int> exps)
    : G_(std::move(G)), e_(std::move(exps)) {
    if (e_.size() != G_.rank()) throw std::invalid_argument("character rank mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] = mod_pos(e_[i], G_.invariants()[i]);
}

bool GroupCharacter::is_trivial() const {
    for (const Int& e : e_)
        if (e != 0) return false;
    return true;
}

Int GroupCharacter::order() const {
    Int o = 1;
    for (size_t i = 0; i < e_.size(); ++i) {
        const Int& d = G_.invariants()[i];
        o = lcm(o, d / gcd(e_[i], d));
    }
    return o;
}

long GroupCharacter::value_conductor() const { return static_cast<long>(G_.exponent().get_si()); }

long GroupCharacter::value_exponent(const ExpVec& x) const {
    if (x.size() != G_.rank()) throw std::invalid_argument("element rank mismatch");
    Int M = G_.exponent();
    Int s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += e_[i] * x[i] * (M / G_.invariants()[i]);
    return static_cast<long>(mod_pos(s, M).get_si());
}

CycInt GroupCharacter::value(const ExpVec& x) const {
    return CycInt::zeta(value_conductor(), value_exponent(x));
}

GroupCharacter GroupCharacter::pow(const Int& n) const {
    std::vector<Int> e = e_;
    for (auto& c : e) c *= n;
    return GroupCharacter(G_, e);
}

GroupCharacter GroupCharacter::operator*(const GroupCharacter& o) const {
    if (G_ != o.G_) throw std::invalid_argument("characters of different groups");
    std::vector<Int> e = e_;
    for (size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
    return GroupCharacter(G_, e);
}

bool GroupCharacter::operator==(const GroupCharacter& o) const {
    return G_ == o.G_ && e_ == o.e_;
}

std::vector<GroupCharacter> GroupCharacter::all(const FiniteAbelianGroup& G) {
    std::vector<GroupCharacter> out;
    for (const ExpVec& e : G.elements()) out.emplace_back(G, e);
    return out;
}

}  // namespace actheta
