#include "actheta/iwasawa.hpp"

#include "actheta/heckechar.hpp"

#include <stdexcept>

namespace actheta {

GroupRing::GroupRing(FiniteAbelianGroup G, long p, int prec)
    : G_(std::move(G)), p_(p), prec_(prec) {
    if (p < 3) throw std::invalid_argument("GroupRing: p must be odd");
}

PadicNum GroupRing::scalar(const Int& a, const Int& b) const {
    return PadicNum(p_, prec_, a, b);
}

void GroupRing::strip(GrElem& x) const {
    for (auto it = x.c.begin(); it != x.c.end();)
        it = (it->second == scalar(Int(0))) ? x.c.erase(it) : std::next(it);
}

GrElem GroupRing::one() const { return gen(G_.zero()); }

GrElem GroupRing::gen(const ExpVec& g) const { return term(g, scalar(Int(1))); }

GrElem GroupRing::term(const ExpVec& g, const PadicNum& a) const {
    GrElem x;
    if (!(a == scalar(Int(0)))) x.c.emplace(G_.reduce(g), a);
    return x;
}

GrElem GroupRing::add(const GrElem& x, const GrElem& y) const {
    GrElem out = x;
    for (const auto& [g, a] : y.c) {
        auto it = out.c.find(g);
        if (it == out.c.end())
            out.c.emplace(g, a);
        else
            it->second = it->second + a;
    }
    strip(out);
    return out;
}

GrElem GroupRing::sub(const GrElem& x, const GrElem& y) const {
    return add(x, scale(scalar(Int(-1)), y));
}

GrElem GroupRing::mul(const GrElem& x, const GrElem& y) const {
    GrElem out;
    for (const auto& [g, a] : x.c)
        for (const auto& [h, b] : y.c) {
            ExpVec k = G_.add(g, h);
            PadicNum v = a * b;
            auto it = out.c.find(k);
            if (it == out.c.end())
                out.c.emplace(std::move(k), v);
            else
                it->second = it->second + v;
        }
    strip(out);
    return out;
}

GrElem GroupRing::scale(const PadicNum& a, const GrElem& x) const {
    GrElem out;
    for (const auto& [g, v] : x.c) out.c.emplace(g, a * v);
    strip(out);
    return out;
}

bool GroupRing::equal(const GrElem& x, const GrElem& y) const {
    GrElem d = sub(x, y);
    return d.c.empty();
}

PadicNum GroupRing::augment(const GrElem& x) const {
    PadicNum acc = scalar(Int(0));
    for (const auto& [g, a] : x.c) acc = acc + a;
    return acc;
}

PadicNum GroupRing::eval_fn(const GrElem& x,
                            const std::function<PadicNum(const ExpVec&)>& chi) const {
    PadicNum acc = scalar(Int(0));
    for (const auto& [g, a] : x.c) acc = acc + a * chi(g);
    return acc;
}

// --- cyclotomic layer ---

namespace {

long pow_l(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// reduce a coefficient vector of length p^s to the power basis of length
// phi(p^s) using zeta^{e} = -sum_{j=1}^{p-1} zeta^{e - j p^{s-1}}
std::vector<PadicNum> reduce_cyc(long p, long s, std::vector<PadicNum> v) {
    if (s == 0) return v;
    long ps = pow_l(p, s), phi = ps - ps / p, step = ps / p;
    v.resize(ps, v[0] - v[0]);
    for (long e = ps - 1; e >= phi; --e) {
        PadicNum c = v[e];
        v[e] = c - c;
        for (long j = 1; j < p; ++j) v[e - j * step] = v[e - j * step] - c;
    }
    v.resize(phi);
    return v;
}

}  // namespace

PadicCyc PadicCyc::from_scalar(const PadicNum& a, long s) {
    PadicCyc out;
    out.p = a.p();
    out.s = s;
    long ps = pow_l(out.p, s);
    out.comp.assign(s == 0 ? 1 : ps - ps / out.p, a - a);
    out.comp[0] = a;
    return out;
}

PadicCyc PadicCyc::zeta_power(long p, int prec, long s, long e) {
    PadicCyc out;
    out.p = p;
    out.s = s;
    long ps = pow_l(p, s);
    PadicNum zero(p, prec, Int(0), Int(0));
    std::vector<PadicNum> v(s == 0 ? 1 : ps, zero);
    v[((e % ps) + ps) % ps] = PadicNum(p, prec, Int(1), Int(0));
    out.comp = reduce_cyc(p, s, std::move(v));
    return out;
}

PadicCyc PadicCyc::add(const PadicCyc& o) const {
    if (s != o.s || p != o.p) throw std::invalid_argument("PadicCyc::add: layer mismatch");
    PadicCyc out = *this;
    for (size_t i = 0; i < comp.size(); ++i) out.comp[i] = comp[i] + o.comp[i];
    return out;
}

PadicCyc PadicCyc::mul(const PadicCyc& o) const {
    if (s != o.s || p != o.p) throw std::invalid_argument("PadicCyc::mul: layer mismatch");
    PadicCyc out;
    out.p = p;
    out.s = s;
    PadicNum zero = comp[0] - comp[0];
    std::vector<PadicNum> v(2 * comp.size(), zero);
    for (size_t i = 0; i < comp.size(); ++i)
        for (size_t j = 0; j < o.comp.size(); ++j) v[i + j] = v[i + j] + comp[i] * o.comp[j];
    if (s == 0) {
        v.resize(1);
        out.comp = std::move(v);
        return out;
    }
    // fold exponents >= p^s, then reduce into the power basis
    long ps = pow_l(p, s);
    std::vector<PadicNum> w(ps, zero);
    for (size_t i = 0; i < v.size(); ++i) w[i % ps] = w[i % ps] + v[i];
    out.comp = reduce_cyc(p, s, std::move(w));
    return out;
}

PadicCyc PadicCyc::galois(long t) const {
    if (s == 0) return *this;
    long ps = pow_l(p, s);
    if (((t % p) + p) % p == 0) throw std::invalid_argument("PadicCyc::galois: t not coprime to p");
    PadicNum zero = comp[0] - comp[0];
    std::vector<PadicNum> v(ps, zero);
    for (size_t e = 0; e < comp.size(); ++e) {
        long idx = (long)((((long)e * t) % ps + ps) % ps);
        v[idx] = v[idx] + comp[e];
    }
    PadicCyc out;
    out.p = p;
    out.s = s;
    out.comp = reduce_cyc(p, s, std::move(v));
    return out;
}

PadicNum PadicCyc::norm_scalar() const {
    if (s == 0) return comp[0];
    long ps = pow_l(p, s);
    PadicCyc acc = *this;
    for (long t = 2; t < ps; ++t) {
        if (t % p == 0) continue;
        acc = acc.mul(galois(t));
    }
    return acc.comp[0];
}

bool PadicCyc::operator==(const PadicCyc& o) const {
    if (s != o.s || p != o.p || comp.size() != o.comp.size()) return false;
    for (size_t i = 0; i < comp.size(); ++i)
        if (comp[i] != o.comp[i]) return false;
    return true;
}

PadicCyc eval_char(const GroupRing& R, const GrElem& x, const GroupCharacter& chi) {
    if (chi.group() != R.group()) throw std::invalid_argument("eval_char: group mismatch");
    long p = R.p();
    long M = chi.value_conductor();
    long s = 0, mt = M;
    while (mt % p == 0) {
        mt /= p;
        ++s;
    }
    long ps = M / mt;
    if ((p * p - 1) % mt != 0)
        throw std::invalid_argument("eval_char: tame value order does not divide p^2-1");
    // CRT exponent split zeta_M^k = zeta_mt^{k/p^s} zeta_{p^s}^{k/mt}
    Int inv_ps(0), inv_mt(0);
    if (mt > 1) {
        if (mpz_invert(inv_ps.get_mpz_t(), Int(ps).get_mpz_t(), Int(mt).get_mpz_t()) == 0)
            throw std::logic_error("eval_char: no inverse");
    }
    if (ps > 1) {
        if (mpz_invert(inv_mt.get_mpz_t(), Int(mt).get_mpz_t(), Int(ps).get_mpz_t()) == 0)
            throw std::logic_error("eval_char: no inverse");
    }
    PadicCyc acc = PadicCyc::from_scalar(R.scalar(Int(0)), s);
    for (const auto& [g, c] : x.c) {
        long k = chi.value_exponent(g);
        long kt = mt == 1 ? 0 : Int(mod_pos(Int(k) * inv_ps, Int(mt))).get_si();
        long kw = ps == 1 ? 0 : Int(mod_pos(Int(k) * inv_mt, Int(ps))).get_si();
        PadicNum tame = mt == 1 ? R.scalar(Int(1))
                                : padic_root_of_unity(p, R.prec(), RootOfUnity::make(mt, kt));
        PadicCyc t = PadicCyc::from_scalar(c * tame, s);
        acc = acc.add(t.mul(PadicCyc::zeta_power(p, R.prec(), s, kw)));
    }
    return acc;
}

GrElem twist_by(const GroupRing& R, const std::function<PadicNum(const ExpVec&)>& alpha,
                const GrElem& x) {
    GrElem out;
    for (const auto& [g, c] : x.c) out = R.add(out, R.term(g, c * alpha(g)));
    return out;
}

GrElem push_ring(const GroupRing& src, const GroupRing& dst, const GroupHom& h,
                 const GrElem& x) {
    if (h.dom != src.group() || h.cod != dst.group())
        throw std::invalid_argument("push_ring: homomorphism does not match the rings");
    GrElem out;
    for (const auto& [g, c] : x.c) out = dst.add(out, dst.term(h.apply(g), c));
    return out;
}

GrElem sigma_auto(const GroupRing& R2, long rank1, const GrElem& x) {
    const FiniteAbelianGroup& G = R2.group();
    if (G.exponent() % 2 == 0)
        throw std::invalid_argument("sigma_auto: group order must be odd");
    Int half = (G.exponent() + 1) / 2;
    GrElem out;
    for (const auto& [gd, c] : x.c) {
        ExpVec g(gd.begin(), gd.begin() + rank1), d(gd.begin() + rank1, gd.end());
        ExpVec first, second;
        for (size_t i = 0; i < g.size(); ++i) {
            first.push_back((g[i] + d[i]) * half);
            second.push_back((g[i] - d[i]) * half);
        }
        first.insert(first.end(), second.begin(), second.end());
        out = R2.add(out, R2.term(first, c));
    }
    return out;
}

AnticycModel make_anticyc_model(const FiniteAbelianGroup& H, const GroupHom& conj) {
    if (!(conj.dom == H) || !(conj.cod == H))
        throw std::invalid_argument("make_anticyc_model: conjugation must act on H");
    std::vector<ExpVec> rels;
    for (size_t i = 0; i < H.rank(); ++i) {
        ExpVec r = H.zero();
        r[i] = H.invariants()[i];
        rels.push_back(r);
        ExpVec e = H.zero();
        e[i] = 1;
        ExpVec norm = H.add(e, conj.apply(e));  // x + x^c dies in the quotient
        rels.push_back(norm);
    }
    std::vector<ExpVec> gen_coords;
    AnticycModel M;
    M.H = H;
    M.conj = conj;
    M.Gminus = FiniteAbelianGroup::from_relations(H.rank(), rels, &gen_coords);
    M.pi = GroupHom{H, M.Gminus, gen_coords};
    if (!M.pi.is_well_defined() || !M.pi.is_surjective())
        throw std::logic_error("make_anticyc_model: bad projection");
    return M;
}

GrElem tau_project(const GroupRing& RH, const AnticycModel& M, const GroupRing& RGm,
                   const GrElem& x) {
    if (!(RH.group() == M.H) || !(RGm.group() == M.Gminus))
        throw std::invalid_argument("tau_project: ring/model mismatch");
    Int e = M.H.exponent();
    if (e % 2 == 0) throw std::invalid_argument("tau_project: group order must be odd");
    Int half = (e + 1) / 2;
    GrElem out;
    for (const auto& [g, c] : x.c) {
        // gamma^{1/2} (gamma^c)^{-1/2}, then project
        ExpVec t = M.H.mul(M.H.sub(g, M.conj.apply(g)), half);
        out = RGm.add(out, RGm.term(M.pi.apply(t), c));
    }
    return out;
}

GrElem anticyc_project(const GroupRing& RHH, const AnticycModel& M, const GroupRing& RGmGm,
                       const GrElem& x) {
    GrElem s = sigma_auto(RHH, (long)M.H.rank(), x);
    GroupRing RH(M.H, RHH.p(), RHH.prec());
    GroupRing RGm(M.Gminus, RHH.p(), RHH.prec());
    GrElem out;
    for (const auto& [gd, c] : s.c) {
        ExpVec g(gd.begin(), gd.begin() + M.H.rank()), d(gd.begin() + M.H.rank(), gd.end());
        GrElem tg = tau_project(RH, M, RGm, RH.gen(g));
        GrElem td = tau_project(RH, M, RGm, RH.gen(d));
        // both images are single group-like terms
        ExpVec joint = tg.c.begin()->first;
        const ExpVec& second = td.c.begin()->first;
        joint.insert(joint.end(), second.begin(), second.end());
        out = RGmGm.add(out, RGmGm.term(joint, c));
    }
    return out;
}

}  // namespace actheta
