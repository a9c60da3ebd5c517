#include "actheta/heckechar.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace actheta {

namespace {

// convert per-basis root-of-unity values into character exponents
std::vector<Int> roots_to_exps(const FiniteAbelianGroup& G, const std::vector<RootOfUnity>& r) {
    std::vector<Int> e;
    for (size_t i = 0; i < G.rank(); ++i) {
        Int d = G.invariants()[i];
        if (d % r[i].m != 0) throw std::invalid_argument("character order does not divide");
        e.push_back(d / r[i].m * r[i].k);
    }
    return e;
}

RootOfUnity char_value(const GroupCharacter& chi, const ExpVec& x) {
    return RootOfUnity::make(chi.value_conductor(), chi.value_exponent(x));
}

}  // namespace

RootOfUnity RootOfUnity::make(long mm, long kk) {
    if (mm <= 0) throw std::invalid_argument("root order must be positive");
    kk %= mm;
    if (kk < 0) kk += mm;
    long g = std::gcd(kk, mm);
    if (kk == 0) return {1, 0};
    return {mm / g, kk / g};
}

RootOfUnity RootOfUnity::mul(const RootOfUnity& o) const {
    long L = std::lcm(m, o.m);
    return make(L, k * (L / m) + o.k * (L / o.m));
}

RootOfUnity RootOfUnity::pow(long e) const {
    long r = (k * (e % m)) % m;
    return make(m, r);
}

RootOfUnity unit_as_root(const QuadOrder& ord, const QuadElem& u) {
    std::vector<QuadElem> us = order_units(ord);
    long w = (long)us.size();
    QuadElem g = w > 2 ? QuadElem{Int(2), Int(1)} : QuadElem{Int(-1), Int(0)};
    QuadElem acc = ord.one();
    for (long j = 0; j < w; ++j) {
        if (acc == u) return RootOfUnity::make(w, j);
        acc = ord.mul(acc, g);
    }
    throw std::invalid_argument("not a torsion unit");
}

HeckeCharacter::HeckeCharacter(const QuadOrder& K, long a, long b, const QuadIdeal& f,
                               std::vector<Int> eps_exps, std::vector<Int> branches)
    : K_(K), a_(a), b_(b), f_(f) {
    U_ = residue_unit_group(K_, f_);
    eps_ = GroupCharacter(U_.group, std::move(eps_exps));
    cl_ = class_group(K_);
    size_t r = cl_.group().rank();
    if (branches.size() != r) throw std::invalid_argument("branch count mismatch");
    for (size_t i = 0; i < r; ++i) {
        ExpVec e = cl_.group().zero();
        e[i] = 1;
        QuadIdeal A = cl_.representative(e, f_.norm());
        reps_.push_back(A);
        auto alpha = A.pow(cl_.group().invariants()[i].get_ui()).principal_gen();
        if (!alpha) throw std::logic_error("class power not principal");
        // canonical associate for determinism
        QuadElem best = *alpha;
        for (const QuadElem& u : order_units(K_)) {
            QuadElem cand = K_.mul(u, *alpha);
            if (cand < best) best = cand;
        }
        alphas_.push_back(best);
        branch_.push_back(mod_pos(branches[i], cl_.group().invariants()[i]));
    }
    // unit obstruction: psi must vanish on unit generators of principal ideals
    for (const QuadElem& u : order_units(K_)) {
        RootOfUnity v = eps_value(u).mul(unit_as_root(K_, u).pow(b_ - a_));
        if (!v.is_one()) throw std::invalid_argument("unit obstruction not satisfied");
    }
}

RootOfUnity HeckeCharacter::eps_value(const QuadElem& x) const {
    auto it = U_.coords.find(f_.reduce_elem(x));
    if (it == U_.coords.end()) throw std::invalid_argument("element not prime to conductor");
    return char_value(eps_, it->second);
}

void HeckeCharacter::canonical_associate(QuadElem& x, RootOfUnity& root, bool den_side) const {
    QuadElem best = x;
    RootOfUnity adj{1, 0};
    for (const QuadElem& u : order_units(K_)) {
        QuadElem cand = K_.mul(u, x);
        if (cand < best) {
            best = cand;
            adj = unit_as_root(K_, u).pow(den_side ? b_ - a_ : a_ - b_);
        }
    }
    x = best;
    root = root.mul(adj);
}

HeckeCharacter::Value HeckeCharacter::fold(Value v) const {
    for (size_t i = 0; i < branch_.size(); ++i) {
        Int e = cl_.group().invariants()[i];
        Int q = (v.gen_exps[i] - mod_pos(v.gen_exps[i], e)) / e;
        v.gen_exps[i] = mod_pos(v.gen_exps[i], e);
        if (q != 0) {
            long ql = q.get_si();
            v.root = v.root.mul(eps_value(alphas_[i]).pow(ql));
            if (ql > 0)
                for (long t = 0; t < ql; ++t) v.num = K_.mul(v.num, alphas_[i]);
            else
                for (long t = 0; t < -ql; ++t) v.den = K_.mul(v.den, alphas_[i]);
        }
    }
    if (a_ == 0 && b_ == 0) {
        // finite order: resolve each symbol as the canonical e-th root of eps(alpha)
        for (size_t i = 0; i < branch_.size(); ++i) {
            long n = v.gen_exps[i].get_si();
            if (n == 0) continue;
            long e = cl_.group().invariants()[i].get_si();
            RootOfUnity ea = eps_value(alphas_[i]);
            v.root = v.root.mul(RootOfUnity::make(e * ea.m, ea.k).pow(n));
            v.gen_exps[i] = 0;
        }
    }
    return v;
}

HeckeCharacter::Value HeckeCharacter::evaluate(const QuadIdeal& a) const {
    if (!a.is_coprime_to(f_)) throw std::invalid_argument("ideal not coprime to conductor");
    Value v;
    v.gen_exps = cl_.class_of(a);
    QuadIdeal J = a;
    for (size_t i = 0; i < reps_.size(); ++i) {
        Int e = cl_.group().invariants()[i];
        Int m = mod_pos(e - v.gen_exps[i], e);
        if (m != 0) {
            J = J * reps_[i].pow(m.get_ui());
            v.den = K_.mul(v.den, alphas_[i]);
            v.root = v.root.mul(eps_value(alphas_[i]).inverse());
        }
        v.root = v.root.mul(
            RootOfUnity::make(e.get_si(), Int(branch_[i] * v.gen_exps[i]).get_si()));
    }
    auto beta = J.principal_gen();
    if (!beta) throw std::logic_error("decomposition not principal");
    v.num = K_.mul(v.num, *beta);
    v.root = v.root.mul(eps_value(*beta));
    return fold(v);
}

HeckeCharacter::Value HeckeCharacter::value_one() const {
    Value v;
    v.gen_exps = cl_.group().zero();
    return v;
}

HeckeCharacter::Value HeckeCharacter::value_mul(const Value& v, const Value& w) const {
    Value out;
    out.root = v.root.mul(w.root);
    out.num = K_.mul(v.num, w.num);
    out.den = K_.mul(v.den, w.den);
    out.gen_exps = v.gen_exps;
    for (size_t i = 0; i < out.gen_exps.size(); ++i) out.gen_exps[i] += w.gen_exps[i];
    return fold(out);
}

bool HeckeCharacter::value_equal(const Value& v0, const Value& w0) const {
    Value v = fold(v0), w = fold(w0);
    if (v.gen_exps != w.gen_exps) return false;
    if (a_ == 0 && b_ == 0) return v.root == w.root;
    QuadElem x1 = K_.mul(v.num, w.den), x2 = K_.mul(w.num, v.den);
    RootOfUnity r1 = v.root, r2 = w.root;
    canonical_associate(x1, r1, false);
    canonical_associate(x2, r2, false);
    return x1 == x2 && r1 == r2;
}

bool HeckeCharacter::is_trivial() const {
    if (a_ != 0 || b_ != 0 || !eps_.is_trivial()) return false;
    for (const Int& t : branch_)
        if (t != 0) return false;
    return true;
}

HeckeCharacter HeckeCharacter::conjugate() const {
    QuadIdeal fbar = f_.conj();
    GroupStructure<QuadElem> Ubar = residue_unit_group(K_, fbar);
    std::vector<RootOfUnity> vals;
    for (const QuadElem& g : Ubar.basis) vals.push_back(eps_value(K_.conj(g)));
    std::vector<Int> exps = roots_to_exps(Ubar.group, vals);
    if (reps_.empty()) return HeckeCharacter(K_, b_, a_, fbar, std::move(exps), {});
    if (a_ != 0 || b_ != 0)
        throw std::logic_error("conjugation with class symbols needs finite order");
    // finite-order part: solve the branch of the conjugate from psi(conj rep)
    HeckeCharacter out(K_, b_, a_, fbar, exps, std::vector<Int>(reps_.size(), Int(0)));
    for (size_t i = 0; i < reps_.size(); ++i) {
        long e = cl_.group().invariants()[i].get_si();
        Value want = evaluate(out.reps_[i].conj());  // psi^c(rep) as a pure root
        Value have = out.evaluate(out.reps_[i]);
        RootOfUnity ratio = want.root.mul(have.root.inverse());
        if (e % ratio.m != 0) throw std::logic_error("conjugate branch not solvable");
        out.branch_[i] = Int(e / ratio.m * ratio.k);
    }
    return out;
}

HeckeCharacter HeckeCharacter::inverse() const {
    std::vector<Int> exps;
    for (size_t i = 0; i < U_.group.rank(); ++i)
        exps.push_back(mod_pos(-eps_.exponents()[i], U_.group.invariants()[i]));
    std::vector<Int> br;
    for (size_t i = 0; i < branch_.size(); ++i)
        br.push_back(mod_pos(-branch_[i], cl_.group().invariants()[i]));
    return HeckeCharacter(K_, -a_, -b_, f_, std::move(exps), std::move(br));
}

HeckeCharacter HeckeCharacter::norm_twist(long t) const {
    return HeckeCharacter(K_, a_ + t, b_ + t, f_, eps_.exponents(), branch_);
}

HeckeCharacter HeckeCharacter::product(const HeckeCharacter& o) const {
    if (K_ != o.K_) throw std::invalid_argument("different fields");
    if (!reps_.empty() && f_ != o.f_)
        throw std::invalid_argument("products with class symbols need equal conductors");
    if (f_ == o.f_) {
        std::vector<Int> exps;
        for (size_t i = 0; i < U_.group.rank(); ++i)
            exps.push_back((eps_.exponents()[i] + o.eps_.exponents()[i]) % U_.group.invariants()[i]);
        std::vector<Int> br;
        for (size_t i = 0; i < branch_.size(); ++i)
            br.push_back((branch_[i] + o.branch_[i]) % cl_.group().invariants()[i]);
        return HeckeCharacter(K_, a_ + o.a_, b_ + o.b_, f_, std::move(exps), std::move(br));
    }
    QuadIdeal m = ideal_lcm(f_, o.f_);
    GroupStructure<QuadElem> Um = residue_unit_group(K_, m);
    std::vector<RootOfUnity> vals;
    for (const QuadElem& g : Um.basis) vals.push_back(eps_value(g).mul(o.eps_value(g)));
    return HeckeCharacter(K_, a_ + o.a_, b_ + o.b_, m, roots_to_exps(Um.group, vals), {});
}

std::string HeckeCharacter::serialize() const {
    std::ostringstream os;
    os << "HECKE 1\n";
    os << "field " << K_.field_disc_abs() << "\n";
    os << "type " << a_ << " " << b_ << "\n";
    os << "conductor " << f_.p() << " " << f_.q() << " " << f_.r() << "\n";
    os << "valcond " << eps_.value_conductor() << "\n";
    os << "eps";
    for (const Int& e : eps_.exponents()) os << " " << e;
    os << "\nbranch";
    for (const Int& t : branch_) os << " " << t;
    os << "\n";
    return os.str();
}

HeckeCharacter parse_character(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    long ver;
    is >> tok >> ver;
    if (tok != "HECKE" || ver != 1) throw std::invalid_argument("bad character header");
    long DK, a, b, valcond;
    Int p, q, r;
    is >> tok >> DK >> tok >> a >> b >> tok >> p >> q >> r >> tok >> valcond;
    QuadOrder K(DK);
    QuadIdeal f(K, {{p, Int(0)}, {q, r}});
    is >> tok;  // "eps"
    std::vector<Int> eps(residue_unit_group(K, f).group.rank()),
        br(class_group(K).group().rank());
    for (Int& e : eps) is >> e;
    is >> tok;  // "branch"
    for (Int& t : br) is >> t;
    HeckeCharacter out(K, a, b, f, std::move(eps), std::move(br));
    if (out.eps().value_conductor() != valcond) throw std::invalid_argument("value conductor mismatch");
    return out;
}

std::vector<HeckeCharacter> enumerate_characters(const QuadOrder& K, long a, long b,
                                                 const QuadIdeal& f) {
    GroupStructure<QuadElem> U = residue_unit_group(K, f);
    ClassGroup cl = class_group(K);
    std::vector<HeckeCharacter> out;
    for (const GroupCharacter& eps : GroupCharacter::all(U.group)) {
        // branch tuples over the class-group invariants
        std::vector<Int> br(cl.group().rank(), Int(0));
        while (true) {
            try {
                out.emplace_back(K, a, b, f, eps.exponents(), br);
            } catch (const std::invalid_argument&) {
                break;  // unit obstruction fails for eps regardless of branch
            }
            size_t i = 0;
            for (; i < br.size(); ++i) {
                br[i] += 1;
                if (br[i] < cl.group().invariants()[i]) break;
                br[i] = 0;
            }
            if (i == br.size()) break;
        }
    }
    return out;
}

QuadIdeal ideal_lcm(const QuadIdeal& a, const QuadIdeal& b) {
    // lattice intersection: solve B_a x = B_b y
    std::vector<std::vector<Int>> M = {{a.p(), a.q(), -b.p(), -b.q()},
                                       {Int(0), a.r(), Int(0), -b.r()}};
    SmithResult s = smith_normal_form(M);
    std::vector<QuadElem> gens;
    for (size_t j = 0; j < 4; ++j) {
        bool in_kernel = j >= 2 || s.D[j][j] == 0;
        if (!in_kernel) continue;
        Int x0 = s.V[0][j], x1 = s.V[1][j];
        gens.push_back({a.p() * x0 + a.q() * x1, a.r() * x1});
    }
    return QuadIdeal(a.order(), gens);
}

// --- p-adic machinery ---

PadicNum padic_sqrt(const PadicNum& x) {
    if (x.degree() != 1 || x.p() % 2 == 0) throw std::invalid_argument("padic_sqrt: bad input");
    long p = x.p();
    Int a0 = mod_pos(x.a(), Int(p));
    long r0 = -1;
    for (long r = 1; r < p; ++r)
        if (mod_pos(Int(r) * r - a0, Int(p)) == 0) {
            r0 = r;
            break;
        }
    if (r0 < 0) throw std::invalid_argument("padic_sqrt: not a square");
    PadicNum r(p, x.precision(), Int(r0));
    PadicNum half = PadicNum(p, x.precision(), Int(2)).inverse();
    for (int i = 0; i < x.precision() + 2; ++i) r = (r + x * r.inverse()) * half;
    if (mod_pos(r.a(), Int(p)) > Int(p) / 2) r = -r;
    return r;
}

PadicNum embed_quad(const QuadOrder& OK, const QuadElem& x, long p, int prec) {
    if (OK.conductor() != 1) throw std::invalid_argument("embed_quad: maximal order only");
    Int D = OK.disc();
    long u = PadicNum::quadratic_nonresidue(p);
    PadicNum Du = PadicNum(p, prec, D) * PadicNum(p, prec, Int(u)).inverse();
    PadicNum t = padic_sqrt(Du);
    // sqrt(D) = t*w with w^2 = u; w_K = (D + sqrt(D))/2
    PadicNum sqrtD(p, prec, Int(0), t.a());
    PadicNum half = PadicNum(p, prec, Int(2), Int(0)).inverse();
    PadicNum wK = (PadicNum(p, prec, D, Int(0)) + sqrtD) * half;
    return PadicNum(p, prec, x.x, Int(0)) + PadicNum(p, prec, x.y, Int(0)) * wK;
}

PadicNum teichmuller_generator(long p, int prec) {
    long order = p * p - 1;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b) {
            if (a == 0 && b == 0) continue;
            PadicNum T = PadicNum(p, prec, Int(a), Int(b)).teichmuller();
            PadicNum acc = T.truncate(1);
            long o = 1;
            PadicNum one(p, 1, Int(1), Int(0));
            while (acc != one) acc *= T.truncate(1), ++o;
            if (o == order) return T;
        }
    throw std::logic_error("no generator found");
}

namespace {
long teich_dlog(const PadicNum& T, const PadicNum& y) {
    PadicNum acc(T.p(), 1, Int(1), Int(0));
    PadicNum t1 = T.truncate(1), y1 = y.truncate(1);
    long order = T.p() * T.p() - 1;
    for (long j = 0; j < order; ++j) {
        if (acc == y1) return j;
        acc *= t1;
    }
    throw std::invalid_argument("dlog: not in the torsion group");
}
}  // namespace

PadicNum padic_root_of_unity(long p, int prec, const RootOfUnity& z) {
    long order = p * p - 1;
    if (order % z.m != 0) throw std::invalid_argument("root order not in mu_{p^2-1}");
    return teichmuller_generator(p, prec).pow(Int(order / z.m) * z.k);
}

PadicNum avatar_value(const HeckeCharacter& psi, long p, int prec, const QuadIdeal& a) {
    const QuadOrder& K = psi.field();
    if (!a.is_coprime_to_int(Int(p))) throw std::invalid_argument("ideal not coprime to p");
    HeckeCharacter::Value v = psi.evaluate(a);
    auto mono = [&](const QuadElem& x) {
        PadicNum ix = embed_quad(K, x, p, prec);
        return ix.pow(Int(-psi.type_a())) * ix.frobenius().pow(Int(-psi.type_b()));
    };
    PadicNum out = padic_root_of_unity(p, prec, v.root) * mono(v.num) * mono(v.den).inverse();
    if (!v.gen_exps.empty()) {
        PadicNum T = teichmuller_generator(p, prec);
        long order = p * p - 1;
        for (size_t i = 0; i < v.gen_exps.size(); ++i) {
            long n = v.gen_exps[i].get_si();
            if (n == 0) continue;
            long e = class_group(K).group().invariants()[i].get_si();
            // canonical e-th root of V = eps(alpha_i) * mono(alpha_i)
            const QuadElem& al = psi.class_alphas()[i];
            PadicNum V = padic_root_of_unity(p, prec, psi.eps_value(al)) * mono(al);
            long m = teich_dlog(T, V.teichmuller());
            long g = std::gcd((long)e, order);
            if (m % g != 0) throw std::invalid_argument("avatar branch not in Z_{p^2}");
            Int einv, dummy;
            Int eg(e / g), og(order / g);
            mpz_invert(einv.get_mpz_t(), eg.get_mpz_t(), og.get_mpz_t());
            long x0 = Int(mod_pos(Int(m / g) * einv, og)).get_si();
            Int pe = pow_int(Int(p), prec);
            Int ei;
            if (mpz_invert(ei.get_mpz_t(), Int(e).get_mpz_t(), pe.get_mpz_t()) == 0)
                throw std::invalid_argument("wild branch unsupported");
            PadicNum s = T.pow(Int(x0)) * V.one_unit_part().pow(ei);
            out *= s.pow(Int(n));
        }
    }
    return out;
}

HeckeCharacter build_psi0(long DK, long p) {
    QuadOrder K(DK);
    if (splitting(K, Int(p)).kind != Splitting::Inert)
        throw std::invalid_argument("p must be inert");
    if (class_group(K).h() % p == 0) throw std::invalid_argument("p divides the class number");
    QuadIdeal f = QuadIdeal::principal(K, {Int(p), Int(0)});
    GroupStructure<QuadElem> U = residue_unit_group(K, f);
    if (U.group.rank() != 1 || U.group.invariants()[0] != p * (Int(p)) - 1)
        throw std::logic_error("(O/p)^x not cyclic of order p^2-1");
    int prec = 3;
    PadicNum T = teichmuller_generator(p, prec);
    long m = teich_dlog(T, embed_quad(K, U.basis[0], p, prec).teichmuller());
    long M = p * p - 1;
    std::vector<Int> eps_exps{Int(mod_pos(Int(-m), Int(M)))};
    std::vector<Int> br(class_group(K).group().rank(), Int(0));
    // choose branches so the avatar is principal-unit valued on every class
    for (size_t i = 0; i < br.size(); ++i) {
        long e = class_group(K).group().invariants()[i].get_si();
        long found = -1;
        for (long t = 0; t < e; ++t) {
            br[i] = t;
            HeckeCharacter cand(K, -1, 0, f, eps_exps, br);
            PadicNum val = avatar_value(cand, p, prec, cand.class_reps()[i]);
            if (val.teichmuller() == PadicNum(p, prec, Int(1), Int(0))) {
                found = t;
                break;
            }
        }
        if (found < 0) throw std::logic_error("no principal-unit branch");
        br[i] = found;
    }
    return HeckeCharacter(K, -1, 0, f, eps_exps, br);
}

// --- anticyclotomic splitting ---

AnticycLevel anticyc_quotient(long DK, long c, long p, int n) {
    AnticycLevel L;
    L.DK = DK;
    L.c = c;
    L.p = p;
    L.n = n;
    QuadOrder OK(DK);
    Int mod = Int(c) * pow_int(Int(p), (unsigned long)n);
    L.H = RayClassGroup(OK, QuadIdeal::principal(OK, {mod, Int(0)}), 0);
    size_t r = L.H.group().rank();
    std::vector<ExpVec> rels;
    for (size_t i = 0; i < r; ++i) {
        ExpVec row = L.H.group().zero();
        row[i] = L.H.group().invariants()[i];
        rels.push_back(row);
        rels.push_back(L.H.group().add(L.H.class_of(L.H.basis_ideals()[i]),
                                       L.H.class_of(L.H.basis_ideals()[i].conj())));
    }
    std::vector<ExpVec> gc;
    L.G = FiniteAbelianGroup::from_relations(r, rels, &gc);
    L.pi = GroupHom{L.H.group(), L.G, gc};
    // tame / wild pieces
    std::vector<Int> ti;
    size_t wild_rank = 0;
    Int wild_inv = 1;
    for (const Int& d : L.G.invariants()) {
        Int pp = pow_int(Int(p), valuation(d, Int(p)));
        if (d / pp > 1) ti.push_back(d / pp);
        if (pp > 1) ++wild_rank, wild_inv = pp;
    }
    if (wild_rank > 1) throw std::logic_error("wild part not cyclic");
    L.tame = FiniteAbelianGroup(ti);
    L.wild = wild_rank ? FiniteAbelianGroup({wild_inv}) : FiniteAbelianGroup();
    return L;
}

ExpVec AnticycLevel::tame_part(const ExpVec& x) const {
    ExpVec out;
    for (size_t i = 0; i < G.rank(); ++i) {
        Int d = G.invariants()[i];
        Int pp = pow_int(Int(p), valuation(d, Int(p)));
        if (d / pp > 1) out.push_back(mod_pos(x[i], d / pp));
    }
    return out;
}

ExpVec AnticycLevel::wild_part(const ExpVec& x) const { return G.p_project(Int(p), x); }

AnticycSplit split_anticyclotomic(const AnticycLevel& L, const GroupCharacter& chi) {
    if (chi.group() != L.H.group()) throw std::invalid_argument("character of the wrong group");
    // induce chi on G through preimages; then verify the factorization
    std::vector<RootOfUnity> vals;
    for (size_t j = 0; j < L.G.rank(); ++j) {
        ExpVec e = L.G.zero();
        e[j] = 1;
        auto pre = L.pi.preimage(e);
        if (!pre) throw std::logic_error("pi not surjective");
        RootOfUnity r = char_value(chi, *pre);
        if (L.G.invariants()[j] % r.m != 0) throw std::invalid_argument("not anticyclotomic");
        vals.push_back(r);
    }
    GroupCharacter chiG(L.G, roots_to_exps(L.G, vals));
    for (size_t i = 0; i < L.H.group().rank(); ++i) {
        ExpVec b = L.H.group().zero();
        b[i] = 1;
        if (char_value(chiG, L.pi.apply(b)) != char_value(chi, b))
            throw std::invalid_argument("not anticyclotomic");
    }
    // CRT split of each exponent: x = x_t * p^v + x_w * q mod d
    AnticycSplit s;
    std::vector<Int> texp;
    s.pn = L.wild.is_trivial() ? Int(1) : L.wild.invariants()[0];
    s.wild_exp = 0;
    for (size_t i = 0; i < L.G.rank(); ++i) {
        Int d = L.G.invariants()[i];
        Int pp = pow_int(Int(L.p), valuation(d, Int(L.p)));
        Int q = d / pp, x = chiG.exponents()[i];
        if (q > 1) {
            Int inv;
            mpz_invert(inv.get_mpz_t(), pp.get_mpz_t(), q.get_mpz_t());
            texp.push_back(mod_pos(x * inv, q));
        }
        if (pp > 1) {
            Int inv;
            mpz_invert(inv.get_mpz_t(), q.get_mpz_t(), pp.get_mpz_t());
            s.wild_exp = mod_pos(x * inv, pp);
        }
    }
    s.tame = GroupCharacter(L.tame, texp);
    return s;
}

GroupCharacter recombine(const AnticycLevel& L, const AnticycSplit& s) {
    // character of G from the CRT pieces, pulled back to H
    std::vector<Int> gexp;
    size_t it = 0;
    for (size_t i = 0; i < L.G.rank(); ++i) {
        Int d = L.G.invariants()[i];
        Int pp = pow_int(Int(L.p), valuation(d, Int(L.p)));
        Int q = d / pp;
        Int x = 0;
        if (q > 1) x += s.tame.exponents()[it++] * pp;
        if (pp > 1) x += s.wild_exp * q;
        gexp.push_back(mod_pos(x, d));
    }
    GroupCharacter chiG(L.G, gexp);
    std::vector<RootOfUnity> vals;
    for (size_t i = 0; i < L.H.group().rank(); ++i) {
        ExpVec b = L.H.group().zero();
        b[i] = 1;
        vals.push_back(char_value(chiG, L.pi.apply(b)));
    }
    return GroupCharacter(L.H.group(), roots_to_exps(L.H.group(), vals));
}

GroupCharacter anticyc_ratio(const AnticycLevel& L, const GroupCharacter& gamma) {
    std::vector<RootOfUnity> vals;
    for (size_t i = 0; i < L.H.group().rank(); ++i) {
        ExpVec b = L.H.group().zero();
        b[i] = 1;
        RootOfUnity r = char_value(gamma, b).mul(
            char_value(gamma, L.H.class_of(L.H.basis_ideals()[i].conj())).inverse());
        vals.push_back(r);
    }
    return GroupCharacter(L.H.group(), roots_to_exps(L.H.group(), vals));
}

std::optional<GroupCharacter> find_gamma(const AnticycLevel& L0, const GroupCharacter& chi_t) {
    GroupCharacter target = recombine(L0, AnticycSplit{chi_t, Int(0), Int(1)});
    for (const GroupCharacter& gamma : GroupCharacter::all(L0.H.group()))
        if (anticyc_ratio(L0, gamma) == target) return gamma;
    return std::nullopt;
}

}  // namespace actheta
