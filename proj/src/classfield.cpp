#include "actheta/classfield.hpp"

#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace actheta {

namespace {

QuadElem elem(long x, long y) { return {Int(x), Int(y)}; }

// concatenate coordinate vectors
ExpVec concat(const std::vector<const ExpVec*>& parts) {
    ExpVec out;
    for (const ExpVec* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

// projection-style homomorphism: each basis ideal of dom is evaluated by eval
GroupHom projection_hom(const FiniteAbelianGroup& dom, const FiniteAbelianGroup& cod,
                        const std::vector<QuadIdeal>& dom_ideals,
                        const std::function<ExpVec(const QuadIdeal&)>& eval) {
    GroupHom h;
    h.dom = dom;
    h.cod = cod;
    for (const QuadIdeal& b : dom_ideals) h.images.push_back(eval(b));
    if (!h.is_well_defined()) throw std::logic_error("projection hom not well defined");
    return h;
}

}  // namespace

std::vector<QuadElem> order_units(const QuadOrder& ord) {
    if (ord.conductor() == 1 && (ord.field_disc_abs() == 3 || ord.field_disc_abs() == 4)) {
        std::vector<QuadElem> us;
        QuadElem g = elem(2, 1), a = ord.one();
        do {
            us.push_back(a);
            a = ord.mul(a, g);
        } while (!(a == ord.one()));
        return us;
    }
    return {elem(1, 0), elem(-1, 0)};
}

GroupStructure<QuadElem> residue_unit_group(const QuadOrder& OK, const QuadIdeal& C) {
    std::vector<QuadElem> units;
    for (const QuadElem& u : C.residues()) {
        if (u.x == 0 && u.y == 0) continue;
        if (QuadIdeal::principal(OK, u).add(C).is_unit_ideal()) units.push_back(C.reduce_elem(u));
    }
    QuadElem id = C.reduce_elem(OK.one());
    auto mul = [&OK, &C](const QuadElem& a, const QuadElem& b) {
        return C.reduce_elem(OK.mul(a, b));
    };
    return abelian_structure(units, id, mul);
}

RayClassGroup::RayClassGroup(const QuadOrder& OK, const QuadIdeal& modulus, long p)
    : OK_(OK), mod_(modulus), p_(p) {
    if (OK_.conductor() != 1) throw std::invalid_argument("ray class group needs a maximal order");
    cl_ = class_group(OK_);
    Int Nmod = mod_.norm();

    // primary components of the modulus and their residue unit groups
    for (const auto& [ell, a] : factorize(Nmod)) {
        QuadIdeal C =
            mod_.add(QuadIdeal::principal(OK_, {pow_int(ell, (unsigned long)a), Int(0)}));
        components_.push_back(C);
        comp_units_.push_back(residue_unit_group(OK_, C));
    }
    size_t nc = components_.size();

    // class-group generators, represented by ideals coprime to the modulus
    size_t r = cl_.group().rank();
    for (size_t i = 0; i < r; ++i) {
        ExpVec e = cl_.group().zero();
        e[i] = 1;
        cl_reps_.push_back(cl_.representative(e, Nmod));
    }

    // CRT idempotents: eps[k] = 1 mod components_[k], 0 mod the others
    std::vector<QuadElem> eps(nc, OK_.one());
    if (nc > 1) {
        for (size_t k = 0; k < nc; ++k) {
            QuadIdeal M = QuadIdeal::unit_ideal(OK_);
            for (size_t l = 0; l < nc; ++l)
                if (l != k) M = M * components_[l];
            const QuadIdeal& C = components_[k];
            // 1 = c + m with c in C, m in M: solve in the two Hermite bases
            std::vector<std::vector<Int>> A = {{C.p(), C.q(), M.p(), M.q()},
                                               {Int(0), C.r(), Int(0), M.r()}};
            auto sol = solve_linear_integer(A, {Int(1), Int(0)});
            if (!sol) throw std::logic_error("modulus components not coprime");
            eps[k] = mod_.reduce_elem(
                {(*sol)[2] * M.p() + (*sol)[3] * M.q(), (*sol)[3] * M.r()});
        }
    }

    // residue generators lifted to global residues congruent to 1 elsewhere
    std::vector<QuadElem> gammas;
    std::vector<Int> gamma_orders;
    for (size_t k = 0; k < nc; ++k) {
        for (size_t j = 0; j < comp_units_[k].basis.size(); ++j) {
            QuadElem g = comp_units_[k].basis[j];
            QuadElem lift = OK_.add(OK_.mul(g, eps[k]), OK_.sub(OK_.one(), eps[k]));
            gammas.push_back(mod_.reduce_elem(lift));
            gamma_orders.push_back(comp_units_[k].group.invariants()[j]);
        }
    }
    size_t s = gammas.size();

    // presentation: x_i (ideal classes) and y_j (principal residue classes)
    std::vector<ExpVec> rels;
    for (size_t i = 0; i < r; ++i) {
        Int ei = cl_.group().invariants()[i];
        auto alpha = cl_reps_[i].pow(ei.get_ui()).principal_gen();
        if (!alpha) throw std::logic_error("class-group power not principal");
        std::vector<Int> dl = residue_dlog(*alpha);
        ExpVec row(r + s, Int(0));
        row[i] = ei;
        for (size_t j = 0; j < s; ++j) row[r + j] = -dl[j];
        rels.push_back(row);
    }
    for (size_t j = 0; j < s; ++j) {
        ExpVec row(r + s, Int(0));
        row[r + j] = gamma_orders[j];
        rels.push_back(row);
    }
    for (const QuadElem& u : order_units(OK_)) {
        std::vector<Int> dl = residue_dlog(u);
        ExpVec row(r + s, Int(0));
        for (size_t j = 0; j < s; ++j) row[r + j] = dl[j];
        rels.push_back(row);
    }
    Gfull_ = FiniteAbelianGroup::from_relations(r + s, rels, &gen_coords_);
    G_ = p_ ? Gfull_.p_quotient(Int(p_)) : Gfull_;

    gen_ideals_ = cl_reps_;
    for (const QuadElem& g : gammas) gen_ideals_.push_back(QuadIdeal::principal(OK_, g));

    // ideal representative for each basis vector of the published group
    size_t rr = G_.rank(), ng = r + s;
    Int m = G_.exponent();
    for (size_t i = 0; i < rr; ++i) {
        std::vector<std::vector<Int>> A(rr, std::vector<Int>(ng + rr, Int(0)));
        for (size_t a = 0; a < rr; ++a) {
            for (size_t k = 0; k < ng; ++k) A[a][k] = publish(gen_coords_[k])[a];
            A[a][ng + a] = G_.invariants()[a];
        }
        ExpVec target = G_.zero();
        target[i] = 1;
        auto sol = solve_linear_integer(A, target);
        if (!sol) throw std::logic_error("ray class basis not spanned by generators");
        QuadIdeal I = QuadIdeal::unit_ideal(OK_);
        for (size_t k = 0; k < ng; ++k) {
            Int c = mod_pos((*sol)[k], m);
            if (c != 0) I = I * gen_ideals_[k].pow(c.get_ui());
        }
        basis_ideals_.push_back(I);
    }
}

std::vector<Int> RayClassGroup::residue_dlog(const QuadElem& b) const {
    std::vector<Int> out;
    for (size_t k = 0; k < components_.size(); ++k) {
        const auto& U = comp_units_[k];
        auto it = U.coords.find(components_[k].reduce_elem(b));
        if (it == U.coords.end()) throw std::invalid_argument("element not prime to modulus");
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

ExpVec RayClassGroup::publish(const ExpVec& full) const {
    return p_ ? Gfull_.p_project(Int(p_), full) : full;
}

ExpVec RayClassGroup::full_class_of(const QuadIdeal& a) const {
    if (a.order() != OK_) throw std::invalid_argument("ideal of a different order");
    if (!a.is_coprime_to(mod_)) throw std::invalid_argument("ideal not coprime to modulus");
    size_t r = cl_.group().rank(), s = gen_ideals_.size() - r;
    ExpVec n = cl_.class_of(a);
    QuadIdeal J = a;
    std::vector<Int> m(r);
    for (size_t i = 0; i < r; ++i) {
        Int ei = cl_.group().invariants()[i];
        m[i] = mod_pos(ei - n[i], ei);
        if (m[i] != 0) J = J * cl_reps_[i].pow(m[i].get_ui());
    }
    auto beta = J.principal_gen();
    if (!beta) throw std::logic_error("expected principal ideal in ray class evaluation");
    std::vector<Int> dl = residue_dlog(*beta);
    ExpVec out = Gfull_.zero();
    for (size_t j = 0; j < s; ++j) out = Gfull_.add(out, Gfull_.mul(gen_coords_[r + j], dl[j]));
    for (size_t i = 0; i < r; ++i) out = Gfull_.sub(out, Gfull_.mul(gen_coords_[i], m[i]));
    return out;
}

ExpVec RayClassGroup::class_of(const QuadIdeal& a) const { return publish(full_class_of(a)); }

RingClassGroup::RingClassGroup(long DK, long n, long p) : On_(DK, n), p_(p) {
    cl_ = class_group(On_);
    G_ = p_ ? cl_.group().p_quotient(Int(p_)) : cl_.group();
    // lift published basis vectors into the full class group (the projection
    // keeps the coordinates of the p-power invariants unchanged)
    std::vector<size_t> pcoord;
    for (size_t i = 0; i < cl_.group().rank(); ++i)
        if (p_ == 0 || valuation(cl_.group().invariants()[i], Int(p_)) > 0) pcoord.push_back(i);
    for (size_t i = 0; i < G_.rank(); ++i) {
        ExpVec full = cl_.group().zero();
        full[pcoord[i]] = 1;
        basis_ideals_.push_back(cl_.representative(full, Int(n)));
    }
}

ExpVec RingClassGroup::class_of(const QuadIdeal& a) const {
    if (a.order() != On_) throw std::invalid_argument("ideal of a different order");
    ExpVec c = cl_.class_of(a);
    return p_ ? cl_.group().p_project(Int(p_), c) : c;
}

ExpVec RingClassGroup::class_of_field_ideal(const QuadIdeal& a) const {
    return class_of(a.contract_to(On_));
}

ExpVec frobenius(const RayClassGroup& H, const QuadIdeal& a) {
    return H.group().neg(H.class_of(a));
}

ExpVec frobenius(const RingClassGroup& H, const QuadIdeal& a_of_OK) {
    return H.group().neg(H.class_of_field_ideal(a_of_OK));
}

QuadIdeal chosen_split_prime(const QuadOrder& OK, const Int& q) {
    Splitting s = splitting(OK, q);
    if (s.kind != Splitting::Kind::Split) throw std::invalid_argument("prime is not split");
    QuadIdeal a = s.prime, b = s.prime.conj();
    return a < b ? a : b;
}

ModulusSplit split_modulus(const QuadOrder& OK, long c, long n) {
    if (std::gcd(c, n) != 1) throw std::invalid_argument("c and n must be coprime");
    ModulusSplit ms;
    ms.c = c;
    ms.n_plus = 1;
    ms.n_minus = 1;
    ms.frak_c = QuadIdeal::unit_ideal(OK);
    ms.frak_np = QuadIdeal::unit_ideal(OK);
    for (const auto& [q, e] : factorize(Int(c)))
        ms.frak_c = ms.frak_c * chosen_split_prime(OK, q).pow((unsigned long)e);
    for (const auto& [q, e] : factorize(Int(n))) {
        Splitting s = splitting(OK, q);
        if (s.kind == Splitting::Kind::Split) {
            ms.n_plus *= Int(pow_int(q, (unsigned long)e)).get_si();
            ms.frak_np = ms.frak_np * chosen_split_prime(OK, q).pow((unsigned long)e);
        } else if (s.kind == Splitting::Kind::Inert) {
            if (e != 1) throw std::invalid_argument("inert part of n must be squarefree");
            ms.n_minus *= q.get_si();
        } else {
            throw std::invalid_argument("n must be prime to the discriminant");
        }
    }
    ms.frak_c_bar = ms.frak_c.conj();
    ms.frak_np_bar = ms.frak_np.conj();
    ms.ideal_nm = QuadIdeal::principal(OK, {Int(ms.n_minus), Int(0)});
    return ms;
}

ExpVec TauIso::apply(const ExpVec& x, const ExpVec& y, const ExpVec& z) const {
    if (!verified) throw std::logic_error("tau is not bijective here");
    ExpVec t = concat({&x, &y, &z});
    auto pre = proj.preimage(t);
    if (!pre) throw std::logic_error("tau preimage failed");
    return *pre;
}

TauIso tau_iso(long DK, long c, long n, long p) {
    if (p == 0) throw std::invalid_argument("tau requires a p-quotient");
    QuadOrder OK(DK);
    ModulusSplit ms = split_modulus(OK, c, n);
    TauIso t;
    t.H1 = RayClassGroup(OK, ms.frak_c * ms.frak_np, p);
    t.H2 = RayClassGroup(OK, ms.frak_c_bar * ms.frak_np_bar, p);
    t.H3 = RayClassGroup(OK, ms.ideal_nm, p);
    t.Hcn = RayClassGroup(OK, QuadIdeal::principal(OK, {Int(c) * Int(n), Int(0)}), p);
    FiniteAbelianGroup P =
        FiniteAbelianGroup::product({&t.H1.group(), &t.H2.group(), &t.H3.group()});
    t.proj = projection_hom(t.Hcn.group(), P, t.Hcn.basis_ideals(), [&](const QuadIdeal& b) {
        ExpVec a1 = t.H1.class_of(b), a2 = t.H2.class_of(b), a3 = t.H3.class_of(b);
        return concat({&a1, &a2, &a3});
    });
    t.verified = t.proj.is_isomorphism();
    return t;
}

SigmaMap::SigmaMap(long DK, long c, long n, long p, bool conjugated)
    : DK_(DK), c_(c), n_(n), p_(p), conj_(conjugated) {
    if (p == 0) throw std::invalid_argument("sigma requires a p-quotient");
    QuadOrder OK(DK);
    ms_ = split_modulus(OK, c, n);
    QuadIdeal fs = ms_.frak_c * ms_.frak_np;  // frak-c n+
    Hm_ = RayClassGroup(OK, fs * ms_.ideal_nm, p);
    Hmbar_ = RayClassGroup(OK, fs.conj() * ms_.ideal_nm, p);
    Hfs_ = RayClassGroup(OK, fs, p);
    Hfsbar_ = RayClassGroup(OK, fs.conj(), p);
    Hnm_ = RayClassGroup(OK, ms_.ideal_nm, p);
    long cnp = c * ms_.n_plus;
    Hcnp_ = RayClassGroup(OK, QuadIdeal::principal(OK, {Int(cnp), Int(0)}), p);
    Hfull_ = RayClassGroup(OK, QuadIdeal::principal(OK, {Int(c) * Int(n), Int(0)}), p);
    Hcn_ = RingClassGroup(DK, c * n, p);

    auto pair_eval = [](const RayClassGroup& A, const RayClassGroup& B) {
        return [&A, &B](const QuadIdeal& b) {
            ExpVec u = A.class_of(b), v = B.class_of(b);
            return concat({&u, &v});
        };
    };
    m_split_ = projection_hom(Hm_.group(),
                              FiniteAbelianGroup::product({&Hfs_.group(), &Hnm_.group()}),
                              Hm_.basis_ideals(), pair_eval(Hfs_, Hnm_));
    mbar_split_ = projection_hom(Hmbar_.group(),
                                 FiniteAbelianGroup::product({&Hfsbar_.group(), &Hnm_.group()}),
                                 Hmbar_.basis_ideals(), pair_eval(Hfsbar_, Hnm_));
    tau_pair_ = projection_hom(Hcnp_.group(),
                               FiniteAbelianGroup::product({&Hfs_.group(), &Hfsbar_.group()}),
                               Hcnp_.basis_ideals(), pair_eval(Hfs_, Hfsbar_));
    full_split_ = projection_hom(Hfull_.group(),
                                 FiniteAbelianGroup::product({&Hcnp_.group(), &Hnm_.group()}),
                                 Hfull_.basis_ideals(), pair_eval(Hcnp_, Hnm_));
    to_ring_ = projection_hom(Hfull_.group(), Hcn_.group(), Hfull_.basis_ideals(),
                              [this](const QuadIdeal& b) { return Hcn_.class_of_field_ideal(b); });
    conj_hom_ = projection_hom(Hm_.group(), Hmbar_.group(), Hm_.basis_ideals(),
                               [this](const QuadIdeal& b) { return Hmbar_.class_of(b.conj()); });
    if (!m_split_.is_isomorphism() || !mbar_split_.is_isomorphism() ||
        !tau_pair_.is_isomorphism() || !full_split_.is_isomorphism())
        throw std::logic_error("sigma: a factor decomposition is not bijective at p");
}

ExpVec SigmaMap::apply(const ExpVec& x, const ExpVec& y) const {
    ExpVec yy = conj_ ? conj_hom_.apply(y) : y;
    ExpVec xs = m_split_.apply(x), ys = mbar_split_.apply(yy);
    size_t r1 = Hfs_.group().rank(), r2 = Hfsbar_.group().rank(), rn = Hnm_.group().rank();
    ExpVec x1(xs.begin(), xs.begin() + r1), a(xs.begin() + r1, xs.end());
    ExpVec y1(ys.begin(), ys.begin() + r2), b(ys.begin() + r2, ys.end());
    (void)rn;
    auto t = tau_pair_.preimage(concat({&x1, &y1}));
    if (!t) throw std::logic_error("sigma: tau preimage failed");
    ExpVec s = Hnm_.group().add(a, b);
    Int e = Hnm_.group().exponent();
    if (mpz_even_p(e.get_mpz_t())) throw std::logic_error("sigma: even exponent, no square root");
    s = Hnm_.group().mul(s, (e + 1) / 2);
    auto u = full_split_.preimage(concat({&*t, &s}));
    if (!u) throw std::logic_error("sigma: recombination failed");
    return to_ring_.apply(*u);
}

void write_ray_cache(const std::string& path, const RayClassGroup& H) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open cache file for writing");
    std::fwrite("ACRC", 1, 4, f);
    std::uint32_t ver = 1;
    std::fwrite(&ver, 4, 1, f);
    auto put_i64 = [&](std::int64_t v) { std::fwrite(&v, 8, 1, f); };
    auto put_mpz = [&](const Int& v) { mpz_out_raw(f, v.get_mpz_t()); };
    put_i64(H.field_order().field_disc_abs());
    put_i64(H.p_mode());
    put_mpz(H.modulus().p());
    put_mpz(H.modulus().q());
    put_mpz(H.modulus().r());
    put_i64((std::int64_t)H.group().rank());
    for (const Int& d : H.group().invariants()) put_mpz(d);
    put_i64((std::int64_t)H.basis_ideals().size());
    for (const QuadIdeal& I : H.basis_ideals()) {
        put_mpz(I.p());
        put_mpz(I.q());
        put_mpz(I.r());
    }
    std::fclose(f);
}

RayCache read_ray_cache(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open cache file");
    char magic[4];
    std::uint32_t ver = 0;
    if (std::fread(magic, 1, 4, f) != 4 || std::string(magic, 4) != "ACRC" ||
        std::fread(&ver, 4, 1, f) != 1 || ver != 1) {
        std::fclose(f);
        throw std::runtime_error("bad cache header");
    }
    auto get_i64 = [&]() -> std::int64_t {
        std::int64_t v = 0;
        if (std::fread(&v, 8, 1, f) != 1) throw std::runtime_error("truncated cache");
        return v;
    };
    auto get_mpz = [&]() -> Int {
        Int v;
        if (mpz_inp_raw(v.get_mpz_t(), f) == 0) throw std::runtime_error("truncated cache");
        return v;
    };
    RayCache c;
    c.DK = (long)get_i64();
    c.p = (long)get_i64();
    c.mod_p = get_mpz();
    c.mod_q = get_mpz();
    c.mod_r = get_mpz();
    std::int64_t r = get_i64();
    for (std::int64_t i = 0; i < r; ++i) c.invariants.push_back(get_mpz());
    std::int64_t nb = get_i64();
    for (std::int64_t i = 0; i < nb; ++i) c.basis_ideals.push_back({get_mpz(), get_mpz(), get_mpz()});
    std::fclose(f);
    return c;
}

}  // namespace actheta
