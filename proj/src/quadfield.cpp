#include "actheta/quadfield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace actheta {

namespace {

bool is_squarefree(Int n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// Hermite basis (p, 0), (q, r) of the lattice spanned by the given vectors
// (coordinates with respect to (1, w)).
void hnf2(const std::vector<QuadElem>& vecs, Int& p, Int& q, Int& r) {
    p = q = r = 0;
    // combine y-parts down to their gcd, tracking the x-part of the combination
    for (const auto& v : vecs) {
        if (v.y == 0) continue;
        if (r == 0) {
            r = v.y;
            q = v.x;
        } else {
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r.get_mpz_t(),
                       v.y.get_mpz_t());
            q = s * q + t * v.x;
            r = g;
        }
    }
    if (r < 0) {
        r = -r;
        q = -q;
    }
    for (const auto& v : vecs) {
        Int x = v.x;
        if (v.y != 0) x -= (v.y / r) * q;
        p = gcd(p, x);
    }
    if (p == 0 || r == 0) {
        p = q = r = 0;  // zero or rank-deficient lattice: only the zero ideal
        return;
    }
    q = mod_pos(q, p);
}

}  // namespace

QuadOrder::QuadOrder(long DK, long c) : DK_(DK), c_(c) {
    if (DK <= 0 || c < 1) throw std::invalid_argument("need D_K > 0 and conductor >= 1");
    Int d(-DK);
    Int m4 = mod_pos(d, Int(4));
    if (m4 != 0 && m4 != 1) throw std::invalid_argument("-D_K must be 0 or 1 mod 4");
    if (m4 == 1) {
        if (!is_squarefree(Int(DK))) throw std::invalid_argument("discriminant not fundamental");
    } else {
        Int m = d / 4;
        Int mm4 = mod_pos(m, Int(4));
        if (!is_squarefree(-m) || (mm4 != 2 && mm4 != 3))
            throw std::invalid_argument("discriminant not fundamental");
    }
    D_ = Int(c) * Int(c) * d;
}

QuadElem QuadOrder::mul(const QuadElem& a, const QuadElem& b) const {
    Int w2c = (D_ * D_ - D_) / 4;  // w^2 = D*w - w2c
    return {a.x * b.x - a.y * b.y * w2c, a.x * b.y + a.y * b.x + a.y * b.y * D_};
}

Int QuadOrder::norm(const QuadElem& a) const {
    return a.x * a.x + D_ * a.x * a.y + a.y * a.y * (D_ * D_ - D_) / 4;
}

QuadElem QuadOrder::convert_to(const QuadOrder& target, const QuadElem& a) const {
    if (target.DK_ != DK_ || c_ % target.c_ != 0)
        throw std::invalid_argument("convert_to: target must be a larger order of the same field");
    Int t(c_ / target.c_);
    return {a.x + a.y * (D_ - t * target.D_) / 2, a.y * t};
}

bool QuadForm::is_reduced() const {
    if (!(-a < b && b <= a && a <= c)) return false;
    if (a == c && b < 0) return false;
    return true;
}

QuadForm QuadForm::reduced() const {
    Int D = disc();
    QuadForm f = *this;
    Int g = gcd(gcd(f.a, f.b), f.c);
    if (g > 1) {
        f.a /= g;
        f.b /= g;
        f.c /= g;
        D = f.disc();
    }
    while (true) {
        // normalize b into (-a, a]
        Int bn = f.a - mod_pos(f.a - f.b, 2 * f.a);
        f.b = bn;
        f.c = (f.b * f.b - D) / (4 * f.a);
        if (f.a <= f.c) break;
        f = {f.c, -f.b, f.a};
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

QuadForm QuadForm::principal(const Int& D) {
    Int b = mod_pos(D, Int(2));
    return {Int(1), b, (b * b - D) / 4};
}

bool QuadForm::operator<(const QuadForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

std::vector<QuadForm> reduced_forms(const Int& D) {
    if (D >= 0 || mod_pos(D, Int(4)) > 1)
        throw std::invalid_argument("need a negative discriminant");
    std::vector<QuadForm> out;
    for (Int a = 1; 3 * a * a <= -D; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

QuadIdeal::QuadIdeal(const QuadOrder& ord, const std::vector<QuadElem>& gens) : ord_(ord) {
    std::vector<QuadElem> vecs;
    for (const auto& g : gens) {
        vecs.push_back(g);
        vecs.push_back(ord.mul(g, ord.w()));
    }
    hnf2(vecs, p_, q_, r_);
}

QuadIdeal QuadIdeal::principal(const QuadOrder& ord, const QuadElem& g) {
    return QuadIdeal(ord, {g});
}

QuadIdeal QuadIdeal::unit_ideal(const QuadOrder& ord) {
    return QuadIdeal(ord, {ord.one()});
}

QuadIdeal QuadIdeal::operator*(const QuadIdeal& o) const {
    if (ord_ != o.ord_) throw std::invalid_argument("ideal product across orders");
    QuadElem u1{p_, Int(0)}, u2{q_, r_}, v1{o.p_, Int(0)}, v2{o.q_, o.r_};
    return QuadIdeal(ord_, {ord_.mul(u1, v1), ord_.mul(u1, v2), ord_.mul(u2, v1),
                            ord_.mul(u2, v2)});
}

QuadIdeal QuadIdeal::pow(unsigned long e) const {
    QuadIdeal acc = unit_ideal(ord_);
    for (unsigned long i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

QuadIdeal QuadIdeal::conj() const {
    return QuadIdeal(ord_, {ord_.conj({p_, Int(0)}), ord_.conj({q_, r_})});
}

QuadIdeal QuadIdeal::add(const QuadIdeal& o) const {
    if (ord_ != o.ord_) throw std::invalid_argument("ideal sum across orders");
    QuadIdeal out;
    out.ord_ = ord_;
    hnf2({{p_, Int(0)}, {q_, r_}, {o.p_, Int(0)}, {o.q_, o.r_}}, out.p_, out.q_, out.r_);
    return out;
}

bool QuadIdeal::contains(const QuadElem& e) const {
    if (e.y % r_ != 0) return false;
    return (e.x - (e.y / r_) * q_) % p_ == 0;
}

QuadElem QuadIdeal::reduce_elem(QuadElem e) const {
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), e.y.get_mpz_t(), r_.get_mpz_t());
    e.y -= k * r_;
    e.x -= k * q_;
    e.x = mod_pos(e.x, p_);
    return e;
}

std::vector<QuadElem> QuadIdeal::residues() const {
    std::vector<QuadElem> out;
    for (Int y = 0; y < r_; ++y)
        for (Int x = 0; x < p_; ++x) out.push_back({x, y});
    return out;
}

QuadForm QuadIdeal::form() const {
    if (is_zero()) throw std::invalid_argument("zero ideal has no form");
    Int A = p_ / r_, B = q_ / r_;
    const Int& D = ord_.disc();
    Int b = 2 * B + D;
    return QuadForm{A, b, (b * b - D) / (4 * A)}.reduced();
}

std::optional<QuadElem> QuadIdeal::principal_gen() const {
    if (is_zero()) return std::nullopt;
    QuadElem u{p_, Int(0)}, v{q_, r_};
    auto N = [&](const QuadElem& e) { return ord_.norm(e); };
    auto B = [&](const QuadElem& e, const QuadElem& f) -> Int {
        return (N(ord_.add(e, f)) - N(e) - N(f)) / 2;
    };
    if (N(u) > N(v)) std::swap(u, v);
    while (true) {
        // round B(u,v)/N(u) to the nearest integer
        Int mu, num = 2 * B(u, v) + N(u), den = 2 * N(u);
        mpz_fdiv_q(mu.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        v = ord_.sub(v, {mu * u.x, mu * u.y});
        if (N(v) >= N(u)) break;
        std::swap(u, v);
    }
    if (N(u) != norm()) return std::nullopt;
    return u;
}

QuadIdeal QuadIdeal::extend_to(const QuadOrder& target) const {
    return QuadIdeal(target, {ord_.convert_to(target, {p_, Int(0)}),
                              ord_.convert_to(target, {q_, r_})});
}

QuadIdeal QuadIdeal::contract_to(const QuadOrder& target) const {
    if (target.field_disc_abs() != ord_.field_disc_abs() ||
        target.conductor() % ord_.conductor() != 0)
        throw std::invalid_argument("contract_to: target must be a smaller order");
    Int t(target.conductor() / ord_.conductor());
    // O_target = {x + y*w : t | y} inside this order; intersect the basis
    Int s = t / gcd(t, r_);
    QuadElem v1{p_, Int(0)}, v2{s * q_, s * r_};
    // rewrite in the target order's coordinates
    Int e = (target.disc() - t * ord_.disc()) / 2;  // w_target = e + t*w
    auto down = [&](const QuadElem& a) -> QuadElem {
        Int y = a.y / t;
        return {a.x - y * e, y};
    };
    return QuadIdeal(target, {down(v1), down(v2)});
}

bool QuadIdeal::operator==(const QuadIdeal& o) const {
    return ord_ == o.ord_ && p_ == o.p_ && q_ == o.q_ && r_ == o.r_;
}

bool QuadIdeal::operator<(const QuadIdeal& o) const {
    if (p_ != o.p_) return p_ < o.p_;
    if (q_ != o.q_) return q_ < o.q_;
    return r_ < o.r_;
}

std::string QuadIdeal::str() const {
    std::ostringstream os;
    os << "[" << p_ << ", " << q_ << " + " << r_ << "w]";
    return os.str();
}

Splitting splitting(const QuadOrder& ord, const Int& q) {
    if (!is_prime(q)) throw std::invalid_argument("splitting: q must be prime");
    if (ord.conductor() % q == 0)
        throw std::invalid_argument("splitting: q divides the order conductor");
    const Int& D = ord.disc();
    int k = mpz_kronecker(D.get_mpz_t(), q.get_mpz_t());
    if (k == -1) return {Splitting::Inert, QuadIdeal::principal(ord, {q, Int(0)})};
    // b with b = D mod 2 and b^2 = D mod 4q gives the prime (q, (b + sqrt(D))/2)
    for (Int b = mod_pos(D, Int(2)); b < 2 * q; b += 2) {
        if ((b * b - D) % (4 * q) == 0) {
            QuadIdeal P(ord, {{q, Int(0)}, {(b - D) / 2, Int(1)}});
            return {k == 1 ? Splitting::Split : Splitting::Ramified, P};
        }
    }
    throw std::logic_error("splitting: no square root found");
}

namespace {
QuadIdeal ideal_from_form(const QuadOrder& ord, const QuadForm& f) {
    const Int& D = ord.disc();
    return QuadIdeal(ord, {{f.a, Int(0)}, {(f.b - D) / 2, Int(1)}});
}
}  // namespace

ClassGroup class_group(const QuadOrder& ord) {
    const Int& D = ord.disc();
    std::vector<QuadForm> forms = reduced_forms(D);
    auto mul = [&ord](const QuadForm& f, const QuadForm& g) {
        return (ideal_from_form(ord, f) * ideal_from_form(ord, g)).form();
    };
    ClassGroup cg;
    cg.order = ord;
    cg.structure = abelian_structure(forms, QuadForm::principal(D).reduced(), mul);
    return cg;
}

ExpVec ClassGroup::class_of(const QuadIdeal& I) const {
    if (!I.is_coprime_to_int(Int(order.conductor())))
        throw std::invalid_argument("class_of: ideal not coprime to the conductor");
    return structure.coords.at(I.form());
}

QuadIdeal ClassGroup::representative(const ExpVec& cls, const Int& coprime_to) const {
    for (Int n = 1; n < 10000; ++n) {
        if (gcd(n, coprime_to) != 1 || gcd(n, Int(order.conductor())) != 1) continue;
        for (const auto& I : ideals_of_norm(order, n))
            if (class_of(I) == cls) return I;
    }
    throw std::logic_error("no small representative found");
}

std::vector<QuadIdeal> ideals_of_norm(const QuadOrder& ord, const Int& n) {
    return ideals_of_norm(ord, n, QuadIdeal::unit_ideal(ord));
}

std::vector<QuadIdeal> ideals_of_norm(const QuadOrder& ord, const Int& n, const QuadIdeal& f) {
    if (n < 1) throw std::invalid_argument("ideals_of_norm: n must be positive");
    std::vector<QuadIdeal> out{QuadIdeal::unit_ideal(ord)};
    for (auto& [pe, e] : factorize(n)) {
        if (Int(ord.conductor()) % pe == 0) return {};  // no invertible ideal there
        Splitting sp = splitting(ord, pe);
        std::vector<QuadIdeal> local;
        if (sp.kind == Splitting::Split) {
            QuadIdeal qb = sp.prime.conj();
            for (int i = 0; i <= e; ++i)
                local.push_back(sp.prime.pow(i) * qb.pow(e - i));
        } else if (sp.kind == Splitting::Inert) {
            if (e % 2 != 0) return {};
            local.push_back(sp.prime.pow(e / 2));
        } else {
            local.push_back(sp.prime.pow(e));
        }
        std::vector<QuadIdeal> next;
        for (const auto& a : out)
            for (const auto& b : local) next.push_back(a * b);
        out = std::move(next);
    }
    std::vector<QuadIdeal> kept;
    for (const auto& I : out)
        if (I.is_coprime_to(f)) kept.push_back(I);
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return kept;
}

}  // namespace actheta
