#include "actheta/padic.hpp"

#include <cassert>
#include <sstream>

namespace actheta {

long PadicNum::quadratic_nonresidue(long p) {
    for (long u = 2; u < p; ++u)
        if (kronecker(Int(u), Int(p)) == -1) return u;
    throw std::invalid_argument("no quadratic nonresidue (p must be an odd prime)");
}

PadicNum::PadicNum(long p, int prec, const Int& a, int degree)
    : p_(p), deg_(degree), prec_(prec), pn_(pow_int(Int(p), prec)), a_(mod_pos(a, pn_)), b_(0) {
    assert(degree == 1 || degree == 2);
    if (deg_ == 2) u_ = quadratic_nonresidue(p);
}

PadicNum::PadicNum(long p, int prec, const Int& a, const Int& b)
    : p_(p), deg_(2), prec_(prec), pn_(pow_int(Int(p), prec)),
      u_(quadratic_nonresidue(p)), a_(mod_pos(a, pn_)), b_(mod_pos(b, pn_)) {}

void PadicNum::check_compatible(const PadicNum& o) const {
    if (p_ != o.p_ || deg_ != o.deg_ || prec_ != o.prec_)
        throw std::invalid_argument("incompatible p-adic operands");
}

bool PadicNum::is_unit() const { return !divides(Int(p_), a_) || (deg_ == 2 && !divides(Int(p_), b_)); }

int PadicNum::valuation() const {
    if (is_zero()) return prec_;
    int va = prec_, vb = prec_;
    if (a_ != 0) va = actheta::valuation(a_, Int(p_));
    if (b_ != 0) vb = actheta::valuation(b_, Int(p_));
    return std::min(va, vb);
}

PadicNum PadicNum::operator-() const {
    PadicNum r = *this;
    r.a_ = mod_pos(-a_, pn_);
    r.b_ = mod_pos(-b_, pn_);
    return r;
}

PadicNum PadicNum::operator+(const PadicNum& o) const {
    check_compatible(o);
    PadicNum r = *this;
    r.a_ = mod_pos(a_ + o.a_, pn_);
    r.b_ = mod_pos(b_ + o.b_, pn_);
    return r;
}

PadicNum PadicNum::operator-(const PadicNum& o) const { return *this + (-o); }

PadicNum PadicNum::operator*(const PadicNum& o) const {
    check_compatible(o);
    PadicNum r = *this;
    if (deg_ == 1) {
        r.a_ = mod_pos(a_ * o.a_, pn_);
    } else {
        r.a_ = mod_pos(a_ * o.a_ + u_ * b_ * o.b_, pn_);
        r.b_ = mod_pos(a_ * o.b_ + b_ * o.a_, pn_);
    }
    return r;
}

bool PadicNum::operator==(const PadicNum& o) const {
    check_compatible(o);
    return a_ == o.a_ && b_ == o.b_;
}

PadicNum PadicNum::inverse() const {
    if (!is_unit()) throw std::invalid_argument("p-adic inverse of a non-unit");
    PadicNum r = *this;
    if (deg_ == 1) {
        r.a_ = *invmod(a_, pn_);
    } else {
        // (a + bw)^{-1} = (a - bw) / (a^2 - u b^2)
        Int nrm = mod_pos(a_ * a_ - u_ * b_ * b_, pn_);
        Int ninv = *invmod(nrm, pn_);
        r.a_ = mod_pos(a_ * ninv, pn_);
        r.b_ = mod_pos(-b_ * ninv, pn_);
    }
    return r;
}

PadicNum PadicNum::pow(Int e) const {
    if (e < 0) return inverse().pow(-e);
    PadicNum base = *this;
    PadicNum r(p_, prec_, Int(1), deg_);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

PadicNum PadicNum::frobenius() const {
    if (deg_ == 1) return *this;
    PadicNum r = *this;
    r.b_ = mod_pos(-b_, pn_);
    return r;
}

PadicNum PadicNum::galois_norm() const {
    if (deg_ == 1) return *this;
    PadicNum r = *this * frobenius();
    assert(r.b_ == 0);
    return r;
}

PadicNum PadicNum::teichmuller() const {
    if (!is_unit()) throw std::invalid_argument("teichmuller of a non-unit");
    // iterate x -> x^{p^d}; gains at least one digit per step
    Int q = pow_int(Int(p_), deg_);
    PadicNum x = *this;
    for (int i = 0; i <= prec_; ++i) {
        PadicNum nx = x.pow(q);
        if (nx == x) break;
        x = nx;
    }
    return x;
}

PadicNum PadicNum::one_unit_part() const { return *this * teichmuller().inverse(); }

PadicNum PadicNum::truncate(int prec) const {
    if (prec > prec_) throw std::invalid_argument("truncate cannot raise precision");
    PadicNum r(p_, prec, a_, deg_);
    if (deg_ == 2) r.b_ = mod_pos(b_, r.pn_);
    return r;
}

PadicNum PadicNum::lift_to_quadratic() const {
    assert(deg_ == 1);
    return PadicNum(p_, prec_, a_, Int(0));
}

std::string PadicNum::str() const {
    std::ostringstream os;
    os << a_.get_str();
    if (deg_ == 2 && b_ != 0) os << " + " << b_.get_str() << "*w";
    os << " (mod " << p_ << "^" << prec_ << ")";
    return os.str();
}

}  // namespace actheta
