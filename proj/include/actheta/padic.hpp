#ifndef ACTHETA_PADIC_HPP
#define ACTHETA_PADIC_HPP

#include "actheta/bigint.hpp"

namespace actheta {

// Element of Z_p or of its unramified quadratic extension Z_{p^2}, carried
// modulo p^prec.  The degree-2 model is Z_p[w]/(w^2 - u) with u the smallest
// positive quadratic nonresidue mod p; the pair (p, u) is what cache files
// record so stored values stay comparable.
//
// Division by p is not provided: the model is integral and units are the only
// invertible elements.
class PadicNum {
public:
    PadicNum() : p_(0) {}
    PadicNum(long p, int prec, const Int& a, int degree = 1);
    PadicNum(long p, int prec, const Int& a, const Int& b);  // a + b*w, degree 2

    static long quadratic_nonresidue(long p);

    long p() const { return p_; }
    int degree() const { return deg_; }
    int precision() const { return prec_; }
    const Int& modulus() const { return pn_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_unit() const;
    // p-adic valuation, capped at the precision; prec for 0.
    int valuation() const;

    PadicNum operator-() const;
    PadicNum operator+(const PadicNum& o) const;
    PadicNum operator-(const PadicNum& o) const;
    PadicNum operator*(const PadicNum& o) const;
    PadicNum& operator+=(const PadicNum& o) { return *this = *this + o; }
    PadicNum& operator-=(const PadicNum& o) { return *this = *this - o; }
    PadicNum& operator*=(const PadicNum& o) { return *this = *this * o; }
    bool operator==(const PadicNum& o) const;
    bool operator!=(const PadicNum& o) const { return !(*this == o); }

    PadicNum inverse() const;  // throws for non-units
    PadicNum pow(Int e) const; // negative exponents for units

    // Frobenius x -> x^p lifted: the Galois conjugate a - b*w in degree 2.
    PadicNum frobenius() const;
    // Galois norm to Z_p (degree 2) or identity (degree 1).
    PadicNum galois_norm() const;

    // Teichmuller representative: omega(x)^{p^d - 1} = 1, omega(x) = x mod p.
    PadicNum teichmuller() const;
    // Principal-unit part <x> = x / omega(x), congruent to 1 mod p.
    PadicNum one_unit_part() const;

    // Truncate to a lower precision.
    PadicNum truncate(int prec) const;
    // Reinterpret a degree-1 value inside the degree-2 model.
    PadicNum lift_to_quadratic() const;

    std::string str() const;

private:
    long p_ = 0;
    int deg_ = 1;
    int prec_ = 0;
    Int pn_;        // p^prec
    Int u_;         // w^2 = u (degree 2 only)
    Int a_, b_;     // value a + b*w, 0 <= a, b < p^prec
    void check_compatible(const PadicNum& o) const;
};

}  // namespace actheta

#endif
