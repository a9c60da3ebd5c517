#ifndef ACTHETA_CYCLOTOMIC_HPP
#define ACTHETA_CYCLOTOMIC_HPP

#include <map>
#include <vector>

#include "actheta/bigint.hpp"

namespace actheta {

// Coefficients of the m-th cyclotomic polynomial (cached).
const std::vector<Int>& cyclotomic_polynomial(long m);

// Element of Z[zeta_m] in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
// Values constructed at a given conductor stay there; binary operations lift
// both operands into the lcm conductor.
class CycInt {
public:
    CycInt() : m_(1), c_(1, Int(0)) {}
    explicit CycInt(const Int& n) : m_(1), c_(1, n) {}
    explicit CycInt(long n) : m_(1), c_(1, Int(n)) {}
    CycInt(long m, std::vector<Int> coeffs);

    // zeta_m^e
    static CycInt zeta(long m, long e = 1);

    long conductor() const { return m_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_integer() const;           // lies in Z (at this representation)
    Int integer_value() const;         // requires is_integer()

    CycInt operator-() const;
    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt& operator+=(const CycInt& o) { return *this = *this + o; }
    CycInt& operator-=(const CycInt& o) { return *this = *this - o; }
    CycInt& operator*=(const CycInt& o) { return *this = *this * o; }
    bool operator==(const CycInt& o) const;
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    CycInt pow(unsigned long e) const;

    // Complex conjugation zeta -> zeta^{-1}.
    CycInt conj() const;

    // Galois twist zeta -> zeta^k, gcd(k, m) = 1.
    CycInt galois(long k) const;

    // Image under Q(zeta_m) -> Q(zeta_{m'}), m | m'.  Throws otherwise.
    CycInt embed(long m_prime) const;

    // Express in conductor m | m_ if the element lies in that subfield.
    std::optional<CycInt> descend(long m) const;

    // Smallest divisor conductor containing the element.
    CycInt descend_minimal() const;

    // Field norm to Q.
    Int norm() const;

    // Exact division by another cyclotomic integer in Z[zeta]; nullopt when the
    // quotient is not integral.
    std::optional<CycInt> divide_exact(const CycInt& d) const;

    std::string str() const;

private:
    long m_;
    std::vector<Int> c_;
    void reduce();
};

CycInt operator*(const Int& n, const CycInt& x);

// Quotient num/den with den a positive rational integer.
class CycRat {
public:
    CycRat() : num_(), den_(1) {}
    CycRat(const CycInt& n) : num_(n), den_(1) { normalize(); }
    CycRat(const Int& n) : num_(CycInt(n)), den_(1) {}
    CycRat(long n) : num_(CycInt(n)), den_(1) {}
    CycRat(const Rat& q) : num_(CycInt(q.get_num())), den_(q.get_den()) {}
    CycRat(CycInt n, Int d);

    const CycInt& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_ == 1; }
    bool is_rational() const { return num_.is_integer(); }
    Rat rational_value() const { return Rat(num_.integer_value(), den_); }

    CycRat operator-() const;
    CycRat operator+(const CycRat& o) const;
    CycRat operator-(const CycRat& o) const;
    CycRat operator*(const CycRat& o) const;
    CycRat& operator+=(const CycRat& o) { return *this = *this + o; }
    CycRat& operator-=(const CycRat& o) { return *this = *this - o; }
    CycRat& operator*=(const CycRat& o) { return *this = *this * o; }
    bool operator==(const CycRat& o) const { return (*this - o).is_zero(); }
    bool operator!=(const CycRat& o) const { return !(*this == o); }

    CycRat conj() const { return CycRat(num_.conj(), den_); }
    CycRat pow(long e) const;  // negative exponents via inversion
    CycRat inverse() const;

    std::string str() const;

private:
    CycInt num_;
    Int den_;
    void normalize();
};

}  // namespace actheta

#endif
