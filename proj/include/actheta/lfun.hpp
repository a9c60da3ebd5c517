#ifndef ACTHETA_LFUN_HPP
#define ACTHETA_LFUN_HPP

#include <mpfr.h>

#include <string>
#include <vector>

#include "actheta/cyclotomic.hpp"
#include "actheta/newform.hpp"
#include "actheta/quatgross.hpp"

namespace actheta {

// Arbitrary-precision real number (MPFR wrapper; >= 80 bits in this module).
class Real {
public:
    explicit Real(long bits = 128);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real from_long(long v, long bits);
    static Real from_int(const Int& v, long bits);
    static Real from_rat(const Rat& v, long bits);
    static Real pi(long bits);

    long bits() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 20) const;

    Real operator-() const;
    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    int sgn() const { return mpfr_sgn(v_); }
    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }

    Real abs() const;
    Real sqrt() const;
    Real exp() const;
    Real log() const;

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// upper incomplete gamma Gamma(a, x)
Real gamma_upper(const Real& a, const Real& x);
// modified Bessel K_0(z), z >= 0 (ascending series with precision padding for
// the cancellation, asymptotic expansion for large z)
Real bessel_k0(const Real& z);

struct Cplx {
    Real re, im;
};

// embed Q(zeta_m) -> C via zeta_m -> exp(2 pi i / m)
Cplx cyc_to_complex(const CycRat& x, long bits);
Real cyc_abs2(const CycRat& x, long bits);  // |x|^2 (real up to rounding)

// deterministic fixed-block pairwise summation
Real sum_pairwise(std::vector<Real> terms, long bits);

// Self-dual motivic-normalized L-series with functional equation
// Lambda(s) = Q^s * prod_i Gamma(s + shift_i) * L(s) = eps * Lambda(2 - s),
// Q = sqrt(conductor) / (2 pi)^{degree/2}; central point s = 1.
struct LSeries {
    int degree = 4;            // 2 or 4 (one or two Gamma_C factors)
    std::vector<Real> b;       // Dirichlet coefficients b_1, b_2, ... (real)
    Int conductor;             // arithmetic conductor N_L
    std::vector<Rat> shifts;   // one Gamma-shift per Gamma_C factor, default 0
    int forced_eps = 0;        // 0: fit the root number; else use +-1
    long bits = 128;
};

struct CentralValue {
    Real value;       // L(1)
    Real residual;    // functional-equation self-consistency residual
    Real tail_bound;  // truncation tail estimate
    int eps;          // root number used (fitted or forced)
};

// Dirichlet coefficients a_n * kronecker(twist, n) for the degree-2 series of
// a weight-2 newform twisted by a quadratic character (twist = 1: no twist);
// the conductor is level * twist^2 (twist fundamental, coprime to the level).
LSeries lseries_degree2(const NewformFile& f, long twist, long B, long bits);

// Degree-4 Rankin-Selberg coefficients of L(f/K, chi, s) by exact local
// Euler-factor assembly per prime (split / inert / ramified in the order's
// field), chi a ring class character of the class group pic with conductor
// chi_cond (rational); conductor N_f^2 * (|D_K| * chi_cond^2)^2.
LSeries rankin_coeffs(const NewformFile& f, const ClassGroup& pic, const GroupCharacter& chi,
                      long chi_cond, long B, long bits);

// Smoothed approximate functional equation at the central point.  tail_eps
// controls the truncation target; throws if the stored coefficients are too
// short for it.
CentralValue central_value(const LSeries& L, double tail_eps);

struct RatioRow {
    std::string label;       // character label
    bool theta_zero;         // theta-side value identically zero
    bool val_finite;         // p-adic valuation finite at working precision
    long val_num, val_den;   // p-adic valuation of nu(Theta) (num/den)
    Real theta_abs2;         // |nu(Theta)|^2 under the complex embedding
    Real lvalue;             // L(f/K, nu, 1)
    Real ratio;              // theta_abs2 / lvalue
};

struct RatioReport {
    bool degenerate = false;        // all theta-side values zero
    std::vector<RatioRow> rows;
    double max_rel_spread = 0.0;    // max pairwise relative ratio deviation
    std::string text;               // aligned plain-text table
    std::string csv;                // machine-readable table
};

// Interpolation cross-check: |nu(Theta)|^2 against L(f/K, nu, 1) over a batch
// of finite-order characters nu of theta.G.group(); the unknown period cancels
// in the ratio, which must be constant across the batch.
RatioReport interpolation_ratio_check(const ThetaElement& theta,
                                      const std::vector<GroupCharacter>& nus,
                                      const NewformFile& f, long chi_cond, long bits,
                                      double tail_eps);

}  // namespace actheta

#endif
