#include <cstdio>

#include "actheta/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace actheta {

// --------------------------------------------------------------------------
// Real

Real::Real(long bits) { mpfr_init2(v_, bits < 80 ? 80 : bits); mpfr_set_zero(v_, 1); }
Real::Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}
Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real Real::from_long(long v, long bits) {
    Real r(bits);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}
Real Real::from_int(const Int& v, long bits) {
    Real r(bits);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}
Real Real::from_rat(const Rat& v, long bits) {
    Real r(bits);
    mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}
Real Real::pi(long bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

std::string Real::str(int digits) const {
    char buf[512];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", digits, v_);
    return buf;
}

Real Real::operator-() const {
    Real r(bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::operator+(const Real& o) const {
    Real r(std::max(bits(), o.bits()));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::operator-(const Real& o) const {
    Real r(std::max(bits(), o.bits()));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::operator*(const Real& o) const {
    Real r(std::max(bits(), o.bits()));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::operator/(const Real& o) const {
    Real r(std::max(bits(), o.bits()));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::abs() const {
    Real r(bits());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::sqrt() const {
    Real r(bits());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::exp() const {
    Real r(bits());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::log() const {
    Real r(bits());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
}

Real gamma_upper(const Real& a, const Real& x) {
    Real r(std::max(a.bits(), x.bits()));
    mpfr_gamma_inc(r.get(), a.get(), x.get(), MPFR_RNDN);
    return r;
}

Real bessel_k0(const Real& z) {
    long bits = z.bits();
    double zd = z.to_double();
    if (zd < 0) throw std::invalid_argument("bessel_k0: negative argument");
    if (zd <= 30.0) {
        // ascending series K0 = -(log(z/2) + gamma) I0(z) + sum H_k t^k/(k!)^2
        // with t = z^2/4; the two e^{+z}-sized parts cancel to e^{-z}, so pad
        // the working precision by ~2z/ln2 bits
        long wb = bits + (long)(3.0 * zd) + 32;
        Real t(wb), term(wb), i0(wb), s(wb), hk(wb), g(wb), half(wb);
        mpfr_set(t.get(), z.get(), MPFR_RNDN);
        t = t * t;
        mpfr_div_ui(t.get(), t.get(), 4, MPFR_RNDN);
        mpfr_set_ui(term.get(), 1, MPFR_RNDN);
        mpfr_set_ui(i0.get(), 1, MPFR_RNDN);
        mpfr_set_zero(s.get(), 1);
        mpfr_set_zero(hk.get(), 1);
        for (unsigned long k = 1; k < 10000; ++k) {
            term = term * t;
            mpfr_div_ui(term.get(), term.get(), k, MPFR_RNDN);
            mpfr_div_ui(term.get(), term.get(), k, MPFR_RNDN);
            Real inc(wb);
            mpfr_set_ui(inc.get(), 1, MPFR_RNDN);
            mpfr_div_ui(inc.get(), inc.get(), k, MPFR_RNDN);
            hk = hk + inc;
            i0 = i0 + term;
            s = s + term * hk;
            if (mpfr_get_exp(term.get()) < -(wb + 8) + mpfr_get_exp(i0.get())) break;
        }
        mpfr_const_euler(g.get(), MPFR_RNDN);
        mpfr_set(half.get(), z.get(), MPFR_RNDN);
        mpfr_div_ui(half.get(), half.get(), 2, MPFR_RNDN);
        Real out = s - (half.log() + g) * i0;
        Real r(bits);
        mpfr_set(r.get(), out.get(), MPFR_RNDN);
        return r;
    }
    // asymptotic: K0(z) ~ sqrt(pi/(2z)) e^{-z} sum_k a_k, a_0 = 1,
    // a_k = a_{k-1} * (-(2k-1)^2) / (8 k z)
    Real term(bits), acc(bits);
    mpfr_set_ui(term.get(), 1, MPFR_RNDN);
    mpfr_set_ui(acc.get(), 1, MPFR_RNDN);
    Real prev_abs = term.abs();
    for (unsigned long k = 1; k < 4000; ++k) {
        Real f(bits);
        mpfr_set_si(f.get(), -(long)((2 * k - 1) * (2 * k - 1)), MPFR_RNDN);
        mpfr_div_ui(f.get(), f.get(), 8 * k, MPFR_RNDN);
        term = term * f / z;
        if (term.abs().cmp(prev_abs) > 0) break;  // divergence point reached
        prev_abs = term.abs();
        acc = acc + term;
        if (mpfr_get_exp(term.get()) < -(bits + 8)) break;
    }
    Real pi = Real::pi(bits);
    Real two(bits);
    mpfr_set_ui(two.get(), 2, MPFR_RNDN);
    return (pi / (two * z)).sqrt() * (-z).exp() * acc;
}

Cplx cyc_to_complex(const CycRat& x, long bits) {
    long m = x.num().conductor();
    Real twopi = Real::pi(bits) + Real::pi(bits);
    Cplx out{Real(bits), Real(bits)};
    const auto& c = x.num().coeffs();
    for (size_t e = 0; e < c.size(); ++e) {
        if (c[e] == 0) continue;
        Real ang = twopi * Real::from_long((long)e, bits) / Real::from_long(m, bits);
        Real co(bits), si(bits);
        mpfr_sin_cos(si.get(), co.get(), ang.get(), MPFR_RNDN);
        Real coef = Real::from_int(c[e], bits);
        out.re += coef * co;
        out.im += coef * si;
    }
    Real den = Real::from_int(x.den(), bits);
    out.re /= den;
    out.im /= den;
    return out;
}

Real cyc_abs2(const CycRat& x, long bits) {
    Cplx z = cyc_to_complex(x, bits);
    return z.re * z.re + z.im * z.im;
}

Real sum_pairwise(std::vector<Real> terms, long bits) {
    if (terms.empty()) return Real(bits);
    // fixed blocks of 64, then pairwise reduction of the block sums
    const size_t BLOCK = 64;
    std::vector<Real> sums;
    for (size_t i = 0; i < terms.size(); i += BLOCK) {
        Real s(bits);
        for (size_t j = i; j < std::min(i + BLOCK, terms.size()); ++j) s += terms[j];
        sums.push_back(std::move(s));
    }
    while (sums.size() > 1) {
        std::vector<Real> next;
        for (size_t i = 0; i + 1 < sums.size(); i += 2) next.push_back(sums[i] + sums[i + 1]);
        if (sums.size() % 2) next.push_back(sums.back());
        sums = std::move(next);
    }
    return sums[0];
}

// --------------------------------------------------------------------------
// Dirichlet coefficients

namespace {

// multiply the multiplicative coefficient array by the local inverse Euler
// factor at q given the local polynomial P(X) = 1 + p1 X + ... (X = q^{-s})
void apply_local_factor(std::vector<Real>& b, long q, const std::vector<Real>& P, long bits) {
    long B = (long)b.size() - 1;
    // inverse power series coefficients c_k
    std::vector<Real> c;
    c.push_back(Real::from_long(1, bits));
    long K = 0;
    for (Int qe(q); qe <= B; qe *= q) ++K;
    for (long k = 1; k <= K; ++k) {
        Real v(bits);
        for (size_t j = 1; j < P.size() && (long)j <= k; ++j) v -= P[j] * c[(size_t)(k - j)];
        c.push_back(std::move(v));
    }
    // sieve update: entries not divisible by q are already final
    for (long k = 1; k <= K; ++k) {
        Int qk = pow_int(Int(q), (unsigned long)k);
        if (qk > B) break;
        long qkl = qk.get_si();
        for (long m = 1; m * qkl <= B; ++m) {
            if (m % q == 0) continue;
            b[(size_t)(m * qkl)] += c[(size_t)k] * b[(size_t)m];
        }
    }
}

}  // namespace

LSeries lseries_degree2(const NewformFile& f, long twist, long B, long bits) {
    if (f.weight != 2) throw std::invalid_argument("degree-2 series: weight 2 only");
    if ((long)f.a.size() < B) throw std::invalid_argument("newform data too short");
    LSeries L;
    L.degree = 2;
    L.bits = bits;
    L.shifts = {Rat(0)};
    L.conductor = Int(f.level) * twist * twist;
    L.b.reserve((size_t)B + 1);
    L.b.push_back(Real(bits));  // unused b_0
    for (long n = 1; n <= B; ++n) {
        Int an = f.an(n);
        if (twist != 1) an *= kronecker(Int(twist), Int(n));
        L.b.push_back(Real::from_int(an, bits));
    }
    return L;
}

LSeries rankin_coeffs(const NewformFile& f, const ClassGroup& pic, const GroupCharacter& chi,
                      long chi_cond, long B, long bits) {
    if (f.weight != 2) throw std::invalid_argument("rankin_coeffs: weight 2 only");
    long DK = pic.order.field_disc_abs();
    LSeries L;
    L.degree = 4;
    L.bits = bits;
    L.shifts = {Rat(0), Rat(0)};
    L.conductor = pow_int(Int(f.level) * DK * Int(chi_cond) * chi_cond, 2);
    L.b.assign((size_t)B + 1, Real(bits));
    L.b[1] = Real::from_long(1, bits);
    for (long q : primes_up_to(B)) {
        if ((long)f.a.size() < q) throw std::invalid_argument("newform data too short");
        bool bad_f = Int(f.level) % q == 0;
        bool ram_chi = chi_cond % q == 0;
        std::vector<Real> P;  // local polynomial in X = q^{-s}
        Real one = Real::from_long(1, bits);
        Real aq = Real::from_int(f.an(q), bits);
        Real qq = Real::from_long(q, bits);
        if (ram_chi) {
            P = {one};  // chi ramified: trivial local factor
        } else {
            Splitting sp = splitting(pic.order, Int(q));
            Cplx z = cyc_to_complex(CycRat(chi.value(pic.class_of(sp.prime))), bits);
            Real z2re = z.re * z.re - z.im * z.im;  // Re(z^2) (|z| = 1)
            switch (sp.kind) {
                case Splitting::Split: {
                    if (bad_f) {
                        // (1 - z a X)(1 - conj(z) a X)
                        P = {one, -(z.re + z.re) * aq, aq * aq};
                    } else {
                        // (1 - z a X + z^2 q X^2)(conjugate)
                        // = 1 - 2Re(z) a X + (a^2 + 2 q Re(z^2)) X^2
                        //     - 2 Re(z) a q X^3 + q^2 X^4
                        P = {one, -(z.re + z.re) * aq, aq * aq + (qq + qq) * z2re,
                             -(z.re + z.re) * aq * qq, qq * qq};
                    }
                    break;
                }
                case Splitting::Inert: {
                    // chi((q)) with (q) principal: z = 1 in our (anticyclotomic)
                    // setting, but use the computed value for generality
                    if (bad_f) {
                        // 1 - z a^2 X^2
                        P = {one, Real(bits), -z.re * aq * aq};
                    } else {
                        // (1 - z alpha^2 X^2)(1 - z beta^2 X^2)
                        // = 1 - z (a^2 - 2q) X^2 + z^2 q^2 X^4
                        P = {one, Real(bits), -z.re * (aq * aq - (qq + qq)), Real(bits),
                             z2re * qq * qq};
                    }
                    break;
                }
                case Splitting::Ramified: {
                    if (bad_f) {
                        P = {one, -z.re * aq};
                    } else {
                        // 1 - z a X + z^2 q X^2
                        P = {one, -z.re * aq, z2re * qq};
                    }
                    break;
                }
            }
        }
        apply_local_factor(L.b, q, P, bits);
    }
    return L;
}

// --------------------------------------------------------------------------
// central values

namespace {

// cutoff weight F(x) = (1/2pi i) int G(1+z) x^{-z} dz/z for the gamma product
// G; degree 2 with shift a: Gamma(1+a, x); degree 4 with shifts (0,0):
// 2 K0(2 sqrt(x)); generic degree-4 shifts via the integral representation
// int_0^infty u^{1+a1} e^{-u} Gamma(1+a2, x/u) du/u (double-exponential
// quadrature)
Real cutoff_F(const LSeries& L, const Real& x) {
    long bits = L.bits;
    if (L.degree == 2) {
        Real a = Real::from_rat(L.shifts[0], bits) + Real::from_long(1, bits);
        return gamma_upper(a, x);
    }
    if (L.shifts[0] == 0 && L.shifts[1] == 0) {
        Real two(bits);
        mpfr_set_ui(two.get(), 2, MPFR_RNDN);
        return two * bessel_k0(two * x.sqrt());
    }
    // generic shifts: trapezoid over u = e^v, v in [-9, 9]
    Real a1 = Real::from_rat(L.shifts[0], bits), a2 = Real::from_rat(L.shifts[1], bits);
    Real h(bits);
    mpfr_set_d(h.get(), 1.0 / 16, MPFR_RNDN);
    Real acc(bits);
    for (long i = -160; i <= 160; ++i) {
        Real v = h * Real::from_long(i, bits);
        Real u = v.exp();
        Real w = (Real::from_long(1, bits) + a1) * v - u;  // log(u^{1+a1} e^{-u})
        acc += w.exp() * gamma_upper(Real::from_long(1, bits) + a2, x / u);
    }
    return acc * h;
}

double cutoff_decay_arg(const LSeries& L, double eps) {
    double t = std::log(1.0 / eps) + 6.0;
    return L.degree == 2 ? t : (t / 2.0) * (t / 2.0);
}

}  // namespace

CentralValue central_value(const LSeries& L, double tail_eps) {
    long bits = L.bits;
    Real twopi = Real::pi(bits) + Real::pi(bits);
    Real Q = Real::from_int(L.conductor, bits).sqrt();
    for (int t = 0; t < L.degree / 2; ++t) Q /= twopi;
    double Qd = Q.to_double();
    const double d1 = 1.12, d2 = 1.31;  // cutoff asymmetry parameters
    double xmax = cutoff_decay_arg(L, tail_eps);
    long need = (long)std::ceil(xmax * Qd * d2) + 1;
    if ((long)L.b.size() - 1 < need)
        throw std::invalid_argument("central_value: " + std::to_string(need) +
                                    " coefficients needed, " +
                                    std::to_string(L.b.size() - 1) + " available");
    auto smoothed = [&](double delta) -> Real {
        // S(delta) = sum b_n / n * F(n / (Q delta))
        Real dl(bits);
        mpfr_set_d(dl.get(), delta, MPFR_RNDN);
        std::vector<Real> terms;
        long N = (long)std::ceil(xmax * Qd * delta) + 1;
        N = std::min(N, (long)L.b.size() - 1);
        for (long n = 1; n <= N; ++n) {
            if (mpfr_zero_p(L.b[(size_t)n].get())) continue;
            Real nn = Real::from_long(n, bits);
            Real x = nn / (Q * dl);
            terms.push_back(L.b[(size_t)n] / nn * cutoff_F(L, x));
        }
        return sum_pairwise(std::move(terms), bits);
    };
    Real S1 = smoothed(d1), S1p = smoothed(1.0 / d1);
    Real S2 = smoothed(d2), S2p = smoothed(1.0 / d2);
    // Lambda(1) = S(delta) + eps S(1/delta) must be delta-independent
    Real rplus = ((S1 + S1p) - (S2 + S2p)).abs();
    Real rminus = ((S1 - S1p) - (S2 - S2p)).abs();
    int eps = L.forced_eps != 0 ? L.forced_eps : (rplus.cmp(rminus) <= 0 ? 1 : -1);
    Real lam = eps > 0 ? S1 + S1p : S1 - S1p;
    Real resid = eps > 0 ? rplus : rminus;
    // Lambda(1) = Q [S(delta) + eps S(1/delta)] and Lambda(1) = Q G(1) L(1),
    // so L(1) = [S(delta) + eps S(1/delta)] / prod Gamma(1 + shift)
    Real gam = Real::from_long(1, bits);
    for (const Rat& sh : L.shifts) {
        Real g(bits);
        Real arg = Real::from_rat(sh, bits) + Real::from_long(1, bits);
        mpfr_gamma(g.get(), arg.get(), MPFR_RNDN);
        gam *= g;
    }
    CentralValue cv{Real(bits), Real(bits), Real(bits), eps};
    cv.value = lam / gam;
    cv.residual = resid / gam;
    // heuristic tail bound: largest |b_n|/n times the cutoff decay at the
    // truncation point times the number of dropped decay lengths
    Real mb(bits);
    for (size_t n = 1; n < L.b.size(); ++n) {
        Real t = L.b[n].abs() / Real::from_long((long)n, bits);
        if (t.cmp(mb) > 0) mb = t;
    }
    Real xcut(bits);
    mpfr_set_d(xcut.get(), (double)((long)L.b.size() - 1) / (Qd * d2), MPFR_RNDN);
    cv.tail_bound = mb * cutoff_F(L, xcut) * Real::from_long((long)L.b.size(), bits) / gam;
    return cv;
}

// --------------------------------------------------------------------------
// interpolation ratio cross-check

RatioReport interpolation_ratio_check(const ThetaElement& theta,
                                      const std::vector<GroupCharacter>& nus,
                                      const NewformFile& f, long chi_cond, long bits,
                                      double tail_eps) {
    if (nus.size() < 3)
        throw std::invalid_argument("interpolation check needs at least 3 characters");
    RatioReport rep;
    bool all_zero = true;
    bool any_l = false;
    long B = 0;
    LSeries probe;  // reused coefficient length estimate via first character
    for (size_t i = 0; i < nus.size(); ++i) {
        RatioRow row{std::string("nu") + std::to_string(i), false, false, 0, 1,
                     Real(bits), Real(bits), Real(bits)};
        CycRat T = eval_exact(theta, nus[i]);
        row.theta_zero = T.is_zero();
        if (!row.theta_zero) {
            all_zero = false;
            row.theta_abs2 = cyc_abs2(T, bits);
        }
        {
            PadicCyc pv = eval_theta_padic(theta, nus[i], 6);
            CycValuation cval = padic_cyc_valuation(pv);
            row.val_finite = !cval.zero;
            row.val_num = cval.num;
            row.val_den = cval.den;
        }
        if (B == 0) {
            // coefficient length: decay argument times analytic conductor
            probe = rankin_coeffs(f, theta.G, nus[i], chi_cond, 1, bits);
            Real twopi = Real::pi(bits) + Real::pi(bits);
            double Qd = (Real::from_int(probe.conductor, bits).sqrt() / (twopi * twopi))
                            .to_double();
            B = (long)std::ceil(cutoff_decay_arg(probe, tail_eps) * Qd * 1.31) + 8;
        }
        LSeries L = rankin_coeffs(f, theta.G, nus[i], chi_cond, B, bits);
        CentralValue cv = central_value(L, tail_eps);
        row.lvalue = cv.value;
        if (cv.value.abs().to_double() > 1e-8) {
            any_l = true;
            row.ratio = row.theta_abs2 / cv.value;
        }
        rep.rows.push_back(std::move(row));
    }
    rep.degenerate = all_zero;
    if (!rep.degenerate && !any_l)
        throw std::runtime_error("all central values vanish: batch uninformative");
    // spread of the ratios over informative rows
    std::vector<double> ratios;
    for (const auto& r : rep.rows)
        if (!r.theta_zero && r.lvalue.abs().to_double() > 1e-8)
            ratios.push_back(r.ratio.to_double());
    if (ratios.size() >= 2) {
        double lo = *std::min_element(ratios.begin(), ratios.end());
        double hi = *std::max_element(ratios.begin(), ratios.end());
        double mid = (std::abs(lo) + std::abs(hi)) / 2;
        rep.max_rel_spread = mid > 0 ? (hi - lo) / mid : 0.0;
    }
    // reports
    std::ostringstream txt, csv;
    csv << "label,theta_valuation,theta_abs2,l_value,ratio\n";
    txt << "character   valuation      |nu(Theta)|^2        L(f/K,nu,1)          ratio\n";
    for (const auto& r : rep.rows) {
        std::string val = r.theta_zero || !r.val_finite
                              ? std::string("inf")
                              : std::to_string(r.val_num) + "/" + std::to_string(r.val_den);
        char line[512];
        std::snprintf(line, sizeof line, "%-11s %-13s %-20.12g %-20.12g %-.12g\n",
                      r.label.c_str(), val.c_str(), r.theta_abs2.to_double(),
                      r.lvalue.to_double(), r.ratio.to_double());
        txt << line;
        csv << r.label << "," << val << "," << r.theta_abs2.str(16) << ","
            << r.lvalue.str(16) << "," << r.ratio.str(16) << "\n";
    }
    if (rep.degenerate) txt << "theta side identically zero: degenerate batch\n";
    txt << "max relative ratio spread: " << rep.max_rel_spread << "\n";
    rep.text = txt.str();
    rep.csv = csv.str();
    return rep;
}

}  // namespace actheta
