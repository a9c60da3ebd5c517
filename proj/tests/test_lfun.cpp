#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "actheta/lfun.hpp"
#include "actheta/newform.hpp"
#include "actheta/quatgross.hpp"

using namespace actheta;

namespace {

const NewformFile& f33() {
    static NewformFile f = read_newform(std::string(ACTHETA_DATA_DIR) + "/newforms/33a.txt");
    return f;
}

// independent oracle: K0(z) = int_0^infty exp(-z cosh t) dt, Simpson in doubles
double k0_oracle(double z) {
    const double h = 1.0 / 512;
    double s = 0;
    // integrand at t and the Simpson weights; cut when exp underflows
    auto g = [&](double t) { return std::exp(-z * std::cosh(t)); };
    for (long i = 0;; ++i) {
        double t0 = i * 2 * h;
        double seg = g(t0) + 4 * g(t0 + h) + g(t0 + 2 * h);
        s += seg;
        if (t0 > 1 && seg < 1e-300) break;
    }
    return s * h / 3;
}

double d(const Real& r) { return r.to_double(); }

}  // namespace

TEST_CASE("Real arithmetic and formatting") {
    Real a = Real::from_long(3, 128), b = Real::from_long(7, 128);
    CHECK(d(a + b) == 10.0);
    CHECK(d(a * b) == 21.0);
    CHECK(d(b / a) == doctest::Approx(7.0 / 3).epsilon(1e-15));
    CHECK(d((-a).abs()) == 3.0);
    CHECK(d(Real::from_rat(Rat(1) / 4, 128).sqrt()) == 0.5);
    CHECK(d(Real::pi(128)) == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(d(Real::from_long(1, 128).exp()) == doctest::Approx(M_E).epsilon(1e-15));
    CHECK(Real::from_long(2, 128) < Real::from_long(3, 128));
    // str is deterministic and round-trips through strtod
    Real x = Real::pi(128) / Real::from_long(7, 128);
    CHECK(x.str(16) == x.str(16));
    CHECK(std::strtod(x.str(16).c_str(), nullptr) == doctest::Approx(d(x)).epsilon(1e-15));
}

TEST_CASE("incomplete gamma") {
    // Gamma(1, x) = e^{-x}, Gamma(2, x) = (1 + x) e^{-x}
    for (double x : {0.3, 0.7, 3.2, 11.0}) {
        Real xr(128);
        mpfr_set_d(xr.get(), x, MPFR_RNDN);
        CHECK(d(gamma_upper(Real::from_long(1, 128), xr)) ==
              doctest::Approx(std::exp(-x)).epsilon(1e-14));
        CHECK(d(gamma_upper(Real::from_long(2, 128), xr)) ==
              doctest::Approx((1 + x) * std::exp(-x)).epsilon(1e-14));
    }
}

TEST_CASE("Bessel K0 against quadrature oracle") {
    // spans the series branch, the asymptotic branch, and the crossover
    for (double z : {0.3, 1.0, 2.0, 10.0, 29.5, 30.5, 45.0}) {
        Real zr(128);
        mpfr_set_d(zr.get(), z, MPFR_RNDN);
        double got = d(bessel_k0(zr));
        double want = k0_oracle(z);
        CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
    // reference value K0(1) = 0.421024438240708333...
    Real one = Real::from_long(1, 200);
    CHECK(d(bessel_k0(one)) == doctest::Approx(0.42102443824070833).epsilon(1e-15));
    CHECK_THROWS(bessel_k0(Real::from_long(-1, 128)));
}

TEST_CASE("cyclotomic embedding") {
    // zeta_5 -> e^{2 pi i / 5}
    Cplx z = cyc_to_complex(CycRat(CycInt::zeta(5, 1)), 128);
    CHECK(d(z.re) == doctest::Approx(std::cos(2 * M_PI / 5)).epsilon(1e-14));
    CHECK(d(z.im) == doctest::Approx(std::sin(2 * M_PI / 5)).epsilon(1e-14));
    // |(1 + zeta_5)/2|^2 = (2 + 2 cos 72deg) / 4
    CycRat w(CycInt(Int(1)) + CycInt::zeta(5, 1), Int(2));
    CHECK(d(cyc_abs2(w, 128)) ==
          doctest::Approx((2 + 2 * std::cos(2 * M_PI / 5)) / 4).epsilon(1e-13));
    // rationals embed to themselves
    Cplx r = cyc_to_complex(CycRat(Rat(-22) / 7), 128);
    CHECK(d(r.re) == doctest::Approx(-22.0 / 7).epsilon(1e-15));
    CHECK(d(r.im) == 0.0);
}

TEST_CASE("pairwise summation") {
    std::vector<Real> t;
    for (long n = 1; n <= 1000; ++n) t.push_back(Real::from_long(n, 128));
    Real s = sum_pairwise(t, 128);
    CHECK(d(s) == 500500.0);
    // deterministic: identical digits across repeated evaluation
    CHECK(sum_pairwise(t, 128).str(25) == s.str(25));
    CHECK(d(sum_pairwise({}, 128)) == 0.0);
}

TEST_CASE("degree-2 central value vs classical exponential sum") {
    // For eps = +1:  L(f, 1) = 2 sum a_n/n e^{-2 pi n / sqrt(N)}
    LSeries L = lseries_degree2(f33(), 1, 400, 160);
    CHECK(L.conductor == 33);
    CHECK(d(L.b[1]) == 1.0);
    CHECK(d(L.b[6]) == -1.0);
    CentralValue cv = central_value(L, 1e-12);
    CHECK(cv.eps == 1);
    double oracle = 0;
    for (long n = 1; n <= 400; ++n)
        oracle += 2 * f33().an(n).get_d() / n * std::exp(-2 * M_PI * n / std::sqrt(33.0));
    CHECK(d(cv.value) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(d(cv.value) > 0.1);  // rank-0 form: nonvanishing central value
    CHECK(d(cv.residual) < 1e-12);
    CHECK(d(cv.tail_bound) < 1e-10);
    // too few coefficients: explicit failure
    LSeries Ls = lseries_degree2(f33(), 1, 10, 160);
    CHECK_THROWS(central_value(Ls, 1e-12));
}

TEST_CASE("quadratic twist flips the sign") {
    // twisting by the character of conductor 5 gives odd functional equation
    LSeries L = lseries_degree2(f33(), 5, 3000, 160);
    CHECK(L.conductor == 33 * 25);
    CentralValue cv = central_value(L, 1e-12);
    CHECK(cv.eps == -1);
    CHECK(d(cv.value.abs()) < 1e-9);
    CHECK(d(cv.residual) < 1e-12);
}

TEST_CASE("Rankin coefficients: trivial character = convolution oracle") {
    QuadOrder OK(7);
    ClassGroup pic = class_group(OK);
    GroupCharacter triv = GroupCharacter::all(pic.structure.group)[0];
    const long B = 3000;
    LSeries L = rankin_coeffs(f33(), pic, triv, 1, B, 128);
    CHECK(L.conductor == Int(33 * 7) * Int(33 * 7));
    // oracle: Dirichlet convolution of a_n and a_n * kronecker(-7, n)
    for (long n = 1; n <= B; ++n) {
        double want = 0;
        for (long e = 1; e <= n; ++e) {
            if (n % e) continue;
            long dd = n / e;
            want += f33().an(dd).get_d() * f33().an(e).get_d() *
                    kronecker(Int(-7), Int(e)).get_si();
        }
        CHECK(d(L.b[(size_t)n]) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("degree-4 factorization at the trivial character") {
    QuadOrder OK(7);
    ClassGroup pic = class_group(OK);
    GroupCharacter triv = GroupCharacter::all(pic.structure.group)[0];
    LSeries L4 = rankin_coeffs(f33(), pic, triv, 1, 4000, 192);
    CentralValue v4 = central_value(L4, 1e-13);
    CentralValue v2a = central_value(lseries_degree2(f33(), 1, 400, 192), 1e-13);
    CentralValue v2b = central_value(lseries_degree2(f33(), -7, 800, 192), 1e-13);
    CHECK(d(v2a.value) > 0.1);
    CHECK(d(v2b.value) > 0.1);
    double prod = d(v2a.value) * d(v2b.value);
    CHECK(d(v4.value) == doctest::Approx(prod).epsilon(1e-10));
    CHECK(d(v4.residual) < 1e-11);
}

TEST_CASE("interpolation ratio constancy for wild characters") {
    BrandtSystem sys = class_set_and_brandt(3, 11, 13);
    std::vector<Rat> v = eigenvector(sys, {{2, f33().an(2)}, {5, f33().an(5)}});
    GrossPointSet set = gross_points(sys, 7, 1, 5, 2);
    ThetaElement th = theta_element(sys, set, v, f33().an(5));
    // level-1 wild characters: exact order 5 on Pic(O_25) = Z/30
    std::vector<GroupCharacter> wild;
    for (const auto& chi : GroupCharacter::all(set.pic.structure.group))
        if (chi.order() == 5) wild.push_back(chi);
    REQUIRE(wild.size() == 4);
    std::vector<GroupCharacter> batch(wild.begin(), wild.begin() + 3);
    RatioReport rep = interpolation_ratio_check(th, batch, f33(), 25, 160, 1e-4);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.rows.size() == 3);
    for (const auto& r : rep.rows) {
        CHECK_FALSE(r.theta_zero);
        CHECK(d(r.lvalue) > 1e-6);
        CHECK(d(r.ratio) > 0);
    }
    CHECK(rep.max_rel_spread < 1e-3);
    CHECK(rep.text.find("max relative ratio spread") != std::string::npos);
    CHECK(rep.csv.substr(0, 5) == "label");
    // fewer than 3 characters is an error
    CHECK_THROWS(interpolation_ratio_check(th, {wild[0], wild[1]}, f33(), 25, 160, 1e-4));
}

TEST_CASE("interpolation check: Eisenstein theta is degenerate for wild characters") {
    BrandtSystem sys = class_set_and_brandt(3, 11, 13);
    std::vector<Rat> e = eisenstein_vector(sys);
    GrossPointSet set = gross_points(sys, 7, 1, 5, 2);
    ThetaElement th = theta_element(sys, set, e, Int(6));
    std::vector<GroupCharacter> wild;
    for (const auto& chi : GroupCharacter::all(set.pic.structure.group))
        if (chi.order() == 5) wild.push_back(chi);
    std::vector<GroupCharacter> batch(wild.begin(), wild.begin() + 3);
    RatioReport rep = interpolation_ratio_check(th, batch, f33(), 25, 160, 1e-3);
    CHECK(rep.degenerate);
    CHECK(rep.text.find("degenerate") != std::string::npos);
}

TEST_CASE("central value converges as the tail target shrinks") {
    QuadOrder OK(7);
    ClassGroup pic = class_group(OK);
    GroupCharacter triv = GroupCharacter::all(pic.structure.group)[0];
    LSeries L4 = rankin_coeffs(f33(), pic, triv, 1, 4000, 192);
    double a = d(central_value(L4, 1e-8).value);
    double b = d(central_value(L4, 1e-13).value);
    CHECK(std::abs(a - b) / std::abs(b) < 1e-6);
}
