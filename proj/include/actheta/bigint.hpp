#ifndef ACTHETA_BIGINT_HPP
#define ACTHETA_BIGINT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace actheta {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline long lcm_l(long a, long b) { return mpz_class(lcm(Int(a), Int(b))).get_si(); }

inline Int pow_int(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Int powmod(const Int& a, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::optional<Int> invmod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

// Representative in [0, m).
inline Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int divexact(const Int& a, const Int& d) {
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return r;
}

inline bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

inline int kronecker(const Int& a, const Int& b) { return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t()); }

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

// (prime, exponent) pairs by trial division; intended for desk-scale inputs.
std::vector<std::pair<Int, int>> factorize(Int n);

std::vector<long> divisors(long n);

long euler_phi(long n);

std::vector<long> primes_up_to(long n);

// p-adic valuation of a nonzero integer.
int valuation(Int n, const Int& p);

// Smith normal form over Z.  Returns D = U * A * V with U, V unimodular.
// Matrices are row-major vectors of rows.
struct SmithResult {
    std::vector<std::vector<Int>> D, U, V;
};
SmithResult smith_normal_form(std::vector<std::vector<Int>> A);

// Solve A x = b over the rationals (A given row-major, possibly non-square).
// Returns nullopt when the system is inconsistent.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b);

// Solve A x = b over the integers via Smith normal form; nullopt when no
// integral solution exists.
std::optional<std::vector<Int>> solve_linear_integer(const std::vector<std::vector<Int>>& A,
                                                     const std::vector<Int>& b);

}  // namespace actheta

#endif
