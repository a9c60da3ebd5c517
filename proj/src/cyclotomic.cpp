#include "actheta/cyclotomic.hpp"

#include <cassert>
#include <mutex>
#include <numeric>
#include <sstream>

namespace actheta {

namespace {

// quotient of polynomial division a / b for monic b, remainder discarded along the way
std::vector<Int> poly_divexact(std::vector<Int> a, const std::vector<Int>& b) {
    assert(b.back() == 1);
    long db = (long)b.size() - 1;
    long da = (long)a.size() - 1;
    std::vector<Int> q(da - db + 1, Int(0));
    for (long i = da; i >= db; --i) {
        Int c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (auto& x : a) assert(x == 0);
    return q;
}

std::map<long, std::vector<Int>>& phi_cache() {
    static std::map<long, std::vector<Int>> cache;
    return cache;
}
std::mutex phi_mutex;

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long m) {
    std::lock_guard<std::mutex> lock(phi_mutex);
    auto& cache = phi_cache();
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // fill in ascending divisor order: Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e
    for (long d : divisors(m)) {
        if (cache.count(d)) continue;
        std::vector<Int> num(d + 1, Int(0));
        num[0] = -1;
        num[d] = 1;
        for (long e : divisors(d)) {
            if (e == d) continue;
            num = poly_divexact(num, cache.at(e));
        }
        cache[d] = std::move(num);
    }
    return cache.at(m);
}

void CycInt::reduce() {
    const auto& phi = cyclotomic_polynomial(m_);
    long d = (long)phi.size() - 1;  // = euler_phi(m_)
    if ((long)c_.size() > d) {
        for (long i = (long)c_.size() - 1; i >= d; --i) {
            Int c = c_[i];
            if (c == 0) continue;
            c_[i] = 0;
            for (long j = 0; j < d; ++j) c_[i - d + j] -= c * phi[j];
        }
    }
    c_.resize(d, Int(0));
}

CycInt::CycInt(long m, std::vector<Int> coeffs) : m_(m), c_(std::move(coeffs)) {
    assert(m >= 1);
    reduce();
}

CycInt CycInt::zeta(long m, long e) {
    e %= m;
    if (e < 0) e += m;
    std::vector<Int> c(e + 1, Int(0));
    c[e] = 1;
    return CycInt(m, std::move(c));
}

bool CycInt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycInt::is_integer() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Int CycInt::integer_value() const {
    assert(is_integer());
    return c_[0];
}

CycInt CycInt::operator-() const {
    CycInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycInt CycInt::embed(long m_prime) const {
    if (m_prime % m_ != 0) throw std::invalid_argument("cyc_embed: target conductor not a multiple");
    if (m_prime == m_) return *this;
    long k = m_prime / m_;
    std::vector<Int> c(1 + (c_.size() - 1) * k, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return CycInt(m_prime, std::move(c));
}

CycInt CycInt::operator+(const CycInt& o) const {
    long M = lcm_l(m_, o.m_);
    CycInt a = embed(M), b = o.embed(M);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CycInt CycInt::operator-(const CycInt& o) const { return *this + (-o); }

CycInt CycInt::operator*(const CycInt& o) const {
    long M = lcm_l(m_, o.m_);
    CycInt a = embed(M), b = o.embed(M);
    std::vector<Int> prod(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            prod[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return CycInt(M, std::move(prod));
}

bool CycInt::operator==(const CycInt& o) const {
    long M = lcm_l(m_, o.m_);
    return embed(M).c_ == o.embed(M).c_;
}

CycInt CycInt::pow(unsigned long e) const {
    CycInt r(Int(1)), base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

CycInt CycInt::galois(long k) const {
    k %= m_;
    if (k < 0) k += m_;
    assert(std::gcd(k, m_) == 1);
    std::vector<Int> c(m_, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) c[(i * k) % m_] += c_[i];
    return CycInt(m_, std::move(c));
}

CycInt CycInt::conj() const { return m_ == 1 ? *this : galois(m_ - 1); }

std::optional<CycInt> CycInt::descend(long m) const {
    if (m_ % m != 0) throw std::invalid_argument("descend: target must divide conductor");
    if (m == m_) return *this;
    long phi_small = euler_phi(m);
    long phi_big = (long)c_.size();
    std::vector<std::vector<Rat>> A(phi_big, std::vector<Rat>(phi_small, Rat(0)));
    for (long j = 0; j < phi_small; ++j) {
        CycInt basis = CycInt::zeta(m, j).embed(m_);
        for (long i = 0; i < phi_big; ++i) A[i][j] = Rat(basis.coeffs()[i]);
    }
    std::vector<Rat> b(phi_big);
    for (long i = 0; i < phi_big; ++i) b[i] = Rat(c_[i]);
    auto sol = solve_linear(std::move(A), std::move(b));
    if (!sol) return std::nullopt;
    std::vector<Int> out(phi_small);
    for (long j = 0; j < phi_small; ++j) {
        if ((*sol)[j].get_den() != 1) return std::nullopt;
        out[j] = (*sol)[j].get_num();
    }
    return CycInt(m, std::move(out));
}

CycInt CycInt::descend_minimal() const {
    for (long d : divisors(m_)) {
        if (d == m_) break;
        if (auto r = descend(d)) return *r;
    }
    return *this;
}

Int CycInt::norm() const {
    if (m_ == 1) return c_[0];
    CycInt prod(Int(1));
    for (long k = 1; k < m_; ++k) {
        if (std::gcd(k, m_) != 1) continue;
        prod *= galois(k);
    }
    assert(prod.is_integer());
    return prod.integer_value();
}

std::optional<CycInt> CycInt::divide_exact(const CycInt& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero");
    long M = lcm_l(m_, d.m_);
    CycInt a = embed(M), b = d.embed(M);
    long n = (long)a.c_.size();
    // columns of the multiplication-by-b matrix
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
    for (long j = 0; j < n; ++j) {
        CycInt col = b * CycInt::zeta(M, j);
        for (long i = 0; i < n; ++i) A[i][j] = Rat(col.coeffs()[i]);
    }
    std::vector<Rat> rhs(n);
    for (long i = 0; i < n; ++i) rhs[i] = Rat(a.c_[i]);
    auto sol = solve_linear(std::move(A), std::move(rhs));
    if (!sol) return std::nullopt;
    std::vector<Int> out(n);
    for (long j = 0; j < n; ++j) {
        if ((*sol)[j].get_den() != 1) return std::nullopt;
        out[j] = (*sol)[j].get_num();
    }
    return CycInt(M, std::move(out));
}

std::string CycInt::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0) os << "-";
        Int a = abs(c_[i]);
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << "z" << m_;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

CycInt operator*(const Int& n, const CycInt& x) { return CycInt(n) * x; }

CycRat::CycRat(CycInt n, Int d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    normalize();
}

void CycRat::normalize() {
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    Int g = den_;
    for (const auto& c : num_.coeffs()) {
        g = gcd(g, c);
        if (g == 1) return;
    }
    if (g > 1) {
        std::vector<Int> cs = num_.coeffs();
        for (auto& c : cs) c = divexact(c, g);
        num_ = CycInt(num_.conductor(), std::move(cs));
        den_ = divexact(den_, g);
    }
}

CycRat CycRat::operator-() const {
    CycRat r = *this;
    r.num_ = -r.num_;
    return r;
}

CycRat CycRat::operator+(const CycRat& o) const { return CycRat(num_ * CycInt(o.den_) + o.num_ * CycInt(den_), den_ * o.den_); }
CycRat CycRat::operator-(const CycRat& o) const { return *this + (-o); }
CycRat CycRat::operator*(const CycRat& o) const { return CycRat(num_ * o.num_, den_ * o.den_); }

CycRat CycRat::inverse() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero");
    // 1/num via norm: conj-product / norm
    long m = num_.conductor();
    CycInt cofactor(Int(1));
    for (long k = 2; k < m; ++k) {
        if (std::gcd(k, m) != 1) continue;
        cofactor *= num_.galois(k);
    }
    Int nrm = num_.norm();
    // num * cofactor = nrm, hence 1/num = cofactor/nrm
    return CycRat(cofactor * CycInt(den_), nrm);
}

CycRat CycRat::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycRat r(Int(1)), base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::string CycRat::str() const {
    if (den_ == 1) return num_.str();
    return "(" + num_.str() + ")/" + den_.get_str();
}

}  // namespace actheta
