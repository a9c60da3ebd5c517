#ifndef ACTHETA_POLY_HPP
#define ACTHETA_POLY_HPP

#include <vector>

#include "actheta/cyclotomic.hpp"

namespace actheta {

// Dense univariate polynomial over a commutative coefficient ring.
// No trailing zero leading coefficient is kept.
template <typename R>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(R constant) : c_{std::move(constant)} { trim(); }

    static Poly monomial(const R& coeff, size_t degree) {
        std::vector<R> c(degree + 1, R());
        c[degree] = coeff;
        return Poly(std::move(c));
    }

    const std::vector<R>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return (long)c_.size() - 1; }  // -1 for the zero polynomial
    R coeff(size_t i) const { return i < c_.size() ? c_[i] : R(); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Poly operator+(const Poly& o) const {
        std::vector<R> c(std::max(c_.size(), o.c_.size()), R());
        for (size_t i = 0; i < c.size(); ++i) {
            if (i < c_.size()) c[i] += c_[i];
            if (i < o.c_.size()) c[i] += o.c_[i];
        }
        return Poly(std::move(c));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<R> c(c_.size() + o.c_.size() - 1, R());
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(c));
    }
    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    template <typename S>
    S evaluate(const S& x, const S& one) const {
        S acc = one - one;  // zero of S
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + S(c_[i]);
        return acc;
    }

private:
    std::vector<R> c_;
    void trim() {
        while (!c_.empty() && c_.back() == R()) c_.pop_back();
    }
};

// Laurent polynomial: coefficient vector starting at degree `low`.
template <typename R>
class Laurent {
public:
    Laurent() : low_(0) {}
    Laurent(long low, std::vector<R> coeffs) : low_(low), c_(std::move(coeffs)) { trim(); }

    static Laurent term(const R& coeff, long degree) { return Laurent(degree, {coeff}); }

    long low() const { return low_; }
    long high() const { return low_ + (long)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    R coeff(long d) const {
        long i = d - low_;
        return (i >= 0 && i < (long)c_.size()) ? c_[i] : R();
    }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Laurent operator+(const Laurent& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        long lo = std::min(low_, o.low_);
        long hi = std::max(high(), o.high());
        std::vector<R> c(hi - lo + 1, R());
        for (long d = lo; d <= hi; ++d) c[d - lo] = coeff(d) + o.coeff(d);
        return Laurent(lo, std::move(c));
    }
    Laurent operator-(const Laurent& o) const { return *this + (-o); }
    Laurent operator*(const Laurent& o) const {
        if (is_zero() || o.is_zero()) return Laurent();
        std::vector<R> c(c_.size() + o.c_.size() - 1, R());
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
        return Laurent(low_ + o.low_, std::move(c));
    }
    bool operator==(const Laurent& o) const { return (*this - o).is_zero(); }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

private:
    long low_;
    std::vector<R> c_;
    void trim() {
        while (!c_.empty() && c_.back() == R()) c_.pop_back();
        size_t lead = 0;
        while (lead < c_.size() && c_[lead] == R()) ++lead;
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + lead);
            low_ += (long)lead;
        }
        if (c_.empty()) low_ = 0;
    }
};

// True iff every coefficient of f is divisible by d in the cyclotomic integers.
bool poly_divides(const Int& d, const Poly<CycInt>& f);
bool poly_divides(const CycInt& d, const Poly<CycInt>& f);

}  // namespace actheta

#endif
