#include "actheta/poly.hpp"

namespace actheta {

bool poly_divides(const Int& d, const Poly<CycInt>& f) {
    if (d == 0) return f.is_zero();
    for (const auto& c : f.coeffs())
        for (const auto& a : c.coeffs())
            if (!divides(d, a)) return false;
    return true;
}

bool poly_divides(const CycInt& d, const Poly<CycInt>& f) {
    if (d.is_integer()) return poly_divides(d.integer_value(), f);
    for (const auto& c : f.coeffs())
        if (!c.divide_exact(d)) return false;
    return true;
}

}  // namespace actheta
