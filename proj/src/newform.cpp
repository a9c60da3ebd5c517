#include "actheta/newform.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace actheta {

const Int& NewformFile::an(long n) const {
    if (n < 1 || n >= (long)a.size())
        throw std::out_of_range("newform coefficient index out of ingested range");
    return a[n];
}

NewformFile read_newform(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open newform file: " + path);
    NewformFile f;
    std::string key;
    for (int h = 0; h < 4; ++h) {
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("newform file: truncated header");
        std::istringstream ls(line);
        ls >> key;
        if (key == "label")
            ls >> f.label;
        else if (key == "weight")
            ls >> f.weight;
        else if (key == "level")
            ls >> f.level;
        else if (key == "base-field")
            ls >> f.base_field;
        else
            throw std::runtime_error("newform file: unknown header key " + key);
    }
    if (f.label.empty() || f.weight < 2 || f.level < 1)
        throw std::runtime_error("newform file: incomplete header");
    if (f.base_field != "rational")
        throw std::runtime_error("newform file: only rational coefficients supported");
    long n;
    std::string val;
    std::vector<Int> coeffs{Int(0)};
    while (in >> n >> val) {
        if (n != (long)coeffs.size())
            throw std::runtime_error("newform file: coefficient rows must be consecutive from 1");
        coeffs.emplace_back(val);
    }
    if (coeffs.size() < 2 || coeffs[1] != 1)
        throw std::runtime_error("newform file: a_1 must be 1");
    f.a = std::move(coeffs);

    long B = f.bound();
    // multiplicativity spot checks at coprime pairs and Hecke recursion at
    // prime squares (weight k: a_{q^2} = a_q^2 - q^{k-1} for good q)
    for (long m = 2; m <= 60 && m * (m + 1) <= B; ++m)
        if (gcd(Int(m), Int(m + 1)) == 1 && f.a[m * (m + 1)] != f.a[m] * f.a[m + 1])
            throw std::runtime_error("newform file: multiplicativity failure");
    for (long q : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (q * q > B) break;
        if (f.level % q == 0) {
            if (f.a[q] * f.a[q] != 1)
                throw std::runtime_error("newform file: bad-prime coefficient not a unit");
            if (f.a[q * q] != f.a[q] * f.a[q])
                throw std::runtime_error("newform file: bad-prime power recursion failure");
        } else {
            Int qk1 = pow_int(Int(q), (unsigned long)(f.weight - 1));
            if (f.a[q * q] != f.a[q] * f.a[q] - qk1)
                throw std::runtime_error("newform file: Hecke recursion failure at prime square");
            if (f.a[q] * f.a[q] > 4 * qk1)
                throw std::runtime_error("newform file: Weil bound violated");
        }
    }
    return f;
}

}  // namespace actheta
