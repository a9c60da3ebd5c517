#ifndef ACTHETA_NEWFORM_HPP
#define ACTHETA_NEWFORM_HPP

#include <string>
#include <vector>

#include "actheta/bigint.hpp"

namespace actheta {

// Ingested coefficient data of a rational newform with trivial nebentypus.
// Plain-text format: four header lines `label <s>`, `weight <k>`,
// `level <N>`, `base-field rational`, then rows `n a_n`.
struct NewformFile {
    std::string label;
    long weight = 0;
    long level = 0;
    std::string base_field;
    std::vector<Int> a;  // a[n]; a[0] unused

    long bound() const { return (long)a.size() - 1; }
    const Int& an(long n) const;
};

// Parse and validate: a_1 = 1, multiplicativity spot checks, Weil bounds at
// good primes, |a_q| = 1 at primes dividing a squarefree level.  Throws
// std::runtime_error on malformed input or failed validation.
NewformFile read_newform(const std::string& path);

}  // namespace actheta

#endif
