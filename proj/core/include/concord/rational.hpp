#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace concord {

// Exact rational arithmetic. All probability bookkeeping that feeds a
// yes/no decision (degeneracy diagnosis, state canonicalization) runs on
// these, never on doubles.
using Rat = mpq_class;

// mpq_class(num, den) does NOT reduce the fraction, and mpq comparisons
// assume canonical form. Every construction from a num/den pair must go
// through here.
inline Rat make_rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

}
