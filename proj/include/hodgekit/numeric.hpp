#ifndef HODGEKIT_NUMERIC_HPP
#define HODGEKIT_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace hodgekit {

// Exact scalar types used throughout. All cohomology is over the rationals;
// GMP backs both so intermediate results never round.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

/// Formats a rational in lowest terms, dropping the "/1" of integers.
inline std::string rat_to_string(const Rat& q)
{
    Int num = numerator(q);
    Int den = denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline std::string int_to_string(const Int& n) { return n.str(); }

} // namespace hodgekit

#endif // HODGEKIT_NUMERIC_HPP
