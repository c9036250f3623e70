#pragma once

#include <string>

#include "psigrh/errors.hpp"
#include "psigrh/mp.hpp"

namespace psigrh::detail {

// Parse a plain decimal literal (optional sign, digits, optional fraction,
// optional e/E exponent) into an exact rational.
mpq decimal_to_mpq(const std::string& s);

// Exact decimal rendering of a rational whose denominator is of the form
// 2^a 5^b, with no trailing zeros in the fractional part.
std::string mpq_to_decimal(const mpq& q);

}  // namespace psigrh::detail
