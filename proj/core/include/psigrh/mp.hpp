#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace psigrh {

using mpz = boost::multiprecision::mpz_int;
using mpq = boost::multiprecision::mpq_rational;

// Fixed-precision reals used internally by the certified evaluators.
// et_off keeps value semantics simple (no expression templates).
using real300 =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<300>,
                                  boost::multiprecision::et_off>;
using real600 =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<600>,
                                  boost::multiprecision::et_off>;

}  // namespace psigrh
