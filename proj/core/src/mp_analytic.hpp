#pragma once

#include "psigrh/mp.hpp"

namespace psigrh::detail {

// Exact Bernoulli number B_m (B_1 = -1/2), available for m <= 64.
const mpq& bernoulli(int m);

real300 digamma_mp(const real300& x);

struct ZetaPair {
  real300 zeta;
  real300 zeta_err;   // certified bound on |computed - true|
  real300 dzeta;      // zeta'
  real300 dzeta_err;
};

// Euler-Maclaurin evaluation of zeta and zeta' for real s >= 1.5.
ZetaPair zeta_with_deriv_mp(const real300& s);

struct QInterval {
  mpq lo, hi;
};

// Exact rational enclosure of 2*(1+4*gamma^2)^(-1/2), relative width ~1e-140.
QInterval g_enclosure(const mpq& gamma);

// Exact rational enclosure of -8*gamma*(1+4*gamma^2)^(-3/2).
QInterval gprime_enclosure(const mpq& gamma);

}  // namespace psigrh::detail
