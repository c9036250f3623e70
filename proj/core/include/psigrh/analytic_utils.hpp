#pragma once

#include <complex>

#include "psigrh/errors.hpp"

namespace psigrh {

struct ValueWithError {
  double value;
  double abs_error;  // certified bound on |true - value|
};

// Gamma'/Gamma to at least 12 significant digits (recurrence shift, then
// asymptotic series).
double digamma(double x);

// log p if n = p^k, else 0.
double von_mangoldt(long long n);

// zeta'/zeta(s) for s >= 1.5 with certified absolute error <= 1e-9,
// via Euler-Maclaurin with explicit remainder bounds.
ValueWithError zeta_log_deriv(double s);

// Upper bound for |(1+x)^nu - 1 - nu*x| valid for x >= -1, 1 <= Re nu <= 2:
// (1/2 + (1/Re nu - 1/2) max(0,-x)) |nu (nu-1)| x^2.
double littlewood_majorant(double x, std::complex<double> nu);

// R'(x) = -(r1+r2-1) log x - (r1/2) log(1-x^-2) - r2 log(1-x^-1), x >= 3.
double lemma22_R_prime(double x, int r1, int r2);

// Integral of du/log u over [a, b], 2 <= a <= b, relative error <= 1e-8.
double log_integral(double a, double b);

}  // namespace psigrh
