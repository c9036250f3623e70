#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psigrh/mp.hpp"

namespace psigrh::detail {

// Integer polynomial, coefficient of x^i at index i; empty vector is the zero
// polynomial, otherwise back() != 0.
using ZPoly = std::vector<mpz>;

int zp_degree(const ZPoly& p);
void zp_normalize(ZPoly& p);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_scale(const ZPoly& a, const mpz& c);
ZPoly zp_derivative(const ZPoly& a);
mpz zp_content(const ZPoly& a);      // nonnegative; 0 only for the zero polynomial
ZPoly zp_primitive(const ZPoly& a);  // content stripped, sign preserved

// Exact sign of a at the rational t (homogenized evaluation).
int zp_sign_at(const ZPoly& a, const mpq& t);
int zp_sign_at_pos_inf(const ZPoly& a);

// Sign-correct primitive remainder sequence seeded with (p, p'): each element
// is a positive multiple of what the classical Sturm recursion produces, so
// sign-variation counting is valid whenever p is squarefree.
std::vector<ZPoly> sturm_chain(const ZPoly& p);

ZPoly squarefree_part(const ZPoly& p);

// B with every real root of p in [-B, B] (bit-length Lagrange bound).
mpq root_magnitude_bound(const ZPoly& p);

// Distinct roots of the chain's head in (a, b]; requires the head to be
// nonzero at both endpoints.
int count_roots(const std::vector<ZPoly>& chain, const mpq& a, const mpq& b);

int count_real_roots(const ZPoly& p);

struct NonnegReport {
  bool ok = false;
  std::optional<mpq> witness;  // exact point with p < 0
  std::string detail;
};

// Proof that p >= 0 on [a, b], or on [a, +inf) when b is absent; on failure
// carries an exact rational witness.
NonnegReport prove_nonneg(const ZPoly& p, const mpq& a, const std::optional<mpq>& b);

// Resultant via fraction-free elimination of the Sylvester matrix.
mpz resultant(const ZPoly& a, const ZPoly& b);

// Discriminant of a monic polynomial.
mpz disc_of_monic(const ZPoly& f);

}  // namespace psigrh::detail
