#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "psigrh/bound_engine.hpp"
#include "psigrh/field_params.hpp"

namespace psigrh {

struct SplittingShape {
  long long p;
  std::vector<std::pair<int, int>> factors;  // (e_i, f_i), sorted
};

// Kronecker symbol (D|n), fully multiplicative in n, standard 2-adic rule.
int kronecker_symbol(long long D, unsigned long long n);

// Splitting of p in the quadratic field of fundamental discriminant D.
SplittingShape quadratic_splitting(long long D, long long p);

// (multiplicity, degree) multiset of the irreducible factors of poly mod p,
// via squarefree decomposition + distinct-degree factorization; the factors
// themselves are never materialized.
std::vector<std::pair<int, int>> poly_shape_mod_p(const std::vector<mpz>& poly, long long p);

// Splitting shape of p in the field, routing through the Kronecker dictionary,
// the factorization of the defining polynomial, the Dedekind index criterion,
// or a user-supplied override, as applicable.
SplittingShape splitting_shape(const FieldDefinition& field, long long p);

// Coefficient of -zeta'_K/zeta_K: log p * sum of f_i dividing k when n = p^k.
double lambda_tilde(const FieldDefinition& field, long long n);

struct PsiAccumulator {
  double x = 0;
  std::vector<std::pair<long long, double>> contributions;  // (n, lambda_tilde(n)), retained on request
  std::vector<std::pair<long long, double>> ideal_norms;    // (N P, log N P), retained on request
  double psi = 0;
  double theta = 0;
  double moment1 = 0;  // sum of n * lambda_tilde(n), for the psi integral
  long long pi = 0;
};

// Single pass over primes <= x with deterministic block reduction.
PsiAccumulator accumulate_psi(const FieldDefinition& field, double x,
                              bool keep_contributions = false, unsigned threads = 0);

double psi_K(const FieldDefinition& field, double x, unsigned threads = 0);
double theta_K(const FieldDefinition& field, double x, unsigned threads = 0);
long long pi_K(const FieldDefinition& field, double x, unsigned threads = 0);

// Integral of psi_K over [0, x], exactly sum lambda_tilde(n) (x - n).
double psi1_K(const FieldDefinition& field, double x, unsigned threads = 0);

// psi(x) <= (psi1(x+h) - psi1(x))/h for h > 0, >= for -x < h < 0.
bool goldston_sandwich_check(const FieldDefinition& field, double x, double h,
                             unsigned threads = 0);

struct RangeVerifyReport {
  bool pass = false;
  long long checked = 0;
  long long violations = 0;
  double min_margin = 0;
  long long argmin_x = 0;
};

// For every integer x in [x_from, x_to]: bound(x) - |psi_K(x) - x| >= margin.
RangeVerifyReport verify_bound_on_range(const FieldDefinition& field, BoundKind kind,
                                        long long x_from, long long x_to, double margin,
                                        unsigned threads = 0);

// Field invariants from a definition: quadratic data directly; polynomial
// signature by exact real-root counting, log disc from the stated field
// discriminant when present, else from |disc(poly)| (an upper bound).
FieldParams params_from_definition(const FieldDefinition& field);

// Discriminant of a monic integer polynomial, exact.
mpz poly_disc(const std::vector<mpz>& poly);

}  // namespace psigrh
