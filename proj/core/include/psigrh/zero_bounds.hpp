#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psigrh/field_params.hpp"
#include "psigrh/mp.hpp"

namespace psigrh {

// Published inputs of the zero-count remainder and the constants derived
// from them; the c_i roundings (1.45, 8.93, 8.66) are what the bound
// formulas actually use.
struct TrudgianConstants {
  double D1, D2, D3;
  double c1, c2, c3;  // c1 = pi D1, c2 = pi (D2 + D1 log 2pi), c3 = pi D3
  double T0;
  double eta;
  double p_param;
  double r_param;
};
const TrudgianConstants& trudgian_constants();

// Upper bound on N_K(T), the number of nontrivial zeros with |gamma| <= T.
double zero_count_upper(double T, const FieldParams& params);

struct ZeroCountWindow {
  double asymptotic;       // A(T) = (T/pi)(log disc + n log(T/2 pi e))
  double remainder_bound;  // R(T) = (1/pi)(c1 W_K(T) + c2 n + c3)
};
ZeroCountWindow zero_count_window(double T, const FieldParams& params);

// Bound on sum over |gamma| >= T of |rho|^-2, T >= 5.
double tail_inverse_square_bound(double T, const FieldParams& params);

// Bound on sum over |gamma| <= T of |rho|^-1, T >= 5.
double first_moment_bound(double T, const FieldParams& params);

// 1.02 log disc - 1.63 n + 7.04: the certified low-lying sum bound that the
// majorant certificate reproves; kept for cross-validation.
double low_lying_sum_bound(const FieldParams& params);

// A majorant certificate: coefficients a_j (stored as exact integers a_j*10^7)
// attached to test functions f(s_j, gamma) with s_j = 1 + j/2, built to
// dominate g(gamma) = 2 (1+4 gamma^2)^{-1/2} on [-5, 5] and 0 outside.
struct MajorantCertificate {
  int q = 0;                    // node count
  std::vector<mpq> nodes;       // q positive reals, 5 excluded
  std::vector<mpz> coef_scaled; // a_j * 10^7 for j = 1..2q+3
  long long n_pos = 60975;      // S(n) > 0 for 2 <= n <= n_pos
  long long n_check = 128000;   // S(n) < 0 scanned up to here

  int coefficient_count() const { return 2 * q + 3; }
  static mpq point(int j);      // s_j = 1 + j/2, 1-based
  mpq coefficient(int j) const; // exact a_j
  void validate() const;        // structural invariants; throws DomainError
};

const std::vector<mpq>& reference_nodes();
const MajorantCertificate& reference_certificate();

// Interpolation system: rows are F = g at {0} + nodes + {5}, F' = g' at the
// nodes, and the gamma^2-decay condition.
struct CertificateSystem {
  int q = 0;
  std::vector<mpq> nodes;
  std::vector<std::vector<mpq>> matrix;  // (2q+3) x (2q+3), exact
  std::vector<real300> rhs;
};
CertificateSystem build_certificate_system(const std::vector<mpq>& nodes);

// Solves the system at high precision (exact-rational fallback), rounds each
// coefficient toward +infinity to 7 decimals.
MajorantCertificate solve_certificate(const std::vector<mpq>& nodes);

struct MajorizationReport {
  bool pass = false;
  std::optional<double> witness;  // gamma with F(gamma) < g(gamma)
  std::string detail;
};

// Exact proof (Sturm sequences over the rationals) that F >= g everywhere.
MajorizationReport verify_majorization(const MajorantCertificate& cert);

struct CertificateConstants {
  double sum_a;            // sum a_j
  double sum_pole;         // sum a_j (2/s_j + 2/(s_j - 1))
  double sum_gamma_half;   // sum a_j digamma(s_j/2), certified upper bound
  double sum_gamma_shift;  // sum a_j digamma((s_j+1)/2), certified upper bound
  double prime_sum_slack;  // sum a_j zeta'/zeta(s_j) + sum_{n<=n_pos} Lambda(n) S(n), upper bound
};

// Verifies the sign pattern of S(n) = sum a_j n^{-s_j} exactly on
// [2, n_check], the pair-negativity condition beyond n_check, and computes
// the certificate constants with one-sided error handling.
CertificateConstants verify_prime_sum(const MajorantCertificate& cert, unsigned threads = 0);

// Exact sign of S(n) in {-1, 0, +1}.
int sign_of_S(const MajorantCertificate& cert, long long n);

// Degree coefficient of the assembled low-lying bound for signature (r1, r2):
// -sum_a n log pi + (r1+r2) sum_gamma_half + r2 sum_gamma_shift + slack * n.
double closure_coef_n(const CertificateConstants& c, int r1, int r2);

void write_certificate(std::ostream& out, const MajorantCertificate& cert);
MajorantCertificate read_certificate(std::istream& in);
void save_certificate(const std::string& path, const MajorantCertificate& cert);
MajorantCertificate load_certificate(const std::string& path);

}  // namespace psigrh
