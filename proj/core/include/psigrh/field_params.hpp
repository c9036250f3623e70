#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psigrh/errors.hpp"
#include "psigrh/mp.hpp"

namespace psigrh {

// Invariants of a number field needed by the bound machinery.
struct FieldParams {
  int n_K;          // degree
  int r1;           // real embeddings
  int r2;           // conjugate pairs of complex embeddings
  double log_disc;  // log |disc_K|
  int d_K;          // r1 + r2 - 1

  FieldParams(int n, int real_embeddings, int complex_pairs, double log_abs_disc);

  static FieldParams rationals() { return FieldParams(1, 1, 0, 0.0); }
};

bool is_fundamental_discriminant(long long D);

// Parameters of Q(sqrt(D)) for a fundamental discriminant D.
FieldParams params_from_quadratic(long long D);

// Lower bound on log |disc_K| valid under GRH for any degree-n field.
double grh_disc_floor(int n_K);

// A field as described in an input file: either a quadratic field given by its
// fundamental discriminant, or a monic integer polynomial with optional
// explicitly supplied |disc_K| and per-prime splitting overrides.
struct FieldDefinition {
  enum class Kind { Quadratic, Polynomial };

  Kind kind = Kind::Quadratic;
  long long quad_D = 0;
  std::vector<mpz> poly;  // coefficients c0..cn, low to high, monic

  std::optional<mpz> disc_abs;  // |disc_K| when stated
  // p -> splitting shape [(e_i, f_i)], overriding the factoring route
  std::map<long long, std::vector<std::pair<int, int>>> overrides;

  static FieldDefinition quadratic(long long D);
  static FieldDefinition polynomial(std::vector<mpz> coeffs);

  int degree() const;
};

FieldDefinition parse_field_file(std::istream& in);
FieldDefinition load_field_file(const std::string& path);

// Discriminant thresholds below which a specific bound needs case analysis.
struct DiscCeiling {
  int n_K;
  int r2;
  long long ceiling;  // bound holds outright for |disc_K| > ceiling
  double c;           // T = c * sqrt(x) / log x used in the sufficiency check
};

struct ExceptionCount {
  int n_K;
  int r2;
  long long count;  // fields at or below the matching ceiling
};

struct SmallDegreeStart {
  int n_K;
  long long minimal_disc;  // least |disc_K| in this degree
  long long x_bar;         // bound verified directly for x in [100, x_bar]
  double c;
};

struct ExceptionalTables {
  std::map<int, long long> minimal_disc_by_degree;
  std::vector<DiscCeiling> disc_ceilings;
  std::vector<ExceptionCount> exception_counts;
  std::vector<SmallDegreeStart> small_degree_starts;

  std::optional<long long> minimal_disc(int n_K) const;
  std::optional<DiscCeiling> disc_ceiling(int n_K, int r2) const;
  std::optional<ExceptionCount> exception_count(int n_K, int r2) const;
  std::optional<SmallDegreeStart> small_degree_start(int n_K) const;

  std::string canonical_serialization() const;
  std::uint64_t checksum() const;  // FNV-1a 64 over the canonical serialization
};

const ExceptionalTables& exceptional_tables();

}  // namespace psigrh
