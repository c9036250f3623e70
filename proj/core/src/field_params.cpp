#include "psigrh/field_params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace psigrh {

FieldParams::FieldParams(int n, int real_embeddings, int complex_pairs, double log_abs_disc)
    : n_K(n), r1(real_embeddings), r2(complex_pairs), log_disc(log_abs_disc), d_K(r1 + r2 - 1) {
  if (n_K < 1) throw DomainError("degree must be at least 1");
  if (r1 < 0 || r2 < 0) throw DomainError("signature entries must be nonnegative");
  if (r1 + 2 * r2 != n_K) throw DomainError("signature does not match degree");
  if (!(log_disc >= 0.0) || !std::isfinite(log_disc))
    throw DomainError("log |disc| must be finite and nonnegative");
}

namespace {

bool is_perfect_square(long long v) {
  if (v < 0) return false;
  auto sq = [](long long t) { return static_cast<__int128>(t) * t; };
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && sq(r) > v) --r;
  while (sq(r + 1) <= v) ++r;
  return r * r == v;
}

bool is_squarefree(long long m) {
  if (m < 0) m = -m;
  if (m == 0) return false;
  for (long long p = 2; static_cast<__int128>(p) * p * p <= m; p == 2 ? p = 3 : p += 2) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  // The cofactor has at most two prime factors, so a square divisor would
  // make it a perfect square.
  return !is_perfect_square(m) || m == 1;
}

int mod4(long long D) { return static_cast<int>(((D % 4) + 4) % 4); }

}  // namespace

bool is_fundamental_discriminant(long long D) {
  if (D == 0 || D == 1) return false;
  if (mod4(D) == 1) return is_squarefree(D);
  if (mod4(D) != 0) return false;
  long long m = D / 4;
  int mm = mod4(m);
  return (mm == 2 || mm == 3) && is_squarefree(m);
}

FieldParams params_from_quadratic(long long D) {
  if (!is_fundamental_discriminant(D)) throw NotFundamental(D);
  double ld = std::log(std::fabs(static_cast<double>(D)));
  return D > 0 ? FieldParams(2, 2, 0, ld) : FieldParams(2, 0, 1, ld);
}

double grh_disc_floor(int n_K) {
  if (n_K < 1) throw DomainError("degree must be at least 1");
  return n_K * std::log(11.916) - 5.8507;
}

FieldDefinition FieldDefinition::quadratic(long long D) {
  if (!is_fundamental_discriminant(D)) throw NotFundamental(D);
  FieldDefinition f;
  f.kind = Kind::Quadratic;
  f.quad_D = D;
  return f;
}

FieldDefinition FieldDefinition::polynomial(std::vector<mpz> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() < 2) throw DomainError("polynomial must have degree at least 1");
  if (coeffs.back() != 1) throw DomainError("polynomial must be monic");
  FieldDefinition f;
  f.kind = Kind::Polynomial;
  f.poly = std::move(coeffs);
  return f;
}

int FieldDefinition::degree() const {
  return kind == Kind::Quadratic ? 2 : static_cast<int>(poly.size()) - 1;
}

FieldDefinition parse_field_file(std::istream& in) {
  std::optional<FieldDefinition> field;
  std::optional<mpz> disc_abs;
  std::map<long long, std::vector<std::pair<int, int>>> overrides;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& msg) -> Error {
      return DomainError("field file line " + std::to_string(lineno) + ": " + msg);
    };

    if (key == "quad") {
      long long D;
      if (!(ls >> D)) throw fail("expected an integer after 'quad'");
      if (field) throw fail("field already defined");
      field = FieldDefinition::quadratic(D);
    } else if (key == "poly") {
      std::vector<mpz> coeffs;
      std::string tok;
      while (ls >> tok) coeffs.emplace_back(tok);
      if (field) throw fail("field already defined");
      field = FieldDefinition::polynomial(std::move(coeffs));
    } else if (key == "disc") {
      std::string tok;
      if (!(ls >> tok)) throw fail("expected an integer after 'disc'");
      mpz d(tok);
      if (d < 0) d = -d;
      if (d == 0) throw fail("discriminant cannot be zero");
      disc_abs = d;
    } else if (key == "index-prime") {
      long long p;
      std::string shapes;
      if (!(ls >> p >> shapes)) throw fail("expected '<p> <e>:<f>,...'");
      if (p < 2) throw fail("invalid prime");
      std::vector<std::pair<int, int>> ef;
      std::istringstream ss(shapes);
      std::string part;
      while (std::getline(ss, part, ',')) {
        int e, f;
        char colon;
        std::istringstream ps(part);
        if (!(ps >> e >> colon >> f) || colon != ':' || e < 1 || f < 1)
          throw fail("malformed splitting shape '" + part + "'");
        ef.emplace_back(e, f);
      }
      if (ef.empty()) throw fail("empty splitting shape");
      overrides[p] = std::move(ef);
    } else {
      throw fail("unknown directive '" + key + "'");
    }
  }

  if (!field) throw DomainError("field file defines no field");
  field->disc_abs = disc_abs;
  for (auto& [p, ef] : overrides) {
    long long sum = 0;
    for (auto [e, f] : ef) sum += static_cast<long long>(e) * f;
    if (sum != field->degree())
      throw DomainError("splitting shape for prime " + std::to_string(p) +
                        " does not sum to the degree");
  }
  field->overrides = std::move(overrides);
  return *field;
}

FieldDefinition load_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open field file: " + path);
  return parse_field_file(in);
}

std::optional<long long> ExceptionalTables::minimal_disc(int n_K) const {
  auto it = minimal_disc_by_degree.find(n_K);
  if (it == minimal_disc_by_degree.end()) return std::nullopt;
  return it->second;
}

std::optional<DiscCeiling> ExceptionalTables::disc_ceiling(int n_K, int r2) const {
  for (const auto& row : disc_ceilings)
    if (row.n_K == n_K && row.r2 == r2) return row;
  return std::nullopt;
}

std::optional<ExceptionCount> ExceptionalTables::exception_count(int n_K, int r2) const {
  for (const auto& row : exception_counts)
    if (row.n_K == n_K && row.r2 == r2) return row;
  return std::nullopt;
}

std::optional<SmallDegreeStart> ExceptionalTables::small_degree_start(int n_K) const {
  for (const auto& row : small_degree_starts)
    if (row.n_K == n_K) return row;
  return std::nullopt;
}

std::string ExceptionalTables::canonical_serialization() const {
  std::ostringstream out;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%g", v);
    return std::string(buf);
  };
  for (const auto& [n, d] : minimal_disc_by_degree)
    out << "minimal-disc " << n << ' ' << d << '\n';
  for (const auto& r : disc_ceilings)
    out << "ceiling " << r.n_K << ' ' << r.r2 << ' ' << r.ceiling << ' ' << num(r.c) << '\n';
  for (const auto& r : exception_counts)
    out << "count " << r.n_K << ' ' << r.r2 << ' ' << r.count << '\n';
  for (const auto& r : small_degree_starts)
    out << "start " << r.n_K << ' ' << r.minimal_disc << ' ' << r.x_bar << ' ' << num(r.c)
        << '\n';
  return out.str();
}

std::uint64_t ExceptionalTables::checksum() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical_serialization()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const ExceptionalTables& exceptional_tables() {
  static const ExceptionalTables tables = [] {
    ExceptionalTables t;
    t.minimal_disc_by_degree = {{2, 3},     {3, 23},    {4, 117},
                                {5, 1609},  {6, 9747},  {7, 184607}};
    t.disc_ceilings = {{2, 0, 172921407, 4.8}, {2, 1, 103995324, 4.8},
                       {3, 0, 1350275, 5.1},   {3, 1, 369421, 5.1},
                       {4, 0, 10311, 6.0},     {4, 1, 2584, 6.0},
                       {4, 2, 648, 6.0}};
    t.exception_counts = {{2, 0, 52561764}, {2, 1, 31610787}, {3, 0, 74747},
                          {3, 1, 65708},    {4, 0, 54},       {4, 1, 73},
                          {4, 2, 22}};
    t.small_degree_starts = {{2, 3, 1566020, 4.8}, {3, 23, 980, 5.0}, {4, 117, 184, 5.0}};
    return t;
  }();
  return tables;
}

}  // namespace psigrh
