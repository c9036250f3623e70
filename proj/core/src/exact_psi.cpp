#include "psigrh/exact_psi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "psigrh/errors.hpp"
#include "qpoly.hpp"
#include "sieve.hpp"

namespace psigrh {

namespace {

constexpr double kCutoffGuard = 1e9;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// F_p[x], coefficient of x^i at index i; empty is the zero polynomial.
using Fp = std::vector<u64>;

void fp_norm(Fp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int fp_deg(const Fp& f) { return static_cast<int>(f.size()) - 1; }

Fp fp_sub(const Fp& a, const Fp& b, u64 p) {
  Fp r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  fp_norm(r);
  return r;
}

Fp fp_mul(const Fp& a, const Fp& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + static_cast<u128>(a[i]) * b[j]) % p;
  }
  fp_norm(r);
  return r;
}

// Quotient of a by b; remainder left in a.
Fp fp_divmod(Fp& a, const Fp& b, u64 p) {
  const int db = fp_deg(b);
  if (db < 0) throw Error("polynomial division by zero");
  if (fp_deg(a) < db) return {};
  Fp q(static_cast<size_t>(fp_deg(a) - db) + 1, 0);
  const u64 inv = invmod(b.back(), p);
  for (int i = fp_deg(a); i >= db; --i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    const u64 c = mulmod(a[static_cast<size_t>(i)], inv, p);
    q[static_cast<size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<size_t>(i - db + j)];
      slot = (slot + p - mulmod(c, b[static_cast<size_t>(j)], p)) % p;
    }
  }
  fp_norm(a);
  return q;
}

Fp fp_mod(Fp a, const Fp& b, u64 p) {
  fp_divmod(a, b, p);
  return a;
}

Fp fp_div_exact(Fp a, const Fp& b, u64 p) {
  Fp q = fp_divmod(a, b, p);
  if (!a.empty()) throw Error("inexact polynomial division");
  return q;
}

void fp_make_monic(Fp& f, u64 p) {
  if (f.empty() || f.back() == 1) return;
  const u64 inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
}

Fp fp_gcd(Fp a, Fp b, u64 p) {
  while (!b.empty()) {
    Fp r = fp_mod(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  fp_make_monic(a, p);
  return a;
}

Fp fp_derivative(const Fp& f, u64 p) {
  if (f.size() < 2) return {};
  Fp r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod(f[i], i % p, p);
  fp_norm(r);
  return r;
}

Fp fp_powmod_poly(Fp base, u64 e, const Fp& mod, u64 p) {
  Fp r = fp_mod({1}, mod, p);
  base = fp_mod(std::move(base), mod, p);
  while (e) {
    if (e & 1) r = fp_mod(fp_mul(r, base, p), mod, p);
    base = fp_mod(fp_mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

// Preimage under Frobenius when f' = 0: coefficients sit at exponents
// divisible by p and are their own p-th roots.
Fp fp_pth_root(const Fp& f, u64 p) {
  Fp r;
  for (size_t i = 0; i < f.size(); i += static_cast<size_t>(p)) r.push_back(f[i]);
  fp_norm(r);
  return r;
}

// Monic squarefree parts with multiplicities; parts are pairwise coprime and
// their weighted product reconstructs f.
void fp_squarefree_into(const Fp& f, u64 p, long long scale,
                        std::vector<std::pair<long long, Fp>>& out) {
  if (fp_deg(f) < 1) return;
  Fp fd = fp_derivative(f, p);
  if (fd.empty()) {
    fp_squarefree_into(fp_pth_root(f, p), p, scale * static_cast<long long>(p), out);
    return;
  }
  Fp c = fp_gcd(f, fd, p);
  Fp w = fp_div_exact(f, c, p);
  long long i = 1;
  while (fp_deg(w) > 0) {
    Fp y = fp_gcd(w, c, p);
    Fp z = fp_div_exact(w, y, p);
    if (fp_deg(z) > 0) out.emplace_back(i * scale, std::move(z));
    ++i;
    w = std::move(y);
    c = fp_div_exact(std::move(c), w, p);
  }
  if (fp_deg(c) > 0)
    fp_squarefree_into(fp_pth_root(c, p), p, scale * static_cast<long long>(p), out);
}

// (degree, count) of irreducible factors of a monic squarefree polynomial.
void fp_ddf_into(Fp f, u64 p, std::vector<std::pair<int, int>>& out) {
  if (fp_deg(f) < 1) return;
  const Fp x = {0, 1};
  Fp h = fp_mod(x, f, p);
  int d = 0;
  while (fp_deg(f) >= 2 * (d + 1)) {
    ++d;
    h = fp_powmod_poly(std::move(h), p, f, p);
    Fp g = fp_gcd(fp_sub(h, x, p), f, p);
    if (fp_deg(g) > 0) {
      out.emplace_back(d, fp_deg(g) / d);
      f = fp_div_exact(std::move(f), g, p);
      h = fp_mod(std::move(h), f, p);
    }
  }
  if (fp_deg(f) > 0) out.emplace_back(fp_deg(f), 1);
}

Fp reduce_mod_p(const std::vector<mpz>& poly, u64 p) {
  const mpz P(p);
  Fp r(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) {
    mpz c = poly[i] % P;
    if (c < 0) c += P;
    r[i] = c.convert_to<u64>();
  }
  fp_norm(r);
  return r;
}

void require_monic(const std::vector<mpz>& poly) {
  if (poly.size() < 2) throw DomainError("defining polynomial must be nonconstant");
  if (poly.back() != 1) throw DomainError("defining polynomial must be monic");
}

// Dedekind criterion: with f = g*h mod p (g the radical, h the cofactor) and
// F = (gh - f)/p, the order Z[x]/(f) is maximal at p iff gcd(F, g, h) = 1.
bool dedekind_index_divisor(const std::vector<mpz>& poly, u64 p) {
  const Fp fbar = reduce_mod_p(poly, p);
  std::vector<std::pair<long long, Fp>> parts;
  fp_squarefree_into(fbar, p, 1, parts);
  Fp gbar = {1};
  for (const auto& [mult, w] : parts) gbar = fp_mul(gbar, w, p);
  Fp rem = fbar;
  const Fp hbar = fp_divmod(rem, gbar, p);
  if (!rem.empty()) throw Error("radical fails to divide the reduction");

  auto lift = [](const Fp& f) {
    detail::ZPoly z(f.size());
    for (size_t i = 0; i < f.size(); ++i) z[i] = mpz(f[i]);
    return z;
  };
  detail::ZPoly gh = detail::zp_mul(lift(gbar), lift(hbar));
  detail::ZPoly diff = detail::zp_sub(gh, poly);
  const mpz P(p);
  for (auto& c : diff) {
    if (c % P != 0) throw Error("lifted product fails the mod-p identity");
    c /= P;
  }
  const Fp Fbar = reduce_mod_p(diff, p);
  const Fp d = fp_gcd(Fbar, fp_gcd(gbar, hbar, p), p);
  return fp_deg(d) >= 1;
}

long long smallest_prime_factor(long long n) {
  if (n % 2 == 0) return 2;
  for (long long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return d;
  return n;
}

// Per-field splitting dispatcher with the discriminant hoisted out of the
// per-prime path.
class ShapeOracle {
 public:
  explicit ShapeOracle(const FieldDefinition& field) : field_(field) {
    if (field_.kind == FieldDefinition::Kind::Polynomial) {
      require_monic(field_.poly);
      disc_ = detail::disc_of_monic(field_.poly);
      if (disc_ == 0) throw DomainError("defining polynomial is not separable");
    }
  }

  SplittingShape shape(long long p) const {
    if (field_.kind == FieldDefinition::Kind::Quadratic)
      return quadratic_splitting(field_.quad_D, p);

    const int n = static_cast<int>(field_.poly.size()) - 1;
    if (auto it = field_.overrides.find(p); it != field_.overrides.end()) {
      long long total = 0;
      for (const auto& [e, f] : it->second) total += static_cast<long long>(e) * f;
      if (total != n)
        throw DomainError("override shape at p = " + std::to_string(p) +
                          " does not sum to the degree");
      SplittingShape s{p, it->second};
      std::sort(s.factors.begin(), s.factors.end());
      return s;
    }

    if (disc_ % mpz(p) == 0 && dedekind_index_divisor(field_.poly, static_cast<u64>(p)))
      throw IndexDivisorUnknown(p);
    return SplittingShape{p, poly_shape_mod_p(field_.poly, p)};
  }

 private:
  const FieldDefinition& field_;
  mpz disc_;
};

}  // namespace

int kronecker_symbol(long long D, unsigned long long n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((D & 1) == 0) return 0;
    long long dm = D % 8;
    if (dm < 0) dm += 8;
    if ((twos & 1) && (dm == 3 || dm == 5)) result = -result;
  }
  unsigned long long m = n;
  long long a0 = static_cast<long long>(static_cast<__int128>(D) % static_cast<__int128>(m));
  if (a0 < 0) a0 += static_cast<long long>(m);
  unsigned long long a = static_cast<unsigned long long>(a0);
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const unsigned long long r = m & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, m);
    if ((a & 3) == 3 && (m & 3) == 3) t = -t;
    a %= m;
  }
  if (m != 1) return 0;
  return result * t;
}

SplittingShape quadratic_splitting(long long D, long long p) {
  const int k = kronecker_symbol(D, static_cast<unsigned long long>(p));
  SplittingShape s{p, {}};
  if (k == 1)
    s.factors = {{1, 1}, {1, 1}};
  else if (k == -1)
    s.factors = {{1, 2}};
  else
    s.factors = {{2, 1}};
  return s;
}

std::vector<std::pair<int, int>> poly_shape_mod_p(const std::vector<mpz>& poly, long long p) {
  require_monic(poly);
  if (p < 2) throw DomainError("modulus must be a prime");
  const u64 up = static_cast<u64>(p);
  const Fp f = reduce_mod_p(poly, up);
  if (fp_deg(f) != static_cast<int>(poly.size()) - 1)
    throw Error("degree dropped under reduction of a monic polynomial");

  std::vector<std::pair<long long, Fp>> parts;
  fp_squarefree_into(f, up, 1, parts);
  std::vector<std::pair<int, int>> shape;
  for (const auto& [mult, w] : parts) {
    std::vector<std::pair<int, int>> degs;
    fp_ddf_into(w, up, degs);
    for (const auto& [d, cnt] : degs)
      for (int i = 0; i < cnt; ++i) shape.emplace_back(static_cast<int>(mult), d);
  }
  std::sort(shape.begin(), shape.end());
  return shape;
}

SplittingShape splitting_shape(const FieldDefinition& field, long long p) {
  if (p < 2) throw DomainError("p must be a prime");
  return ShapeOracle(field).shape(p);
}

double lambda_tilde(const FieldDefinition& field, long long n) {
  if (n < 1) throw DomainError("lambda_tilde needs n >= 1");
  if (n == 1) return 0.0;
  const long long p = smallest_prime_factor(n);
  long long m = n;
  int k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) return 0.0;
  const SplittingShape s = splitting_shape(field, p);
  int fsum = 0;
  for (const auto& [e, f] : s.factors)
    if (k % f == 0) fsum += f;
  return fsum == 0 ? 0.0 : std::log(static_cast<double>(p)) * fsum;
}

PsiAccumulator accumulate_psi(const FieldDefinition& field, double x, bool keep_contributions,
                              unsigned threads) {
  if (!(x >= 0)) throw DomainError("cutoff must be nonnegative");
  if (x > kCutoffGuard) throw CutoffTooLarge(x, kCutoffGuard);

  PsiAccumulator acc;
  acc.x = x;
  const long long N = static_cast<long long>(std::floor(x));
  if (N < 2) return acc;

  const ShapeOracle oracle(field);

  auto sqrtN = static_cast<uint32_t>(std::sqrt(static_cast<double>(N)));
  while (static_cast<u64>(sqrtN + 1) * (sqrtN + 1) <= static_cast<u64>(N)) ++sqrtN;
  const std::vector<uint32_t> base = detail::primes_up_to(sqrtN);

  constexpr long long kBlock = 1LL << 21;
  const auto nblocks = static_cast<size_t>(N / kBlock + 1);

  struct BlockOut {
    long double psi = 0, theta = 0, moment1 = 0;
    long long pi = 0;
    std::vector<std::pair<long long, double>> contrib;
    std::vector<std::pair<long long, double>> norms;
  };
  std::vector<BlockOut> outs(nblocks);

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto process_prime = [&](long long p, BlockOut& out) {
    const SplittingShape s = oracle.shape(p);
    const double lp = std::log(static_cast<double>(p));
    int kmax = 1;
    {
      long long pk = p;
      while (pk <= N / p) {
        pk *= p;
        ++kmax;
      }
    }
    long long pk = p;
    for (int k = 1; k <= kmax; ++k) {
      int fsum = 0;
      for (const auto& [e, f] : s.factors)
        if (k % f == 0) fsum += f;
      if (fsum > 0) {
        const double lam = lp * fsum;
        out.psi += lam;
        out.moment1 += static_cast<long double>(pk) * lam;
        if (keep_contributions) out.contrib.emplace_back(pk, lam);
      }
      if (k < kmax) pk *= p;
    }
    for (const auto& [e, f] : s.factors) {
      if (f <= kmax) {
        out.theta += static_cast<long double>(f) * lp;
        ++out.pi;
        if (keep_contributions) {
          long long norm = p;
          for (int i = 1; i < f; ++i) norm *= p;
          out.norms.emplace_back(norm, f * lp);
        }
      }
    }
  };

  auto worker = [&]() {
    std::vector<char> is_prime;
    while (!failed.load(std::memory_order_relaxed)) {
      const size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      const long long lo = static_cast<long long>(b) * kBlock;
      const long long hi = std::min<long long>(lo + kBlock, N + 1);
      const long long start = std::max<long long>(lo, 2);
      if (start >= hi) continue;
      is_prime.assign(static_cast<size_t>(hi - lo), 1);
      for (const uint32_t q32 : base) {
        const auto q = static_cast<long long>(q32);
        if (q * q >= hi) break;
        long long v = std::max(q * q, (start + q - 1) / q * q);
        for (; v < hi; v += q) is_prime[static_cast<size_t>(v - lo)] = 0;
      }
      try {
        BlockOut& out = outs[b];
        for (long long v = start; v < hi; ++v)
          if (is_prime[static_cast<size_t>(v - lo)]) process_prime(v, out);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const unsigned nt =
      std::min<unsigned>(detail::resolve_threads(threads), static_cast<unsigned>(nblocks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  long double psi = 0, theta = 0, moment1 = 0;
  long long pi = 0;
  for (auto& out : outs) {
    psi += out.psi;
    theta += out.theta;
    moment1 += out.moment1;
    pi += out.pi;
    if (keep_contributions) {
      acc.contributions.insert(acc.contributions.end(), out.contrib.begin(), out.contrib.end());
      acc.ideal_norms.insert(acc.ideal_norms.end(), out.norms.begin(), out.norms.end());
    }
  }
  acc.psi = static_cast<double>(psi);
  acc.theta = static_cast<double>(theta);
  acc.moment1 = static_cast<double>(moment1);
  acc.pi = pi;
  if (keep_contributions) {
    std::sort(acc.contributions.begin(), acc.contributions.end());
    std::sort(acc.ideal_norms.begin(), acc.ideal_norms.end());
  }
  return acc;
}

double psi_K(const FieldDefinition& field, double x, unsigned threads) {
  return accumulate_psi(field, x, false, threads).psi;
}

double theta_K(const FieldDefinition& field, double x, unsigned threads) {
  return accumulate_psi(field, x, false, threads).theta;
}

long long pi_K(const FieldDefinition& field, double x, unsigned threads) {
  return accumulate_psi(field, x, false, threads).pi;
}

double psi1_K(const FieldDefinition& field, double x, unsigned threads) {
  const PsiAccumulator acc = accumulate_psi(field, x, false, threads);
  return x * acc.psi - acc.moment1;
}

bool goldston_sandwich_check(const FieldDefinition& field, double x, double h,
                             unsigned threads) {
  if (!(x >= 2)) throw DomainError("sandwich check needs x >= 2");
  if (!(h > 0) && !(h < 0 && h > -x))
    throw DomainError("step must be positive or lie in (-x, 0)");
  const PsiAccumulator at_x = accumulate_psi(field, x, false, threads);
  const PsiAccumulator at_xh = accumulate_psi(field, x + h, false, threads);
  const double psi = at_x.psi;
  const double p1_x = x * at_x.psi - at_x.moment1;
  const double p1_xh = (x + h) * at_xh.psi - at_xh.moment1;
  const double quotient = (p1_xh - p1_x) / h;
  const double tol = 1e-9 * (1.0 + std::abs(psi));
  return h > 0 ? psi <= quotient + tol : psi >= quotient - tol;
}

RangeVerifyReport verify_bound_on_range(const FieldDefinition& field, BoundKind kind,
                                        long long x_from, long long x_to, double margin,
                                        unsigned threads) {
  if (x_from > x_to) throw DomainError("x range is empty");
  if (x_from < 1) throw DomainError("x range must start at 1 or above");
  if (kind == BoundKind::cor3)
    throw DomainError("the prime-counting bound does not bound psi");
  const FieldParams params = params_from_definition(field);
  if (kind == BoundKind::schoenfeld_Q && params.n_K != 1)
    throw DomainError("the classical bound applies to degree 1 only");

  const PsiAccumulator acc =
      accumulate_psi(field, static_cast<double>(x_to), true, threads);

  RangeVerifyReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  size_t idx = 0;
  double psi = 0;
  for (long long xi = x_from; xi <= x_to; ++xi) {
    while (idx < acc.contributions.size() && acc.contributions[idx].first <= xi)
      psi += acc.contributions[idx++].second;
    const auto xd = static_cast<double>(xi);
    double value = 0;
    switch (kind) {
      case BoundKind::theorem1:
        value = optimize_T(xd, params).report.value;
        break;
      case BoundKind::cor1:
        value = corollary1_bound(xd, params).value;
        break;
      case BoundKind::cor2_general:
        value = corollary2_bound(xd, params, Cor2Variant::general).value;
        break;
      case BoundKind::cor2_large:
        value = corollary2_bound(xd, params, Cor2Variant::large).value;
        break;
      case BoundKind::schoenfeld_Q:
        value = schoenfeld_bound(xd);
        break;
      case BoundKind::cor3:
        break;
    }
    const double dev = std::abs(psi - xd);
    const double m = value - dev;
    ++rep.checked;
    if (m < rep.min_margin) {
      rep.min_margin = m;
      rep.argmin_x = xi;
    }
    if (m < margin) ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

FieldParams params_from_definition(const FieldDefinition& field) {
  if (field.kind == FieldDefinition::Kind::Quadratic)
    return params_from_quadratic(field.quad_D);
  require_monic(field.poly);
  const mpz pdisc = detail::disc_of_monic(field.poly);
  if (pdisc == 0) throw DomainError("defining polynomial is not separable");
  const int n = static_cast<int>(field.poly.size()) - 1;
  const int r1 = detail::count_real_roots(field.poly);
  const mpz disc_abs = field.disc_abs ? *field.disc_abs : mpz(abs(pdisc));
  if (disc_abs <= 0) throw DomainError("field discriminant must be nonzero");
  const real300 rd(disc_abs);
  const double log_disc = log(rd).convert_to<double>();
  return FieldParams(n, r1, (n - r1) / 2, log_disc);
}

mpz poly_disc(const std::vector<mpz>& poly) {
  require_monic(poly);
  return detail::disc_of_monic(poly);
}

}  // namespace psigrh
