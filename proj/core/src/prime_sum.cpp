#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "mp_analytic.hpp"
#include "psigrh/errors.hpp"
#include "psigrh/zero_bounds.hpp"
#include "sieve.hpp"

namespace mp = boost::multiprecision;

namespace psigrh {

namespace {

int sign_of_S_scaled(const std::vector<mpz>& A, long long n) {
  const int m = static_cast<int>(A.size());
  const mpz N(n);
  mpz P = 0, Q = 0;
  for (int j = 1; j <= m; j += 2) P = P * N + A[static_cast<size_t>(j - 1)];
  for (int j = 2; j <= m; j += 2) Q = Q * N + A[static_cast<size_t>(j - 1)];
  const mpz r = mp::sqrt(N);
  if (r * r == N) {
    const mpz v = P + r * Q;
    return v.sign();
  }
  const int sp = P.sign();
  const int sq = Q.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  const mpz diff = P * P - N * Q * Q;
  const int s = diff.sign();
  return sp > 0 ? s : -s;
}

double round_up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

}  // namespace

int sign_of_S(const MajorantCertificate& cert, long long n) {
  if (n < 1) throw DomainError("sign of S requires n >= 1");
  cert.validate();
  return sign_of_S_scaled(cert.coef_scaled, n);
}

CertificateConstants verify_prime_sum(const MajorantCertificate& cert, unsigned threads) {
  cert.validate();
  const int m = cert.coefficient_count();
  const auto& A = cert.coef_scaled;

  // sign alternation: odd-indexed coefficients negative, even-indexed positive
  for (int j = 1; j <= m; ++j) {
    const mpz& a = A[static_cast<size_t>(j - 1)];
    if (j % 2 == 1 && !(a < 0))
      throw SignPatternViolation("coefficient " + std::to_string(j) + " must be negative", -1, j);
    if (j % 2 == 0 && !(a > 0))
      throw SignPatternViolation("coefficient " + std::to_string(j) + " must be positive", -1, j);
  }

  // pairwise domination keeps S negative beyond the finite check range
  for (int j = 1; j + 1 <= m; j += 2) {
    const mpz& neg = A[static_cast<size_t>(j - 1)];
    const mpz& pos = A[static_cast<size_t>(j)];
    if (mpz(cert.n_check) * neg * neg < pos * pos)
      throw SignPatternViolation("coefficient pair cannot stay negative past the check threshold", -1, (j + 1) / 2);
  }

  // exact sign scan over the full finite range
  {
    const long long lo = 2, hi = cert.n_check;
    const long long block = 4096;
    const long long nblocks = (hi - lo) / block + 1;
    std::vector<long long> first_bad(static_cast<size_t>(nblocks), -1);
    std::atomic<long long> next{0};
    const unsigned nt = detail::resolve_threads(threads);
    auto worker = [&] {
      for (;;) {
        const long long b = next.fetch_add(1);
        if (b >= nblocks) return;
        const long long start = lo + b * block;
        const long long stop = std::min(hi, start + block - 1);
        long long bad = -1;
        for (long long n = start; n <= stop; ++n) {
          const int s = sign_of_S_scaled(A, n);
          const bool ok = n <= cert.n_pos ? s > 0 : s < 0;
          if (!ok) {
            bad = n;
            break;
          }
        }
        first_bad[static_cast<size_t>(b)] = bad;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (long long b = 0; b < nblocks; ++b) {
      if (first_bad[static_cast<size_t>(b)] >= 0) {
        const long long n = first_bad[static_cast<size_t>(b)];
        throw SignPatternViolation(std::string("S has the wrong sign at n = ") + std::to_string(n) +
                                       (n <= cert.n_pos ? " (expected positive)" : " (expected negative)"),
                                   n);
      }
    }
  }

  CertificateConstants out;

  // exact rational sums
  {
    mpq sa = 0, sp = 0;
    for (int j = 1; j <= m; ++j) {
      const mpq aj = mpq(A[static_cast<size_t>(j - 1)]) / mpq(10000000);
      sa += aj;
      sp += aj * (mpq(4) / (j + 2) + mpq(4) / j);
    }
    out.sum_a = static_cast<double>(sa);
    out.sum_pole = static_cast<double>(sp);
  }

  // digamma sums at 300 digits; the evaluations are correctly rounded, the
  // cushion absorbs accumulation
  {
    real300 sh = 0, ss = 0;
    for (int j = 1; j <= m; ++j) {
      const real300 aj = real300(mpq(A[static_cast<size_t>(j - 1)]) / mpq(10000000));
      sh += aj * detail::digamma_mp(real300(mpq(2 + j) / 4));
      ss += aj * detail::digamma_mp(real300(mpq(4 + j) / 4));
    }
    const real300 cushion("1e-40");
    out.sum_gamma_half = round_up(static_cast<double>(sh + cushion));
    out.sum_gamma_shift = round_up(static_cast<double>(ss + cushion));
  }

  // prime sum slack: sum_j a_j (zeta'/zeta)(s_j) + sum over prime powers
  // n <= n_pos of Lambda(n) S(n), reported as a certified upper bound
  {
    real300 value = 0, err = 0;
    std::vector<real300> aj(static_cast<size_t>(m));
    for (int j = 1; j <= m; ++j) aj[static_cast<size_t>(j - 1)] = real300(mpq(A[static_cast<size_t>(j - 1)]) / mpq(10000000));

    for (int j = 1; j <= m; ++j) {
      const auto zp = detail::zeta_with_deriv_mp(real300(mpq(2 + j) / 2));
      const real300 ratio = zp.dzeta / zp.zeta;
      const real300 denom = abs(zp.zeta) - zp.zeta_err;
      const real300 rerr = (zp.dzeta_err + abs(ratio) * zp.zeta_err) / denom;
      value += aj[static_cast<size_t>(j - 1)] * ratio;
      err += abs(aj[static_cast<size_t>(j - 1)]) * rerr;
    }

    std::vector<std::pair<long long, uint32_t>> ppowers;  // (p^k, p)
    for (uint32_t p : detail::primes_up_to(static_cast<uint32_t>(cert.n_pos))) {
      long long pk = p;
      while (pk <= cert.n_pos) {
        ppowers.emplace_back(pk, p);
        if (pk > cert.n_pos / p) break;
        pk *= p;
      }
    }

    const size_t chunk = 256;
    const size_t nchunks = (ppowers.size() + chunk - 1) / chunk;
    std::vector<real300> partial(nchunks, real300(0));
    std::atomic<size_t> next{0};
    const unsigned nt = detail::resolve_threads(threads);
    auto worker = [&] {
      for (;;) {
        const size_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        real300 acc = 0;
        const size_t stop = std::min(ppowers.size(), (c + 1) * chunk);
        for (size_t i = c * chunk; i < stop; ++i) {
          const auto [n, p] = ppowers[i];
          const real300 t = 1 / sqrt(real300(n));
          real300 horner = aj[static_cast<size_t>(m - 1)];
          for (int j = m - 1; j >= 1; --j) horner = horner * t + aj[static_cast<size_t>(j - 1)];
          acc += log(real300(p)) * horner * t * t * t;
        }
        partial[c] = acc;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const real300& acc : partial) value += acc;

    out.prime_sum_slack = round_up(static_cast<double>(value + err + real300("1e-35")));
  }

  return out;
}

double closure_coef_n(const CertificateConstants& c, int r1, int r2) {
  if (r1 < 0 || r2 < 0 || r1 + 2 * r2 < 1) throw DomainError("invalid signature");
  const int n = r1 + 2 * r2;
  return -c.sum_a * n * std::log(M_PI) + (r1 + r2) * c.sum_gamma_half + r2 * c.sum_gamma_shift +
         c.prime_sum_slack * n;
}

}  // namespace psigrh
