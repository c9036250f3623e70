#include "mp_analytic.hpp"

#include <mpfr.h>

#include <vector>

#include "psigrh/errors.hpp"

namespace mp = boost::multiprecision;

namespace psigrh::detail {

const mpq& bernoulli(int m) {
  static const std::vector<mpq> table = [] {
    const int M = 64;
    std::vector<mpq> b(static_cast<size_t>(M) + 1);
    b[0] = 1;
    for (int mm = 1; mm <= M; ++mm) {
      mpq acc = 0;
      mpz binom = 1;  // C(mm+1, j) built incrementally
      for (int j = 0; j < mm; ++j) {
        acc += mpq(binom) * b[static_cast<size_t>(j)];
        binom = binom * (mm + 1 - j) / (j + 1);
      }
      b[static_cast<size_t>(mm)] = -acc / (mm + 1);
    }
    return b;
  }();
  if (m < 0 || m > 64) throw DomainError("Bernoulli index out of range");
  return table[static_cast<size_t>(m)];
}

real300 digamma_mp(const real300& x) {
  if (x <= 0) throw DomainError("digamma requires a positive argument");
  real300 r;
  mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

ZetaPair zeta_with_deriv_mp(const real300& s) {
  if (s < real300("1.5")) throw DomainError("zeta evaluation requires s >= 1.5");
  constexpr int N = 600;
  constexpr int K = 8;

  real300 sum = 0, dsum = 0;
  for (int n = 1; n <= N; ++n) {
    const real300 ln = log(real300(n));
    const real300 pw = exp(-s * ln);
    sum += pw;
    dsum -= ln * pw;
  }
  const real300 lnN = log(real300(N));
  const real300 s1 = s - 1;
  const real300 nm = exp((1 - s) * lnN);  // N^(1-s)
  const real300 ns = exp(-s * lnN);       // N^(-s)
  sum += nm / s1 - ns / 2;
  dsum += -lnN * nm / s1 - nm / (s1 * s1) + lnN * ns / 2;

  static const std::vector<mpq> coeffs = [] {
    std::vector<mpq> c(K + 1);
    mpz fact = 1;
    for (int i = 1; i <= 2 * K; ++i) {
      fact *= i;
      if (i % 2 == 0) c[static_cast<size_t>(i / 2)] = bernoulli(i) / mpq(fact);
    }
    return c;
  }();

  real300 poch = 1, hsum = 0;
  int idx = 0;  // poch == rising factorial (s)_idx
  for (int k = 1; k <= K; ++k) {
    while (idx < 2 * k - 1) {
      poch *= (s + idx);
      hsum += 1 / (s + idx);
      ++idx;
    }
    const real300 ck(coeffs[static_cast<size_t>(k)]);
    const real300 pw = exp((-s - (2 * k - 1)) * lnN);
    sum += ck * poch * pw;
    dsum += ck * (poch * hsum - lnN * poch) * pw;
  }
  while (idx < 2 * K + 1) {
    poch *= (s + idx);
    hsum += 1 / (s + idx);
    ++idx;
  }
  const real300 a = s + 2 * K;
  const real300 pwa = exp(-a * lnN);
  const real300 twopi = 8 * atan(real300(1));
  const real300 C = real300("2.5") / pow(twopi, 2 * K + 1);
  const real300 rounding("1e-250");

  ZetaPair out;
  out.zeta = sum;
  out.zeta_err = C * poch * pwa / a + rounding;
  out.dzeta = dsum;
  out.dzeta_err = C * (poch * hsum * pwa / a + poch * pwa * (lnN / a + 1 / (a * a))) + rounding;
  return out;
}

namespace {
const mpz& ten140() {
  static const mpz v = mp::pow(mpz(10), 140);
  return v;
}
}  // namespace

QInterval g_enclosure(const mpq& gamma) {
  if (gamma < 0) throw DomainError("g enclosure requires gamma >= 0");
  const mpz p = numerator(gamma);
  const mpz q = denominator(gamma);
  if (p == 0) return {mpq(2), mpq(2)};
  const mpz M = q * q + 4 * p * p;
  const mpz Ms = M * ten140() * ten140();
  const mpz s = mp::sqrt(Ms);
  const mpz num = 2 * q * ten140();
  return {mpq(num) / mpq(s + 1), mpq(num) / mpq(s)};
}

QInterval gprime_enclosure(const mpq& gamma) {
  if (gamma < 0) throw DomainError("g' enclosure requires gamma >= 0");
  const mpz p = numerator(gamma);
  const mpz q = denominator(gamma);
  if (p == 0) return {mpq(0), mpq(0)};
  const mpz M = q * q + 4 * p * p;
  const mpz M3s = M * M * M * ten140() * ten140();
  const mpz s3 = mp::sqrt(M3s);
  const mpz num = 8 * p * q * q * ten140();
  return {mpq(-num) / mpq(s3), mpq(-num) / mpq(s3 + 1)};
}

}  // namespace psigrh::detail
