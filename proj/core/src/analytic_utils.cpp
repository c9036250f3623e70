#include "psigrh/analytic_utils.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mp_analytic.hpp"
#include "psigrh/errors.hpp"

namespace psigrh {

namespace {

constexpr int kEulerMaclaurinN = 24;
constexpr int kEulerMaclaurinK = 8;

double bern_over(int two_k) {  // B_{2k}/(2k)!-style exact rational to double
  return static_cast<double>(detail::bernoulli(two_k));
}

struct EmResult {
  double z, z_err;
  double dz, dz_err;
};

// Euler-Maclaurin for zeta and zeta' in doubles with a certified truncation
// bound and a crude-but-safe roundoff allowance.
EmResult zeta_em(double s) {
  constexpr int N = kEulerMaclaurinN;
  constexpr int K = kEulerMaclaurinK;
  const double eps = std::numeric_limits<double>::epsilon();

  double sum = 0, dsum = 0, abs_sum = 0, abs_dsum = 0;
  for (int n = 1; n <= N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double pw = std::exp(-s * ln);
    sum += pw;
    dsum -= ln * pw;
    abs_sum += pw;
    abs_dsum += ln * pw;
  }
  const double lnN = std::log(static_cast<double>(N));
  const double nm = std::exp((1 - s) * lnN);
  const double ns = std::exp(-s * lnN);
  const double s1 = s - 1;
  sum += nm / s1 - ns / 2;
  dsum += -lnN * nm / s1 - nm / (s1 * s1) + lnN * ns / 2;
  abs_sum += std::abs(nm / s1) + ns / 2;
  abs_dsum += std::abs(lnN * nm / s1) + std::abs(nm / (s1 * s1)) + lnN * ns / 2;

  double poch = 1, hsum = 0;
  int idx = 0;
  for (int k = 1; k <= K; ++k) {
    while (idx < 2 * k - 1) {
      poch *= (s + idx);
      hsum += 1 / (s + idx);
      ++idx;
    }
    double fact = 1;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    const double ck = bern_over(2 * k) / fact;
    const double pw = std::exp((-s - (2 * k - 1)) * lnN);
    sum += ck * poch * pw;
    dsum += ck * (poch * hsum - lnN * poch) * pw;
    abs_sum += std::abs(ck * poch * pw);
    abs_dsum += std::abs(ck * poch * hsum * pw) + std::abs(ck * lnN * poch * pw);
  }
  while (idx < 2 * K + 1) {
    poch *= (s + idx);
    hsum += 1 / (s + idx);
    ++idx;
  }
  const double a = s + 2 * K;
  const double pwa = std::exp(-a * lnN);
  const double two_pi = 2 * M_PI;
  const double C = 2.5 / std::pow(two_pi, 2 * K + 1);
  const double trunc_z = C * poch * pwa / a;
  const double trunc_dz = C * (poch * hsum * pwa / a + poch * pwa * (lnN / a + 1 / (a * a)));

  EmResult r;
  r.z = sum;
  r.dz = dsum;
  r.z_err = trunc_z + 60 * eps * abs_sum;
  r.dz_err = trunc_dz + 60 * eps * abs_dsum;
  return r;
}

}  // namespace

double digamma(double x) {
  if (!std::isfinite(x) || x <= 0) throw DomainError("digamma requires a finite positive argument");
  double acc = 0;
  double y = x;
  while (y < 8) {
    acc -= 1 / y;
    y += 1;
  }
  double asym = std::log(y) - 1 / (2 * y);
  const double y2 = y * y;
  double ypow = y2;
  for (int k = 1; k <= 8; ++k) {
    asym -= bern_over(2 * k) / (2 * k * ypow);
    ypow *= y2;
  }
  return acc + asym;
}

double von_mangoldt(long long n) {
  if (n <= 0) throw DomainError("von Mangoldt function requires n >= 1");
  if (n == 1) return 0;
  long long m = n;
  long long spf = 0;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      spf = p;
      break;
    }
  }
  if (spf == 0) return std::log(static_cast<double>(n));  // n prime
  while (m % spf == 0) m /= spf;
  return m == 1 ? std::log(static_cast<double>(spf)) : 0.0;
}

ValueWithError zeta_log_deriv(double s) {
  if (!std::isfinite(s) || s < 1.5) throw DomainError("zeta log-derivative requires s >= 1.5");
  const EmResult em = zeta_em(s);
  const double value = em.dz / em.z;
  const double denom = std::abs(em.z) - em.z_err;
  double err;
  if (denom <= 0) {
    err = std::numeric_limits<double>::infinity();
  } else {
    err = (em.dz_err + std::abs(value) * em.z_err) / denom;
  }
  return {value, err};
}

double littlewood_majorant(double x, std::complex<double> nu) {
  if (!std::isfinite(x) || x < -1) throw DomainError("majorant domain is x >= -1");
  const double re = nu.real();
  if (!std::isfinite(re) || !std::isfinite(nu.imag()) || re < 1 || re > 2)
    throw DomainError("majorant requires 1 <= Re(nu) <= 2");
  const double neg = std::max(0.0, -x);
  return (0.5 + (1 / re - 0.5) * neg) * std::abs(nu) * std::abs(nu - 1.0) * x * x;
}

double lemma22_R_prime(double x, int r1, int r2) {
  if (!std::isfinite(x) || x < 3) throw DomainError("remainder term requires x >= 3");
  if (r1 < 0 || r2 < 0 || r1 + 2 * r2 < 1) throw DomainError("invalid signature");
  const double d = r1 + r2 - 1;
  return -d * std::log(x) - 0.5 * r1 * std::log1p(-1 / (x * x)) - r2 * std::log1p(-1 / x);
}

namespace {

double li_simpson(double a, double b) {
  auto f = [](double t) { return 1 / std::log(t); };
  // iterative adaptive Simpson with an explicit stack
  struct Seg {
    double lo, hi, flo, fmid, fhi, whole;
  };
  auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6 * (flo + 4 * fmid + fhi);
  };
  const double m0 = (a + b) / 2;
  std::vector<Seg> stack;
  stack.push_back({a, b, f(a), f(m0), f(b), simpson(a, b, f(a), f(m0), f(b))});
  double total = 0;
  const double tol0 = 1e-12 * (b - a) + 1e-15;
  int depth_guard = 0;
  while (!stack.empty()) {
    if (++depth_guard > 2000000) throw Error("log integral failed to converge");
    Seg s = stack.back();
    stack.pop_back();
    const double mid = (s.lo + s.hi) / 2;
    const double lm = (s.lo + mid) / 2;
    const double rm = (mid + s.hi) / 2;
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(s.lo, mid, s.flo, flm, s.fmid);
    const double right = simpson(mid, s.hi, s.fmid, frm, s.fhi);
    const double tol = std::max(tol0 * (s.hi - s.lo) / (b - a + 1e-300), 1e-16);
    if (std::abs(left + right - s.whole) <= 15 * tol || (s.hi - s.lo) < 1e-12 * (1 + std::abs(s.lo))) {
      total += left + right + (left + right - s.whole) / 15;
    } else {
      stack.push_back({s.lo, mid, s.flo, flm, s.fmid, left});
      stack.push_back({mid, s.hi, s.fmid, frm, s.fhi, right});
    }
  }
  return total;
}

}  // namespace

double log_integral(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 2 || b < a)
    throw DomainError("log integral requires 2 <= a <= b");
  if (a == b) return 0;
  return li_simpson(a, b);
}

}  // namespace psigrh
