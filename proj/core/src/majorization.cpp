#include <cmath>
#include <sstream>

#include "psigrh/errors.hpp"
#include "psigrh/zero_bounds.hpp"
#include "qpoly.hpp"

namespace psigrh {

namespace {

using detail::ZPoly;

// D(u) = prod_j ((j+1)^2 + 4u) and N(u) = sum_j 4 (j+1) A_j prod_{k != j} ((k+1)^2 + 4u),
// so that 1e7 * F(gamma) = N(gamma^2) / D(gamma^2) with the scaled integer
// coefficients A_j.
struct FractionPolys {
  ZPoly N, D;
};

FractionPolys build_fraction(const MajorantCertificate& cert) {
  const int m = cert.coefficient_count();
  std::vector<ZPoly> lin(static_cast<size_t>(m));
  for (int j = 1; j <= m; ++j)
    lin[static_cast<size_t>(j - 1)] = ZPoly{mpz(j + 1) * (j + 1), mpz(4)};

  std::vector<ZPoly> prefix(static_cast<size_t>(m) + 1), suffix(static_cast<size_t>(m) + 1);
  prefix[0] = ZPoly{1};
  for (int i = 0; i < m; ++i) prefix[static_cast<size_t>(i + 1)] = detail::zp_mul(prefix[static_cast<size_t>(i)], lin[static_cast<size_t>(i)]);
  suffix[static_cast<size_t>(m)] = ZPoly{1};
  for (int i = m - 1; i >= 0; --i) suffix[static_cast<size_t>(i)] = detail::zp_mul(suffix[static_cast<size_t>(i + 1)], lin[static_cast<size_t>(i)]);

  FractionPolys fp;
  fp.D = prefix[static_cast<size_t>(m)];
  fp.N = ZPoly{};
  for (int j = 1; j <= m; ++j) {
    ZPoly others = detail::zp_mul(prefix[static_cast<size_t>(j - 1)], suffix[static_cast<size_t>(j)]);
    const mpz w = 4 * (j + 1) * cert.coef_scaled[static_cast<size_t>(j - 1)];
    fp.N = detail::zp_add(fp.N, detail::zp_scale(others, w));
  }
  return fp;
}

double witness_gamma(const mpq& u) {
  const double ud = static_cast<double>(u);
  return ud <= 0 ? 0.0 : std::sqrt(ud);
}

}  // namespace

MajorizationReport verify_majorization(const MajorantCertificate& cert) {
  cert.validate();
  const FractionPolys fp = build_fraction(cert);

  MajorizationReport rep;

  // F must be nonnegative on the whole half-line
  const auto nn = detail::prove_nonneg(fp.N, mpq(0), std::nullopt);
  if (!nn.ok) {
    rep.pass = false;
    rep.witness = witness_gamma(nn.witness ? *nn.witness : mpq(0));
    std::ostringstream os;
    os << "numerator negative for gamma^2 near " << (nn.witness ? static_cast<double>(*nn.witness) : 0.0) << ": " << nn.detail;
    rep.detail = os.str();
    return rep;
  }

  // on [0, 25] in u = gamma^2, F >= 2/sqrt(1+4u) squared against the
  // denominator: N^2 (1+4u) >= 4e14 D^2
  ZPoly lhs = detail::zp_mul(detail::zp_mul(fp.N, fp.N), ZPoly{1, 4});
  ZPoly rhs = detail::zp_scale(detail::zp_mul(fp.D, fp.D), mpz("400000000000000"));
  ZPoly gap = detail::zp_sub(lhs, rhs);
  const auto sq = detail::prove_nonneg(gap, mpq(0), mpq(25));
  if (!sq.ok) {
    rep.pass = false;
    rep.witness = witness_gamma(sq.witness ? *sq.witness : mpq(0));
    std::ostringstream os;
    os << "majorant dips below the target for gamma^2 near " << (sq.witness ? static_cast<double>(*sq.witness) : 0.0) << ": " << sq.detail;
    rep.detail = os.str();
    return rep;
  }

  rep.pass = true;
  rep.detail = "numerator nonnegative on [0,inf) [" + nn.detail + "]; squared comparison nonnegative on [0,25] [" + sq.detail + "]";
  return rep;
}

}  // namespace psigrh
