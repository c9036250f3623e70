#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "cert_internal.hpp"
#include "decimal.hpp"
#include "mp_analytic.hpp"
#include "psigrh/errors.hpp"
#include "psigrh/zero_bounds.hpp"

namespace mp = boost::multiprecision;

namespace psigrh {

mpq MajorantCertificate::point(int j) {
  if (j < 1) throw DomainError("interpolation point index starts at 1");
  return mpq(2 + j) / 2;
}

mpq MajorantCertificate::coefficient(int j) const {
  if (j < 1 || j > coefficient_count()) throw DomainError("coefficient index out of range");
  return mpq(coef_scaled[static_cast<size_t>(j - 1)]) / mpq(10000000);
}

void MajorantCertificate::validate() const {
  if (q < 0) throw DomainError("certificate: negative node count");
  if (static_cast<int>(nodes.size()) != q) throw DomainError("certificate: node count mismatch");
  if (static_cast<int>(coef_scaled.size()) != coefficient_count())
    throw DomainError("certificate: coefficient count mismatch");
  for (int i = 0; i < q; ++i) {
    const mpq& g = nodes[static_cast<size_t>(i)];
    if (g <= 0) throw DomainError("certificate: nodes must be positive");
    if (g == 5) throw DomainError("certificate: 5 is always a node and may not be listed");
    if (i > 0 && !(nodes[static_cast<size_t>(i - 1)] < g))
      throw DomainError("certificate: nodes must be strictly increasing");
  }
  if (n_pos < 2 || n_check < n_pos) throw DomainError("certificate: invalid sign thresholds");
  const int m = coefficient_count();
  mpz decay = 0;
  for (int j = 1; j <= m; ++j) decay += coef_scaled[static_cast<size_t>(j - 1)] * (j + 1);
  const mpz cap = mpz(m + 1) * (m + 2) / 2 - 1;
  if (abs(decay) > cap) throw DomainError("certificate: decay constraint violated beyond rounding slack");
}

const std::vector<mpq>& reference_nodes() {
  static const std::vector<mpq> nodes = [] {
    static const char* const strs[] = {"0.6", "1",  "1.9", "2.9", "3.9", "10",   "13",    "14",
                                       "15",  "16", "17",  "18",  "19",  "20",   "30",    "40",
                                       "50",  "100", "1000", "10000", "100000", "1000000"};
    std::vector<mpq> out;
    out.reserve(22);
    for (const char* s : strs) out.push_back(detail::decimal_to_mpq(s));
    return out;
  }();
  return nodes;
}

static MajorantCertificate make_reference_certificate() {
  static const char* const coefs[] = {
      "-324328089",
      "115693093357",
      "-10579381239203",
      "495540769876127",
      "-14528281352885983",
      "296347058332550155",
      "-4498154499661073603",
      "53248447239339829090",
      "-508947342104081739447",
      "4033084416071505510477",
      "-27051470635668143949707",
      "156121546937577920978167",
      "-785529078417852387859619",
      "3482495472267374521416188",
      "-13720533216155265613103988",
      "48375037637788872322025183",
      "-153492067547835461489301521",
      "440289327629182231371781424",
      "-1145934878685670756527108765",
      "2713965041058219158192688004",
      "-5861973594145453618923885659",
      "11566694720865120123031709900",
      "-20874589384842483010331503670",
      "34482298986730410055952580804",
      "-52154912212245427675107284117",
      "72227309752304735434420743120",
      "-91546659026910381192366828396",
      "106117853961289012764032450733",
      "-112369546004525999862866475251",
      "108533470948598920563558219043",
      "-95431698456287244651252772381",
      "76206788473674179730998288621",
      "-55105812322315804526845019881",
      "35955970546002972861665837368",
      "-21079935102298710141936369413",
      "11047616237574616067334355219",
      "-5143709248575449263188160534",
      "2111566552644017238627810350",
      "-757162365842762640320305866",
      "234379624034767935847527151",
      "-61692234538384117080736694",
      "13534020670767148307863583",
      "-2407266538638620726296042",
      "333452115133845423979326",
      "-33740880236473501034280",
      "2218003445878553284287",
      "-71076474624305025203",
  };
  MajorantCertificate cert;
  cert.q = 22;
  cert.nodes = reference_nodes();
  cert.coef_scaled.reserve(47);
  for (const char* s : coefs) cert.coef_scaled.emplace_back(s);
  cert.validate();
  return cert;
}

const MajorantCertificate& reference_certificate() {
  static const MajorantCertificate cert = make_reference_certificate();
  return cert;
}

namespace detail {

std::vector<RowSpec> certificate_rows(const std::vector<mpq>& nodes) {
  std::vector<RowSpec> rows;
  rows.reserve(2 * nodes.size() + 3);
  rows.push_back({RowSpec::Kind::value, mpq(0)});
  for (const mpq& g : nodes) rows.push_back({RowSpec::Kind::value, g});
  rows.push_back({RowSpec::Kind::value, mpq(5)});
  for (const mpq& g : nodes) rows.push_back({RowSpec::Kind::deriv, g});
  rows.push_back({RowSpec::Kind::decay, mpq(0)});
  return rows;
}

mpq certificate_entry(const RowSpec& row, int j) {
  const mpq c(j + 1);
  switch (row.kind) {
    case RowSpec::Kind::value:
      return 4 * c / (c * c + 4 * row.gamma * row.gamma);
    case RowSpec::Kind::deriv: {
      const mpq den = c * c + 4 * row.gamma * row.gamma;
      return -32 * c * row.gamma / (den * den);
    }
    case RowSpec::Kind::decay:
      return c;
  }
  throw Error("unreachable row kind");
}

}  // namespace detail

namespace {

void check_nodes(const std::vector<mpq>& nodes) {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] <= 0) throw DomainError("nodes must be positive");
    if (nodes[i] == 5) throw DomainError("5 is always a node and may not be listed");
    if (i > 0 && !(nodes[i - 1] < nodes[i])) throw DomainError("nodes must be strictly increasing");
  }
}

template <typename Real>
Real g_target(const mpq& gamma) {
  if (gamma == 0) return Real(2);
  if (gamma > 5) return Real(0);
  const Real t(gamma);
  return 2 / sqrt(1 + 4 * t * t);
}

template <typename Real>
Real gprime_target(const mpq& gamma) {
  if (gamma > 5) return Real(0);
  const Real t(gamma);
  const Real base = 1 + 4 * t * t;
  return -8 * t / (base * sqrt(base));
}

template <typename Real>
Real rhs_target(const detail::RowSpec& row) {
  switch (row.kind) {
    case detail::RowSpec::Kind::value:
      return g_target<Real>(row.gamma);
    case detail::RowSpec::Kind::deriv:
      return gprime_target<Real>(row.gamma);
    case detail::RowSpec::Kind::decay:
      return Real(0);
  }
  throw Error("unreachable row kind");
}

// LU factorization with partial pivoting over real300.
struct Lu300 {
  int m = 0;
  std::vector<std::vector<real300>> a;
  std::vector<int> perm;

  void factor() {
    perm.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<size_t>(i)] = i;
    for (int k = 0; k < m; ++k) {
      int piv = k;
      real300 best = abs(a[static_cast<size_t>(k)][static_cast<size_t>(k)]);
      for (int i = k + 1; i < m; ++i) {
        real300 cand = abs(a[static_cast<size_t>(i)][static_cast<size_t>(k)]);
        if (cand > best) {
          best = cand;
          piv = i;
        }
      }
      if (best == 0) throw SingularSystem("certificate system is numerically singular");
      if (piv != k) {
        std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(k)]);
        std::swap(perm[static_cast<size_t>(piv)], perm[static_cast<size_t>(k)]);
      }
      for (int i = k + 1; i < m; ++i) {
        real300& l = a[static_cast<size_t>(i)][static_cast<size_t>(k)];
        l /= a[static_cast<size_t>(k)][static_cast<size_t>(k)];
        for (int j = k + 1; j < m; ++j)
          a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= l * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
      }
    }
  }

  std::vector<real300> solve(const std::vector<real300>& b) const {
    std::vector<real300> x(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) x[static_cast<size_t>(i)] = b[static_cast<size_t>(perm[static_cast<size_t>(i)])];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j)
        x[static_cast<size_t>(i)] -= a[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    for (int i = m - 1; i >= 0; --i) {
      for (int j = i + 1; j < m; ++j)
        x[static_cast<size_t>(i)] -= a[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
      x[static_cast<size_t>(i)] /= a[static_cast<size_t>(i)][static_cast<size_t>(i)];
    }
    return x;
  }
};

mpz ceil_q(const mpq& v) {
  const mpz n = numerator(v);
  const mpz d = denominator(v);
  mpz q0 = n / d;
  if (n % d > 0) ++q0;
  return q0;
}

struct QIv {
  mpq lo, hi;
};

QIv rhs_interval(const detail::RowSpec& row) {
  switch (row.kind) {
    case detail::RowSpec::Kind::value: {
      if (row.gamma > 5) return {mpq(0), mpq(0)};
      auto iv = detail::g_enclosure(row.gamma);
      return {iv.lo, iv.hi};
    }
    case detail::RowSpec::Kind::deriv: {
      if (row.gamma > 5) return {mpq(0), mpq(0)};
      auto iv = detail::gprime_enclosure(row.gamma);
      return {iv.lo, iv.hi};
    }
    case detail::RowSpec::Kind::decay:
      return {mpq(0), mpq(0)};
  }
  throw Error("unreachable row kind");
}

QIv iv_scale(const QIv& v, const mpq& c) {
  if (c >= 0) return {v.lo * c, v.hi * c};
  return {v.hi * c, v.lo * c};
}

QIv iv_sub(const QIv& a, const QIv& b) { return {a.lo - b.hi, a.hi - b.lo}; }

}  // namespace

CertificateSystem build_certificate_system(const std::vector<mpq>& nodes) {
  check_nodes(nodes);
  CertificateSystem sys;
  sys.q = static_cast<int>(nodes.size());
  sys.nodes = nodes;
  const auto rows = detail::certificate_rows(nodes);
  const int m = static_cast<int>(rows.size());
  sys.matrix.assign(static_cast<size_t>(m), std::vector<mpq>(static_cast<size_t>(m)));
  sys.rhs.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 1; j <= m; ++j)
      sys.matrix[static_cast<size_t>(i)][static_cast<size_t>(j - 1)] = detail::certificate_entry(rows[static_cast<size_t>(i)], j);
    sys.rhs[static_cast<size_t>(i)] = rhs_target<real300>(rows[static_cast<size_t>(i)]);
  }
  return sys;
}

namespace detail {

MajorantCertificate solve_certificate_exact(const std::vector<mpq>& nodes) {
  check_nodes(nodes);
  const auto rows = certificate_rows(nodes);
  const int m = static_cast<int>(rows.size());
  std::vector<std::vector<mpq>> A(static_cast<size_t>(m), std::vector<mpq>(static_cast<size_t>(m)));
  std::vector<QIv> b(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 1; j <= m; ++j) A[static_cast<size_t>(i)][static_cast<size_t>(j - 1)] = certificate_entry(rows[static_cast<size_t>(i)], j);
    b[static_cast<size_t>(i)] = rhs_interval(rows[static_cast<size_t>(i)]);
  }
  for (int k = 0; k < m; ++k) {
    int piv = -1;
    mpq best(0);
    for (int i = k; i < m; ++i) {
      mpq cand = abs(A[static_cast<size_t>(i)][static_cast<size_t>(k)]);
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (piv < 0) throw SingularSystem("certificate system is exactly singular");
    std::swap(A[static_cast<size_t>(piv)], A[static_cast<size_t>(k)]);
    std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(k)]);
    for (int i = k + 1; i < m; ++i) {
      mpq& head = A[static_cast<size_t>(i)][static_cast<size_t>(k)];
      if (head == 0) continue;
      const mpq mlt = head / A[static_cast<size_t>(k)][static_cast<size_t>(k)];
      head = 0;
      for (int j = k + 1; j < m; ++j)
        A[static_cast<size_t>(i)][static_cast<size_t>(j)] -= mlt * A[static_cast<size_t>(k)][static_cast<size_t>(j)];
      b[static_cast<size_t>(i)] = iv_sub(b[static_cast<size_t>(i)], iv_scale(b[static_cast<size_t>(k)], mlt));
    }
  }
  std::vector<QIv> x(static_cast<size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    QIv acc = b[static_cast<size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      acc = iv_sub(acc, iv_scale(x[static_cast<size_t>(j)], A[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    const mpq& d = A[static_cast<size_t>(i)][static_cast<size_t>(i)];
    if (d > 0)
      x[static_cast<size_t>(i)] = {acc.lo / d, acc.hi / d};
    else
      x[static_cast<size_t>(i)] = {acc.hi / d, acc.lo / d};
  }

  MajorantCertificate cert;
  cert.q = static_cast<int>(nodes.size());
  cert.nodes = nodes;
  cert.coef_scaled.resize(static_cast<size_t>(m));
  const mpq scale(10000000);
  for (int j = 0; j < m; ++j) {
    const mpz cl = ceil_q(x[static_cast<size_t>(j)].lo * scale);
    const mpz ch = ceil_q(x[static_cast<size_t>(j)].hi * scale);
    if (cl != ch)
      throw SingularSystem("right-hand side enclosure too wide to decide a rounded coefficient");
    cert.coef_scaled[static_cast<size_t>(j)] = cl;
  }
  cert.validate();
  return cert;
}

}  // namespace detail

MajorantCertificate solve_certificate(const std::vector<mpq>& nodes) {
  CertificateSystem sys = build_certificate_system(nodes);
  const int m = 2 * sys.q + 3;
  const auto rows = detail::certificate_rows(nodes);

  Lu300 lu;
  lu.m = m;
  lu.a.assign(static_cast<size_t>(m), std::vector<real300>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) lu.a[static_cast<size_t>(i)][static_cast<size_t>(j)] = real300(sys.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  lu.factor();
  std::vector<real300> x = lu.solve(sys.rhs);

  // one step of iterative refinement with the residual taken at 600 digits
  // against the exact rational matrix
  std::vector<real600> b600(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) b600[static_cast<size_t>(i)] = rhs_target<real600>(rows[static_cast<size_t>(i)]);
  auto residual = [&](const std::vector<real300>& xs) {
    std::vector<real600> r(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      real600 acc = -b600[static_cast<size_t>(i)];
      for (int j = 0; j < m; ++j)
        acc += real600(sys.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)]) * real600(xs[static_cast<size_t>(j)]);
      r[static_cast<size_t>(i)] = acc;
    }
    return r;
  };
  {
    const std::vector<real600> r = residual(x);
    std::vector<real300> r300(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) r300[static_cast<size_t>(i)] = real300(r[static_cast<size_t>(i)]);
    const std::vector<real300> dx = lu.solve(r300);
    for (int i = 0; i < m; ++i) x[static_cast<size_t>(i)] -= dx[static_cast<size_t>(i)];
  }
  real600 rmax = 0;
  for (const real600& ri : residual(x)) rmax = std::max(rmax, real600(abs(ri)));

  bool need_exact = rmax >= real600("1e-50");
  MajorantCertificate cert;
  cert.q = sys.q;
  cert.nodes = nodes;
  cert.coef_scaled.resize(static_cast<size_t>(m));
  if (!need_exact) {
    const real300 grid_guard("1e-30");
    for (int j = 0; j < m && !need_exact; ++j) {
      const real300 v = x[static_cast<size_t>(j)] * 10000000;
      const real300 fl = floor(v);
      const real300 frac = v - fl;
      if (frac < grid_guard || frac > 1 - grid_guard) {
        need_exact = true;  // too close to the rounding grid to trust the float path
        break;
      }
      cert.coef_scaled[static_cast<size_t>(j)] = static_cast<mpz>(fl) + 1;
    }
  }
  if (need_exact) return detail::solve_certificate_exact(nodes);
  cert.validate();
  return cert;
}

void write_certificate(std::ostream& os, const MajorantCertificate& cert) {
  cert.validate();
  os << "lemma3-cert q=" << cert.q << "\n";
  for (const mpq& g : cert.nodes) os << "node " << detail::mpq_to_decimal(g) << "\n";
  const int m = cert.coefficient_count();
  for (int j = 1; j <= m; ++j) os << "coef " << j << " " << cert.coef_scaled[static_cast<size_t>(j - 1)].str() << "\n";
}

MajorantCertificate read_certificate(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("certificate: empty input");
  const std::string header = "lemma3-cert q=";
  if (line.rfind(header, 0) != 0) throw DomainError("certificate: bad header line");
  MajorantCertificate cert;
  try {
    cert.q = std::stoi(line.substr(header.size()));
  } catch (const std::exception&) {
    throw DomainError("certificate: bad node count in header");
  }
  if (cert.q < 0 || cert.q > 100000) throw DomainError("certificate: implausible node count");
  for (int i = 0; i < cert.q; ++i) {
    if (!std::getline(is, line)) throw DomainError("certificate: truncated node list");
    if (line.rfind("node ", 0) != 0) throw DomainError("certificate: expected a node line");
    cert.nodes.push_back(detail::decimal_to_mpq(line.substr(5)));
  }
  const int m = cert.coefficient_count();
  for (int j = 1; j <= m; ++j) {
    if (!std::getline(is, line)) throw DomainError("certificate: truncated coefficient list");
    std::istringstream ls(line);
    std::string tag, idx, val;
    if (!(ls >> tag >> idx >> val) || tag != "coef") throw DomainError("certificate: expected a coef line");
    std::string extra;
    if (ls >> extra) throw DomainError("certificate: trailing tokens on coef line");
    if (idx != std::to_string(j)) throw DomainError("certificate: coefficient indices must run 1.." + std::to_string(m));
    try {
      cert.coef_scaled.emplace_back(val);
    } catch (const std::exception&) {
      throw DomainError("certificate: bad coefficient integer");
    }
  }
  while (std::getline(is, line)) {
    if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
      throw DomainError("certificate: unexpected trailing content");
  }
  cert.validate();
  return cert;
}

void save_certificate(const std::string& path, const MajorantCertificate& cert) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open certificate file for writing: " + path);
  write_certificate(os, cert);
  if (!os) throw Error("failed writing certificate file: " + path);
}

MajorantCertificate load_certificate(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open certificate file: " + path);
  return read_certificate(is);
}

}  // namespace psigrh
