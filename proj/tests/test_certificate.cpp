#include <fstream>
#include <sstream>

#include "cert_internal.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "mp_analytic.hpp"
#include "psigrh/zero_bounds.hpp"

using namespace psigrh;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("certificate") {

TEST_CASE("reference nodes") {
  const std::vector<mpq>& nodes = reference_nodes();
  REQUIRE(nodes.size() == 22);
  CHECK(nodes.front() == mpq(3, 5));
  CHECK(nodes.back() == mpq(1000000));
  for (size_t i = 0; i < nodes.size(); ++i) {
    CHECK(nodes[i] > 0);
    CHECK(nodes[i] != 5);
    if (i > 0) CHECK(nodes[i - 1] < nodes[i]);
  }
}

TEST_CASE("interpolation points") {
  CHECK(MajorantCertificate::point(1) == mpq(3, 2));
  CHECK(MajorantCertificate::point(2) == mpq(2));
  CHECK(MajorantCertificate::point(47) == mpq(49, 2));
  CHECK_THROWS_AS(MajorantCertificate::point(0), DomainError);
}

TEST_CASE("reference certificate shape") {
  const MajorantCertificate& cert = reference_certificate();
  CHECK(cert.q == 22);
  CHECK(cert.coefficient_count() == 47);
  REQUIRE(cert.coef_scaled.size() == 47);
  CHECK(cert.n_pos == 60975);
  CHECK(cert.n_check == 128000);
  CHECK(cert.nodes == reference_nodes());

  CHECK(cert.coef_scaled[0] == mpz("-324328089"));
  CHECK(cert.coef_scaled[1] == mpz("115693093357"));
  CHECK(cert.coef_scaled[46] == mpz("-71076474624305025203"));
  CHECK(cert.coefficient(1) == mpq(-324328089, 10000000));
  CHECK_THROWS_AS(cert.coefficient(48), DomainError);

  // signs alternate: odd indices negative, even positive
  for (int j = 1; j <= 47; ++j) {
    CAPTURE(j);
    if (j % 2 == 1)
      CHECK(cert.coef_scaled[static_cast<size_t>(j - 1)] < 0);
    else
      CHECK(cert.coef_scaled[static_cast<size_t>(j - 1)] > 0);
  }

  CHECK_NOTHROW(cert.validate());
}

TEST_CASE("validate rejects structural damage") {
  const MajorantCertificate& ref = reference_certificate();

  MajorantCertificate c = ref;
  c.coef_scaled.pop_back();
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = ref;
  std::swap(c.nodes[0], c.nodes[1]);
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = ref;
  c.nodes[4] = 5;  // between 2.9 and 10, so ordering still holds
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = ref;
  c.nodes[0] = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = ref;
  c.n_pos = 1;
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = ref;
  c.n_pos = c.n_check + 1;
  CHECK_THROWS_AS(c.validate(), DomainError);

  // flipping one coefficient destroys the decay cancellation
  c = ref;
  c.coef_scaled[0] = -c.coef_scaled[0];
  CHECK_THROWS_AS(c.validate(), DomainError);

  // negating everything preserves the decay constraint; validate accepts it
  c = ref;
  for (mpz& a : c.coef_scaled) a = -a;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("system shape") {
  CertificateSystem sys = build_certificate_system(reference_nodes());
  CHECK(sys.q == 22);
  REQUIRE(sys.matrix.size() == 47);
  for (const auto& row : sys.matrix) CHECK(row.size() == 47);
  CHECK(sys.rhs.size() == 47);

  auto rows = detail::certificate_rows(reference_nodes());
  REQUIRE(rows.size() == 47);
  int n_value = 0, n_deriv = 0, n_decay = 0;
  for (const auto& r : rows) {
    switch (r.kind) {
      case detail::RowSpec::Kind::value: ++n_value; break;
      case detail::RowSpec::Kind::deriv: ++n_deriv; break;
      case detail::RowSpec::Kind::decay: ++n_decay; break;
    }
  }
  CHECK(n_value == 24);  // {0} + 22 nodes + {5}
  CHECK(n_deriv == 22);
  CHECK(n_decay == 1);
}

TEST_CASE("matrix entries") {
  detail::RowSpec at0{detail::RowSpec::Kind::value, mpq(0)};
  for (int j : {1, 2, 10, 47}) {
    CAPTURE(j);
    CHECK(detail::certificate_entry(at0, j) == mpq(4, j + 1));
  }

  detail::RowSpec decay{detail::RowSpec::Kind::decay, mpq(0)};
  for (int j : {1, 2, 10, 47}) {
    CAPTURE(j);
    CHECK(detail::certificate_entry(decay, j) == mpq(j + 1));
  }

  // f_j(gamma) = 4c / (c^2 + 4 gamma^2) with c = j + 1
  detail::RowSpec at1{detail::RowSpec::Kind::value, mpq(1)};
  CHECK(detail::certificate_entry(at1, 1) == mpq(8, 8));
  CHECK(detail::certificate_entry(at1, 3) == mpq(16, 20));

  // derivative rows vanish at gamma = 0
  detail::RowSpec d0{detail::RowSpec::Kind::deriv, mpq(0)};
  CHECK(detail::certificate_entry(d0, 5) == 0);
}

TEST_CASE("target enclosures") {
  detail::QInterval g0 = detail::g_enclosure(mpq(0));
  CHECK(g0.lo == 2);
  CHECK(g0.hi == 2);

  detail::QInterval gp0 = detail::gprime_enclosure(mpq(0));
  CHECK(gp0.lo == 0);
  CHECK(gp0.hi == 0);

  CHECK_THROWS_AS(detail::g_enclosure(mpq(-1)), DomainError);

  // g(3) = 2 / sqrt(37): enclosure brackets it and is extremely tight
  detail::QInterval g3 = detail::g_enclosure(mpq(3));
  CHECK(g3.lo > 0);
  CHECK(g3.lo <= g3.hi);
  CHECK(g3.hi - g3.lo < mpq(1, mpz("1000000000000000000000000000000")));
  CHECK(g3.lo * g3.lo * 37 <= 4);
  CHECK(g3.hi * g3.hi * 37 >= 4);
}

TEST_CASE("solver reproduces the reference certificate") {
  MajorantCertificate solved = solve_certificate(reference_nodes());
  const MajorantCertificate& ref = reference_certificate();
  CHECK(solved.q == ref.q);
  CHECK(solved.nodes == ref.nodes);
  REQUIRE(solved.coef_scaled.size() == ref.coef_scaled.size());
  for (size_t i = 0; i < ref.coef_scaled.size(); ++i) {
    CAPTURE(i);
    CHECK(solved.coef_scaled[i] == ref.coef_scaled[i]);
  }
  CHECK_NOTHROW(solved.validate());
}

TEST_CASE("solver handles other node sets") {
  std::vector<mpq> nodes = reference_nodes();
  nodes.erase(nodes.begin() + 14);  // drop the node at 30
  MajorantCertificate alt = solve_certificate(nodes);
  CHECK(alt.q == 21);
  CHECK(alt.coefficient_count() == 45);
  CHECK_NOTHROW(alt.validate());

  CHECK_THROWS_AS(solve_certificate({mpq(1), mpq(1)}), DomainError);  // duplicate
  CHECK_THROWS_AS(solve_certificate({mpq(5)}), DomainError);
  CHECK_THROWS_AS(solve_certificate({mpq(-1)}), DomainError);
}

TEST_CASE("stream round trip") {
  const MajorantCertificate& ref = reference_certificate();
  std::ostringstream out;
  write_certificate(out, ref);
  std::string first = out.str();
  CHECK(first.rfind("lemma3-cert q=22", 0) == 0);

  std::istringstream in(first);
  MajorantCertificate back = read_certificate(in);
  CHECK(back.q == ref.q);
  CHECK(back.nodes == ref.nodes);
  CHECK(back.coef_scaled == ref.coef_scaled);
  CHECK(back.n_pos == ref.n_pos);
  CHECK(back.n_check == ref.n_check);

  std::ostringstream out2;
  write_certificate(out2, back);
  CHECK(out2.str() == first);
}

TEST_CASE("file round trip") {
  testutil::TempFile f("", "cert");
  const MajorantCertificate& ref = reference_certificate();
  save_certificate(f.str(), ref);
  MajorantCertificate back = load_certificate(f.str());
  CHECK(back.coef_scaled == ref.coef_scaled);

  std::ostringstream expect;
  write_certificate(expect, ref);
  CHECK(slurp(f.str()) == expect.str());

  CHECK_THROWS_AS(load_certificate("/nonexistent/psigrh.cert"), Error);
}

TEST_CASE("reader rejects malformed input") {
  {
    std::istringstream in("");
    CHECK_THROWS_AS(read_certificate(in), DomainError);
  }
  {
    std::istringstream in("something-else q=22\n");
    CHECK_THROWS_AS(read_certificate(in), DomainError);
  }
  {
    std::istringstream in("lemma3-cert q=2\nnode 1\n");
    CHECK_THROWS_AS(read_certificate(in), DomainError);  // truncated
  }
  {
    std::istringstream in("lemma3-cert q=1\nnode 1\ncoef 2 5\n");
    CHECK_THROWS_AS(read_certificate(in), DomainError);  // wrong index
  }
}

}  // TEST_SUITE
