#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "psigrh/field_params.hpp"

using namespace psigrh;

TEST_SUITE("field_params") {

TEST_CASE("constructor enforces the signature identity") {
  FieldParams p(3, 1, 1, std::log(23.0));
  CHECK(p.n_K == 3);
  CHECK(p.r1 == 1);
  CHECK(p.r2 == 1);
  CHECK(p.d_K == 1);
  CHECK_THROWS_AS(FieldParams(0, 0, 0, 0.0), DomainError);
  CHECK_THROWS_AS(FieldParams(2, 1, 1, 0.0), DomainError);   // 1 + 2 != 2
  CHECK_THROWS_AS(FieldParams(2, -2, 2, 0.0), DomainError);
  CHECK_THROWS_AS(FieldParams(2, 2, 0, -1.0), DomainError);  // negative log disc
  CHECK_THROWS_AS(FieldParams(2, 2, 0, std::nan("")), DomainError);
}

TEST_CASE("rationals") {
  FieldParams q = FieldParams::rationals();
  CHECK(q.n_K == 1);
  CHECK(q.r1 == 1);
  CHECK(q.r2 == 0);
  CHECK(q.log_disc == 0.0);
  CHECK(q.d_K == 0);
}

TEST_CASE("fundamental discriminants") {
  for (long long d : {5LL, 8LL, 12LL, 13LL, -3LL, -4LL, -7LL, -8LL, -11LL, -15LL, 1993LL})
    CHECK_MESSAGE(is_fundamental_discriminant(d), d);
  for (long long d : {1LL, 0LL, 2LL, 3LL, 4LL, 9LL, 25LL, -1LL, -2LL, -9LL, -12LL, 100LL})
    CHECK_MESSAGE(!is_fundamental_discriminant(d), d);
}

TEST_CASE("quadratic parameters") {
  FieldParams a = params_from_quadratic(5);
  CHECK(a.n_K == 2);
  CHECK(a.r1 == 2);
  CHECK(a.r2 == 0);
  CHECK(a.log_disc == doctest::Approx(std::log(5.0)).epsilon(1e-15));

  FieldParams b = params_from_quadratic(-4);
  CHECK(b.r1 == 0);
  CHECK(b.r2 == 1);
  CHECK(b.log_disc == doctest::Approx(std::log(4.0)).epsilon(1e-15));

  CHECK_THROWS_AS(params_from_quadratic(9), NotFundamental);
  CHECK_THROWS_AS(params_from_quadratic(1), NotFundamental);
}

TEST_CASE("grh discriminant floor") {
  CHECK(grh_disc_floor(1) == doctest::Approx(std::log(11.916) - 5.8507).epsilon(1e-12));
  CHECK(grh_disc_floor(8) == doctest::Approx(8 * std::log(11.916) - 5.8507).epsilon(1e-12));
  CHECK(grh_disc_floor(3) > grh_disc_floor(2));
  CHECK_THROWS_AS(grh_disc_floor(0), DomainError);
  // the known minimal discriminants sit above the floor
  const auto& tabs = exceptional_tables();
  for (const auto& [n, d] : tabs.minimal_disc_by_degree)
    CHECK(std::log((double)d) >= grh_disc_floor(n));
}

TEST_CASE("minimal discriminants by degree") {
  const auto& tabs = exceptional_tables();
  CHECK(tabs.minimal_disc(2) == 3);
  CHECK(tabs.minimal_disc(3) == 23);
  CHECK(tabs.minimal_disc(4) == 117);
  CHECK(tabs.minimal_disc(5) == 1609);
  CHECK(tabs.minimal_disc(6) == 9747);
  CHECK(tabs.minimal_disc(7) == 184607);
  CHECK(!tabs.minimal_disc(8).has_value());
}

TEST_CASE("discriminant ceilings and exception counts") {
  const auto& tabs = exceptional_tables();
  REQUIRE(tabs.disc_ceilings.size() == 7);
  auto c20 = tabs.disc_ceiling(2, 0);
  REQUIRE(c20.has_value());
  CHECK(c20->ceiling == 172921407);
  CHECK(c20->c == 4.8);
  auto c21 = tabs.disc_ceiling(2, 1);
  REQUIRE(c21.has_value());
  CHECK(c21->ceiling == 103995324);
  auto c42 = tabs.disc_ceiling(4, 2);
  REQUIRE(c42.has_value());
  CHECK(c42->ceiling == 648);
  CHECK(c42->c == 6.0);
  CHECK(!tabs.disc_ceiling(5, 0).has_value());

  auto e20 = tabs.exception_count(2, 0);
  REQUIRE(e20.has_value());
  CHECK(e20->count == 52561764);
  auto e31 = tabs.exception_count(3, 1);
  REQUIRE(e31.has_value());
  CHECK(e31->count == 65708);

  auto s2 = tabs.small_degree_start(2);
  REQUIRE(s2.has_value());
  CHECK(s2->minimal_disc == 3);
  CHECK(s2->x_bar == 1566020);
  CHECK(s2->c == 4.8);
  auto s4 = tabs.small_degree_start(4);
  REQUIRE(s4.has_value());
  CHECK(s4->x_bar == 184);
}

TEST_CASE("table checksum is stable") {
  const auto& tabs = exceptional_tables();
  CHECK(tabs.checksum() == 928114351049606549ULL);
  std::string canon = tabs.canonical_serialization();
  CHECK(canon.find("ceiling 2 0 172921407 4.8") != std::string::npos);
  CHECK(canon.find("start 3 23 980 5") != std::string::npos);
}

TEST_CASE("field definition constructors") {
  FieldDefinition q = FieldDefinition::quadratic(-8);
  CHECK(q.kind == FieldDefinition::Kind::Quadratic);
  CHECK(q.degree() == 2);
  CHECK_THROWS_AS(FieldDefinition::quadratic(100), NotFundamental);
  FieldDefinition p = FieldDefinition::polynomial({mpz(-1), mpz(-1), mpz(0), mpz(1)});
  CHECK(p.kind == FieldDefinition::Kind::Polynomial);
  CHECK(p.degree() == 3);
  CHECK_THROWS_AS(FieldDefinition::polynomial({mpz(1), mpz(2)}), DomainError);  // not monic
  CHECK_THROWS_AS(FieldDefinition::polynomial({mpz(7)}), DomainError);          // constant
}

TEST_CASE("field file parsing") {
  {
    std::istringstream in("quad -4\n");
    FieldDefinition f = parse_field_file(in);
    CHECK(f.kind == FieldDefinition::Kind::Quadratic);
    CHECK(f.quad_D == -4);
  }
  {
    std::istringstream in("poly -1 -1 0 1\n");
    FieldDefinition f = parse_field_file(in);
    CHECK(f.degree() == 3);
    CHECK(f.poly[0] == -1);
    CHECK(f.poly[3] == 1);
    CHECK(!f.disc_abs.has_value());
  }
  {
    std::istringstream in("poly -5 0 1\ndisc 5\nindex-prime 2 1:2\n");
    FieldDefinition f = parse_field_file(in);
    REQUIRE(f.disc_abs.has_value());
    CHECK(*f.disc_abs == 5);
    REQUIRE(f.overrides.count(2) == 1);
    REQUIRE(f.overrides.at(2).size() == 1);
    CHECK(f.overrides.at(2)[0] == std::make_pair(1, 2));
  }
  {
    std::istringstream in("poly -5 0 1\nindex-prime 2 1:1,1:1\n");
    FieldDefinition f = parse_field_file(in);
    CHECK(f.overrides.at(2).size() == 2);
  }
  {
    std::istringstream in("# comment\n\nquad 5\n");
    CHECK_NOTHROW(parse_field_file(in));
  }
  {
    std::istringstream in("nonsense 1 2 3\n");
    CHECK_THROWS_AS(parse_field_file(in), Error);
  }
  {
    std::istringstream in("");
    CHECK_THROWS_AS(parse_field_file(in), Error);
  }
  {
    std::istringstream in("quad 9\n");
    CHECK_THROWS_AS(parse_field_file(in), Error);
  }
}

TEST_CASE("field file loading") {
  testutil::TempFile f("quad 5\n", "field");
  FieldDefinition d = load_field_file(f.str());
  CHECK(d.quad_D == 5);
  CHECK_THROWS_AS(load_field_file("/nonexistent/psigrh.field"), Error);
}

}  // TEST_SUITE
