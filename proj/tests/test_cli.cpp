#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "nlohmann/json.hpp"

using testutil::CliResult;
using testutil::run_cli;
using testutil::split_csv;
using testutil::split_lines;
using json = nlohmann::json;

namespace {

const char* kBoundHeader =
    "schema_version,command,x,kind,T,value,coef_log_disc,coef_n,constant,error";

std::vector<json> parse_json_lines(const std::string& out) {
  std::vector<json> records;
  for (const std::string& line : split_lines(out))
    if (!line.empty()) records.push_back(json::parse(line));
  return records;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden record") {
  CliResult r = run_cli("bound --x 100 --deg 2 --disc 5 --kind cor1");
  CHECK(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kBoundHeader);
  CHECK(lines[1] ==
        "1,bound,100,cor1,,100.86136749181779,27.329355988794276,28.438232920522172,0,");
}

TEST_CASE("json records carry native numbers") {
  CliResult r = run_cli("bound --x 100 --deg 2 --disc 5 --kind cor1 --json");
  CHECK(r.exit_code == 0);
  auto records = parse_json_lines(r.out);
  REQUIRE(records.size() == 1);
  const json& j = records[0];
  CHECK(j.at("schema_version") == "1");
  CHECK(j.at("command") == "bound");
  CHECK(j.at("x").is_number());
  CHECK(j.at("x").get<double>() == 100.0);
  CHECK(j.at("kind") == "cor1");
  CHECK(j.at("T").is_null());
  CHECK(j.at("value").get<double>() == doctest::Approx(100.86136749181779).epsilon(1e-15));
  CHECK(j.at("error") == "");
}

TEST_CASE("bare invocation falls back to the rationals") {
  CliResult r = run_cli("bound --x 100");
  CHECK(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  auto cells = split_csv(lines[1]);
  CHECK(cells[3] == "schoenfeld_Q");
  CHECK(cells[5] == "8.4382329205221716");
}

TEST_CASE("domain failures produce an error record and exit 1") {
  CliResult r = run_cli("bound --x 2 2>/dev/null");
  CHECK(r.exit_code == 1);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 10);
  CHECK(cells[2] == "2");
  CHECK(cells[5] == "");                               // no value
  CHECK(cells[9].find("x >= 3") != std::string::npos);  // explanation
}

TEST_CASE("partial failures keep processing the grid") {
  CliResult r = run_cli("bound --x 100,5000 --deg 2 --disc 5 --kind cor2_large 2>/dev/null");
  CHECK(r.exit_code == 1);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(split_csv(lines[1])[9] != "");
  CHECK(split_csv(lines[2])[9] == "");
  CHECK(split_csv(lines[2])[5] != "");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("bound --x 100 --kind bogus 2>/dev/null").exit_code == 2);
  CHECK(run_cli("bound --deg 2 --disc 5 2>/dev/null").exit_code == 2);
  CHECK(run_cli("bound --x 100 --kind cor1 --T 50 2>/dev/null").exit_code == 2);
  CHECK(run_cli("bound --x 100 --r2 1 2>/dev/null").exit_code == 2);  // flags need --deg
  CHECK(run_cli("bound --x-range 100:103 --kind cor1 2>/dev/null").exit_code == 2);
  CHECK(run_cli("frobnicate 2>/dev/null").exit_code == 2);
  CHECK(run_cli("--help >/dev/null 2>&1").exit_code == 0);
}

TEST_CASE("missing field file is a runtime failure") {
  CliResult r = run_cli("bound --x 100 --field /nonexistent/psigrh.field 2>/dev/null");
  CHECK(r.exit_code == 1);
}

TEST_CASE("grids") {
  CliResult r = run_cli("bound --x-range 100:103:1 --kind cor1 --deg 2 --disc 5");
  CHECK(r.exit_code == 0);
  CHECK(split_lines(r.out).size() == 5);

  r = run_cli("bound --x-log 100:10000:3 --kind cor1 --deg 2 --disc 5");
  CHECK(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(split_csv(lines[3])[5] == "1632.8690841704231");
}

TEST_CASE("prime counting bound accepts its reference point") {
  CliResult r = run_cli("bound --x 10000 --deg 2 --disc 5 --kind cor3 --xbar 100");
  CHECK(r.exit_code == 0);
  auto cells = split_csv(split_lines(r.out)[1]);
  CHECK(cells[3] == "cor3");
  CHECK(cells[5] == "891.63696764200074");
  CHECK(cells[6] == "");  // no component split for this kind
}

TEST_CASE("identical runs are byte identical") {
  std::string args = "bound --x-log 3:100000:40 --deg 3 --r2 1 --disc 23";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("psi output and thread independence") {
  testutil::TempFile field("quad -4\n", "field");
  std::string args = "psi --field " + field.str() + " --x-max 10";
  CliResult r = run_cli(args);
  CHECK(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "schema_version,command,x,psi,theta,pi,bound,margin");
  CHECK(lines[1] == "1,psi,1,0,0,0,,");  // below the bound domain: blanks
  CHECK(lines[10] ==
        "1,psi,10,7.4955419438842554,6.1092475827643646,4,50.458111994261671,"
        "47.953653938145926");

  CliResult one = run_cli(args, "PSI_GRH_THREADS=1");
  CliResult four = run_cli(args, "PSI_GRH_THREADS=4");
  CHECK(one.exit_code == 0);
  CHECK(one.out == four.out);
  CHECK(one.out == r.out);
}

TEST_CASE("psi json keeps integers integral") {
  testutil::TempFile field("quad -4\n", "field");
  CliResult r = run_cli("psi --field " + field.str() + " --x-max 10 --json");
  CHECK(r.exit_code == 0);
  auto records = parse_json_lines(r.out);
  REQUIRE(records.size() == 10);
  CHECK(records[9].at("x").is_number_integer());
  CHECK(records[9].at("pi").get<long long>() == 4);
  CHECK(records[9].at("psi").get<double>() == doctest::Approx(7.4955419438842554).epsilon(1e-15));
  CHECK(records[0].at("bound").is_null());
}

TEST_CASE("range verification passes for a gaussian window") {
  testutil::TempFile field("quad -4\n", "field");
  CliResult r = run_cli("verify --field " + field.str() + " --kind cor1 --from 100 --to 120");
  CHECK(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "schema_version,command,kind,from,to,margin,pass,checked,violations,min_margin,argmin_x");
  auto cells = split_csv(lines[1]);
  CHECK(cells[6] == "1");   // pass
  CHECK(cells[7] == "21");  // checked
  CHECK(cells[8] == "0");   // violations
}

TEST_CASE("verify rejects misuse") {
  testutil::TempFile field("quad -4\n", "field");
  CHECK(run_cli("verify --field " + field.str() + " --kind cor3 --from 100 --to 120 2>/dev/null")
            .exit_code == 2);
  CHECK(run_cli("verify --field " + field.str() + " --kind cor1 --from 200 --to 100 2>/dev/null")
            .exit_code == 2);
  CHECK(run_cli("verify --field " + field.str() + " --kind best --from 100 --to 120 2>/dev/null")
            .exit_code == 2);
}

TEST_CASE("certificate regeneration matches the stored table") {
  CliResult r = run_cli("lemma3 regenerate");
  CHECK(r.exit_code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 48);
  CHECK(lines[0] == "schema_version,command,j,scaled,reference,match");
  CHECK(lines[1] == "1,lemma3.regenerate,1,-324328089,-324328089,1");
  for (size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_csv(lines[i]);
    CAPTURE(i);
    CHECK(cells[3] == cells[4]);
    CHECK(cells[5] == "1");
  }
}

TEST_CASE("certificate regeneration json") {
  CliResult r = run_cli("lemma3 regenerate --json");
  CHECK(r.exit_code == 0);
  auto records = parse_json_lines(r.out);
  REQUIRE(records.size() == 47);
  CHECK(records[0].at("j") == 1);
  CHECK(records[0].at("scaled") == "-324328089");  // exact integers ride as strings
  CHECK(records[46].at("j") == 47);
  CHECK(records[46].at("scaled") == "-71076474624305025203");
  for (const json& j : records) CHECK(j.at("match") == 1);
}

TEST_CASE("certificate file round trip and verification") {
  testutil::TempFile cert("", "cert");
  CliResult gen = run_cli("lemma3 regenerate --cert " + cert.str() + " >/dev/null");
  CHECK(gen.exit_code == 0);

  CliResult v = run_cli("lemma3 verify --cert " + cert.str());
  CHECK(v.exit_code == 0);
  auto lines = split_lines(v.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "schema_version,command,majorization_pass,witness,sum_a,sum_pole,sum_gamma_half,"
        "sum_gamma_shift,prime_sum_slack,error");
  auto cells = split_csv(lines[1]);
  CHECK(cells[2] == "1");
  CHECK(cells[3] == "");  // no witness on success
  CHECK(cells[4] == "1.0110364999999999");
  CHECK(cells[5] == "7.0319700883184248");
  CHECK(cells[6] == "-1.1323815933336872");
  CHECK(cells[7] == "-0.31818320053093696");
  CHECK(cells[8] == "0.11371995480904751");
  CHECK(cells[9] == "");
}

TEST_CASE("negated certificate is rejected with a witness at zero") {
  testutil::TempFile cert("", "cert");
  CHECK(run_cli("lemma3 regenerate --cert " + cert.str() + " >/dev/null").exit_code == 0);

  // flip every coefficient sign in the stored file
  std::string flipped;
  for (const std::string& line : split_lines(testutil::slurp(cert.str()))) {
    if (line.rfind("coef ", 0) == 0) {
      size_t sp = line.rfind(' ');
      std::string head = line.substr(0, sp + 1);
      std::string val = line.substr(sp + 1);
      flipped += head + (val[0] == '-' ? val.substr(1) : "-" + val) + "\n";
    } else {
      flipped += line + "\n";
    }
  }
  testutil::TempFile neg(flipped, "cert");

  CliResult v = run_cli("lemma3 verify --cert " + neg.str() + " 2>/dev/null");
  CHECK(v.exit_code == 1);
  auto cells = split_csv(split_lines(v.out)[1]);
  CHECK(cells[2] == "0");  // majorization failed
  CHECK(cells[3] == "0");  // witness at gamma = 0
  CHECK(cells[4] == "");   // constants withheld
  CHECK(cells[9].find("coefficient 1 must be negative") != std::string::npos);

  CliResult j = run_cli("lemma3 verify --cert " + neg.str() + " --json 2>/dev/null");
  CHECK(j.exit_code == 1);
  auto records = parse_json_lines(j.out);
  REQUIRE(records.size() == 1);
  CHECK(records[0].at("majorization_pass") == 0);
  CHECK(records[0].at("witness").get<double>() == 0.0);
  CHECK(records[0].at("sum_a").is_null());
}

TEST_CASE("lemma3 verify requires a certificate path") {
  CHECK(run_cli("lemma3 verify 2>/dev/null").exit_code == 2);
}

}  // TEST_SUITE
