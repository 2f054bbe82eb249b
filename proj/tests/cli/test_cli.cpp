#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

using namespace su2lqu::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<const char*> args) {
  args.insert(args.begin(), "su2lqu");
  std::ostringstream out, err;
  const int code = run(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> result;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) result.push_back(field);
  if (!line.empty() && line.back() == ',') result.emplace_back();
  return result;
}

}  // namespace

TEST_CASE("parse_spin_twice") {
  CHECK(parse_spin_twice("5/2") == 5);
  CHECK(parse_spin_twice("3") == 6);
  CHECK(parse_spin_twice("2/4") == 1);
  CHECK(parse_spin_twice("101/2") == 101);
  CHECK_THROWS_AS(parse_spin_twice("1/3"), UsageError);
  CHECK_THROWS_AS(parse_spin_twice("-1/2"), UsageError);
  CHECK_THROWS_AS(parse_spin_twice("abc"), UsageError);
  CHECK_THROWS_AS(parse_spin_twice("1/0"), UsageError);
  CHECK_THROWS_AS(parse_spin_twice("0.5"), UsageError);
}

TEST_CASE("parse_probability") {
  CHECK(parse_probability("0.25", "--p") == 0.25);
  CHECK(parse_probability("1/9", "--p") == 1.0 / 9.0);
  CHECK(parse_probability("1", "--p") == 1.0);
  try {
    (void)parse_probability("1.5", "--p");
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()) == "--p must lie in [0, 1], got 1.5");
  }
  CHECK_THROWS_AS(parse_probability("nan", "--p"), UsageError);
  CHECK_THROWS_AS(parse_probability("", "--p"), UsageError);
  CHECK_THROWS_AS(parse_probability("1/0", "--q"), UsageError);
}

TEST_CASE("format_number") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.29716851115623294) == "0.297168511156");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(0.005) == "0.005");
}

TEST_CASE("compute") {
  SUBCASE("Werner endpoint, all methods") {
    const auto r = invoke({"compute", "--j", "1/2", "--p", "1", "--method", "all"});
    CHECK(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "method,value,direction");
    CHECK(ls[1] == "closed,1,");
    CHECK(ls[2] == "wmatrix,1,");
    CHECK(fields(ls[3])[0] == "numeric");
    CHECK(std::abs(std::stod(fields(ls[3])[1]) - 1.0) < 1e-9);
  }
  SUBCASE("zero locus") {
    const auto r = invoke({"compute", "--j", "5/2", "--p", "5/12", "--method", "all"});
    CHECK(r.code == kExitOk);
    for (std::size_t i = 1; i < lines(r.out).size(); ++i)
      CHECK(std::abs(std::stod(fields(lines(r.out)[i])[1])) < 1e-10);
  }
  SUBCASE("spin-1 maximally mixed, with stationary branches") {
    const auto r = invoke({"compute", "--j", "1", "--p", "1/9", "--q", "3/9", "--method", "all"});
    CHECK(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(fields(ls[1])[0] == "closed");
    CHECK(fields(ls[2])[0] == "numeric");
    CHECK(fields(ls[3])[0] == "branch1");
    CHECK(fields(ls[4])[0] == "branch2");
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(std::abs(std::stod(fields(ls[i])[1])) < 1e-10);
  }
  SUBCASE("wmatrix with a spin-1 partner is rejected") {
    const auto r = invoke({"compute", "--j", "1", "--p", "0.2", "--q", "0.2", "--method", "wmatrix"});
    CHECK(r.code == kExitDomain);
    CHECK(r.out.empty());
  }
  SUBCASE("domain errors name the constraint") {
    const auto a = invoke({"compute", "--j", "1", "--p", "0.7", "--q", "0.5"});
    CHECK(a.code == kExitDomain);
    CHECK(a.err.find("P + Q must be <= 1") != std::string::npos);
    const auto b = invoke({"compute", "--j", "1", "--p", "1.5"});
    CHECK(b.code == kExitDomain);
    CHECK(b.err.find("[0, 1]") != std::string::npos);
    const auto c = invoke({"compute", "--j", "1/2", "--p", "0.2", "--q", "0.2"});
    CHECK(c.code == kExitDomain);
    const auto d = invoke({"compute", "--j", "0", "--p", "0.2"});
    CHECK(d.code == kExitDomain);
    const auto e = invoke({"compute", "--j", "1", "--p", "0.2", "--method", "fastest"});
    CHECK(e.code == kExitDomain);
    const auto f = invoke({"compute", "--j", "1", "--p", "0.2", "--method", "numeric", "--seeds", "0"});
    CHECK(f.code == kExitDomain);
  }
  SUBCASE("parse errors exit 2, help exits 0") {
    CHECK(invoke({}).code == kExitDomain);
    CHECK(invoke({"compute", "--p", "0.2"}).code == kExitDomain);
    CHECK(invoke({"frobnicate"}).code == kExitDomain);
    CHECK(invoke({"--help"}).code == kExitOk);
  }
}

TEST_CASE("sweep-p") {
  const auto r = invoke({"sweep-p", "--j", "1", "--steps", "4"});
  CHECK(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == kSweepHeader);
  CHECK(ls[1].rfind("2,0,,", 0) == 0);
  CHECK(ls[2].rfind("2,0.333333333333,,", 0) == 0);
  CHECK(ls[2].substr(ls[2].size() - 2) == ",,");
  CHECK(std::abs(std::stod(fields(ls[2])[3])) < 1e-12);
  CHECK(ls[4].rfind("2,1,,", 0) == 0);

  const auto again = invoke({"sweep-p", "--j", "1", "--steps", "4"});
  CHECK(again.out == r.out);

  const auto all = invoke({"sweep-p", "--j", "3/2", "--steps", "5", "--method", "all", "--seeds", "16"});
  CHECK(all.code == kExitOk);
  for (std::size_t i = 1; i < lines(all.out).size(); ++i) {
    const auto f = fields(lines(all.out)[i]);
    REQUIRE(f.size() == 6);
    CHECK(std::stod(f[5]) <= 1e-6);
    CHECK(std::abs(std::abs(std::stod(f[3]) - std::stod(f[4])) - std::stod(f[5])) < 1e-11);
  }

  CHECK(invoke({"sweep-p", "--j", "1", "--steps", "1"}).code == kExitDomain);
  CHECK(invoke({"sweep-p", "--j", "1", "--method", "wmatrix"}).code == kExitDomain);
}

TEST_CASE("sweep-pq covers the simplex in grid order") {
  const auto r = invoke({"sweep-pq", "--j", "1", "--steps", "4"});
  CHECK(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 1 + 10);
  double prev_p = -1.0, prev_q = -1.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    const double p = std::stod(f[1]), q = std::stod(f[2]);
    CHECK(p + q <= 1.0 + 1e-12);
    CHECK(std::stod(f[3]) >= 0.0);
    CHECK((p > prev_p || (p == prev_p && q > prev_q)));
    prev_p = p;
    prev_q = q;
  }
  CHECK(invoke({"sweep-pq", "--j", "1/2"}).code == kExitDomain);
}

TEST_CASE("validate") {
  const auto ok = invoke({"validate", "--j", "5/2", "--p", "0.3"});
  CHECK(ok.code == kExitOk);
  const auto ls = lines(ok.out);
  REQUIRE(ls.size() == 9);
  CHECK(ls[0] == "check,residual,threshold,status");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    CHECK(fields(ls[i])[3] == "pass");
    CHECK(std::stod(fields(ls[i])[1]) <= 1e-12);
  }
  CHECK(invoke({"validate", "--j", "5/2", "--p", "1.5"}).code == kExitDomain);
  const auto simplex = invoke({"validate", "--j", "1", "--p", "0.6", "--q", "0.6"});
  CHECK(simplex.code == kExitDomain);
  CHECK(simplex.err.find("P + Q") != std::string::npos);
}

TEST_CASE("--out writes the file instead of stdout") {
  const auto path = std::filesystem::temp_directory_path() / "su2lqu_cli_out.csv";
  const std::string p = path.string();
  const auto r = invoke({"sweep-p", "--j", "1/2", "--steps", "3", "--out", p.c_str()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == invoke({"sweep-p", "--j", "1/2", "--steps", "3"}).out);
  std::filesystem::remove(path);
}
