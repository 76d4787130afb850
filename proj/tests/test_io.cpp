#include <doctest.h>

#include <iostream>
#include <sstream>

#include "test_util.hpp"

using namespace hibicx;
using testutil::fixture;

namespace {

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::vector<const char*> argv{"hibi-cx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  int rc = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  if (out) *out = captured.str();
  return rc;
}

std::string fixture_path(const std::string& name) {
  return std::string(HIBICX_FIXTURE_DIR) + "/" + name + ".poset";
}

}  // namespace

TEST_CASE("parse a fixture") {
  auto f = parse_poset_file(fixture_path("segre_3_2"));
  CHECK(f.name == "segre_3_2");
  CHECK(f.poset.elements() == std::vector<std::string>{"v1", "v2", "v3"});
  CHECK(f.poset.covers() == std::vector<std::pair<int, int>>{{1, 0}});
  CHECK(f.digest.size() == 16);
}

TEST_CASE("parser reduces redundant relations") {
  auto f = parse_poset_text("elements: a b c\na < b\nb < c\na < c\n", "t");
  CHECK(f.poset.covers() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("parser errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_poset_text("a < b\n", "t"),
                       doctest::Contains("line 1"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_poset_text("elements: a\nelements: b\n", "t"),
                       doctest::Contains("line 2"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_poset_text("elements: a$b\n", "t"),
                       doctest::Contains("bad identifier"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_poset_text("elements: inf\n", "t"),
                       doctest::Contains("bad identifier"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_poset_text("elements: -inf\n", "t"),
                       doctest::Contains("bad identifier"), ValidationError);
  CHECK_THROWS_AS(parse_poset_text("elements: a b\na <= b\n", "t"), ValidationError);
  CHECK_THROWS_AS(parse_poset_text("elements: a b\na < c\n", "t"), ValidationError);
  CHECK_THROWS_AS(parse_poset_text("elements: a b\na < b\nb < a\n", "t"), ValidationError);
  CHECK_THROWS_AS(parse_poset_text("elements: a\n", "t", 0), GuardError);
  CHECK_THROWS_AS(parse_poset_text("# only comments\n", "t"), ValidationError);
}

TEST_CASE("serialize and reparse is the identity on reduced covers") {
  for (const char* name :
       {"segre_3_2", "levelex1", "levelex2", "chain_3", "antichain_3", "segre_4_3"}) {
    auto f = parse_poset_file(fixture_path(name));
    auto again = parse_poset_text(serialize_poset(f.poset), f.name);
    CHECK(again.poset == f.poset);
  }
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    Poset p = testutil::random_poset(rng, 6);
    CHECK(parse_poset_text(serialize_poset(p), "r").poset == p);
  }
}

TEST_CASE("digest changes with content") {
  auto a = parse_poset_text("elements: a b\na < b\n", "t");
  auto b = parse_poset_text("elements: a b\nb < a\n", "t");
  auto a2 = parse_poset_text("elements: a b\na < b\n", "t");
  CHECK(a.digest == a2.digest);
  CHECK(a.digest != b.digest);
}

TEST_CASE("reports are byte identical across runs") {
  std::string out1, out2;
  CHECK(run({"info", fixture_path("segre_3_2")}, &out1) == 0);
  CHECK(run({"info", fixture_path("segre_3_2")}, &out2) == 0);
  CHECK(out1 == out2);
  CHECK_FALSE(out1.empty());
  auto parsed = Json::parse(out1);
  CHECK(parsed["tool"] == kToolVersion);
  CHECK(parsed["result"]["flags"]["gorenstein"] == false);
  CHECK(parsed["result"]["ideal_count"] == 6);
  CHECK(parsed["result"]["relation_count"] == 3);

  std::string c1, c2;
  CHECK(run({"complexity", fixture_path("segre_3_2"), "--p", "2", "--emax", "2"}, &c1) == 0);
  CHECK(run({"complexity", fixture_path("segre_3_2"), "--p", "2", "--emax", "2"}, &c2) == 0);
  CHECK(c1 == c2);
}

TEST_CASE("cli exit codes") {
  std::string out;
  CHECK(run({"info", fixture_path("segre_3_2"), "--text"}, &out) == 0);
  CHECK(run({"info", "/nonexistent/file.poset"}, &out) == 2);
  CHECK(run({"info", fixture_path("segre_3_2"), "--guard", "2"}, &out) == 3);
  CHECK(run({"growth", fixture_path("segre_3_2"), "--nmax", "3"}, &out) == 4);
  CHECK(run({"complexity", fixture_path("segre_3_2"), "--p", "4"}, &out) == 2);
  CHECK(run({"bogus-command"}, &out) == 2);
}

TEST_CASE("generators command reports the spectrum") {
  std::string out;
  CHECK(run({"generators", fixture_path("levelex1"), "--n", "1"}, &out) == 0);
  auto j = Json::parse(out);
  CHECK(j["result"]["count"] == 3);
  CHECK(j["result"]["distinct_degrees"] == Json::array({-3, -2}));
  CHECK(j["result"]["generators"].size() == 3);

  CHECK(run({"generators", fixture_path("levelex1"), "--n", "-1"}, &out) == 0);
  j = Json::parse(out);
  CHECK(j["result"]["distinct_degrees"] == Json::array({4}));
}

TEST_CASE("complexity command values") {
  std::string out;
  CHECK(run({"complexity", fixture_path("chain_3"), "--p", "2", "--emax", "3"}, &out) == 0);
  auto j = Json::parse(out);
  CHECK(j["result"]["c"] == Json::array({1, 0, 0}));
  CHECK(j["result"]["predicted_limit"]["kind"] == "minus_infinity");

  CHECK(run({"complexity", fixture_path("segre_3_2"), "--p", "2", "--emax", "2"}, &out) == 0);
  j = Json::parse(out);
  CHECK(j["result"]["c"] == Json::array({3, 1}));
  CHECK(j["result"]["spread_minus_one"] == 2);
  CHECK(j["result"]["table"][1]["c_e"] == 1);

  CHECK(run({"complexity", fixture_path("section5"), "--p", "2", "--emax", "2"}, &out) == 0);
  j = Json::parse(out);
  CHECK(j["result"]["predicted_limit"]["kind"] == "lower_bound_only");
  CHECK(j["result"]["predicted_limit"]["value"] == 2);
}

TEST_CASE("growth command emits csv in text mode") {
  std::string out;
  CHECK(run({"growth", fixture_path("segre_3_2"), "--nmax", "5", "--text"}, &out) == 0);
  CHECK(out.find("n,h\n1,3\n2,6\n3,10\n4,15\n5,21\n") != std::string::npos);
  CHECK(out.find("spread_minus_one,2") != std::string::npos);
}

TEST_CASE("limit command on the section5 fixture") {
  std::string out;
  CHECK(run({"limit", fixture_path("section5")}, &out) == 0);
  auto j = Json::parse(out);
  CHECK(j["result"]["predicted_limit"]["kind"] == "lower_bound_only");
  CHECK(j["result"]["predicted_limit"]["value"] == 2);
  CHECK(j["result"]["spread_minus_one"] == 2);
}
