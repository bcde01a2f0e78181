#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oscprof/network_io.hpp"
#include "support.hpp"

using namespace oscprof;

namespace {

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("bundled configs parse with the documented shapes") {
  const Network pent = testsup::pentilator();
  REQUIRE(pent.size() == 5);
  CHECK(pent.stages[0].a == 2.0);
  CHECK(pent.stages[0].tau_r == 1.8);
  CHECK(pent.stages[4].regulation == Regulation::Activation);
  CHECK_FALSE(pent.stages[0].history_p.has_value());

  const Network tri = testsup::repressilator();
  REQUIRE(tri.size() == 3);
  CHECK(tri.stages[0].history_p == 1.0);
  CHECK(tri.stages[1].history_p == 0.5);
  CHECK(tri.stages[2].history_p == 1.5);

  const Network single = testsup::hes7();
  REQUIRE(single.size() == 1);
  CHECK(single.stages[0].tau_r == 20.0);
  CHECK(single.stages[0].tau_p == 17.0);
}

TEST_CASE("write then parse reproduces every double bitwise") {
  Network original = testsup::pentilator();
  original.stages[1].history_r = 0.123456789012345678;
  original.stages[3].history_p = 3.0000000000000004;

  std::ostringstream out;
  write_network(original, out);
  std::istringstream in(out.str());
  const Network back = parse_network(in, "roundtrip");

  REQUIRE(back.size() == original.size());
  for (int i = 0; i < original.size(); ++i) {
    const GeneStage& u = original.stages[i];
    const GeneStage& v = back.stages[i];
    CHECK(u.a == v.a);
    CHECK(u.b == v.b);
    CHECK(u.c == v.c);
    CHECK(u.beta == v.beta);
    CHECK(u.nu == v.nu);
    CHECK(u.tau_r == v.tau_r);
    CHECK(u.tau_p == v.tau_p);
    CHECK(u.regulation == v.regulation);
    CHECK(u.history_r == v.history_r);
    CHECK(u.history_p == v.history_p);
  }
}

TEST_CASE("save and load through the filesystem") {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "oscprof_io_roundtrip.net";
  const Network original = testsup::repressilator();
  save_network(original, tmp);
  const Network back = load_network(tmp);
  REQUIRE(back.size() == 3);
  CHECK(back.stages[2].history_p == 1.5);
  CHECK(back.stages[0].tau_r == original.stages[0].tau_r);
  fs::remove(tmp);
}

TEST_CASE("parse errors cite source and line") {
  SUBCASE("invalid number") {
    const std::string msg = message_of([] { load_network(testsup::data_path("broken.net")); });
    CHECK(msg.find("broken.net:5") != std::string::npos);
    CHECK(msg.find("invalid number 'fast'") != std::string::npos);
  }

  SUBCASE("missing required field") {
    std::istringstream in("[gene]\na = 1\nb = 1\nc = 1\nbeta = 1\nnu = 2\ntau_r = 0\n");
    const std::string msg = message_of([&] { parse_network(in, "partial"); });
    CHECK(msg.find("partial:1") != std::string::npos);
    CHECK(msg.find("missing field 'regulation'") != std::string::npos);
  }

  SUBCASE("duplicate field cites the first occurrence") {
    std::istringstream in("[gene]\na = 1\na = 2\n");
    const std::string msg = message_of([&] { parse_network(in, "dup"); });
    CHECK(msg.find("dup:3") != std::string::npos);
    CHECK(msg.find("duplicate (first set at line 2)") != std::string::npos);
  }

  SUBCASE("unknown field") {
    std::istringstream in("[gene]\nq = 1\n");
    const std::string msg = message_of([&] { parse_network(in, "s"); });
    CHECK(msg.find("unknown field 'q'") != std::string::npos);
  }

  SUBCASE("unknown section") {
    std::istringstream in("[protein]\n");
    const std::string msg = message_of([&] { parse_network(in, "s"); });
    CHECK(msg.find("unknown section '[protein]'") != std::string::npos);
  }

  SUBCASE("field before any block") {
    std::istringstream in("a = 1\n");
    const std::string msg = message_of([&] { parse_network(in, "s"); });
    CHECK(msg.find("before any [gene] block") != std::string::npos);
  }

  SUBCASE("no gene blocks at all") {
    std::istringstream in("# only a comment\n");
    CHECK_THROWS_AS(parse_network(in, "s"), ParseError);
  }

  SUBCASE("line missing the equals sign") {
    std::istringstream in("[gene]\na 1\n");
    const std::string msg = message_of([&] { parse_network(in, "s"); });
    CHECK(msg.find("expected 'key = value'") != std::string::npos);
  }

  SUBCASE("domain checks run at parse time") {
    std::istringstream in("[gene]\na = -2\n");
    const std::string msg = message_of([&] { parse_network(in, "s"); });
    CHECK(msg.find("'a': value must be > 0") != std::string::npos);

    std::istringstream in2("[gene]\nregulation = sometimes\n");
    const std::string msg2 = message_of([&] { parse_network(in2, "s"); });
    CHECK(msg2.find("expected 'repression' or 'activation'") != std::string::npos);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_network("/nonexistent/missing.net"), ParseError);
  }
}

TEST_CASE("comments and blank lines are ignored anywhere") {
  std::istringstream in(
      "# leading comment\n"
      "\n"
      "[gene]  # trailing comment\n"
      "a = 1  # rate\n"
      "b = 1\nc = 1\nbeta = 1\nnu = 2\n"
      "regulation = repression\n"
      "tau_r = 0.5\ntau_p = 0\n");
  const Network net = parse_network(in, "commented");
  REQUIRE(net.size() == 1);
  CHECK(net.stages[0].a == 1.0);
  CHECK(net.stages[0].tau_r == 0.5);
}
