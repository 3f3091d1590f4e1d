#include "doctest.h"
#include "tpcsp/io.hpp"

using namespace tpcsp;

TEST_CASE("parsing the documented examples") {
  ParsedFile f = parse_instance_text("pi 123,321\nk 1\ncon u v w\n");
  REQUIRE(f.is_lo());
  CHECK(f.lo().pi == PiSet(0b100001));
  CHECK(f.lo().total_mult() == 1);
  CHECK(f.lo().k == 1);
  CHECK(f.lo().vars.names == std::vector<std::string>{"u", "v", "w"});

  ParsedFile mixed = parse_instance_text("arc u v x3\n");
  REQUIRE_FALSE(mixed.is_lo());
  CHECK(mixed.mixed().r() == 3);
  CHECK(mixed.k == 0);

  ParsedFile btw = parse_instance_text("# comment\nbtw m a b x2\nk 2\n");
  REQUIRE_FALSE(btw.is_lo());
  CHECK(btw.mixed().s() == 2);
  CHECK(btw.k == 2);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_instance_text("con u u w\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  try {
    parse_instance_text("pi 123\n\nwat u v\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_instance_text("con u v w x0\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("pi 124\ncon u v w\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("pi 112\ncon u v w\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("k -1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("k 1\nk 2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("con u v w\narc u v\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("pi 123\narc u v\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("arc u u\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("btw m m b\n"), ParseError);
}

TEST_CASE("defaults and edge forms") {
  ParsedFile f = parse_instance_text("con a b c\n");
  CHECK(f.lo().pi == PiSet(1u));  // Linear Ordering by default
  CHECK(f.lo().k == 0);

  // multiplicity token may not follow a fourth variable
  ParsedFile m = parse_instance_text("con a b c x12\n");
  CHECK(m.lo().total_mult() == 12);

  ParsedFile empty = parse_instance_text("# nothing but comments\n");
  REQUIRE(empty.is_lo());
  CHECK(empty.lo().n() == 0);
}

TEST_CASE("serialization round-trips and canonical form") {
  std::string text = "pi 321,123\nk 2\ncon u v w x2\ncon w v u\n";
  ParsedFile f = parse_instance_text(text);
  std::string canon = serialize(f.lo());
  CHECK(canon == "pi 123,321\nk 2\ncon u v w x2\ncon w v u\n");
  ParsedFile again = parse_instance_text(canon);
  CHECK(semantically_equal(again.lo(), f.lo()));

  ParsedFile mixed = parse_instance_text("k 1\narc b a\nbtw a b c x2\n");
  ParsedFile back = parse_instance_text(serialize(mixed.mixed(), mixed.k));
  CHECK(semantically_equal(back.mixed(), mixed.mixed()));
  CHECK(back.k == 1);

  LoInstance empty_pi;
  empty_pi.vars.add("u");
  empty_pi.vars.add("v");
  empty_pi.vars.add("w");
  empty_pi.pi = PiSet(0);
  CHECK_THROWS_AS(serialize(empty_pi), Error);
}

TEST_CASE("duplicate constraints merge multiplicities") {
  ParsedFile f = parse_instance_text("con a b c\ncon a b c x2\n");
  REQUIRE(f.lo().constraints.size() == 1);
  CHECK(f.lo().constraints[0].mult == 3);
}

TEST_CASE("missing files fail with an io error") {
  CHECK_THROWS_AS(parse_instance_file("/nonexistent/path.txt"), Error);
}
