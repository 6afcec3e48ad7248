#include "doctest.h"
#include "nilpc/deformation.hpp"
#include "support.hpp"

using namespace nilpc;
using namespace testing;

TEST_CASE("fixtures load") {
  const PcPresentation heis = fixture("heis");
  CHECK(heis.rank() == 3);
  CHECK(heis.name() == "HEIS");
  const PcPresentation zk = fixture("zk");
  CHECK(word_to_json(zk.power_tail(3)) == Json::parse("[[5, 2]]"));
}

TEST_CASE("loader rejections") {
  CHECK_THROWS_AS(parse_presentation(R"({"name":"x","rank":1,"periods":[1]})"), PresentationError);
  CHECK_THROWS_AS(parse_presentation(R"({"name":"x","rank":2,"periods":[0]})"), PresentationError);
  CHECK_THROWS_AS(parse_presentation(R"({"name":"x","rank":2,"periods":[0,0],"commutators":{"1,2":[[2,1]]}})"),
                  PresentationError);
  CHECK_THROWS_AS(parse_presentation(R"({"name":"x","rank":3,"periods":[0,0,0],"commutators":{"3,1":[[2,1]]}})"),
                  PresentationError);
  CHECK_THROWS_AS(parse_presentation(R"({"rank":1,"periods":[0]})"), ParseError);
  try {
    parse_presentation("{\n  \"name\": \"x\",\n  \"rank\": 1 oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(load_presentation("/nonexistent/file.json"), FileError);
}

TEST_CASE("round trip through the file format") {
  std::vector<PcPresentation> all;
  for (const char* name : {"heis", "zg", "zh", "zk", "nr", "f23"}) {
    const PcPresentation g = fixture(name);
    all.push_back(g);
    const AdaptedPresentation a = adapt_basis(g);
    all.push_back(a.pres);
    for (const Deformation& d : enumerate_deformations(a).classes) all.push_back(d.pres);
  }
  for (const PcPresentation& g : all) {
    const std::string text = emit_presentation(g);
    const PcPresentation back = parse_presentation(text);
    CHECK(back == g);
    CHECK(back.name() == g.name());
    CHECK(emit_presentation(back) == text);
  }
}

TEST_CASE("big integers survive the file format") {
  const Int big("123456789012345678901234567890");
  CHECK(int_from_json(int_to_json(big)) == big);
  CHECK(int_from_json(int_to_json(Int(-7))) == -7);
  CHECK_THROWS_AS(int_from_json(Json("12x")), ParseError);
}

TEST_CASE("bilinear map files") {
  const BilinearMap f = bilinear_from_json(fixture_json("gaussian"));
  CHECK(f.left().periods == IntVector{0, 0});
  CHECK(f.value(1, 1) == IntVector{-1, 0});
  CHECK_THROWS_AS(bilinear_from_json(Json::parse(R"({"left":[0],"right":[0],"values":[0],"table":[]})")), ParseError);
}
