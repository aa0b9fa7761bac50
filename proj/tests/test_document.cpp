#include "lie2/document.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace lie2;
using namespace lie2::io;
using namespace lie2::fixtures;

namespace {

std::string heis3_text() { return read_file(std::string(LIE2_FIXTURES) + "/heis3.json"); }

std::string with_payload(const std::string& kind, const std::string& payload) {
  return R"({"version": "1", "kind": ")" + kind + R"(", "name": "t", "payload": )" + payload + "}";
}

std::string schema_message(const std::string& text) {
  try {
    decode(parse_document(text));
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

template <class T>
void round_trips(const std::string& name, const T& x) {
  std::string text = emit_document(document_of(name, x));
  Document d = parse_document(text);
  EXPECT_EQ(emit_document(document_of(name, std::get<T>(decode(d)))), text) << name;
}

}  // namespace

TEST(Text, EmitsTwoSpaceIndentWithTrailingNewline) {
  std::string text = heis3_text();
  EXPECT_EQ(emit_document(parse_document(text)), text);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.substr(0, 18), "{\n  \"version\": \"1\"");
}

TEST(Text, ParseErrorReportsLineAndColumn) {
  try {
    parse_document("{\n  \"version\": \"1\",\n  \"kind\": ]\n}");
    FAIL() << "accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 11u);
  }
  EXPECT_EQ(line_column("ab\ncd", 4), (std::pair<std::size_t, std::size_t>{2, 2}));
}

TEST(Text, EnvelopeIsValidated) {
  EXPECT_THROW(parse_document("[]"), SchemaError);
  EXPECT_THROW(parse_document(R"({"version": "2", "kind": "lie_algebra", "name": "x", "payload": {}})"), SchemaError);
  EXPECT_THROW(parse_document(R"({"version": "1", "kind": "lie_algebra", "name": "x"})"), SchemaError);
  EXPECT_THROW(decode(parse_document(with_payload("lie_group", "{}"))), SchemaError);
}

TEST(Scalars, IntegersAreAcceptedAndFloatsRejected) {
  EXPECT_EQ(decode_scalar(Json(3), "x"), Scalar(3));
  EXPECT_EQ(decode_scalar(Json(-2), "x"), Scalar(-2));
  EXPECT_EQ(decode_scalar(Json("5/10"), "x"), Scalar(1, 2));
  EXPECT_THROW(decode_scalar(Json(0.5), "x"), SchemaError);
  EXPECT_THROW(decode_scalar(Json("1/0"), "x"), SchemaError);
  EXPECT_EQ(encode_scalar(Scalar(-3, 6)), Json("-1/2"));
}

TEST(Schema, ErrorsCarryTheJsonPath) {
  std::string msg = schema_message(with_payload(
      "crossed_module",
      R"({"m": {"basis": ["c"], "brackets": []}, "n": {"basis": ["X"], "brackets": []},
          "boundary": [[0.5]], "action": {"X": [[0]]}})"));
  EXPECT_EQ(msg.rfind("payload.boundary[0][0]", 0), 0u) << msg;
  msg = schema_message(with_payload(
      "crossed_module",
      R"({"m": {"basis": ["c"], "brackets": []}, "n": {"basis": ["X"], "brackets": []},
          "boundary": [[0, 1]], "action": {"X": [[0]]}})"));
  EXPECT_EQ(msg.rfind("payload.boundary[0]", 0), 0u) << msg;
}

TEST(Schema, DuplicateNamesAndBracketsAreRejected) {
  EXPECT_NE(schema_message(with_payload("lie_algebra", R"({"basis": ["A", "A"], "brackets": []})")), "");
  EXPECT_NE(schema_message(with_payload(
                "lie_algebra", R"({"basis": ["A", "B"], "brackets": [{"pair": ["A", "B"], "value": {"A": "1"}},
                                                                      {"pair": ["A", "B"], "value": {"B": "1"}}]})")),
            "");
  EXPECT_NE(schema_message(with_payload("lie_algebra", R"({"basis": ["A"], "brackets": [{"pair": ["A", "Q"], "value": {}}]})")),
            "");
}

TEST(Codec, LieAlgebraListsOnlyTheUpperBrackets) {
  Json j = encode_lie_algebra(sl2());
  EXPECT_EQ(j["brackets"].size(), 3u);
  LieAlgebra back = decode_lie_algebra(j, "payload");
  EXPECT_TRUE(same_structure(back, sl2()));
}

TEST(Codec, EveryKindRoundTrips) {
  round_trips("heis3", heis3());
  round_trips("heisCM", heis_cm());
  round_trips("lie2", lie2_of_crossed_module(heis_cm()));
  round_trips("phi", heisenberg_functor());
  round_trips("bundle", bundle_of_functor(heisenberg_functor()));
  auto pt = fingpd::share(fingpd::point()), cd = fingpd::share(fingpd::codiscrete({"a", "b"}));
  fingpd::FinFunctor f(pt, cd, {0}, {0});
  round_trips("codisc", *cd);
  round_trips("f", f);
  round_trips("bf", fingpd::bundle_of_functor(f));
  CocycleData c;
  c.complex = TwoTermComplex(1, 2, Matrix::from_rows({{1}, {0}}, 1));
  c.objects = {{0, 0}, {1, 0}};
  c.morphisms = {{{0}, {-1}}, {{1}, {0}}};
  c.weights = {Scalar(1, 2), Scalar(1, 2)};
  round_trips("cocycle", c);
}

TEST(Codec, CellListRoundTrips) {
  CocycleData c;
  c.complex = TwoTermComplex(1, 1, Matrix::from_rows({{1}}, 1));
  c.objects = {{0}};
  c.morphisms = {{{0}}};
  c.weights = {1};
  std::vector<Cell> z{{{0}, {0}}};
  Document d = make_document(cell_list_kind, "cells", encode_cell_list(c, z));
  auto [c2, z2] = std::get<std::pair<CocycleData, std::vector<Cell>>>(decode(parse_document(emit_document(d))));
  EXPECT_EQ(z2, z);
  EXPECT_EQ(c2.weights, c.weights);
}

TEST(Corpus, EveryFixtureRoundTripsByteForByte) {
  std::size_t n = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(LIE2_FIXTURES)) {
    if (e.path().extension() != ".json") continue;
    std::string text = read_file(e.path().string());
    Document d = parse_document(text);
    EXPECT_EQ(emit_document(d), text) << e.path();
    EXPECT_NO_THROW(decode(d)) << e.path();
    ++n;
  }
  EXPECT_GE(n, 20u);
}

TEST(Reports, TextAndJsonRenderings) {
  Report r;
  r.subject = "x";
  r.add("first", true);
  r.add("second", false, "why");
  r.derived["dim"] = 3;
  EXPECT_EQ(report_text(r), "x: FAIL\n  pass  first\n  FAIL  second  -- why\n  dim = 3\n");
  Json j = report_json(r);
  EXPECT_EQ(j["passed"], false);
  EXPECT_EQ(j["checks"][1]["detail"], "why");
  EXPECT_FALSE(j["checks"][0].contains("detail"));
  EXPECT_EQ(j["derived"]["dim"], 3);
}
