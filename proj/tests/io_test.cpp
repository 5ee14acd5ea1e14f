#include "cvlqr/io.hpp"

#include <gtest/gtest.h>

namespace cvlqr::io {
namespace {

const std::filesystem::path kFixtures = FIXTURE_DIR;

TEST(Parse, ComplexEntriesAndBareNumbers) {
  const json doc = json::parse(R"({"M": [[[1, 2], 3], [[0, -1], [4.5, 0]]]})");
  const CMatrix m = parse_complex_matrix(doc, "M");
  ASSERT_EQ(m.rows(), 2);
  EXPECT_EQ(m(0, 0), Complex(1, 2));
  EXPECT_EQ(m(0, 1), Complex(3, 0));
  EXPECT_EQ(m(1, 0), Complex(0, -1));
}

TEST(Parse, ErrorsNameTheField) {
  const json ragged = json::parse(R"({"A": [[1, 2], [3]]})");
  try {
    parse_real_matrix(ragged, "A");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "A");
  }
  const json bad_entry = json::parse(R"({"A": [[[1, 2, 3]]]})");
  EXPECT_THROW(parse_complex_matrix(bad_entry, "A"), ParseError);
  EXPECT_THROW(parse_real_matrix(json::parse(R"({"A": [["x"]]})"), "A"),
               ParseError);
  try {
    parse_complex_vector(json::object(), "x0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "x0");
  }
}

TEST(Parse, MalformedFixtureNamesB2) {
  const json doc = load_document(kFixtures / "malformed_dims.json");
  try {
    parse_antilinear_problem(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "B2");
  }
}

TEST(Parse, KindMismatchAndWeights) {
  const json doc = load_document(kFixtures / "scalar_antilinear.json");
  EXPECT_EQ(document_kind(doc), "antilinear");
  EXPECT_THROW(parse_complex_problem(doc), ParseError);
  json bad = doc;
  bad["R"] = json::parse("[[[-1, 0]]]");
  try {
    parse_antilinear_problem(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "R");
  }
}

TEST(Parse, Options) {
  const json doc = json::parse(
      R"({"options": {"tol": 1e-10, "max_iter": 50, "snapshot_at": 7}})");
  const RunOptions o = parse_options(doc);
  EXPECT_EQ(o.solver.tol, 1e-10);
  EXPECT_EQ(o.solver.max_iter, 50);
  EXPECT_EQ(o.snapshot_at, 7);
  EXPECT_THROW(parse_options(json::parse(R"({"options": {"tol": -1}})")),
               ParseError);
  EXPECT_THROW(parse_options(json::parse(R"({"options": {"max_iter": 1.5}})")),
               ParseError);
}

TEST(Parse, F16Fixture) {
  const DelayProblem p = parse_delay_problem(load_document(kFixtures / "f16.json"));
  EXPECT_EQ(p.ds.states(), 5);
  EXPECT_EQ(p.ds.inputs(), 2);
  ASSERT_TRUE(p.initial.has_value());
  EXPECT_EQ(p.initial->xim1(4), 10.0);
}

TEST(Json, MatrixRoundTripIsExact) {
  CMatrix m(2, 2);
  m << Complex(0.1, 1.0 / 3.0), Complex(-1e-300, 2e300), Complex(M_PI, -M_E),
      Complex(0, 0);
  const json doc = {{"M", to_json(m)}};
  const CMatrix back = parse_complex_matrix(json::parse(doc.dump()), "M");
  EXPECT_EQ(back, m);
}

}  // namespace
}  // namespace cvlqr::io
