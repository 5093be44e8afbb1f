#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "rankone/errors.hpp"
#include "rankone/io.hpp"
#include "support.hpp"

using namespace rankone;
using namespace testing_support;
using io::Json;

TEST(JsonValues, ComplexEncoding) {
  EXPECT_EQ(io::to_json(cdouble(1.5, -2.0)), Json::parse("[1.5, -2.0]"));
  EXPECT_EQ(io::to_json(ExtComplex::infinity()), Json("inf"));
  EXPECT_EQ(io::complex_from_json(Json::parse("3")), cdouble(3.0, 0.0));
  EXPECT_EQ(io::complex_from_json(Json("2-1i")), cdouble(2.0, -1.0));
  EXPECT_EQ(io::complex_from_json(Json::parse("[0, 4]")), cdouble(0.0, 4.0));
  EXPECT_TRUE(io::ext_complex_from_json(Json("inf")).is_infinite());
}

TEST(JsonValues, MatrixRoundTripAndRaggedRows) {
  const Matrix m = mat({{1.0, cdouble(0.0, 2.0)}, {-3.0, 0.25}});
  EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
  EXPECT_EQ(io::matrix_from_json(Json::parse("[[1, 2], [3, 4]]")), mat({{1.0, 2.0}, {3.0, 4.0}}));
  EXPECT_THROW(io::matrix_from_json(Json::parse("[[1, 2], [3]]")), Error);
}

TEST(PencilFile, RoundTrip) {
  const Pencil p(jordan(2, 0.0), mat({{1.0, cdouble(0, 1)}, {0.0, 2.0}}));
  const Json j = io::pencil_to_json(p);
  EXPECT_EQ(j.at("format_version"), io::kFormatVersion);
  EXPECT_EQ(j.at("n"), 2);
  const Pencil back = io::pencil_from_json(j);
  EXPECT_EQ(back.E(), p.E());
  EXPECT_EQ(back.A(), p.A());
}

TEST(PencilFile, DimensionChecks) {
  EXPECT_THROW(io::pencil_from_json(Json::parse(R"({"n": 3, "E": [[1]], "A": [[0]]})")), Error);
  EXPECT_THROW(io::pencil_from_json(Json::parse(R"({"n": 1, "E": [[1]], "A": [[0, 1]]})")),
               Error);
  const auto sys = io::system_from_json(
      Json::parse(R"({"n": 2, "E": [[1,0],[0,1]], "A": [[0,1],[0,0]], "b": [0, 1]})"));
  EXPECT_EQ(sys.b, unit(2, 1));
  EXPECT_THROW(io::system_from_json(Json::parse(R"({"n": 1, "E": [[1]], "A": [[0]]})")), Error);
}

TEST(RankOneFile, FormsAndMatrices) {
  const auto left = RankOnePencil::left(unit(2, 0), vec({1.0, 1.0}), vec({1.0, 1.0}));
  const auto back = io::rank_one_from_json(io::rank_one_to_json(left));
  EXPECT_EQ(back.form, RankOneForm::kLeftVector);
  EXPECT_EQ(materialize(back).F, materialize(left).F);

  const auto deg = RankOnePencil::degenerate(2.0, cdouble(1.0, 1.0), unit(2, 0), unit(2, 1));
  const auto dback = io::rank_one_from_json(io::rank_one_to_json(deg));
  EXPECT_EQ(dback.form, RankOneForm::kDegenerate);
  EXPECT_EQ(dback.beta, deg.beta);

  const auto from_fg = io::rank_one_from_json(
      Json::parse(R"({"F": [[1, 1], [0, 0]], "G": [[-1, -1], [-1, -1]]})"));
  EXPECT_EQ(from_fg.form, RankOneForm::kLeftVector);
}

TEST(TextParsing, VectorsAndTargets) {
  EXPECT_EQ(io::parse_vector("1,0,2-1i"), vec({1.0, 0.0, cdouble(2.0, -1.0)}));
  const auto ts = io::parse_targets("1:1,-1:2,inf:1,2+3i");
  ASSERT_EQ(ts.size(), 4u);
  EXPECT_EQ(ts[1].value, ExtComplex(-1.0));
  EXPECT_EQ(ts[1].mult, 2);
  EXPECT_TRUE(ts[2].value.is_infinite());
  EXPECT_EQ(ts[3].value, ExtComplex(cdouble(2.0, 3.0)));
  EXPECT_EQ(ts[3].mult, 1);
  EXPECT_THROW(io::parse_targets("1:x"), Error);
}

TEST(Display, ShortNumbers) {
  EXPECT_EQ(io::num(ExtComplex(cdouble(1e-17, 0.0))), "0");
  EXPECT_EQ(io::num(ExtComplex::infinity()), "inf");
  EXPECT_EQ(io::num(ExtComplex(cdouble(-2.0, 0.0))), "-2");
}

TEST(Report, JsonRoundTripIsLossless) {
  io::Report r;
  r.command = "place";
  r.args = {"place", "p.json", "--targets", "1:1"};
  r.tol.rank = 1e-8;
  r.real_mode = true;
  r.seed = 99;
  r.status = "verification_failed";
  r.exit_code = 2;
  r.error_code = "VerificationFailed";
  r.error_message = "spectrum mismatch";
  r.fields = {{"form", "degenerate"}, {"gamma", "1+2i"}};
  r.scalars = {{"a", 0.1 + 0.2},
               {"b", std::numeric_limits<double>::infinity()},
               {"c", -std::numeric_limits<double>::infinity()},
               {"d", 1e-300}};
  r.vectors = {{"u", vec({cdouble(1.0 / 3.0, -1e-17), 2.0})}};
  r.matrices = {{"F", mat({{1.0, 2.0}, {3.0, cdouble(0.0, 4.0)}})}};
  io::SpectrumTable t;
  t.name = "A";
  t.n = 3;
  t.M = 2;
  t.rows = {{ExtComplex(0.5), {2, 1}, 3, {2, 3}}, {ExtComplex::infinity(), {1}, 1, {1}}};
  r.spectra = {t};
  BoundRecord rec;
  rec.check = "layer";
  rec.lambda = ExtComplex::infinity();
  rec.k = 2;
  rec.value = -1;
  rec.lower = -1;
  rec.upper = 1;
  rec.slack = 0;
  r.bounds = {rec};
  r.verdicts = {{"spectrum", false, "dim at 1: 0 vs 1"}};

  const io::Report back = io::report_from_json(Json::parse(io::report_to_json(r).dump()));
  EXPECT_TRUE(io::same_report(r, back));

  io::Report changed = back;
  changed.scalars[0].second += 1e-16;
  EXPECT_FALSE(io::same_report(r, changed));
}

TEST(Report, NanScalarSurvives) {
  io::Report r;
  r.scalars = {{"x", std::numeric_limits<double>::quiet_NaN()}};
  const io::Report back = io::report_from_json(io::report_to_json(r));
  EXPECT_TRUE(std::isnan(back.scalars[0].second));
}

TEST(Files, WriteAndRead) {
  const auto path = std::filesystem::temp_directory_path() / "rankone_io_test.json";
  const Json j = io::pencil_to_json(standard(jordan(2, 0.0)));
  io::write_json_file(path.string(), j);
  EXPECT_EQ(io::read_json_file(path.string()), j);
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_json_file(path.string()), Error);
}
