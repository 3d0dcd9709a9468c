#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dklt/io.hpp"
#include "dklt/special.hpp"

using namespace dklt;

TEST(Io, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  double v = 0.28942877343591034;
  EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(Io, JsonDumpUsesFullPrecisionAndNullForNonFinite) {
  Json j = {{"a", 0.1}, {"b", std::nan("")}, {"c", 3}, {"s", "x\"y"}};
  std::string s = dump_json(j, -1);
  EXPECT_EQ(s, "{\"a\":0.10000000000000001,\"b\":null,\"c\":3,\"s\":\"x\\\"y\"}");
  EXPECT_EQ(Json::parse(dump_json(j)).at("a").get<double>(), 0.1);
}

TEST(Io, ValueLists) {
  EXPECT_EQ(parse_values("1,2.5"), (std::vector<double>{1.0, 2.5}));
  auto r = parse_values("0..pi:3");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_DOUBLE_EQ(r[1], kPi / 2);
  EXPECT_EQ(r[2], kPi);
  EXPECT_EQ(parse_number("asinh_pi"), kAsinhPi);
  EXPECT_THROW(parse_values("1..2"), std::invalid_argument);
  EXPECT_THROW(parse_number("abc"), std::invalid_argument);
}

TEST(Io, CoefficientSources) {
  EXPECT_EQ(load_coefficients("[1,0,0]").a, (std::vector<double>{1, 0, 0}));
  auto o = load_coefficients(R"({"a":[0.5],"decay_class":"exp_delta","delta":0.2,"tail_bound":1e-9})");
  EXPECT_EQ(o.decay_class, DecayClass::exp_delta);
  EXPECT_EQ(o.tail_bound, 1e-9);
  EXPECT_EQ(load_coefficients("unit2", 4).a, (std::vector<double>{0, 1, 0, 0}));
  EXPECT_NEAR(load_coefficients("exp", 3)(2), std::exp(-2.0), 1e-16);
  EXPECT_EQ(load_coefficients("default").decay_class, DecayClass::theorem8);
  EXPECT_THROW(load_coefficients("nosuch"), std::invalid_argument);
  EXPECT_THROW(load_coefficients("[1,"), std::invalid_argument);
  EXPECT_THROW(load_coefficients("@/nonexistent/file.json"), std::invalid_argument);
}

TEST(Io, CoefficientFileRoundTrip) {
  auto a = default_helmholtz_coefficients(5);
  std::string path = ::testing::TempDir() + "coeffs.json";
  {
    std::ofstream out(path);
    out << dump_json(to_json(a));
  }
  auto b = load_coefficients("@" + path);
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.tail_bound, b.tail_bound);
  EXPECT_EQ(a.theta0, b.theta0);
  std::remove(path.c_str());
}

TEST(Io, SuiteFile) {
  auto cases = suite_from_json(Json::parse(R"([{"identity_id":"biorth_I1","params":{"n":1,"m":2}},
                                                {"identity_id":"cf_2_29","params":{"n":1,"u":0.5},"tolerance":0.01}])"));
  ASSERT_EQ(cases.size(), 2u);
  EXPECT_EQ(cases[0].tolerance, kTierClosedForm);
  EXPECT_EQ(cases[1].tolerance, 0.01);
  EXPECT_EQ(cases[0].params.at("m"), 2.0);
  EXPECT_THROW(suite_from_json(Json::object()), std::invalid_argument);
}

TEST(Io, ReportsJsonIsReproducible) {
  VerificationReport r;
  r.identity_id = "biorth_I3";
  r.seconds = 1.25;
  Json j = to_json(r);
  EXPECT_FALSE(j.contains("seconds"));
  EXPECT_EQ(j.at("method"), "abel");
  EXPECT_TRUE(to_json(r, true).contains("seconds"));
  std::string csv = reports_to_csv({r});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "identity_id,params,lhs,rhs,abs_err,error_estimate,tolerance,passed");
}

TEST(Io, FieldCsvLeavesBoundaryResidualEmpty) {
  PolarField f = solve_field(BoundarySpec::from_coefficients(CoefficientSequence::unit(1)), {{1.0, 0.0}, {1.0, 1.0}});
  std::string csv = field_to_csv(f);
  std::istringstream in(csv);
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_EQ(header, "r,theta,u,residual");
  EXPECT_EQ(row0, "1,0,0,");
  EXPECT_NE(row1.back(), ',');
  Json j = to_json(f);
  EXPECT_TRUE(j.at("checks_passed").get<bool>());
  EXPECT_EQ(j.at("points").size(), 2u);
}
