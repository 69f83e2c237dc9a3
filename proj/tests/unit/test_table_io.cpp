// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "nvcool/errors.hpp"
#include "nvcool/table_io.hpp"

using namespace nvcool;

TEST_CASE("shortest round-trip formatting") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 1e-300}) CHECK(parse_double(format_double(v)) == v);
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("strict number parsing") {
  CHECK(parse_double(" 2.5e3 ") == 2500.0);
  CHECK_THROWS_AS(parse_double("2.5x"), ParseError);
  CHECK_THROWS_AS(parse_double(""), ParseError);
}

TEST_CASE("numeric tables") {
  const auto rows = parse_numeric_table("# header\n1, 2\n\n3 4  # trailing\n", 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == 4.0);
  try {
    parse_numeric_table("1 2\n3\n", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("trace CSV round trip") {
  const Trace t(0.001, 1e-5, {1.5, -2.0, 3.25}, "dB");
  const auto csv = trace_to_csv(t, "delta_p_dB");
  CHECK(csv.rfind("time_s,delta_p_dB\n", 0) == 0);
  const auto back = parse_trace_csv(csv);
  CHECK(back.values == t.values);
  CHECK(back.t0 == doctest::Approx(t.t0));
  CHECK(back.dt == doctest::Approx(t.dt));
}

TEST_CASE("trace CSV errors") {
  CHECK_THROWS_AS(parse_trace_csv("time_s,x\n0,1\n1,2\n3,4\n"), ParseError);
  CHECK_THROWS_AS(parse_trace_csv("time_s,x\n0,1\n"), ParseError);
  CHECK_THROWS_AS(parse_trace_csv("time_s,x\n0,1\n1,2,3\n"), ParseError);
}

TEST_CASE("csv columns must match in length") {
  CHECK(to_csv({{"a", {1, 2}}, {"b", {3, 4}}}) == "a,b\n1,3\n2,4\n");
  CHECK_THROWS_AS(to_csv({{"a", {1}}, {"b", {}}}), DomainError);
}

TEST_CASE("missing files") { CHECK_THROWS_AS(read_text_file("/nonexistent/nvcool/file"), IoError); }
