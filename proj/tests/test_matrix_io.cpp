// Copyright 2026 The swapq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "swapq/matrix_io.hpp"
#include "test_util.hpp"

using namespace swapq;

namespace {

ComplexMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

}  // namespace

TEST_SUITE("matrix_io") {
  TEST_CASE("round trip is exact") {
    const ComplexMatrix h = swapq::testing::random_hermitian(4, 17);
    std::stringstream ss;
    write_matrix(ss, h);
    CHECK(read_matrix(ss) == h);
  }

  TEST_CASE("comments, blank lines and spacing are accepted") {
    const ComplexMatrix m = parse(
        "# a state\n"
        "2\n"
        "\n"
        "  0.5,0   0,-0.25\n"
        "# between rows\n"
        "0,0.25\t0.5,0\n");
    REQUIRE(m.rows() == 2);
    CHECK(m(0, 0) == cplx(0.5, 0.0));
    CHECK(m(0, 1) == cplx(0.0, -0.25));
    CHECK(m(1, 0) == cplx(0.0, 0.25));
    CHECK(m(1, 1) == cplx(0.5, 0.0));
  }

  TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(parse(""), MatrixFormatError);
    CHECK_THROWS_AS(parse("0\n"), MatrixFormatError);
    CHECK_THROWS_AS(parse("two\n"), MatrixFormatError);
    CHECK_THROWS_AS(parse("2\n1,0 0,0\n"), MatrixFormatError);            // missing row
    CHECK_THROWS_AS(parse("2\n1,0 0,0\n0,0\n"), MatrixFormatError);       // short row
    CHECK_THROWS_AS(parse("2\n1,0 0,0 0,0\n0,0 1,0\n"), MatrixFormatError);  // long row
    CHECK_THROWS_AS(parse("1\n1\n"), MatrixFormatError);                  // no imaginary part
    CHECK_THROWS_AS(parse("1\n1,x\n"), MatrixFormatError);
    CHECK_THROWS_AS(parse("1\n1,0\n1,0\n"), MatrixFormatError);           // trailing row
  }

  TEST_CASE("missing file is reported") {
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/state.txt"), MatrixFormatError);
  }
}
