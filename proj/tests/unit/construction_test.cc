// Copyright 2026 The fplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "fplab/construction.h"
#include "fplab/errors.h"
#include "support/oracle.h"

using namespace fplab;

namespace {

PayoffMatrix K(std::size_t n, std::int64_t z = 0) {
  return BuildK(ConstructionParams{n, Integer(z)});
}

}  // namespace

TEST_CASE("build_k examples") {
  CHECK(K(2) == PayoffMatrix::FromRows({{2, 3}, {1, 0}}));
  CHECK(K(4) == PayoffMatrix::FromRows(
                    {{2, 0, 0, 3}, {0, 6, 7, 0}, {0, 5, 0, 4}, {1, 0, 0, 0}}));
  CHECK(K(6) == PayoffMatrix::FromRows({{2, 0, 0, 0, 0, 3},
                                        {0, 6, 0, 0, 7, 0},
                                        {0, 0, 10, 11, 0, 0},
                                        {0, 0, 9, 0, 8, 0},
                                        {0, 5, 0, 0, 0, 4},
                                        {1, 0, 0, 0, 0, 0}}));
  CHECK(K(2, 5) == PayoffMatrix::FromRows({{7, 8}, {6, 0}}));
}

TEST_CASE("build_k rejects bad parameters") {
  CHECK_THROWS_AS(K(0), ConstructionError);
  CHECK_THROWS_AS(K(3), ConstructionError);
  CHECK_THROWS_AS(K(4, -1), ConstructionError);
}

TEST_CASE("recursive, closed-form and oracle constructions agree") {
  for (std::size_t n = 2; n <= 40; n += 2) {
    for (std::int64_t z : {0, 1, 7}) {
      const ConstructionParams p{n, Integer(z)};
      const PayoffMatrix a = BuildK(p);
      CHECK(a == BuildKClosedForm(p));
      CHECK(a == oracle::ToLib(oracle::SpiralMatrix(n, z)));
    }
  }
}

TEST_CASE("self-similarity of the central block") {
  for (std::size_t n = 4; n <= 24; n += 2) {
    for (std::int64_t z : {0, 3}) {
      const PayoffMatrix outer = K(n, z);
      const PayoffMatrix inner = K(n - 2, z + 4);
      for (std::size_t r = 0; r < n - 2; ++r) {
        for (std::size_t c = 0; c < n - 2; ++c) {
          CHECK(outer(r + 1, c + 1) == inner(r, c));
        }
      }
    }
  }
}

TEST_CASE("validate_structure passes on every K^n(z)") {
  for (std::size_t n = 2; n <= 40; n += 2) {
    for (std::int64_t z : {0, 1, 7}) {
      const StructureReport rep = ValidateStructure(K(n, z));
      INFO("n = " << n << ", z = " << z);
      CHECK(rep.ok());
      CHECK(rep.z == Integer(z));
      CHECK(rep.max_cell == Profile{n / 2, n / 2 + 1});
      CHECK(rep.max_value == Integer(z + 2 * static_cast<std::int64_t>(n) - 1));
      REQUIRE(rep.nonzero_values.size() == 2 * n - 1);
      for (std::size_t k = 0; k < rep.nonzero_values.size(); ++k) {
        CHECK(rep.nonzero_values[k] ==
              Integer(z + static_cast<std::int64_t>(k) + 1));
      }
    }
  }
}

TEST_CASE("validate_structure examples") {
  const StructureReport r6 = ValidateStructure(K(6));
  CHECK(r6.ok());
  CHECK(r6.max_cell == Profile{3, 4});
  CHECK(r6.max_value == Integer(11));
  const StructureReport r2 = ValidateStructure(K(2));
  CHECK(r2.ok());
  CHECK(r2.max_cell == Profile{1, 2});
  CHECK(r2.max_value == Integer(3));
  CHECK_FALSE(ValidateStructure(PayoffMatrix(4, 4)).ok());
}

TEST_CASE("validate_structure names what is broken") {
  PayoffMatrix a = K(6);
  a(2, 3) = 12;  // the maximum moves off its value slot
  CHECK_FALSE(ValidateStructure(a).ok());

  a = K(6);
  a(0, 2) = 20;  // a third nonzero in row 1
  const StructureReport extra = ValidateStructure(a);
  CHECK_FALSE(extra.ok());
  bool named = false;
  for (const auto& v : extra.violations) {
    named = named || v.find("row 1") != std::string::npos;
  }
  CHECK(named);

  CHECK_FALSE(ValidateStructure(PayoffMatrix(3, 3)).ok());
  CHECK_FALSE(ValidateStructure(PayoffMatrix(2, 4)).ok());
  a = K(4);
  std::swap(a(0, 0), a(1, 1));  // values swapped between layers
  CHECK_FALSE(ValidateStructure(a).ok());
}

TEST_CASE("spiral_order examples") {
  const auto k4 = SpiralOrder(K(4));
  const std::vector<std::pair<Profile, int>> expect4 = {
      {{4, 1}, 1}, {{1, 1}, 2}, {{1, 4}, 3}, {{3, 4}, 4},
      {{3, 2}, 5}, {{2, 2}, 6}, {{2, 3}, 7}};
  REQUIRE(k4.size() == expect4.size());
  for (std::size_t k = 0; k < k4.size(); ++k) {
    CHECK(k4[k].cell == expect4[k].first);
    CHECK(k4[k].value == Integer(expect4[k].second));
  }
  const auto k2 = SpiralOrder(K(2));
  REQUIRE(k2.size() == 3);
  CHECK(k2[0].cell == Profile{2, 1});
  CHECK(k2[1].cell == Profile{1, 1});
  CHECK(k2[2].cell == Profile{1, 2});
  const auto k6 = SpiralOrder(K(6));
  CHECK(k6.size() == 11);
  CHECK(k6.back().cell == Profile{3, 4});
  CHECK(k6.back().value == Integer(11));
  CHECK_THROWS_AS(SpiralOrder(PayoffMatrix(4, 4)), StructureError);
}

TEST_CASE("spiral alternates row and column moves") {
  for (std::size_t n = 2; n <= 30; n += 2) {
    const auto cells = SpiralOrder(K(n));
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const Profile& a = cells[k - 1].cell;
      const Profile& b = cells[k].cell;
      const bool row_move = a.col == b.col && a.row != b.row;
      const bool col_move = a.row == b.row && a.col != b.col;
      CHECK(row_move != col_move);
      // Starting from (n,1), odd steps move the row and even steps the column.
      CHECK(row_move == (k % 2 == 1));
    }
  }
}

TEST_CASE("the maximum strictly dominates its row and column") {
  for (std::size_t n = 2; n <= 30; n += 2) {
    const PayoffMatrix a = K(n);
    const std::size_t r = n / 2 - 1, c = n / 2;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != r) CHECK(a(k, c) < a(r, c));
      if (k != c) CHECK(a(r, k) < a(r, c));
    }
  }
}
