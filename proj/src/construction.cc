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

#include "fplab/construction.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "fplab/errors.h"

namespace fplab {

void ConstructionParams::Validate() const {
  if (n < 2 || n % 2 != 0) {
    throw ConstructionError("K^n(z) needs an even n >= 2, got n = " +
                            std::to_string(n));
  }
  if (z.sign() < 0) {
    throw ConstructionError("K^n(z) needs z >= 0, got z = " + z.ToString());
  }
}

namespace {

void FillRecursive(PayoffMatrix& out, std::size_t offset, std::size_t n,
                   const Integer& z) {
  const std::size_t first = offset;
  const std::size_t last = offset + n - 1;
  if (n == 2) {
    out(first, first) = z + 2;
    out(first, last) = z + 3;
    out(last, first) = z + 1;
    out(last, last) = 0;
    return;
  }
  out(last, first) = z + 1;
  out(first, first) = z + 2;
  out(first, last) = z + 3;
  out(last - 1, last) = z + 4;
  FillRecursive(out, offset + 1, n - 2, z + 4);
}

}  // namespace

PayoffMatrix BuildK(const ConstructionParams& params) {
  params.Validate();
  PayoffMatrix out(params.n, params.n);
  FillRecursive(out, 0, params.n, params.z);
  return out;
}

PayoffMatrix BuildKClosedForm(const ConstructionParams& params) {
  params.Validate();
  const std::size_t n = params.n;
  PayoffMatrix out(n, n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const Integer v = params.z + Integer(static_cast<std::int64_t>(4 * i));
    out(i, i) = v + 2;
    out(n - 1 - i, i) = v + 1;
    out(i, n - 1 - i) = v + 3;
    if (i + 1 < n / 2) out(n - 2 - i, n - 1 - i) = v + 4;
  }
  return out;
}

namespace {

std::string CellsToString(const std::vector<CellValue>& cells) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) os << ", ";
    os << cells[k].cell << '=' << cells[k].value;
  }
  os << '}';
  return os.str();
}

// Compares the observed nonzeros of one line against the expected set and
// records a violation naming the line on mismatch.
void ExpectLine(const std::string& label,
                const std::vector<CellValue>& observed,
                std::vector<CellValue> expected,
                std::vector<std::string>& violations) {
  std::sort(expected.begin(), expected.end(),
            [](const CellValue& a, const CellValue& b) { return a.cell < b.cell; });
  if (observed != expected) {
    violations.push_back(label + ": expected nonzeros " +
                         CellsToString(expected) + ", found " +
                         CellsToString(observed));
  }
}

}  // namespace

StructureReport ValidateStructure(const PayoffMatrix& a) {
  StructureReport rep;
  auto& bad = rep.violations;
  if (!a.square()) {
    bad.push_back("matrix is " + std::to_string(a.rows()) + "x" +
                  std::to_string(a.cols()) + ", not square");
    return rep;
  }
  const std::size_t n = a.rows();
  rep.n = n;
  if (n % 2 != 0) {
    bad.push_back("side " + std::to_string(n) + " is odd");
    return rep;
  }

  rep.row_nonzeros.resize(n);
  rep.col_nonzeros.resize(n);
  bool have_max = false;
  std::size_t max_count = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Integer& v = a(r, c);
      if (v.is_zero()) continue;
      if (v.sign() < 0) {
        bad.push_back("negative entry at " + ToString(Profile{r + 1, c + 1}));
      }
      CellValue cv{Profile{r + 1, c + 1}, v};
      rep.row_nonzeros[r].push_back(cv);
      rep.col_nonzeros[c].push_back(cv);
      rep.nonzero_values.push_back(v);
      if (!have_max || v > rep.max_value) {
        rep.max_value = v;
        rep.max_cell = cv.cell;
        have_max = true;
        max_count = 1;
      } else if (v == rep.max_value) {
        ++max_count;
      }
    }
  }
  // Column lists were filled in row-major order, which is already increasing
  // row order within each column.
  std::sort(rep.nonzero_values.begin(), rep.nonzero_values.end());
  if (rep.nonzero_values.empty()) {
    bad.push_back("matrix has no nonzero entries (no layer values present)");
    return rep;
  }
  rep.z = rep.nonzero_values.front() - 1;
  const Integer& z = rep.z;

  for (std::size_t i = 0; i < n / 2; ++i) {
    const Integer v = z + Integer(static_cast<std::int64_t>(4 * i));
    const bool innermost = i + 1 == n / 2;
    const std::size_t lo = i + 1;      // 1-based index i+1
    const std::size_t hi = n - i;      // 1-based index n-i
    const std::string layer = " (layer " + std::to_string(i) + ")";
    ExpectLine("column " + std::to_string(lo) + layer, rep.col_nonzeros[lo - 1],
               {{{lo, lo}, v + 2}, {{hi, lo}, v + 1}}, bad);
    ExpectLine("row " + std::to_string(lo) + layer, rep.row_nonzeros[lo - 1],
               {{{lo, lo}, v + 2}, {{lo, hi}, v + 3}}, bad);
    std::vector<CellValue> col_hi{{{lo, hi}, v + 3}};
    if (!innermost) col_hi.push_back({{hi - 1, hi}, v + 4});
    ExpectLine("column " + std::to_string(hi) + layer, rep.col_nonzeros[hi - 1],
               col_hi, bad);
    std::vector<CellValue> row_hi{{{hi, lo}, v + 1}};
    if (i > 0) row_hi.push_back({{hi, hi + 1}, v});
    ExpectLine("row " + std::to_string(hi) + layer, rep.row_nonzeros[hi - 1],
               row_hi, bad);
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (rep.row_nonzeros[k].size() > 2) {
      bad.push_back("row " + std::to_string(k + 1) + " has " +
                    std::to_string(rep.row_nonzeros[k].size()) + " nonzeros");
    }
    if (rep.col_nonzeros[k].size() > 2) {
      bad.push_back("column " + std::to_string(k + 1) + " has " +
                    std::to_string(rep.col_nonzeros[k].size()) + " nonzeros");
    }
  }
  for (std::size_t k = 1; k < rep.nonzero_values.size(); ++k) {
    if (rep.nonzero_values[k] == rep.nonzero_values[k - 1]) {
      bad.push_back("nonzero value " + rep.nonzero_values[k].ToString() +
                    " repeats");
    }
  }
  bool consecutive = rep.nonzero_values.size() == 2 * n - 1;
  for (std::size_t k = 0; consecutive && k < rep.nonzero_values.size(); ++k) {
    consecutive = rep.nonzero_values[k] ==
                  z + Integer(static_cast<std::int64_t>(k + 1));
  }
  if (!consecutive) {
    bad.push_back("nonzero values are not exactly {" + (z + 1).ToString() +
                  ", ..., " +
                  (z + Integer(static_cast<std::int64_t>(2 * n - 1))).ToString() +
                  "}");
  }
  const Profile expected_max{n / 2, n / 2 + 1};
  if (max_count != 1) {
    bad.push_back("maximum value " + rep.max_value.ToString() + " appears " +
                  std::to_string(max_count) + " times");
  } else if (rep.max_cell != expected_max) {
    bad.push_back("maximum sits at " + ToString(rep.max_cell) +
                  ", expected " + ToString(expected_max));
  }
  return rep;
}

std::vector<CellValue> SpiralOrder(const PayoffMatrix& a) {
  const StructureReport rep = ValidateStructure(a);
  if (!rep.ok()) {
    throw StructureError("not a spiral instance: " + rep.violations.front());
  }
  std::vector<CellValue> cells;
  for (const auto& row : rep.row_nonzeros) {
    cells.insert(cells.end(), row.begin(), row.end());
  }
  std::sort(cells.begin(), cells.end(),
            [](const CellValue& a, const CellValue& b) { return a.value < b.value; });
  return cells;
}

}  // namespace fplab
